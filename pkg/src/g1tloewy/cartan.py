"""Exact root data and finite Weyl groups for crystallographic types.

Conventions
-----------
* ``cartan[i][j] = <alpha_i, alpha_j^vee>`` with Bourbaki labelling of the
  simple roots (so ``B2`` gives ``[[2, -2], [-1, 2]]``).
* Weights are integer vectors in the fundamental-weight basis, so
  ``<lam, alpha_i^vee> = lam[i]``.
* Root-lattice vectors (roots, translation parts) are integer vectors in the
  simple-root basis; coroots are integer vectors in the simple-coroot basis.
* ``rho`` is ``(1, ..., 1)`` in weight coordinates and ``2 rho`` is stored in
  root coordinates as the sum of the positive roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class RootSystemError(ValueError):
    """Raised for an invalid type descriptor or subset of simple roots."""


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def simple_cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``<alpha_i, alpha_j^vee>`` of a simple type (Bourbaki labels)."""
    series = series.upper()
    n = rank
    if series == "A" and n >= 1:
        return _chain(n)
    if series == "B" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a
    if series == "C" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a
    if series == "D" and n >= 4:
        a = _chain(n - 1) + [[0] * n]
        for row in a[:-1]:
            row.append(0)
        a[n - 1][n - 1] = 2
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if series == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if series == "F" and n == 4:
        a = _chain(4)
        a[1][2] = -2
        return a
    if series == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    raise RootSystemError(f"invalid type {series}{rank}")


_FACTOR_RE = re.compile(r"([A-Ga-g])\s*(\d+)")


def parse_type(descriptor: str) -> tuple[tuple[str, int], ...]:
    """Parse ``"A2"``, ``"B2"``, ``"A1xA1"``, ``"A1 x G2"`` into factors."""
    parts = [s for s in re.split(r"[x*×\s]+", descriptor.strip()) if s]
    if not parts:
        raise RootSystemError(f"empty type descriptor {descriptor!r}")
    factors = []
    for part in parts:
        m = _FACTOR_RE.fullmatch(part)
        if m is None:
            raise RootSystemError(f"invalid type descriptor {descriptor!r}")
        series, rank = m.group(1).upper(), int(m.group(2))
        simple_cartan_matrix(series, rank)  # validates
        factors.append((series, rank))
    return tuple(factors)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Element of the finite Weyl group of ``system``.

    ``word`` is a reduced word (simple-root indices, leftmost factor first);
    ``matrix`` is the action on weight coordinates (column vectors).
    """

    system: "RootSystem" = field(repr=False)
    word: tuple[int, ...]
    matrix: Matrix = field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.system.weyl_from_matrix(_matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return self.system.weyl_element(tuple(reversed(self.word)))

    def act(self, weight: Sequence[int]) -> Vector:
        return _matvec(self.matrix, weight)

    def act_root(self, gamma: Sequence[int]) -> Vector:
        """Action on a root-lattice vector in simple-root coordinates."""
        s = self.system
        return s.to_root_coords(self.act(s.root_to_weight(gamma)))

    @cached_property
    def root_permutation(self) -> tuple[int, ...]:
        """Image of every root index (see ``RootSystem.all_roots``)."""
        s = self.system
        return tuple(s.root_index[self.act(r)] for r in s.all_roots_weight)

    def is_identity(self) -> bool:
        return not self.word


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _matvec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


class RootSystem:
    """Root datum of a simply connected group of the given (product) type."""

    def __init__(self, factors: Iterable[tuple[str, int]]):
        self.factors: tuple[tuple[str, int], ...] = tuple((s.upper(), r) for s, r in factors)
        blocks = [simple_cartan_matrix(s, r) for s, r in self.factors]
        n = sum(len(b) for b in blocks)
        cartan = [[0] * n for _ in range(n)]
        self.factor_of: list[int] = []
        offset = 0
        for f, b in enumerate(blocks):
            for i, row in enumerate(b):
                cartan[offset + i][offset : offset + len(b)] = row
                self.factor_of.append(f)
            offset += len(b)
        self.rank = n
        self.cartan: Matrix = tuple(tuple(row) for row in cartan)
        self._build_roots()
        self._weyl_cache: dict[Matrix, WeylElement] = {}

    # -- construction -------------------------------------------------
    def _build_roots(self) -> None:
        n, a = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = {r: r for r in simple}  # root -> coroot
        frontier = list(simple)
        while frontier:
            new = []
            for root in frontier:
                coroot = seen[root]
                for j in range(n):
                    c = sum(root[k] * a[k][j] for k in range(n))  # <root, a_j^vee>
                    d = sum(coroot[k] * a[j][k] for k in range(n))  # <a_j, coroot>
                    r2 = tuple(root[k] - c * (k == j) for k in range(n))
                    if all(x >= 0 for x in r2) and any(r2) and r2 not in seen:
                        seen[r2] = tuple(coroot[k] - d * (k == j) for k in range(n))
                        new.append(r2)
            frontier = new
        order = sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r)))
        self.positive_roots: tuple[Vector, ...] = tuple(order)
        self.positive_coroots: tuple[Vector, ...] = tuple(seen[r] for r in order)
        self.num_positive = len(order)
        self.all_roots: tuple[Vector, ...] = self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots
        )
        self.all_roots_weight: tuple[Vector, ...] = tuple(self.root_to_weight(r) for r in self.all_roots)
        self.root_index: dict[Vector, int] = {r: i for i, r in enumerate(self.all_roots_weight)}
        self.positive_index: dict[Vector, int] = {r: i for i, r in enumerate(self.positive_roots)}

    # -- basic data ---------------------------------------------------
    @property
    def name(self) -> str:
        return "x".join(f"{s}{r}" for s, r in self.factors) if self.factors else "empty"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootSystem) and self.cartan == other.cartan

    def __hash__(self) -> int:
        return hash(self.cartan)

    @cached_property
    def rho(self) -> Vector:
        return (1,) * self.rank

    @cached_property
    def two_rho(self) -> Vector:
        """``2 rho`` in simple-root coordinates."""
        return tuple(sum(r[i] for r in self.positive_roots) for i in range(self.rank))

    @cached_property
    def coxeter_number(self) -> int:
        hs = [RootSystem([f]).coxeter_number for f in self.factors] if len(self.factors) > 1 else None
        if hs is not None:
            return max(hs)
        if not self.factors:
            return 1
        return 2 * self.num_positive // self.rank

    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def highest_short_root(self) -> Vector:
        """Positive root whose coroot is the highest coroot of each factor.

        For a product system one root per factor is returned via
        ``affine_wall_roots``; this property is only meaningful for simple types.
        """
        return self.affine_wall_roots[0]

    @cached_property
    def affine_wall_roots(self) -> tuple[Vector, ...]:
        """Per factor, the root ``beta`` with ``H_{beta,1}`` a wall of ``A+``."""
        out = []
        for f in range(len(self.factors)):
            best = None
            for r, c in zip(self.positive_roots, self.positive_coroots):
                if any(r[i] and self.factor_of[i] != f for i in range(self.rank)):
                    continue
                if best is None or sum(c) > sum(best[1]):
                    best = (r, c)
            out.append(best[0])
        return tuple(out)

    def root_to_weight(self, gamma: Sequence[int]) -> Vector:
        n = self.rank
        return tuple(sum(gamma[i] * self.cartan[i][j] for i in range(n)) for j in range(n))

    def to_root_coords(self, weight: Sequence[int]) -> Vector:
        """Exact inverse of ``root_to_weight``; raises if not in the root lattice."""
        coords = self.weight_to_root_rational(weight)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{tuple(weight)} is not in the root lattice")
        return tuple(int(c) for c in coords)

    @cached_property
    def _cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        m = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return tuple(tuple(row[n:]) for row in m)

    def weight_to_root_rational(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        inv = self._cartan_inverse
        n = self.rank
        return tuple(sum(weight[j] * inv[j][i] for j in range(n)) for i in range(n))

    def in_root_lattice(self, weight: Sequence[int]) -> bool:
        return all(c.denominator == 1 for c in self.weight_to_root_rational(weight))

    # -- pairings -----------------------------------------------------
    def pairing(self, weight: Sequence[int], coroot: Sequence[int]) -> int:
        """``<weight, coroot>`` with the coroot in simple-coroot coordinates."""
        return sum(w * c for w, c in zip(weight, coroot))

    def root_pairing(self, gamma: Sequence[int], coroot: Sequence[int]) -> int:
        """``<gamma, coroot>`` for ``gamma`` in simple-root coordinates."""
        return self.pairing(self.root_to_weight(gamma), coroot)

    def coroot_of(self, root: Sequence[int]) -> Vector:
        root = tuple(root)
        if root in self.positive_index:
            return self.positive_coroots[self.positive_index[root]]
        neg = tuple(-x for x in root)
        return tuple(-x for x in self.positive_coroots[self.positive_index[neg]])

    def is_positive(self, root: Sequence[int]) -> bool:
        return any(x > 0 for x in root)

    # -- Weyl group ---------------------------------------------------
    @cached_property
    def simple_reflection_matrices(self) -> tuple[Matrix, ...]:
        n, a = self.rank, self.cartan
        mats = []
        for i in range(n):
            # (s_i lam)_j = lam_j - lam_i * a[i][j]
            mats.append(tuple(
                tuple(int(j == k) - (k == i) * a[i][j] for k in range(n)) for j in range(n)
            ))
        return tuple(mats)

    @cached_property
    def identity(self) -> WeylElement:
        return self.weyl_from_matrix(tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)))

    def weyl_element(self, word: Iterable[int]) -> WeylElement:
        m = self.identity.matrix
        for i in word:
            if not 0 <= i < self.rank:
                raise RootSystemError(f"simple reflection index {i} out of range")
            m = _matmul(m, self.simple_reflection_matrices[i])
        return self.weyl_from_matrix(m)

    def weyl_from_matrix(self, matrix: Matrix) -> WeylElement:
        cached = self._weyl_cache.get(matrix)
        if cached is not None:
            return cached
        word: list[int] = []
        m = matrix
        # peel right descents: w alpha_i < 0  <=>  l(w s_i) < l(w)
        while True:
            for i in range(self.rank):
                img = _matvec(m, self.all_roots_weight[i])
                if self.root_index[img] >= self.num_positive:
                    word.append(i)
                    m = _matmul(m, self.simple_reflection_matrices[i])
                    break
            else:
                break
        if any(m[i][j] != (i == j) for i in range(self.rank) for j in range(self.rank)):
            raise ValueError("matrix is not a Weyl group element")
        w = WeylElement(self, tuple(reversed(word)), matrix)
        self._weyl_cache[matrix] = w
        return w

    def is_root_positive_image(self, w: WeylElement, root_idx: int) -> bool:
        return w.root_permutation[root_idx] < self.num_positive

    def inversion_set(self, w: WeylElement) -> frozenset[Vector]:
        """Positive roots sent to negative roots by ``w``."""
        perm = w.root_permutation
        return frozenset(
            self.positive_roots[i] for i in range(self.num_positive) if perm[i] >= self.num_positive
        )

    def longest_element(self, subset: Iterable[int] = None) -> WeylElement:
        """Longest element of the parabolic subgroup generated by ``subset``."""
        subset = range(self.rank) if subset is None else self._check_subset(subset)
        w = self.identity
        while True:
            for j in subset:
                if w.root_permutation[j] < self.num_positive:
                    w = self.weyl_from_matrix(_matmul(w.matrix, self.simple_reflection_matrices[j]))
                    break
            else:
                return w

    @cached_property
    def w0(self) -> WeylElement:
        return self.longest_element()

    def weyl_group(self) -> list[WeylElement]:
        """All elements, by breadth-first search (only sensible for small rank)."""
        seen = {self.identity.matrix: self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for s in self.simple_reflection_matrices:
                    m = _matmul(w.matrix, s)
                    if m not in seen:
                        seen[m] = self.weyl_from_matrix(m)
                        new.append(seen[m])
            frontier = new
        return sorted(seen.values(), key=lambda w: (w.length, w.word))

    def _check_subset(self, subset: Iterable[int]) -> tuple[int, ...]:
        out = tuple(sorted(set(subset)))
        if any(not 0 <= j < self.rank for j in out):
            raise RootSystemError(f"invalid subset of simple roots {out}")
        return out

    # -- weights ------------------------------------------------------
    def restricted_decomposition(self, weight: Sequence[int], p: int) -> tuple[Vector, Vector]:
        """Write ``weight = w0part + p * w1part`` with ``0 <= w0part_i < p``."""
        lo = tuple(x % p for x in weight)
        hi = tuple((x - y) // p for x, y in zip(weight, lo))
        return lo, hi

    def levi_subsystem(self, subset: Iterable[int]) -> "LeviSubsystem":
        return LeviSubsystem(self, self._check_subset(subset))


class LeviSubsystem:
    """Root subsystem ``R_J`` spanned by a subset ``J`` of simple roots.

    ``system`` is the Levi root system in its own coordinates; ``embed``
    maps its simple-root indices back into the ambient system.
    """

    def __init__(self, ambient: RootSystem, subset: tuple[int, ...]):
        self.ambient = ambient
        self.subset = subset
        sub_cartan = [[ambient.cartan[i][j] for j in subset] for i in subset]
        # split into connected components and identify each with a simple type
        comps: list[list[int]] = []
        unseen = set(range(len(subset)))
        while unseen:
            stack = [min(unseen)]
            comp = []
            while stack:
                v = stack.pop()
                if v not in unseen:
                    continue
                unseen.discard(v)
                comp.append(v)
                stack.extend(u for u in range(len(subset)) if sub_cartan[v][u] and u in unseen)
            comps.append(sorted(comp))
        self.components: list[tuple[tuple[str, int], tuple[int, ...]]] = []
        for comp in comps:
            block = [[sub_cartan[i][j] for j in comp] for i in comp]
            ftype, order = _identify(block)
            self.components.append((ftype, tuple(subset[comp[k]] for k in order)))
        # local simple index -> ambient simple index, in factor order
        self.embed: tuple[int, ...] = tuple(i for _, idx in self.components for i in idx)
        self.system = RootSystem([c[0] for c in self.components])

    @cached_property
    def positive_roots(self) -> frozenset[Vector]:
        """Positive roots of ``R_J`` in ambient simple-root coordinates."""
        out = set()
        for r in self.system.positive_roots:
            v = [0] * self.ambient.rank
            for k, c in enumerate(r):
                v[self.embed[k]] = c
            out.add(tuple(v))
        return frozenset(out)

    def __repr__(self) -> str:
        return f"LeviSubsystem({self.ambient.name}, J={self.subset}, type={self.system.name})"


def _identify(block: list[list[int]]) -> tuple[tuple[str, int], list[int]]:
    """Find a simple type and an ordering of ``block``'s indices matching Bourbaki labels."""
    from itertools import permutations

    n = len(block)
    candidates = []
    for s in "ABCDEFG":
        try:
            candidates.append((s, simple_cartan_matrix(s, n)))
        except RootSystemError:
            pass
    # Small Levis only in practice; brute force over orderings is fine up to rank ~7.
    if n > 8:
        raise RootSystemError("Levi component too large to identify")
    for s, target in candidates:
        for perm in permutations(range(n)):
            if all(block[perm[i]][perm[j]] == target[i][j] for i in range(n) for j in range(n)):
                return (s, n), list(perm)
    raise RootSystemError("could not identify Levi component")


def build_root_system(descriptor: str | Sequence[tuple[str, int]], rank: int | None = None) -> RootSystem:
    """Build a root system from ``("A", 2)``, ``"B2"`` or ``"A1xA1"``."""
    if rank is not None:
        return RootSystem([(str(descriptor), rank)])
    if isinstance(descriptor, str):
        return RootSystem(parse_type(descriptor))
    return RootSystem(descriptor)
