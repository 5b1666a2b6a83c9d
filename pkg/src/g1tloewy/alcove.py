"""Affine Weyl group ``W_a = W x| ZR`` acting on weights by the p-dilated dot action.

An affine element ``x = (w, gamma)`` acts by ``x.lam = w(lam + rho) + p*gamma - rho``;
in the rescaled coordinates ``u = (lam + rho)/p`` this is ``u -> w u + gamma``.
Alcoves are the images ``x.A+`` of the bottom dominant alcove. An alcove is
recorded by its integer coordinates ``d[alpha]`` (one per positive root) with
``p*d < <v + rho, alpha^vee> < p*(d + 1)`` for interior points ``v``; these do
not depend on ``p``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Iterable, Iterator, Sequence

from .cartan import RootSystem, Vector, WeylElement

__all__ = [
    "AffineElement",
    "Alcove",
    "Facet",
    "identity",
    "translation",
    "simple_affine_reflections",
    "reflection",
    "dot_act",
    "locate",
    "upper_closure_contains",
    "singularity_count",
    "facet",
    "distance",
    "generic_leq",
    "interval",
    "gallery_word",
    "in_Wa_of",
    "element_from_word",
]


@dataclass(frozen=True)
class AffineElement:
    """``(w, gamma)`` with ``gamma`` in simple-root coordinates."""

    w: WeylElement
    gamma: Vector

    @property
    def system(self) -> RootSystem:
        return self.w.system

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        g = self.w.act_root(other.gamma)
        return AffineElement(self.w * other.w, tuple(a + b for a, b in zip(self.gamma, g)))

    def inverse(self) -> "AffineElement":
        wi = self.w.inverse()
        g = wi.act_root(self.gamma)
        return AffineElement(wi, tuple(-a for a in g))

    def translate(self, gamma: Sequence[int]) -> "AffineElement":
        """Left multiplication by the translation ``t_gamma``."""
        return AffineElement(self.w, tuple(a + b for a, b in zip(self.gamma, gamma)))

    @cached_property
    def coordinates(self) -> Vector:
        """Alcove coordinates of ``x.A+``: ``d_alpha = <gamma, alpha^vee> - [w^-1 alpha < 0]``."""
        s = self.system
        gw = s.root_to_weight(self.gamma)
        winv = self.w.inverse().root_permutation
        npos = s.num_positive
        return tuple(
            s.pairing(gw, s.positive_coroots[i]) - (winv[i] >= npos) for i in range(npos)
        )

    @property
    def length(self) -> int:
        return sum(abs(d) for d in self.coordinates)

    def __repr__(self) -> str:
        return f"AffineElement(w={list(self.w.word)}, gamma={list(self.gamma)})"


def identity(system: RootSystem) -> AffineElement:
    return AffineElement(system.identity, (0,) * system.rank)


def translation(system: RootSystem, gamma: Sequence[int]) -> AffineElement:
    return AffineElement(system.identity, tuple(gamma))


def reflection(system: RootSystem, root: Sequence[int], n: int) -> AffineElement:
    """The reflection ``s_{alpha,n}`` in ``H_{alpha,n}`` (``alpha`` in root coordinates)."""
    root = tuple(root)
    coroot = system.coroot_of(root)
    # s_alpha on weights: lam -> lam - <lam, alpha^vee> alpha
    aw = system.root_to_weight(root)
    n_ = system.rank
    mat = tuple(
        tuple(int(i == j) - aw[i] * coroot[j] for j in range(n_)) for i in range(n_)
    )
    return AffineElement(system.weyl_from_matrix(mat), tuple(n * r for r in root))


def simple_affine_reflections(system: RootSystem) -> tuple[AffineElement, ...]:
    """Generators: ``s_1..s_r`` (indices ``0..r-1``), then one ``s_{beta,1}`` per factor."""
    gens = [AffineElement(system.weyl_element((i,)), (0,) * system.rank) for i in range(system.rank)]
    for beta in system.affine_wall_roots:
        gens.append(reflection(system, beta, 1))
    return tuple(gens)


def element_from_word(system: RootSystem, word: Iterable[int]) -> AffineElement:
    gens = simple_affine_reflections(system)
    x = identity(system)
    for i in word:
        x = x * gens[i]
    return x


def dot_act(x: AffineElement, weight: Sequence[int], p: int) -> Vector:
    s = x.system
    shifted = x.w.act(tuple(a + 1 for a in weight))
    gw = s.root_to_weight(x.gamma)
    return tuple(a + p * g - 1 for a, g in zip(shifted, gw))


# -- alcoves -----------------------------------------------------------


def _alcove_barycenter(system: RootSystem) -> tuple[Fraction, ...]:
    """Barycenter of A+ in ``u = (v + rho)/p`` coordinates (weight basis)."""
    b = [Fraction(0)] * system.rank
    for f, beta in enumerate(system.affine_wall_roots):
        idx = [i for i in range(system.rank) if system.factor_of[i] == f]
        top = system.coroot_of(beta)
        r = len(idx)
        for i in idx:
            b[i] = Fraction(1, top[i] * (r + 1))
    return tuple(b)


@dataclass(frozen=True)
class Alcove:
    """The alcove ``x.A+``."""

    element: AffineElement

    @property
    def system(self) -> RootSystem:
        return self.element.system

    @property
    def coordinates(self) -> Vector:
        return self.element.coordinates

    @cached_property
    def barycenter(self) -> tuple[Fraction, ...]:
        """Barycenter of ``(v + rho)/p`` over the alcove, in weight coordinates."""
        s = self.system
        b = self.element.w.act(_alcove_barycenter(s))
        g = s.root_to_weight(self.element.gamma)
        return tuple(x + y for x, y in zip(b, g))

    def coordinates_from_barycenter(self) -> Vector:
        s = self.system
        return tuple(floor(s.pairing(self.barycenter, c)) for c in s.positive_coroots)

    def translate(self, gamma: Sequence[int]) -> "Alcove":
        return Alcove(self.element.translate(gamma))

    def __repr__(self) -> str:
        return f"Alcove({list(self.coordinates)})"

    @property
    def key(self) -> Vector:
        return self.coordinates

    def __lt__(self, other: "Alcove") -> bool:
        return self.coordinates < other.coordinates


def upper_closure_contains(alcove: Alcove, weight: Sequence[int], p: int) -> bool:
    s = alcove.system
    shifted = tuple(a + 1 for a in weight)
    for d, c in zip(alcove.coordinates, s.positive_coroots):
        v = s.pairing(shifted, c)
        if not p * d < v <= p * (d + 1):
            return False
    return True


def _fold(system: RootSystem, point: Sequence[Fraction]) -> AffineElement:
    """Return ``x`` with ``point`` (u-coordinates, generic) inside ``x.A+``."""
    gens = simple_affine_reflections(system)
    u = list(point)
    x = identity(system)
    n = system.rank
    while True:
        for i in range(n):
            if u[i] < 0:
                u = list(gens[i].w.act(u))
                x = x * gens[i]
                break
        else:
            for f, beta in enumerate(system.affine_wall_roots):
                c = system.coroot_of(beta)
                val = system.pairing(u, c)
                if val > 1:
                    bw = system.root_to_weight(beta)
                    u = [a - (val - 1) * b for a, b in zip(u, bw)]
                    x = x * gens[n + f]
                    break
            else:
                return x


def locate(weight: Sequence[int], p: int, system: RootSystem) -> tuple[AffineElement, Vector]:
    """``(x, nu0)`` with ``weight`` in the upper closure of ``x.A+`` and ``nu0 = x^-1 . weight``."""
    # nudge the point down along -rho: lands inside the alcove whose upper closure holds it
    eps = Fraction(1, 2 * system.coxeter_number * max(1, system.rank))
    point = [Fraction(a + 1) / p - eps / p for a in weight]
    x = _fold(system, point)
    assert upper_closure_contains(Alcove(x), weight, p), (weight, x)
    nu0 = dot_act(x.inverse(), weight, p)
    return x, nu0


def singularity_count(weight: Sequence[int], p: int, system: RootSystem) -> int:
    shifted = tuple(a + 1 for a in weight)
    return sum(1 for c in system.positive_coroots if system.pairing(shifted, c) % p == 0)


@dataclass(frozen=True)
class Facet:
    """Hyperplanes ``H_{alpha,n}`` through a weight, with ``alpha`` positive."""

    hyperplanes: frozenset[tuple[Vector, int]] = field(default_factory=frozenset)

    @property
    def count(self) -> int:
        return len(self.hyperplanes)

    @property
    def is_regular(self) -> bool:
        return not self.hyperplanes

    @property
    def roots(self) -> frozenset[Vector]:
        return frozenset(a for a, _ in self.hyperplanes)


def facet(weight: Sequence[int], p: int, system: RootSystem) -> Facet:
    shifted = tuple(a + 1 for a in weight)
    hs = set()
    for r, c in zip(system.positive_roots, system.positive_coroots):
        v = system.pairing(shifted, c)
        if v % p == 0:
            hs.add((r, v // p))
    return Facet(frozenset(hs))


def distance(a: Alcove, b: Alcove) -> int:
    """Signed number of hyperplanes crossed upward going from ``a`` to ``b``."""
    return sum(y - x for x, y in zip(a.coordinates, b.coordinates))


def in_Wa_of(y: AffineElement, nu0: Sequence[int], p: int) -> bool:
    return upper_closure_contains(Alcove(y), dot_act(y, nu0, p), p)


def gallery_word(x: AffineElement) -> tuple[int, ...]:
    """Reduced word for ``x`` in the affine simple reflections (see ``simple_affine_reflections``)."""
    gens = simple_affine_reflections(x.system)
    word = []
    cur = x
    while cur.length:
        ell = cur.length
        for i, g in enumerate(gens):
            nxt = cur * g
            if nxt.length < ell:
                word.append(i)
                cur = nxt
                break
        else:  # pragma: no cover - a nontrivial element always has a descent
            raise AssertionError("no descent found")
    return tuple(reversed(word))


# -- generic order ------------------------------------------------------


def _reflect_alcove(x: AffineElement, root: Vector, n: int) -> AffineElement:
    return reflection(x.system, root, n) * x


def _dominance_leq(system: RootSystem, a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    diff = [y - x for x, y in zip(a, b)]
    return all(c >= 0 for c in system.weight_to_root_rational(diff))


def _upward_neighbours(c: Alcove, ceiling: Alcove) -> Iterator[Alcove]:
    """Alcoves ``s_H c`` with ``c`` below ``H``, staying dominance-below ``ceiling``."""
    s = c.system
    bc = c.barycenter
    for i, (r, co) in enumerate(zip(s.positive_roots, s.positive_coroots)):
        val = s.pairing(bc, co)
        d = c.coordinates[i]
        n = d + 1
        while True:
            # barycenter moves by (n - val) * alpha upward; stop once it leaves the region
            shift = n - val
            bw = s.root_to_weight(r)
            nb = tuple(x + shift * y for x, y in zip(bc, bw))
            if not _dominance_leq(s, nb, ceiling.barycenter):
                break
            yield Alcove(_reflect_alcove(c.element, r, n))
            n += 1


def _downward_neighbours(c: Alcove, floor_: Alcove) -> Iterator[Alcove]:
    s = c.system
    bc = c.barycenter
    for i, (r, co) in enumerate(zip(s.positive_roots, s.positive_coroots)):
        val = s.pairing(bc, co)
        n = c.coordinates[i]
        bw = s.root_to_weight(r)
        while True:
            shift = n - val  # negative
            nb = tuple(x + shift * y for x, y in zip(bc, bw))
            if not _dominance_leq(s, floor_.barycenter, nb):
                break
            yield Alcove(_reflect_alcove(c.element, r, n))
            n -= 1


def _closure_up(a: Alcove, b: Alcove) -> set[Vector]:
    seen = {a.key: a}
    queue = deque([a])
    while queue:
        c = queue.popleft()
        for nb in _upward_neighbours(c, b):
            if nb.key not in seen:
                seen[nb.key] = nb
                queue.append(nb)
    return seen


def generic_leq(a: Alcove, b: Alcove) -> bool:
    """Generic (Lusztig) order: ``b`` is reached from ``a`` by upward reflections."""
    if a.key == b.key:
        return True
    if distance(a, b) <= 0 or not _dominance_leq(a.system, a.barycenter, b.barycenter):
        return False
    return _generic_leq_cached(a.system, a.element, b.element)


_LEQ_CACHE: dict = {}


def _generic_leq_cached(system, x, y) -> bool:
    # translation invariant: normalise so that x has zero translation part
    g = x.gamma
    key = (system, x.w.matrix, tuple(b - a for a, b in zip(g, y.gamma)), y.w.matrix)
    hit = _LEQ_CACHE.get(key)
    if hit is None:
        hit = Alcove(y).key in _closure_up(Alcove(x), Alcove(y))
        _LEQ_CACHE[key] = hit
    return hit


def interval(a: Alcove, b: Alcove) -> list[Alcove]:
    """All ``c`` with ``a <= c <= b`` in the generic order (empty if incomparable)."""
    if not generic_leq(a, b):
        return []
    up = _closure_up(a, b)
    seen = {b.key: b}
    queue = deque([b])
    while queue:
        c = queue.popleft()
        for nb in _downward_neighbours(c, a):
            if nb.key not in seen and nb.key in up:
                seen[nb.key] = nb
                queue.append(nb)
    return sorted(seen.values(), key=lambda c: (distance(a, c), c.key))
