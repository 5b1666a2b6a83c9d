"""Kazhdan-Lusztig polynomials for finite and affine Weyl groups.

Elements are interned as small integers inside a ``CoxeterGroup``; the
polynomial engine works on those ids and stores polynomials as tuples of
integer coefficients in ``q`` (index = degree). ``HalfPoly`` is used at the
public boundary.
"""

from __future__ import annotations

import sys
import threading
from collections import deque
from typing import Hashable

from .alcove import AffineElement, simple_affine_reflections
from .cartan import RootSystem, WeylElement, _matmul
from .cache import PersistentCache
from .halfpoly import HalfPoly

Poly = tuple[int, ...]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _psub_scaled(a: Poly, b: Poly, scale: int, shift: int) -> Poly:
    """``a - scale * q^shift * b``."""
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, c in enumerate(b):
        out[i + shift] -= scale * c
    return _trim(out)


def _pshift(a: Poly, shift: int) -> Poly:
    return (0,) * shift + a if a else ()


def _trim(out: list[int]) -> Poly:
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class CoxeterGroup:
    """Interned elements of a Coxeter group with cached right multiplication."""

    def __init__(self, num_gens: int):
        self.num_gens = num_gens
        self._elems: list = []
        self._ids: dict[Hashable, int] = {}
        self.lengths: list[int] = []
        self._rmul: list[list[int | None]] = []
        self._lock = threading.RLock()

    # subclasses provide _key, _mul_gen, _length
    def _key(self, elem) -> Hashable:  # pragma: no cover - abstract
        raise NotImplementedError

    def _mul_gen(self, elem, s: int):  # pragma: no cover - abstract
        raise NotImplementedError

    def _length(self, elem) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def intern(self, elem) -> int:
        k = self._key(elem)
        i = self._ids.get(k)
        if i is None:
            with self._lock:
                i = self._ids.get(k)
                if i is None:
                    i = len(self._elems)
                    self._elems.append(elem)
                    self.lengths.append(self._length(elem))
                    self._rmul.append([None] * self.num_gens)
                    self._ids[k] = i
        return i

    def element(self, i: int):
        return self._elems[i]

    def key(self, i: int) -> Hashable:
        return self._key(self._elems[i])

    def key_str(self, i: int) -> str:
        """Printable canonical key (stable across runs)."""
        return self._key_str(self._elems[i])

    def _key_str(self, elem) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def rmul(self, i: int, s: int) -> int:
        j = self._rmul[i][s]
        if j is None:
            j = self.intern(self._mul_gen(self._elems[i], s))
            self._rmul[i][s] = j
            self._rmul[j][s] = i
        return j

    def right_descent(self, i: int) -> int | None:
        ell = self.lengths[i]
        for s in range(self.num_gens):
            if self.lengths[self.rmul(i, s)] < ell:
                return s
        return None

    def reduced_word(self, i: int) -> tuple[int, ...]:
        word = []
        while self.lengths[i]:
            s = self.right_descent(i)
            word.append(s)
            i = self.rmul(i, s)
        return tuple(reversed(word))

    def from_word(self, word) -> int:
        i = self.identity_id
        for s in word:
            i = self.rmul(i, s)
        return i

    @property
    def identity_id(self) -> int:  # pragma: no cover - abstract
        raise NotImplementedError


class AffineCoxeter(CoxeterGroup):
    """The affine Weyl group ``W_a`` of ``system`` with its alcove-model length."""

    def __init__(self, system: RootSystem):
        self.system = system
        self.gens = simple_affine_reflections(system)
        super().__init__(len(self.gens))
        n = system.num_positive
        # index of each affine generator's finite part and translation root
        self._gen_root = []
        for g in self.gens:
            if any(g.gamma):
                root_idx = system.root_index[system.root_to_weight(_primitive(g.gamma))]
                self._gen_root.append((root_idx, g.gamma))
            else:
                self._gen_root.append(None)
        self._npos = n
        self._identity = self.intern(AffineElement(system.identity, (0,) * system.rank))

    @property
    def identity_id(self) -> int:
        return self._identity

    def _key(self, elem: AffineElement):
        return (elem.w.matrix, elem.gamma)

    def _key_str(self, elem: AffineElement) -> str:
        return ".".join(map(str, elem.w.word)) + ";" + ",".join(map(str, elem.gamma))

    def _length(self, elem: AffineElement) -> int:
        return elem.length

    def _mul_gen(self, elem: AffineElement, s: int) -> AffineElement:
        g = self.gens[s]
        w = self.system.weyl_from_matrix(_matmul(elem.w.matrix, g.w.matrix))
        info = self._gen_root[s]
        if info is None:
            return AffineElement(w, elem.gamma)
        root_idx, gamma = info
        mult = next(c for c in gamma if c) // next(c for c in self.system.all_roots[root_idx] if c)
        img = self.system.all_roots[elem.w.root_permutation[root_idx]]
        return AffineElement(w, tuple(a + mult * b for a, b in zip(elem.gamma, img)))


def _primitive(gamma):
    from math import gcd

    g = 0
    for c in gamma:
        g = gcd(g, abs(c))
    return tuple(c // g for c in gamma)


class FiniteCoxeter(CoxeterGroup):
    """The finite Weyl group of ``system``."""

    def __init__(self, system: RootSystem):
        self.system = system
        super().__init__(system.rank)
        self._identity = self.intern(system.identity)

    @property
    def identity_id(self) -> int:
        return self._identity

    def _key(self, elem: WeylElement):
        return elem.matrix

    def _key_str(self, elem: WeylElement) -> str:
        return ".".join(map(str, elem.word))

    def _length(self, elem: WeylElement) -> int:
        return elem.length

    def _mul_gen(self, elem: WeylElement, s: int) -> WeylElement:
        return self.system.weyl_from_matrix(_matmul(elem.matrix, self.system.simple_reflection_matrices[s]))


class KLEngine:
    """Memoised Bruhat order and Kazhdan-Lusztig polynomials on a ``CoxeterGroup``.

    Concurrent readers are fine; writers are serialised by a lock. Results do
    not depend on evaluation order.
    """

    def __init__(self, group: CoxeterGroup, store: PersistentCache | None = None):
        self.group = group
        self.store = store
        self._leq: dict[tuple[int, int], bool] = {}
        self._P: dict[tuple[int, int], Poly] = {}
        self._covers: dict[int, tuple[int, ...]] = {}
        self.hits = 0
        self.misses = 0
        self._lock = threading.RLock()

    # -- Bruhat order -------------------------------------------------
    def leq(self, x: int, y: int) -> bool:
        if x == y:
            return True
        lens = self.group.lengths
        if lens[x] >= lens[y]:
            return False
        key = (x, y)
        hit = self._leq.get(key)
        if hit is not None:
            return hit
        g = self.group
        # lifting property along a right descent of y
        s = g.right_descent(y)
        ys = g.rmul(y, s)
        xs = g.rmul(x, s)
        res = self.leq(xs, ys) if lens[xs] < lens[x] else self.leq(x, ys)
        self._leq[key] = res
        return res

    def leq_subword(self, x: int, y: int) -> bool:
        """Subword criterion (exponential; for cross-checking only)."""
        g = self.group
        word = g.reduced_word(y)
        reach = {g.identity_id}
        for s in word:
            reach |= {g.rmul(z, s) for z in reach}
        return x in reach

    def covers(self, z: int) -> tuple[int, ...]:
        """Elements covered by ``z`` in Bruhat order (one-letter deletions)."""
        hit = self._covers.get(z)
        if hit is not None:
            return hit
        g = self.group
        word = g.reduced_word(z)
        target = g.lengths[z] - 1
        out = set()
        prefix = g.identity_id
        for k in range(len(word)):
            cur = prefix
            for s in word[k + 1 :]:
                cur = g.rmul(cur, s)
            if g.lengths[cur] == target:
                out.add(cur)
            prefix = g.rmul(prefix, word[k])
        res = tuple(sorted(out))
        self._covers[z] = res
        return res

    def interval(self, x: int, y: int) -> list[int]:
        """Bruhat interval ``[x, y]``, sorted by decreasing length."""
        if not self.leq(x, y):
            return []
        seen = {y}
        queue = deque([y])
        lx = self.group.lengths[x]
        while queue:
            z = queue.popleft()
            if self.group.lengths[z] <= lx:
                continue
            for c in self.covers(z):
                if c not in seen and self.leq(x, c):
                    seen.add(c)
                    queue.append(c)
        lens = self.group.lengths
        return sorted(seen, key=lambda z: (-lens[z], z))

    # -- KL polynomials -----------------------------------------------
    def poly(self, x: int, y: int) -> Poly:
        if x == y:
            return (1,)
        if not self.leq(x, y):
            return ()
        key = (x, y)
        hit = self._P.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        res = self._compute(x, y)
        with self._lock:
            self._P[key] = res
        return res

    def _compute(self, x: int, y: int, s: int | None = None) -> Poly:
        g = self.group
        lens = g.lengths
        if s is None:
            s = g.right_descent(y)
        xs = g.rmul(x, s)
        if lens[xs] < lens[x]:
            return self.poly(xs, y)
        v = g.rmul(y, s)
        # xs > x:  P_{x,y} = q P_{xs,v} + P_{x,v} - sum mu(z,v) q^{(l(y)-l(z))/2} P_{x,z}
        res = _padd(_pshift(self.poly(xs, v), 1), self.poly(x, v))
        lv = lens[v]
        for z in self.interval(x, v):
            dz = lv - lens[z]
            if dz % 2 == 0 or dz < 1:
                continue
            if lens[g.rmul(z, s)] > lens[z]:
                continue
            m = self.mu(z, v)
            if m:
                res = _psub_scaled(res, self.poly(x, z), m, (lens[y] - lens[z]) // 2)
        return res

    def recompute_with_descent(self, x: int, y: int, s: int) -> Poly:
        """Evaluate one step of the recursion with a chosen right descent ``s`` of ``y``."""
        if x == y:
            return (1,)
        if not self.leq(x, y):
            return ()
        if self.group.lengths[self.group.rmul(y, s)] > self.group.lengths[y]:
            raise ValueError("s is not a right descent of y")
        return self._compute(x, y, s)

    def stored_poly(self, x: int, y: int) -> Poly:
        """``poly`` backed by the persistent store (used for top-level requests)."""
        if self.store is None:
            return self.poly(x, y)
        key = self.group.key_str(x) + "|" + self.group.key_str(y)
        hit = self.store.get(key)
        if hit is not None:
            return tuple(hit)
        res = self.poly(x, y)
        self.store.put(key, list(res))
        return res

    def mu(self, x: int, y: int) -> int:
        d = self.group.lengths[y] - self.group.lengths[x]
        if d <= 0 or d % 2 == 0:
            return 0
        p = self.poly(x, y)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def kl_polynomial(self, x: int, y: int) -> HalfPoly:
        return HalfPoly.from_q_coeffs(self.poly(x, y))

    def clear(self) -> None:
        with self._lock:
            self._P.clear()
            self._leq.clear()
            self._covers.clear()
            self.hits = self.misses = 0

    @property
    def memo_size(self) -> int:
        return len(self._P)


_ENGINES: dict[tuple[str, RootSystem], KLEngine] = {}
_ENGINES_LOCK = threading.Lock()


def affine_engine(system: RootSystem) -> KLEngine:
    """Shared engine for the affine Weyl group of ``system``."""
    with _ENGINES_LOCK:
        eng = _ENGINES.get(("affine", system))
        if eng is None:
            eng = KLEngine(AffineCoxeter(system))
            _ENGINES[("affine", system)] = eng
        return eng


def finite_engine(system: RootSystem) -> KLEngine:
    with _ENGINES_LOCK:
        eng = _ENGINES.get(("finite", system))
        if eng is None:
            eng = KLEngine(FiniteCoxeter(system))
            _ENGINES[("finite", system)] = eng
        return eng


def bruhat_leq(x: AffineElement | WeylElement, y: AffineElement | WeylElement) -> bool:
    eng = _engine_for(x)
    g = eng.group
    return eng.leq(g.intern(x), g.intern(y))


def kl_polynomial(x: AffineElement | WeylElement, y: AffineElement | WeylElement) -> HalfPoly:
    eng = _engine_for(x)
    g = eng.group
    return eng.kl_polynomial(g.intern(x), g.intern(y))


def mu(x: AffineElement | WeylElement, y: AffineElement | WeylElement) -> int:
    eng = _engine_for(x)
    g = eng.group
    return eng.mu(g.intern(x), g.intern(y))


def _engine_for(x) -> KLEngine:
    if isinstance(x, AffineElement):
        return affine_engine(x.system)
    return finite_engine(x.system)
