"""Generic polynomials ``P^`` and periodic polynomials ``Q`` on alcoves.

``P^_{A,B}`` is the stable value of the ordinary affine KL polynomial
``P_{w0 x_k, w0 y_k}`` where ``x_k, y_k`` are the elements of ``A, B``
translated into the dominant chamber by ``k * 2rho``. Left multiplication by
``w0`` reflects both alcoves deep into the antidominant chamber, where the
generic order agrees with the Bruhat order. At ``q = 1`` this reproduces the
signed inverse of the baby Verma decomposition matrix (Kostant partition
counts for translates of ``A+``). ``Q`` is the signed unitriangular inverse
of ``P^``::

    sum_z (-1)^d(y,z) P^_{y,z} Q^{z,x} = delta_{y,x}

Depth ``k`` is counted from the first translate at which both alcoves are
dominant (all coordinates ``>= 0``); shallower translates are not meaningful
limits and can agree by accident.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product
from math import ceil, floor
from pathlib import Path
from typing import Iterable, Sequence

from .alcove import (
    AffineElement,
    Alcove,
    distance,
    dot_act,
    generic_leq,
    interval,
    locate,
    simple_affine_reflections,
    _fold,
)
from .cache import PersistentCache
from .cartan import LeviSubsystem, RootSystem
from .halfpoly import HalfPoly
from .klpoly import affine_engine

DEFAULT_DEPTH_MAX = 6
CONVENTIONS = ("plain", "dual")
CACHE_VERSION = 1


@dataclass
class StabilizationReport:
    system: str
    pair: tuple[str, str]
    base_shift: int
    values: list[HalfPoly] = field(default_factory=list)
    depth: int | None = None
    exhausted: bool = False

    @property
    def polynomial(self) -> HalfPoly | None:
        return None if self.depth is None else self.values[self.depth]

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "pair": list(self.pair),
            "base_shift": self.base_shift,
            "depth": self.depth,
            "exhausted": self.exhausted,
            "values": [v.to_json() for v in self.values],
        }


class StabilizationError(RuntimeError):
    def __init__(self, report: StabilizationReport):
        super().__init__(
            f"P^ for {report.pair} did not stabilise within depth {len(report.values) - 2}"
        )
        self.report = report


def _pair_key(a: AffineElement, b: AffineElement) -> tuple:
    return (a.w.matrix, b.w.matrix, tuple(y - x for x, y in zip(a.gamma, b.gamma)))


def _elem_str(x: AffineElement) -> str:
    return ".".join(map(str, x.w.word)) + ";" + ",".join(map(str, x.gamma))


class PeriodicEngine:
    """``P^`` and ``Q`` for one root system, memoised modulo translations."""

    def __init__(
        self,
        system: RootSystem,
        depth_max: int = DEFAULT_DEPTH_MAX,
        convention: str = "plain",
        cache_dir: str | Path | None = None,
    ):
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
        self.system = system
        self.depth_max = depth_max
        self.convention = convention
        self.kl = affine_engine(system)
        self._phat: dict[tuple, StabilizationReport] = {}
        self._q: dict[tuple, HalfPoly] = {}
        # representative alcove pairs behind each memo key, for audits
        self.q_pairs: dict[tuple, tuple[Alcove, Alcove]] = {}
        self.phat_pairs: dict[tuple, tuple[Alcove, Alcove]] = {}
        self._lock = threading.RLock()
        self._shift = tuple(
            system.root_pairing(system.two_rho, c) for c in system.positive_coroots
        )
        self._w0 = AffineElement(system.w0, (0,) * system.rank)
        self.phat_store = self.q_store = None
        if cache_dir is not None:
            d = Path(cache_dir)
            name = system.name
            self.phat_store = PersistentCache(d / f"phat-{name}-v{CACHE_VERSION}.log", f"phat/{name}")
            self.q_store = PersistentCache(
                d / f"q-{name}-{convention}-v{CACHE_VERSION}.log", f"q/{name}/{convention}"
            )
            if self.kl.store is None:
                self.kl.store = PersistentCache(d / f"kl-{name}-v{CACHE_VERSION}.log", f"kl/{name}")

    # -- P^ ---------------------------------------------------------------
    def _base_shift(self, a: AffineElement, b: AffineElement) -> int:
        k = 0
        for x in (a, b):
            for d, c in zip(x.coordinates, self._shift):
                if d < 0:
                    k = max(k, ceil(-d / c))
        return k

    def phat_report(self, a: Alcove, b: Alcove) -> StabilizationReport:
        xa, xb = a.element, b.element
        key = _pair_key(xa, xb)
        hit = self._phat.get(key)
        if hit is not None:
            return hit
        # normalise: move a to zero translation part
        shift = tuple(-g for g in xa.gamma)
        na, nb = xa.translate(shift), xb.translate(shift)
        pair = (_elem_str(na), _elem_str(nb))
        skey = "|".join(pair)
        if self.phat_store is not None and skey in self.phat_store:
            rec = self.phat_store.get(skey)
            rep = StabilizationReport(
                self.system.name,
                pair,
                rec["base"],
                [HalfPoly.from_json(v) for v in rec["values"]],
                rec["depth"],
            )
        else:
            rep = self._stabilise(na, nb, pair)
            if self.phat_store is not None and rep.depth is not None:
                self.phat_store.put(
                    skey,
                    {"base": rep.base_shift, "depth": rep.depth, "values": [v.to_json() for v in rep.values]},
                )
        with self._lock:
            self._phat[key] = rep
            self.phat_pairs[key] = (a, b)
        return rep

    def _stabilise(self, na: AffineElement, nb: AffineElement, pair) -> StabilizationReport:
        rep = StabilizationReport(self.system.name, pair, 0)
        if na == nb:
            rep.values = [HalfPoly.one(), HalfPoly.one()]
            rep.depth = 0
            return rep
        if not generic_leq(Alcove(na), Alcove(nb)):
            rep.values = [HalfPoly.zero(), HalfPoly.zero()]
            rep.depth = 0
            return rep
        base = self._base_shift(na, nb)
        rep.base_shift = base
        for k in range(self.depth_max + 2):
            val = self._raw(na, nb, base + k)
            rep.values.append(HalfPoly.from_q_coeffs(val))
            if k and rep.values[k] == rep.values[k - 1]:
                rep.depth = k - 1
                return rep
        rep.exhausted = True
        raise StabilizationError(rep)

    def phat(self, a: Alcove, b: Alcove) -> HalfPoly:
        return self.phat_report(a, b).polynomial

    def phat_at_depth(self, a: Alcove, b: Alcove, k: int) -> HalfPoly:
        """Raw ``P_{x_k, y_k}`` at depth ``k`` (for stabilisation audits)."""
        xa, xb = a.element, b.element
        shift = tuple(-g for g in xa.gamma)
        na, nb = xa.translate(shift), xb.translate(shift)
        if na == nb:
            return HalfPoly.one()
        return HalfPoly.from_q_coeffs(self._raw(na, nb, self._base_shift(na, nb) + k))

    def _raw(self, na: AffineElement, nb: AffineElement, k: int) -> tuple[int, ...]:
        t = tuple(k * c for c in self.system.two_rho)
        g = self.kl.group
        return self.kl.stored_poly(
            g.intern(self._w0 * na.translate(t)), g.intern(self._w0 * nb.translate(t))
        )

    def _phat_inv(self, y: Alcove, z: Alcove) -> HalfPoly:
        """The coefficient used in the inversion under the active convention."""
        ph = self.phat(y, z)
        if self.convention == "plain" or ph.is_zero():
            return ph
        d = distance(y, z)
        return HalfPoly({d - e: c for e, c in ph.terms.items()})

    # -- Q ----------------------------------------------------------------
    def qpoly(self, y: Alcove, x: Alcove) -> HalfPoly:
        key = _pair_key(y.element, x.element)
        hit = self._q.get(key)
        if hit is not None:
            return hit
        if y.element == x.element:
            res = HalfPoly.one()
        elif not generic_leq(y, x):
            res = HalfPoly.zero()
        else:
            skey = None
            res = None
            if self.q_store is not None:
                shift = tuple(-g for g in y.element.gamma)
                skey = _elem_str(y.element.translate(shift)) + "|" + _elem_str(x.element.translate(shift))
                stored = self.q_store.get(skey)
                if stored is not None:
                    res = HalfPoly.from_json(stored)
            if res is None:
                res = HalfPoly.zero()
                for z in interval(y, x):
                    if z.key == y.key:
                        continue
                    qz = self.qpoly(z, x)
                    if qz.is_zero():
                        continue
                    term = self._phat_inv(y, z) * qz
                    res = res + term if distance(y, z) % 2 else res - term
                if skey is not None:
                    self.q_store.put(skey, res.to_json())
        with self._lock:
            self._q[key] = res
            self.q_pairs[key] = (y, x)
        return res

    def left_identity(self, y: Alcove, x: Alcove) -> HalfPoly:
        """``sum_z (-1)^d(y,z) P^_{y,z} Q^{z,x}`` over the interval; should be ``delta``."""
        tot = HalfPoly.zero()
        for z in interval(y, x):
            term = self._phat_inv(y, z) * self.qpoly(z, x)
            tot = tot - term if distance(y, z) % 2 else tot + term
        return tot

    def right_identity(self, y: Alcove, x: Alcove) -> HalfPoly:
        """``sum_z Q^{y,z} (-1)^d(z,x) P^_{z,x}`` over the interval; should be ``delta``."""
        tot = HalfPoly.zero()
        for z in interval(y, x):
            term = self.qpoly(y, z) * self._phat_inv(z, x)
            tot = tot - term if distance(z, x) % 2 else tot + term
        return tot

    # -- supports ---------------------------------------------------------
    def q_support(self, x: AffineElement, nu0: Sequence[int], p: int) -> list[Alcove]:
        """Alcoves ``y <= x`` with ``Q^{y,x} != 0`` and ``y.nu0`` in the weight box of ``x.nu0``."""
        X = Alcove(x)
        out = []
        for y in candidate_rows(self.system, x, nu0, p):
            Y = Alcove(y)
            if not self.qpoly(Y, X).is_zero():
                out.append(Y)
        return sorted(out, key=lambda c: (distance(c, X), c.key))


def stabiliser(system: RootSystem, nu0: Sequence[int], p: int) -> list[AffineElement]:
    """Elements of ``W_a`` fixing ``nu0`` (in the closure of ``A+``) under the dot action."""
    gens = [g for g in simple_affine_reflections(system) if dot_act(g, nu0, p) == tuple(nu0)]
    start = AffineElement(system.identity, (0,) * system.rank)
    seen = {(start.w.matrix, start.gamma): start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for g in gens:
            nxt = cur * g
            k = (nxt.w.matrix, nxt.gamma)
            if k not in seen:
                seen[k] = nxt
                todo.append(nxt)
    return list(seen.values())


def weight_box(system: RootSystem, top: Sequence[int], p: int) -> Iterable[tuple[int, ...]]:
    """Weights ``top - sum c_i alpha_i`` with ``0 <= c_i <= (p-1) (2rho)_i``.

    Contains every weight of the baby Verma module with highest weight ``top``.
    """
    ranges = [range((p - 1) * t + 1) for t in system.two_rho]
    for c in product(*ranges):
        shift = system.root_to_weight(c)
        yield tuple(a - b for a, b in zip(top, shift))


def candidate_rows(system: RootSystem, x: AffineElement, nu0: Sequence[int], p: int) -> list[AffineElement]:
    """All ``y <= x`` with ``y.nu0`` in the weight box below ``x.nu0``."""
    top = dot_act(x, nu0, p)
    stab = stabiliser(system, nu0, p)
    X = Alcove(x)
    out = {}
    nu0 = tuple(nu0)
    for mu in weight_box(system, top, p):
        y0, mu0 = locate(mu, p, system)
        if tuple(mu0) != nu0:
            continue
        for s in stab:
            y = y0 * s
            k = (y.w.matrix, y.gamma)
            if k not in out and generic_leq(Alcove(y), X):
                out[k] = y
    return list(out.values())


# -- engines and Levi factors ----------------------------------------------

_ENGINES: dict[tuple, PeriodicEngine] = {}
_ENGINES_LOCK = threading.Lock()


def get_engine(
    system: RootSystem,
    depth_max: int = DEFAULT_DEPTH_MAX,
    convention: str = "plain",
    cache_dir: str | Path | None = None,
) -> PeriodicEngine:
    key = (system, depth_max, convention, str(cache_dir) if cache_dir else None)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
        if eng is None:
            eng = PeriodicEngine(system, depth_max, convention, cache_dir)
            _ENGINES[key] = eng
        return eng


def reset_engines() -> None:
    """Drop all in-memory engines (persistent stores are left alone)."""
    from . import alcove, klpoly

    with _ENGINES_LOCK:
        _ENGINES.clear()
    with klpoly._ENGINES_LOCK:
        klpoly._ENGINES.clear()
    alcove._LEQ_CACHE.clear()


def phat(a: Alcove, b: Alcove, depth_max: int = DEFAULT_DEPTH_MAX) -> HalfPoly:
    return get_engine(a.system, depth_max).phat(a, b)


def qpoly(y: Alcove, x: Alcove, depth_max: int = DEFAULT_DEPTH_MAX, convention: str = "plain") -> HalfPoly:
    return get_engine(y.system, depth_max, convention).qpoly(y, x)


def q_support(x: AffineElement, nu0: Sequence[int], p: int, depth_max: int = DEFAULT_DEPTH_MAX) -> list[Alcove]:
    return get_engine(x.system, depth_max).q_support(x, nu0, p)


class LeviMismatchError(ValueError):
    pass


class LeviContext:
    """Translate alcoves of ``W_a`` into alcoves of the Levi ``W_{J,a}``."""

    def __init__(self, system: RootSystem, J: Iterable[int]):
        self.system = system
        self.levi: LeviSubsystem = system.levi_subsystem(J)
        self.J = self.levi.subset
        pos = system.positive_index
        self._roots = sorted(pos[r] for r in self.levi.positive_roots)

    @property
    def is_empty(self) -> bool:
        return not self.J

    def levi_alcove(self, a: Alcove) -> Alcove:
        """The ``W_{J,a}``-alcove containing ``a`` as an alcove of the Levi system."""
        b = a.barycenter
        return Alcove(_fold(self.levi.system, [b[j] for j in self.levi.embed]))

    def embed_element(self, u: AffineElement) -> AffineElement:
        """Image of a Levi affine element in ``W_a``."""
        s = self.system
        w = s.weyl_element(tuple(self.levi.embed[i] for i in u.w.word))
        gamma = [0] * s.rank
        for k, c in enumerate(u.gamma):
            gamma[self.levi.embed[k]] = c
        return AffineElement(w, tuple(gamma))

    def d_J(self, a: Alcove, b: Alcove) -> int:
        """Distance from ``a`` to ``b`` counting only hyperplanes of ``R_J``."""
        ca, cb = a.coordinates, b.coordinates
        return sum(cb[i] - ca[i] for i in self._roots)

    def same_orbit(self, a: Alcove, b: Alcove) -> bool:
        u = b.element * a.element.inverse()
        return self._in_levi(u)

    def _in_levi(self, u: AffineElement) -> bool:
        J = set(self.J)
        return all(i in J for i in u.w.word) and all(c == 0 or i in J for i, c in enumerate(u.gamma))

    def lower_orbit(self, x: Alcove, floor_barycenter) -> list[Alcove]:
        """Alcoves ``z = u.x`` (``u`` in ``W_{J,a}``) with ``floor <= z <= x`` in dominance.

        Exhaustive over ``W_J`` and a box of Levi translations: the barycenter of
        ``u.x`` is ``w_J(b_x) + gamma_J``, so the dominance window bounds ``gamma_J``.
        """
        s = self.system
        bx = x.barycenter
        room = s.weight_to_root_rational(tuple(a - b for a, b in zip(bx, floor_barycenter)))
        if any(c < 0 for c in room):
            return []
        ls = self.levi.system
        emb = self.levi.embed
        out = {}
        for wj in ls.weyl_group():
            w = s.weyl_element(tuple(emb[i] for i in wj.word))
            r = s.weight_to_root_rational(tuple(a - b for a, b in zip(w.act(bx), bx)))
            ranges = [range(ceil(-r[j] - room[j]), floor(-r[j]) + 1) for j in emb]
            for g in product(*ranges):
                gamma = [0] * s.rank
                for k, c in enumerate(g):
                    gamma[emb[k]] = c
                z = Alcove(AffineElement(w, tuple(gamma)) * x.element)
                out[z.key] = z
        return list(out.values())


_LEVIS: dict[tuple, LeviContext] = {}


def levi_context(system: RootSystem, J: Iterable[int]) -> LeviContext:
    key = (system, tuple(sorted(set(J))))
    ctx = _LEVIS.get(key)
    if ctx is None:
        ctx = LeviContext(system, J)
        _LEVIS[key] = ctx
    return ctx


def phat_levi(
    J: Iterable[int], a: Alcove, b: Alcove, depth_max: int = DEFAULT_DEPTH_MAX
) -> HalfPoly:
    """``P^J_{A,B}`` for alcoves in one ``W_{J,a}``-orbit, computed inside the Levi system."""
    ctx = levi_context(a.system, J)
    if not ctx.same_orbit(a, b):
        raise LeviMismatchError("alcoves are not in the same W_{J,a}-orbit")
    if ctx.is_empty:
        return HalfPoly.one() if a.key == b.key else HalfPoly.zero()
    eng = get_engine(ctx.levi.system, depth_max)
    return eng.phat(ctx.levi_alcove(a), ctx.levi_alcove(b))
