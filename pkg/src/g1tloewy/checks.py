"""Invariant suites shared by ``g1tloewy check`` and the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .alcove import dot_act, in_Wa_of, locate, singularity_count
from .cache import PersistentCache
from .cartan import RootSystem
from .halfpoly import HalfPoly
from .loewy import (
    LayerTable,
    parabolic_loewy_length,
    parabolic_table,
    projective_loewy_length,
    singular_roots,
    verma_table,
)
from .oracle import compare, sl2_baby_verma, socle_series
from .periodic import PeriodicEngine, get_engine


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def weight_window(system: RootSystem, p: int, upper: int | None = None) -> list[tuple[int, ...]]:
    """Weights with coordinates in ``[-p-1, upper)``; the default ``2p`` meets every alcove position and wall type."""
    return list(itertools.product(range(-p - 1, 2 * p if upper is None else upper), repeat=system.rank))


def sample_weights(
    system: RootSystem, p: int, per_class: int, seed: int = 0, upper: int | None = None
) -> list[tuple[int, ...]]:
    """Deterministic sample with up to ``per_class`` weights for each singularity count."""
    by_n: dict[int, list] = {}
    for w in weight_window(system, p, upper):
        by_n.setdefault(singularity_count(w, p, system), []).append(w)
    rng = random.Random(seed)
    out = []
    for n in sorted(by_n):
        pool = by_n[n]
        out.extend(pool if len(pool) <= per_class else rng.sample(pool, per_class))
    return out


# -- individual families -----------------------------------------------------


def check_oracle(system: RootSystem, p: int) -> CheckResult:
    if system.rank != 1:
        return CheckResult("rank-1 oracle", True, "skipped (rank > 1)")
    bad = []
    nus = range(-p, p * p)
    for nu in nus:
        M = sl2_baby_verma(nu, p)
        series = socle_series(M)
        if not (M.check_relations() and sum(series.dims) == p):
            bad.append(nu)
            continue
        if not compare(verma_table(system, (nu,), p), series):
            bad.append(nu)
    return CheckResult("rank-1 oracle", not bad, f"{len(nus)} weights, mismatches {bad}")


def check_lengths(system: RootSystem, weights, p: int, table: Callable[..., LayerTable]) -> CheckResult:
    bad = []
    classes = set()
    for nu in weights:
        tb = table(nu)
        classes.add(singularity_count(nu, p, system))
        head_ok = len(tb.head) == 1 and tb.head[0][1] == 1
        socle_ok = [(lab.weight, m) for lab, m in tb.socle] == [(tuple(nu), 1)]
        if tb.loewy_length != tb.declared_length or not head_ok or not socle_ok:
            bad.append(nu)
    return CheckResult(
        "Loewy length = 1 + |R+| - N(nu)",
        not bad,
        f"{len(weights)} weights, N classes {sorted(classes)}, failures {bad}",
    )


def check_inversion(eng: PeriodicEngine, limit: int | None = None) -> CheckResult:
    # the right identity touches new sub-intervals, so sweep until none appear
    done: set = set()
    bad = []
    while limit is None or len(done) < limit:
        todo = [(k, v) for k, v in list(eng.q_pairs.items()) if k not in done]
        if not todo:
            break
        for key, (y, x) in todo[: None if limit is None else limit - len(done)]:
            done.add(key)
            delta = HalfPoly.one() if y.key == x.key else HalfPoly.zero()
            if eng.left_identity(y, x) != delta or eng.right_identity(y, x) != delta:
                bad.append((y.coordinates, x.coordinates))
    return CheckResult("inversion identity (left and right)", not bad, f"{len(done)} pairs, failures {bad[:5]}")


def check_degrees(eng: PeriodicEngine) -> CheckResult:
    from .alcove import distance

    bad = []
    n = 0
    for y, x in list(eng.q_pairs.values()):
        q = eng.qpoly(y, x)
        n += 1
        if y.key == x.key:
            if q != HalfPoly.one():
                bad.append((y.coordinates, x.coordinates))
            continue
        d = distance(y, x)
        if any(c < 0 for c in q.terms.values()) or any(not 0 <= e <= d - 1 for e in q.terms):
            bad.append((y.coordinates, x.coordinates, str(q)))
    return CheckResult("Q degree bound and positivity", not bad, f"{n} polynomials, failures {bad[:5]}")


def check_stabilization(eng: PeriodicEngine, extra: int = 1) -> CheckResult:
    """Every stored ``P^`` agrees at depths ``k``, ``k+1``; deeper recomputation agrees too."""
    deeper = PeriodicEngine(eng.system, eng.depth_max + 1, eng.convention)
    bad = []
    reports = list(eng._phat.items())
    for key, rep in reports:
        a, b = eng.phat_pairs[key]
        k = rep.depth
        if rep.values[k] != rep.values[k + 1]:
            bad.append(rep.pair)
            continue
        if deeper.phat(a, b) != rep.polynomial:
            bad.append(rep.pair)
            continue
        for j in range(1, extra + 1):
            if eng.phat_at_depth(a, b, k + 1 + j) != rep.polynomial:
                bad.append(rep.pair)
                break
    return CheckResult("P^ stabilization", not bad, f"{len(reports)} pairs, failures {bad[:5]}")


def singular_restriction(system: RootSystem, nu, p: int, **kw) -> tuple[list, list]:
    """The singular table and the restricted regular table, as weight layers."""
    x, nu0 = locate(nu, p, system)
    lam0 = (0,) * system.rank  # interior to A+ since p > h
    regular = verma_table(system, dot_act(x, lam0, p), p, **kw)
    restricted = []
    for layer in regular.layers:
        row = []
        for lab, m in layer:
            if in_Wa_of(lab.element, nu0, p):
                row.append((dot_act(lab.element, nu0, p), m))
        restricted.append(sorted(row))
    while restricted and not restricted[-1]:
        restricted.pop()
    return verma_table(system, nu, p, **kw).weight_layers(), restricted


def check_singular(system: RootSystem, weights, p: int) -> CheckResult:
    sing = [w for w in weights if singularity_count(w, p, system)]
    bad = [w for w in sing if (lambda a: a[0] != a[1])(singular_restriction(system, w, p))]
    return CheckResult("singular row restriction", not bad, f"{len(sing)} singular weights, failures {bad}")


def check_parabolic(system: RootSystem, weights, p: int) -> CheckResult:
    bad = []
    full = tuple(range(system.rank))
    for nu in weights:
        if parabolic_table(system, (), nu, p).weight_layers() != verma_table(system, nu, p).weight_layers():
            bad.append(("empty", nu))
        tb = parabolic_table(system, full, nu, p)
        if tb.weight_layers() != [[(tuple(nu), 1)]]:
            bad.append(("full", nu))
    return CheckResult("parabolic collapses (J empty, J full)", not bad, f"{len(weights)} weights, failures {bad}")


def check_formulas(system: RootSystem, p: int) -> CheckResult:
    """Closed-form lengths against recomputation from inversion sets and singular roots."""
    bad = []
    subsets = [c for r in range(system.rank + 1) for c in itertools.combinations(range(system.rank), r)]
    window = weight_window(system, p)
    for nu in window:
        n = len(singular_roots(system, nu, p))
        if n != singularity_count(nu, p, system) or projective_loewy_length(system, nu, p) != 2 * system.num_positive - 2 * n + 1:
            bad.append(("projective", nu))
        for J in subsets:
            # independent recount: positive roots outside R_J, minus singular ones
            span = {r for r in system.positive_roots if all(c == 0 or i in J for i, c in enumerate(r))}
            expect = 1 + len(set(system.positive_roots) - span - singular_roots(system, nu, p))
            if parabolic_loewy_length(system, J, nu, p) != expect:
                bad.append(("parabolic", J, nu))
    return CheckResult(
        "closed-form length formulas",
        not bad,
        f"{len(window)} weights x {len(subsets)} subsets, failures {bad[:5]}",
    )


def check_cache_dir(cache_dir) -> CheckResult:
    if cache_dir is None:
        return CheckResult("cache integrity", True, "no persistent cache")
    files = sorted(Path(cache_dir).glob("*.log"))
    dropped = {}
    for f in files:
        ns = _namespace_of(f)
        c = PersistentCache(f, ns)
        if c.dropped or not c.header_ok:
            dropped[f.name] = c.dropped
    detail = f"{len(files)} files"
    if dropped:
        detail += f"; corrupt records dropped (recomputed on demand): {dropped}"
    return CheckResult("cache integrity", not dropped, detail)


def _namespace_of(path: Path) -> str:
    # file names are <kind>-<system>[-<convention>]-v<version>.log
    parts = path.stem.split("-")
    return "/".join(parts[:-1])


def run_checks(system, p, depth_max, convention, cache_dir, samples: int = 12) -> dict:
    # scan the cache before any engine opens it, so corruption is seen and repaired here
    results = [check_cache_dir(cache_dir)]
    eng = get_engine(system, depth_max, convention, cache_dir)
    kw = dict(depth_max=depth_max, convention=convention, cache_dir=cache_dir)
    weights = sample_weights(system, p, samples)
    results.append(check_oracle(system, p))
    results.append(check_lengths(system, weights, p, lambda nu: verma_table(system, nu, p, **kw)))
    results.append(check_inversion(eng))
    results.append(check_degrees(eng))
    results.append(check_stabilization(eng))
    results.append(check_singular(system, weights, p))
    results.append(check_parabolic(system, weights[: max(1, samples)], p))
    results.append(check_formulas(system, p))
    return {
        "type": system.name,
        "p": p,
        "ok": all(r.ok for r in results),
        "results": [r.to_json() for r in results],
    }
