"""Acceptance criteria 1-9, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import sys
import tempfile
import time
from pathlib import Path

import pytest

from g1tloewy.alcove import singularity_count
from g1tloewy.cache import PersistentCache
from g1tloewy.cartan import build_root_system
from g1tloewy.checks import (
    _namespace_of,
    check_degrees,
    check_formulas,
    check_inversion,
    check_stabilization,
    sample_weights,
    singular_restriction,
)
from g1tloewy.loewy import parabolic_loewy_length, parabolic_table, verma_table
from g1tloewy.oracle import compare, sl2_baby_verma, socle_series
from g1tloewy.periodic import DEFAULT_DEPTH_MAX, get_engine, reset_engines

# (type, p, per-class sample size, upper window bound); A1 needs a wider window to reach 50 weights
LENGTH_RUNS = [("A1", 5, 30, 100), ("A1", 7, 30, 140), ("A2", 5, 24, None), ("B2", 5, 17, None)]
ORACLE_PRIMES = (5, 7)

RESULTS: dict[int, tuple[bool, str]] = {}


class State:
    """Shared between criteria: the cache directory and what criteria 1-2 produced."""

    def __init__(self, cache_dir: Path):
        self.cache_dir = str(cache_dir)
        self.dumps1: dict = {}
        self.dumps2: dict = {}
        self.samples: dict = {}
        self.engines: list = []


def _record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def _attainable_counts(system, p) -> set[int]:
    box = range(-1, p * p)
    return {singularity_count(w, p, system) for w in itertools.product(box, repeat=system.rank)}


# -- criteria ----------------------------------------------------------------


def criterion_1(st: State) -> bool:
    A1 = build_root_system("A1")
    t0 = time.perf_counter()
    bad, n = [], 0
    for p in ORACLE_PRIMES:
        for nu in range(-p, p * p):
            tb = verma_table(A1, (nu,), p, cache_dir=st.cache_dir)
            st.dumps1[(p, nu)] = tb.dumps()
            n += 1
            if not compare(tb, socle_series(sl2_baby_verma(nu, p))):
                bad.append((p, nu))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    _record(1, ok, f"rank-1 oracle: {n} weights for p in {ORACLE_PRIMES}, mismatches {bad}, {dt:.1f}s")
    return ok


def criterion_2(st: State) -> bool:
    notes, bad = [], []
    for t, p, per, upper in LENGTH_RUNS:
        R = build_root_system(t)
        weights = sample_weights(R, p, per, upper=upper)
        st.samples[(t, p)] = weights
        classes = set()
        for nu in weights:
            tb = verma_table(R, nu, p, cache_dir=st.cache_dir)
            st.dumps2[(t, p, nu)] = tb.dumps()
            classes.add(singularity_count(nu, p, R))
            if tb.loewy_length != 1 + R.num_positive - singularity_count(nu, p, R):
                bad.append((t, p, nu))
        eng = get_engine(R, DEFAULT_DEPTH_MAX, "plain", st.cache_dir)
        if eng not in st.engines:
            st.engines.append(eng)
        attainable = _attainable_counts(R, p)
        missing = sorted(set(range(R.num_positive + 1)) - attainable)
        if len(weights) < 50 or classes != attainable:
            bad.append((t, p, "sample"))
        note = f"{t} p={p}: {len(weights)} weights, N in {sorted(classes)}"
        if missing:
            note += f" (N={missing} not attainable)"
        notes.append(note)
    ok = not bad
    _record(2, ok, "; ".join(notes) + f"; failures {bad}")
    return ok


def criterion_3(st: State) -> bool:
    res = [check_inversion(e) for e in st.engines]
    ok = all(r.ok for r in res)
    _record(3, ok, "inversion identities: " + "; ".join(f"{e.system.name} {r.detail}" for e, r in zip(st.engines, res)))
    return ok


def criterion_4(st: State) -> bool:
    res = [check_degrees(e) for e in st.engines]
    ok = all(r.ok for r in res)
    _record(4, ok, "degree/positivity: " + "; ".join(f"{e.system.name} {r.detail}" for e, r in zip(st.engines, res)))
    return ok


def criterion_5(st: State) -> bool:
    res = [check_stabilization(e) for e in st.engines]
    ok = all(r.ok for r in res)
    _record(5, ok, "stabilization: " + "; ".join(f"{e.system.name} {r.detail}" for e, r in zip(st.engines, res)))
    return ok


def criterion_6(st: State) -> bool:
    bad, n = [], 0
    for (t, p), weights in st.samples.items():
        R = build_root_system(t)
        for nu in weights:
            if not singularity_count(nu, p, R):
                continue
            n += 1
            mine, restricted = singular_restriction(R, nu, p)
            if mine != restricted:
                bad.append((t, p, nu))
    ok = not bad and n >= 20
    _record(6, ok, f"singular row restriction: {n} singular weights, failures {bad}")
    return ok


def criterion_7(st: State) -> bool:
    bad, n, n_regular = [], 0, 0
    for (t, p), weights in st.samples.items():
        R = build_root_system(t)
        full = tuple(range(R.rank))
        for nu in weights:
            n += 1
            if parabolic_table(R, (), nu, p).weight_layers() != verma_table(R, nu, p).weight_layers():
                bad.append(("empty", t, p, nu))
            if parabolic_table(R, full, nu, p).weight_layers() != [[(tuple(nu), 1)]]:
                bad.append(("full", t, p, nu))
    A2 = build_root_system("A2")
    for nu in st.samples[("A2", 5)]:
        if singularity_count(nu, 5, A2):
            continue
        n_regular += 1
        tb = parabolic_table(A2, (0,), nu, 5)
        if not tb.loewy_length == 3 == parabolic_loewy_length(A2, (0,), nu, 5):
            bad.append(("A2 J={1}", nu, tb.loewy_length))
    ok = not bad
    _record(7, ok, f"parabolic collapses on {n} weights, A2 J={{1}} length 3 on {n_regular} regular weights, failures {bad}")
    return ok


def criterion_8(st: State) -> bool:
    res = [
        (t, check_formulas(build_root_system(t), p))
        for t, p in [("A1", 5), ("A1", 7), ("A2", 5), ("B2", 5), ("G2", 7), ("A3", 5)]
    ]
    ok = all(r.ok for _, r in res)
    _record(8, ok, "closed forms: " + "; ".join(f"{t} {r.detail}" for t, r in res))
    return ok


def criterion_9(st: State) -> bool:
    bad = []
    # cache round trip: every stored value reloads to the same serialisation
    files = sorted(Path(st.cache_dir).glob("*.log"))
    records = 0
    for f in files:
        ns = _namespace_of(f)
        c = PersistentCache(f, ns)
        if c.dropped or not c.header_ok:
            bad.append(("reload", f.name))
        again = PersistentCache(f, ns)
        for k, v in c.items():
            records += 1
            if json.dumps(again.get(k), sort_keys=True) != json.dumps(v, sort_keys=True):
                bad.append(("round trip", f.name, k))
    # warm reruns with fresh in-memory state
    reset_engines()
    A1 = build_root_system("A1")
    for (p, nu), text in st.dumps1.items():
        if verma_table(A1, (nu,), p, cache_dir=st.cache_dir).dumps() != text:
            bad.append(("crit1", p, nu))
    for (t, p, nu), text in st.dumps2.items():
        if verma_table(build_root_system(t), nu, p, cache_dir=st.cache_dir).dumps() != text:
            bad.append(("crit2", t, p, nu))
    # cold recomputation without any cache agrees too
    reset_engines()
    for (t, p, nu), text in list(st.dumps2.items())[::7]:
        if verma_table(build_root_system(t), nu, p).dumps() != text:
            bad.append(("cold", t, p, nu))
    ok = not bad
    _record(
        9, ok,
        f"{len(files)} cache files, {records} records round-tripped; "
        f"{len(st.dumps1) + len(st.dumps2)} warm tables bit-identical; failures {bad[:5]}",
    )
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


# -- pytest wiring --------------------------------------------------------------


@pytest.fixture(scope="module")
def state(tmp_path_factory):
    reset_engines()
    st = State(tmp_path_factory.mktemp("acceptance-cache"))
    yield st
    reset_engines()


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(state, n):
    needs = {1: (), 2: (), 8: (), 9: (1, 2)}.get(n, (2,))
    for m in needs:
        if m not in RESULTS:
            CRITERIA[m - 1](state)
    assert CRITERIA[n - 1](state), RESULTS[n][1]


def main() -> int:
    with tempfile.TemporaryDirectory() as d:
        st = State(Path(d))
        results = [c(st) for c in CRITERIA]
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
