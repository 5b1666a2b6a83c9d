import pytest

from g1tloewy.alcove import AffineElement, Alcove, distance, generic_leq, identity, locate
from g1tloewy.halfpoly import HalfPoly
from g1tloewy.periodic import (
    PeriodicEngine,
    StabilizationError,
    candidate_rows,
    get_engine,
    levi_context,
    phat_levi,
    stabiliser,
)


def _kostant_a2(g):
    # ways to write g = a*alpha1 + b*alpha2 as a sum of positive roots
    return sum(1 for n in range(min(g) + 1) if g[0] - n >= 0 and g[1] - n >= 0)


def test_phat_at_one_is_kostant_partition_function(A2):
    eng = get_engine(A2)
    X = Alcove(identity(A2))
    for w in A2.weyl_group():
        for gam in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 1)]:
            Y = Alcove(AffineElement(w, tuple(-c for c in gam)))
            if generic_leq(Y, X):
                assert eng.phat(Y, X).at_one() == _kostant_a2(gam)


def test_phat_rho_translate(A2):
    eng = get_engine(A2)
    X = Alcove(identity(A2))
    Y = Alcove(AffineElement(A2.identity, (-1, -1)))
    assert eng.phat(Y, X) == HalfPoly.from_q_coeffs([1, 1])
    Y = Alcove(AffineElement(A2.identity, (-2, -2)))
    assert eng.phat(Y, X) == HalfPoly.from_q_coeffs([1, 1, 1])


def test_phat_translation_invariant(B2):
    eng = get_engine(B2)
    x, _ = locate((0, 0), 5, B2)
    y, _ = locate((-4, 1), 5, B2)
    a, b = Alcove(y), Alcove(x)
    t = (3, -2)
    assert eng.phat(a, b) == eng.phat(a.translate(t), b.translate(t))


def test_q_a1_rank_one(A1):
    eng = get_engine(A1)
    x, _ = locate((1,), 5, A1)
    y, _ = locate((-3,), 5, A1)
    X, Y = Alcove(x), Alcove(y)
    assert eng.qpoly(X, X) == HalfPoly.one()
    assert eng.qpoly(Y, X) == HalfPoly.one()
    assert eng.qpoly(X, Y).is_zero()
    assert eng.left_identity(Y, X).is_zero() and eng.right_identity(Y, X).is_zero()


def test_stabilization_report_and_failure(B2):
    # this pair only settles one translate past the first dominant one
    Y = Alcove(AffineElement(B2.identity, (-1, -1)))
    X = Alcove(AffineElement(B2.weyl_element([0]), (0, 0)))
    with pytest.raises(StabilizationError) as exc:
        PeriodicEngine(B2, depth_max=0).phat_report(Y, X)
    rep = exc.value.report
    assert rep.exhausted and rep.polynomial is None
    assert rep.to_json()["system"] == "B2"
    ok = PeriodicEngine(B2, depth_max=1).phat_report(Y, X)
    assert ok.depth == 1
    assert ok.values == [HalfPoly.one(), HalfPoly.from_q_coeffs([1, 1]), HalfPoly.from_q_coeffs([1, 1])]


def test_stabiliser_and_rows(A2):
    assert len(stabiliser(A2, (0, 0), 5)) == 1
    assert len(stabiliser(A2, (-1, -1), 5)) == 6
    x, nu0 = locate((0, 0), 5, A2)
    rows = candidate_rows(A2, x, nu0, 5)
    X = Alcove(x)
    assert any(r == x for r in rows)
    assert all(distance(Alcove(r), X) >= 0 for r in rows)


def test_levi_context(A2):
    ctx = levi_context(A2, (0,))
    X = Alcove(identity(A2))
    assert ctx.levi.system.rank == 1
    assert ctx.d_J(X, X) == 0
    assert ctx.levi_alcove(X).coordinates == (0,)
    empty = levi_context(A2, ())
    assert empty.is_empty
    assert phat_levi((), X, X) == HalfPoly.one()
