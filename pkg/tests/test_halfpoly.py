from g1tloewy.halfpoly import HalfPoly


def test_arithmetic():
    a = HalfPoly.from_q_coeffs([1, 1])
    assert a.terms == {0: 1, 2: 1}
    assert (a * a).q_coeffs() == (1, 2, 1)
    assert (a - a).is_zero()
    assert a + HalfPoly.zero() == a
    assert a * HalfPoly.one() == a


def test_half_exponents_and_text():
    p = HalfPoly({1: 2, 0: 1})
    assert str(p) == "1 + 2*q^(1/2)"
    assert not p.is_integral()
    assert p.at_one() == 3
    assert str(HalfPoly.zero()) == "0"


def test_json_round_trip():
    p = HalfPoly({0: 1, 3: -2, 4: 5})
    assert HalfPoly.from_json(p.to_json()) == p
