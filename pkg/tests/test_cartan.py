import pytest

from g1tloewy.cartan import RootSystemError, build_root_system, parse_type, simple_cartan_matrix


@pytest.mark.parametrize(
    "desc, npos, h, order",
    [("A1", 1, 2, 2), ("A2", 3, 3, 6), ("A3", 6, 4, 24), ("B2", 4, 4, 8), ("C3", 9, 6, 48), ("G2", 6, 6, 12)],
)
def test_counts(desc, npos, h, order):
    s = build_root_system(desc)
    assert s.num_positive == npos
    assert s.coxeter_number == h
    assert len(s.weyl_group()) == order
    assert s.w0.length == npos


def test_cartan_b2_c2_transpose():
    b, c = simple_cartan_matrix("B", 2), simple_cartan_matrix("C", 2)
    assert b == [list(r) for r in zip(*c)]


def test_product_type():
    s = build_root_system("A1xA1")
    assert parse_type("A1xA1") == (("A", 1), ("A", 1))
    assert s.rank == 2 and s.num_positive == 2 and s.coxeter_number == 2


def test_bad_descriptor():
    with pytest.raises(RootSystemError):
        build_root_system("Q7")


def test_rho_and_pairing(A2):
    assert A2.rho == (1, 1)
    assert A2.two_rho == (2, 2)
    for c in A2.positive_coroots:
        assert A2.pairing(A2.rho, c) >= 1


def test_inversion_set_of_w0_is_everything(B2):
    assert B2.inversion_set(B2.w0) == frozenset(B2.positive_roots)
    assert B2.inversion_set(B2.identity) == frozenset()


def test_longest_parabolic(A2):
    wJ = A2.longest_element((0,))
    assert wJ.length == 1
    assert len(A2.inversion_set(A2.w0 * wJ)) == 2


def test_restricted_decomposition(A2):
    w0, w1 = A2.restricted_decomposition((-3, 7), 5)
    assert w0 == (2, 2) and w1 == (-1, 1)


def test_levi_subsystem(B2):
    lv = B2.levi_subsystem((1,))
    assert lv.system.rank == 1
    assert len(lv.positive_roots) == 1
