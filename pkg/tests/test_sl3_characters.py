"""Independent check of A2 tables at q = 1 via SL3 characters.

The baby Verma module has character ``e^nu prod_{alpha>0} (1 + e^-alpha + ... + e^-(p-1)alpha)``.
Peeling off characters of ``L^(mu) = L(mu0) (x) p mu1`` from the top recovers its
composition multiplicities, where ``L(mu0)`` for restricted ``mu0`` comes from
Weyl characters (one reflection across the upper wall when ``mu0`` is above it).
"""

from collections import Counter

import pytest

from g1tloewy.loewy import verma_table

P = 5
ROOTS = [(2, -1), (-1, 2), (1, 1)]


def weyl_character(lam):
    a, b = lam
    if a == -1 or b == -1:  # lam + rho on a wall
        return Counter()
    shape = (a + b, b, 0)
    cells = [(i, j) for i in range(3) for j in range(shape[i])]
    out: Counter = Counter()

    def fill(k, tab):
        if k == len(cells):
            n = [0, 0, 0]
            for v in tab.values():
                n[v] += 1
            out[(n[0] - n[1], n[1] - n[2])] += 1
            return
        i, j = cells[k]
        lo = max(tab[(i, j - 1)] if j else 0, tab[(i - 1, j)] + 1 if i else 0)
        for v in range(lo, 3):
            tab[(i, j)] = v
            fill(k + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return out


def simple_character(mu):
    m0 = (mu[0] % P, mu[1] % P)
    m1 = ((mu[0] - m0[0]) // P, (mu[1] - m0[1]) // P)
    ch = weyl_character(m0)
    c = m0[0] + m0[1] + 2 - P
    if c > 0:
        ch.subtract(weyl_character((m0[0] - c, m0[1] - c)))
        ch = +ch
    return Counter({(k[0] + P * m1[0], k[1] + P * m1[1]): v for k, v in ch.items()})


def composition_factors(nu):
    ch: Counter = Counter()
    for n1 in range(P):
        for n2 in range(P):
            for n3 in range(P):
                w = tuple(nu[i] - n1 * ROOTS[0][i] - n2 * ROOTS[1][i] - n3 * ROOTS[2][i] for i in range(2))
                ch[w] += 1
    mult: Counter = Counter()
    while ch:
        top = max(ch, key=lambda w: (w[0] + w[1], w))
        m = ch[top]
        mult[top] += m
        for k, v in simple_character(top).items():
            ch[k] -= m * v
        assert min(ch.values(), default=0) >= 0
        ch = +ch
    return dict(mult)


@pytest.mark.parametrize("nu", [(0, 0), (-3, 0), (1, 2), (7, -4), (4, 0), (3, 1), (-1, -1), (9, 4)])
def test_multiplicities_match_characters(A2, nu):
    assert verma_table(A2, nu, P).multiplicities() == composition_factors(nu)
