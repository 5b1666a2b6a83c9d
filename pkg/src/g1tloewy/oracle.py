"""Brute-force socle series of sl2 baby Verma modules over F_p.

The module is given by explicit matrices for ``e``, ``f``, ``h``. The socle
filtration is computed from the Jacobson radical ``J`` of the matrix algebra
they generate: ``soc^i M = {v : J^i v = 0}``. Constituents of each layer are
labelled by the honest integer T-weights of their primitive vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Mat = list[list[int]]

MODELS = ("dual", "verma")


# -- F_p linear algebra ----------------------------------------------------


def _row_reduce(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``rows`` mod ``p``; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(_row_reduce(rows, p)[0])


def nullspace(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of ``{v : rows . v = 0}`` over F_p."""
    red, piv = _row_reduce(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, piv):
            v[pc] = -r[fc] % p
        basis.append(v)
    return basis


def matmul(a: Mat, b: Mat, p: int) -> Mat:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def matvec(a: Mat, v: Sequence[int], p: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def _identity(n: int) -> Mat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _flat(a: Mat) -> list[int]:
    return [x for row in a for x in row]


def _unflat(v: Sequence[int], n: int) -> Mat:
    return [list(v[i * n : (i + 1) * n]) for i in range(n)]


# -- modules ---------------------------------------------------------------


@dataclass
class OracleModule:
    """Matrices of ``e, f, h`` on a basis ``v_0..v_{p-1}`` with T-weights ``lam - 2i``."""

    lam: int
    p: int
    e: Mat
    f: Mat
    h: Mat
    weights: list[int]
    model: str = "dual"

    @property
    def dim(self) -> int:
        return len(self.weights)

    def _pow(self, a: Mat, k: int) -> Mat:
        out = _identity(self.dim)
        for _ in range(k):
            out = matmul(out, a, self.p)
        return out

    def check_relations(self) -> bool:
        """``[e,f]=h``, ``[h,e]=2e``, ``[h,f]=-2f``, ``e^p=f^p=0``, ``h^p=h``."""
        p = self.p
        e, f, h = self.e, self.f, self.h

        def sub(a, b):
            return [[(x - y) % p for x, y in zip(r, s)] for r, s in zip(a, b)]

        def scale(a, c):
            return [[x * c % p for x in r] for r in a]

        zero = [[0] * self.dim for _ in range(self.dim)]
        return (
            sub(matmul(e, f, p), matmul(f, e, p)) == [[x % p for x in r] for r in h]
            and sub(matmul(h, e, p), matmul(e, h, p)) == scale(e, 2)
            and sub(matmul(h, f, p), matmul(f, h, p)) == scale(f, -2)
            and self._pow(e, p) == zero
            and self._pow(f, p) == zero
            and self._pow(h, p) == [[x % p for x in r] for r in h]
        )


def sl2_baby_verma(lam: int, p: int, model: str = "dual") -> OracleModule:
    """The p-dimensional baby Verma module of highest T-weight ``lam``.

    ``model="dual"``: ``e v_i = v_{i-1}``, ``f v_i = (i+1)(lam-i) v_{i+1}``, so
    ``v_0`` spans the bottom of the socle (the module with socle ``L^(lam)``).
    ``model="verma"``: ``f v_i = v_{i+1}``, ``e v_i = i(lam-i+1) v_{i-1}``, so
    ``v_0`` generates the module (head ``L^(lam)``).
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    n = p
    e = [[0] * n for _ in range(n)]
    f = [[0] * n for _ in range(n)]
    h = [[0] * n for _ in range(n)]
    for i in range(n):
        h[i][i] = (lam - 2 * i) % p
        if model == "dual":
            if i >= 1:
                e[i - 1][i] = 1
            if i + 1 < n:
                f[i + 1][i] = (i + 1) * (lam - i) % p
        else:
            if i + 1 < n:
                f[i + 1][i] = 1
            if i >= 1:
                e[i - 1][i] = i * (lam - i + 1) % p
    return OracleModule(lam, p, e, f, h, [lam - 2 * i for i in range(n)], model)


# -- algebra and radical -----------------------------------------------------


class _Echelon:
    """Incrementally maintained echelon basis over F_p."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        v = [x % p for x in v]
        for r, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, r)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], self.p - 2, self.p)
        self.rows.append([x * inv % self.p for x in v])
        self.pivots.append(c)
        return True


def _span_algebra(gens: list[Mat], p: int) -> list[Mat]:
    """Basis of the unital algebra generated by ``gens``."""
    n = len(gens[0])
    ech = _Echelon(p)
    mats: list[Mat] = []
    frontier = [_identity(n)]
    ech.add(_flat(frontier[0]))
    mats.append(frontier[0])
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = matmul(g, m, p)
                if ech.add(_flat(prod)):
                    mats.append(prod)
                    nxt.append(prod)
        frontier = nxt
    return mats


class RadicalError(ArithmeticError):
    """The trace-form radical failed its nilpotency certificate."""


def jacobson_radical(algebra: list[Mat], p: int) -> list[Mat]:
    """Basis of the radical of the algebra spanned by ``algebra``.

    The trace-form radical ``{a : tr(ab) = 0 for all b}`` contains every
    nilpotent ideal; it is returned only after checking that it is itself
    nilpotent, which proves it equals the Jacobson radical.
    """
    d = len(algebra)
    n = len(algebra[0])
    # tr(ab) = sum_ij a_ij b_ji
    flat = [_flat(a) for a in algebra]
    flat_t = [_flat([list(col) for col in zip(*b)]) for b in algebra]
    gram = [[sum(x * y for x, y in zip(fa, fb)) % p for fb in flat_t] for fa in flat]
    coeffs = nullspace(gram, d, p)
    rad = []
    for c in coeffs:
        m = [[0] * n for _ in range(n)]
        for k, a in zip(c, algebra):
            if k:
                for i in range(n):
                    for j in range(n):
                        m[i][j] = (m[i][j] + k * a[i][j]) % p
        rad.append(m)
    _certify_nilpotent(rad, p)
    return rad


def _certify_nilpotent(rad: list[Mat], p: int) -> None:
    if not rad:
        return
    n = len(rad[0])
    power = rad
    for _ in range(n + 1):
        rows, _ = _row_reduce([_flat(m) for m in power], p)
        if not rows:
            return
        mats = [_unflat(r, n) for r in rows]
        power = [matmul(a, b, p) for a in mats for b in rad]
    raise RadicalError("trace-form radical is not nilpotent")


# -- socle series -------------------------------------------------------------


@dataclass
class SocleSeries:
    """Socle layers (bottom first), each a sorted list of highest T-weights."""

    layers: list[list[int]]
    dims: list[int]

    @property
    def length(self) -> int:
        return len(self.layers)


def _subspace_basis(vecs: list[list[int]], p: int) -> list[list[int]]:
    return _row_reduce(vecs, p)[0]


def socle_series(M: OracleModule) -> SocleSeries:
    p, n = M.p, M.dim
    alg = _span_algebra([M.e, M.f, M.h], p)
    rad = jacobson_radical(alg, p)
    layers_sub: list[list[list[int]]] = [[]]  # soc^0 = 0
    while len(layers_sub[-1]) < n:
        prev = layers_sub[-1]
        # functionals vanishing on soc^{i-1}
        ann = nullspace(prev, n, p) if prev else [[int(i == j) for j in range(n)] for i in range(n)]
        cond = [matvec([list(col) for col in zip(*a)], phi, p) for a in rad for phi in ann]
        # phi(a v) = (a^T phi) . v
        cur = _subspace_basis(nullspace(cond, n, p) if cond else _identity(n), p)
        if len(cur) == len(prev):  # pragma: no cover - cannot happen for a nilpotent radical
            raise RadicalError("socle series stalled")
        layers_sub.append(cur)
    out_layers, dims = [], []
    for i in range(1, len(layers_sub)):
        lower, upper = layers_sub[i - 1], layers_sub[i]
        out_layers.append(_layer_labels(M, lower, upper))
        dims.append(len(upper) - len(lower))
    return SocleSeries(out_layers, dims)


def _layer_labels(M: OracleModule, lower: list[list[int]], upper: list[list[int]]) -> list[int]:
    """Highest T-weights of the simple constituents of ``upper / lower``."""
    p, n = M.p, M.dim
    labels = []
    base = rank(lower, p) if lower else 0
    for k, wt in enumerate(M.weights):
        # vectors of this weight: multiples of the basis vector v_k (weights are distinct)
        vk = [int(i == k) for i in range(n)]
        in_upper = rank(upper + [vk], p) == len(upper)
        if not in_upper:
            continue
        if lower and rank(lower + [vk], p) == base:
            continue
        ev = matvec(M.e, vk, p)
        if not any(ev) or (lower and rank(lower + [ev], p) == base):
            labels.append(wt)
    return sorted(labels, reverse=True)


def compare(table, series: SocleSeries) -> bool:
    """Layer-by-layer equality of a rank-1 ``LayerTable`` with an oracle series."""
    mine = []
    for layer in table.layers:
        row = []
        for lab, m in layer:
            row.extend([lab.weight[0]] * m)
        mine.append(sorted(row, reverse=True))
    return mine == [sorted(layer, reverse=True) for layer in series.layers]
