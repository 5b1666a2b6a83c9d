"""Socle-layer tables and Loewy lengths of G1T-Verma modules.

Layer ``i + 1`` of the socle series of the baby Verma module with socle
``L^(nu)`` contains ``L^(y.nu0)`` with multiplicity equal to the coefficient
of ``q^((d(y,x) - i)/2)`` in ``Q^{y,x}``, where ``nu`` lies in the upper
closure of ``x.A+`` and ``nu0 = x^-1 . nu``. Rows ``y`` for which ``y.nu0``
is not in the upper closure of ``y.A+`` are dropped. The parabolic variant
replaces ``Q^{y,x}`` by ``sum_z Q^{y,z} (-1)^{d_J(z,x)} P^J_{z,x}``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alcove import (
    AffineElement,
    Alcove,
    distance,
    dot_act,
    gallery_word,
    generic_leq,
    in_Wa_of,
    locate,
    singularity_count,
)
from .cartan import RootSystem, Vector
from .halfpoly import HalfPoly
from .periodic import DEFAULT_DEPTH_MAX, candidate_rows, get_engine, levi_context

ASSUMPTIONS = (
    "Lusztig's character formula (L) holds for G1T at this p",
    "p is large enough for the Koszul grading arguments (not checked numerically)",
)
SINGULAR_NOTE = (
    "singular rows use the upper-closure criterion y.nu0 in upper closure of y.A+ "
    "for arbitrary facets, justified by translation to the facet of nu"
)


class ConventionViolation(RuntimeError):
    """A computed multiplicity is negative or lands outside the declared layers."""


@dataclass(frozen=True)
class SimpleLabel:
    """The simple module ``L^(weight) = L(weight0) (x) p weight1`` attached to alcove ``element``."""

    element: AffineElement
    weight: Vector
    weight0: Vector
    weight1: Vector

    @classmethod
    def make(cls, system: RootSystem, y: AffineElement, nu0: Sequence[int], p: int) -> "SimpleLabel":
        w = dot_act(y, nu0, p)
        w0, w1 = system.restricted_decomposition(w, p)
        return cls(y, w, w0, w1)

    @property
    def alcove_word(self) -> tuple[int, ...]:
        return gallery_word(self.element)

    def to_json(self) -> dict:
        return {
            "weight": list(self.weight),
            "weight0": list(self.weight0),
            "weight1": list(self.weight1),
            "alcove_word": list(self.alcove_word),
        }

    def __str__(self) -> str:
        return f"L^{_fmt(self.weight)}"


def _fmt(v: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


Layer = list[tuple[SimpleLabel, int]]


@dataclass
class LayerTable:
    """Socle layers (layer 1 = socle) of one module."""

    module: dict
    layers: list[Layer]
    declared_length: int
    metadata: dict = field(default_factory=dict)

    @property
    def loewy_length(self) -> int:
        """Number of nonempty layers."""
        return sum(1 for layer in self.layers if layer)

    @property
    def socle(self) -> Layer:
        return self.layers[0] if self.layers else []

    @property
    def head(self) -> Layer:
        nonempty = [layer for layer in self.layers if layer]
        return nonempty[-1] if nonempty else []

    def radical_series(self) -> list[Layer]:
        """Radical layers (top first); equal to the reversed socle layers by rigidity."""
        return list(reversed(self.layers))

    def multiplicities(self) -> dict[Vector, int]:
        out: dict[Vector, int] = {}
        for layer in self.layers:
            for lab, m in layer:
                out[lab.weight] = out.get(lab.weight, 0) + m
        return out

    def weight_layers(self) -> list[list[tuple[Vector, int]]]:
        """Layers as ``(weight, multiplicity)`` lists: the data compared across tables."""
        return [sorted((lab.weight, m) for lab, m in layer) for layer in self.layers]

    # -- rendering ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "module": self.module,
            "assumptions": list(self.metadata.get("assumptions", ASSUMPTIONS)),
            "metadata": {k: v for k, v in self.metadata.items() if k != "assumptions"},
            "series": "socle",
            "declared_length": self.declared_length,
            "loewy_length": self.loewy_length,
            "layers": [
                [dict(lab.to_json(), multiplicity=m) for lab, m in layer] for layer in self.layers
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["layer", "weight", "weight0", "weight1", "multiplicity"])
        for i, layer in enumerate(self.layers, start=1):
            for lab, m in layer:
                w.writerow([i, _fmt(lab.weight), _fmt(lab.weight0), _fmt(lab.weight1), m])
        return buf.getvalue()

    def pretty(self) -> str:
        mod = self.module
        title = f"{mod['kind']} module, type {mod['type']}, p={mod['p']}, nu={_fmt(mod['nu'])}"
        if mod.get("J") is not None:
            title += f", J={{{','.join(str(j + 1) for j in mod['J'])}}}"
        lines = [title, f"Loewy length {self.loewy_length} (declared {self.declared_length})"]
        lines.append("socle layers, bottom (1) to top; radical series is the reverse")
        rows = []
        for i, layer in enumerate(self.layers, start=1):
            for lab, m in layer:
                rows.append((str(i), _fmt(lab.weight), _fmt(lab.weight0), _fmt(lab.weight1), str(m)))
        head = ("layer", "weight", "weight0", "weight1", "mult")
        widths = [max(len(r[k]) for r in rows + [head]) for k in range(5)]
        lines.append("  ".join(h.ljust(wd) for h, wd in zip(head, widths)))
        for r in rows:
            lines.append("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip())
        lines.append("assumes: " + "; ".join(self.metadata.get("assumptions", ASSUMPTIONS)))
        return "\n".join(lines)


# -- lengths ----------------------------------------------------------


def verma_loewy_length(system: RootSystem, nu: Sequence[int], p: int) -> int:
    return 1 + system.num_positive - singularity_count(nu, p, system)


def projective_loewy_length(system: RootSystem, nu: Sequence[int], p: int) -> int:
    return 2 * system.num_positive - 2 * singularity_count(nu, p, system) + 1


def twisted_verma_loewy_length(system: RootSystem, nu: Sequence[int], p: int) -> int:
    return system.num_positive - singularity_count(nu, p, system) + 1


def singular_roots(system: RootSystem, nu: Sequence[int], p: int) -> frozenset[Vector]:
    """``R+_nu``: positive roots with ``<nu + rho, alpha^vee>`` divisible by ``p``."""
    shifted = tuple(a + 1 for a in nu)
    return frozenset(
        r for r, c in zip(system.positive_roots, system.positive_coroots) if system.pairing(shifted, c) % p == 0
    )


def parabolic_loewy_length(system: RootSystem, J: Iterable[int], nu: Sequence[int], p: int) -> int:
    J = tuple(J)
    wJ = system.w0 * system.longest_element(J)
    return 1 + len(system.inversion_set(wJ) - singular_roots(system, nu, p))


# -- tables -----------------------------------------------------------


def _assemble(
    system: RootSystem,
    nu: Sequence[int],
    p: int,
    x: AffineElement,
    nu0: Vector,
    polys: list[tuple[AffineElement, HalfPoly]],
    declared: int,
    module: dict,
    metadata: dict,
) -> LayerTable:
    X = Alcove(x)
    layers: list[dict] = [dict() for _ in range(declared)]
    for y, poly in polys:
        Y = Alcove(y)
        d = distance(Y, X)
        lab = SimpleLabel.make(system, y, nu0, p)
        for e, c in poly.terms.items():
            layer = d - e + 1
            if c < 0:
                raise ConventionViolation(f"negative multiplicity {c} for {lab} (q^({e}/2))")
            if not 1 <= layer <= declared:
                raise ConventionViolation(
                    f"{lab} lands in layer {layer} outside 1..{declared} (q^({e}/2), d={d})"
                )
            slot = layers[layer - 1]
            slot[lab] = slot.get(lab, 0) + c
    out = []
    for slot in layers:
        items = sorted(slot.items(), key=lambda kv: (distance(Alcove(kv[0].element), X), kv[0].weight))
        out.append(items)
    while out and not out[-1]:
        out.pop()
    return LayerTable(module, out, declared, metadata)


def _metadata(system, nu, p, depth_max, convention, nu0) -> dict:
    meta = {
        "assumptions": list(ASSUMPTIONS),
        "depth_max": depth_max,
        "convention": convention,
        "nu0": list(nu0),
        "singularity_count": singularity_count(nu, p, system),
    }
    if meta["singularity_count"]:
        meta["singular_rows"] = SINGULAR_NOTE
    return meta


def verma_table(
    system: RootSystem,
    nu: Sequence[int],
    p: int,
    depth_max: int = DEFAULT_DEPTH_MAX,
    convention: str = "plain",
    cache_dir=None,
) -> LayerTable:
    """Socle layers of the G1T-Verma module with socle ``L^(nu)``."""
    nu = tuple(nu)
    _check_p(system, p)
    eng = get_engine(system, depth_max, convention, cache_dir)
    x, nu0 = locate(nu, p, system)
    X = Alcove(x)
    polys = []
    for y in candidate_rows(system, x, nu0, p):
        if not in_Wa_of(y, nu0, p):
            continue
        q = eng.qpoly(Alcove(y), X)
        if not q.is_zero():
            polys.append((y, q))
    module = {"kind": "verma", "type": system.name, "p": p, "nu": list(nu), "J": None}
    return _assemble(
        system, nu, p, x, nu0, polys, verma_loewy_length(system, nu, p), module,
        _metadata(system, nu, p, depth_max, convention, nu0),
    )


def parabolic_table(
    system: RootSystem,
    J: Iterable[int],
    nu: Sequence[int],
    p: int,
    depth_max: int = DEFAULT_DEPTH_MAX,
    convention: str = "plain",
    cache_dir=None,
) -> LayerTable:
    """Socle layers of the module parabolically induced from ``L^J(nu)``."""
    nu = tuple(nu)
    _check_p(system, p)
    ctx = levi_context(system, J)
    eng = get_engine(system, depth_max, convention, cache_dir)
    levi_eng = None if ctx.is_empty else get_engine(ctx.levi.system, depth_max, "plain", cache_dir)
    x, nu0 = locate(nu, p, system)
    X = Alcove(x)
    cx = None if ctx.is_empty else ctx.levi_alcove(X)
    polys = []
    for y in candidate_rows(system, x, nu0, p):
        if not in_Wa_of(y, nu0, p):
            continue
        Y = Alcove(y)
        total = HalfPoly.zero()
        for Z in ctx.lower_orbit(X, Y.barycenter):
            if not generic_leq(Y, Z):
                continue
            if ctx.is_empty:
                pj = HalfPoly.one()
            else:
                pj = levi_eng.phat(ctx.levi_alcove(Z), cx)
            if pj.is_zero():
                continue
            term = eng.qpoly(Y, Z) * pj
            total = total - term if ctx.d_J(Z, X) % 2 else total + term
        if not total.is_zero():
            polys.append((y, total))
    module = {"kind": "parabolic", "type": system.name, "p": p, "nu": list(nu), "J": list(ctx.J)}
    declared = parabolic_loewy_length(system, ctx.J, nu, p)
    return _assemble(
        system, nu, p, x, nu0, polys, declared, module,
        _metadata(system, nu, p, depth_max, convention, nu0),
    )


def _check_p(system: RootSystem, p: int) -> None:
    if p <= system.coxeter_number:
        raise ValueError(f"p={p} must exceed the Coxeter number {system.coxeter_number}")


def layer_table_schema() -> dict:
    """The published JSON schema for ``LayerTable.to_json`` output."""
    from importlib.resources import files

    return json.loads(files("g1tloewy").joinpath("schema/layer_table.schema.json").read_text())
