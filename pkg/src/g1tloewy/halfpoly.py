"""Integer polynomials in ``q^(1/2)``.

Exponents are stored in half units: the key ``e`` stands for ``q^(e/2)``.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class HalfPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    # -- constructors -----------------------------------------------
    @classmethod
    def one(cls) -> "HalfPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "HalfPoly":
        return cls()

    @classmethod
    def monomial(cls, half_exponent: int, coeff: int = 1) -> "HalfPoly":
        return cls({half_exponent: coeff})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[int]) -> "HalfPoly":
        """From a coefficient list in integer powers of ``q`` (index = degree)."""
        return cls({2 * i: c for i, c in enumerate(coeffs)})

    # -- access -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, half_exponent: int) -> int:
        return self._terms.get(half_exponent, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list[int]:
        return list(self._terms)

    @property
    def degree(self) -> int:
        """Largest half-exponent (``-1`` for the zero polynomial)."""
        return max(self._terms) if self._terms else -1

    @property
    def low_degree(self) -> int:
        return min(self._terms) if self._terms else -1

    def at_one(self) -> int:
        return sum(self._terms.values())

    def is_integral(self) -> bool:
        """Only integer powers of ``q`` occur."""
        return all(e % 2 == 0 for e in self._terms)

    def q_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("polynomial has half-integral exponents")
        if not self._terms:
            return ()
        out = [0] * (self.degree // 2 + 1)
        for e, c in self._terms.items():
            out[e // 2] = c
        return tuple(out)

    # -- arithmetic -------------------------------------------------
    def __add__(self, other: "HalfPoly | int") -> "HalfPoly":
        other = _coerce(other)
        return HalfPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "HalfPoly":
        return HalfPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "HalfPoly | int") -> "HalfPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "HalfPoly":
        return _coerce(other) - self

    def __mul__(self, other: "HalfPoly | int") -> "HalfPoly":
        other = _coerce(other)
        return HalfPoly(
            (e1 + e2, c1 * c2) for e1, c1 in self._terms.items() for e2, c2 in other._terms.items()
        )

    __rmul__ = __mul__

    def shift(self, half_exponent: int) -> "HalfPoly":
        """Multiply by ``q^(half_exponent/2)``."""
        return HalfPoly({e + half_exponent: c for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = _coerce(other)
        return isinstance(other, HalfPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text -------------------------------------------------------
    def __repr__(self) -> str:
        return f"HalfPoly({self._terms})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[list[int]]:
        """``[[half_exponent, coeff], ...]`` in increasing exponent order."""
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "HalfPoly":
        return cls((e, c) for e, c in data)


def _coerce(x: "HalfPoly | int") -> HalfPoly:
    if isinstance(x, HalfPoly):
        return x
    if isinstance(x, int):
        return HalfPoly({0: x})
    raise TypeError(f"cannot coerce {type(x).__name__} to HalfPoly")
