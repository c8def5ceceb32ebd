"""Laurent polynomials in v with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentInt:
    """An element of Z[v, v^-1], stored as {exponent: coefficient} without zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "LaurentInt":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentInt":
        return cls({e: c})

    @classmethod
    def v2(cls, m: int) -> "LaurentInt":
        """v^(2m), i.e. q^m."""
        return cls({2 * m: 1})

    @staticmethod
    def _coerce(x) -> "LaurentInt":
        if isinstance(x, LaurentInt):
            return x
        if isinstance(x, int):
            return LaurentInt.const(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self.coeffs.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials are invertible")
            return LaurentInt({e * k: c ** k if k % 2 == 0 else c})
        out = LaurentInt.const(1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate_q(self, q) -> Fraction:
        """Value at v^2 = q; odd exponents of v are rejected."""
        q = Fraction(q)
        if q == 0:
            raise ValueError("cannot specialize at q = 0")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if e % 2:
                raise ValueError("odd power of v has no value at v^2 = q")
            total += c * q ** (e // 2)
        return total

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                parts.append(str(c))
            else:
                mono = "v" if e == 1 else f"v^{e}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def laurent_sum(items: Iterable[LaurentInt]) -> LaurentInt:
    out = LaurentInt()
    for x in items:
        out = out + x
    return out
