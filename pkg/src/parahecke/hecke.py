"""
Iwahori-Hecke algebras with unequal parameters over Z[v, v^-1].

The algebra attached to a finite Coxeter system (H, S) given by explicit
SignedPerm generators has basis T_w (w in H) and multiplication

    T_s T_w = T_{sw}                                   if l'(sw) > l'(w)
    T_s T_w = v^{2c_s} T_{sw} + (v^{2c_s} - 1) T_w     otherwise

where l' is the length function of (H, S), not of the ambient W(B_n).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coxeter import SignedPerm, coxeter_matrix, identity, mul
from .laurent import LaurentInt
from .parabolics import cw_generators

__all__ = [
    "HeckeAlgebra", "HeckeElt", "ParamExponents", "t_mul", "specialize",
    "type_b_algebra", "verify_presentation",
]


@dataclass(frozen=True)
class ParamExponents:
    """Generator s has parameter v^(2 c_s)."""

    gens: tuple[SignedPerm, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.gens) != len(self.c):
            raise ValueError("one exponent per generator is required")
        if any(x <= 0 for x in self.c):
            raise ValueError("parameter exponents must be positive")
        # generators joined by an odd bond are conjugate and must share a parameter
        if self.gens:
            m = coxeter_matrix(self.gens)
            for i in range(len(self.gens)):
                for j in range(len(self.gens)):
                    if i != j and m[i][j] % 2 == 1 and self.c[i] != self.c[j]:
                        raise ValueError("conjugate generators with different parameters")


class HeckeElt:
    """Finite linear combination of T_w with LaurentInt coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[SignedPerm, LaurentInt] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentInt()) + c
        return HeckeElt(out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + other.scale(LaurentInt.const(-1))

    def scale(self, c: LaurentInt | int) -> "HeckeElt":
        c = LaurentInt._coerce(c)
        return HeckeElt({w: a * c for w, a in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.terms == other.terms

    def coefficient(self, w: SignedPerm) -> LaurentInt:
        return self.terms.get(w, LaurentInt())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})T{w}" for w, c in sorted(self.terms.items()))


@dataclass
class HeckeAlgebra:
    params: ParamExponents
    n: int
    length: dict[SignedPerm, int] = field(init=False)
    word: dict[SignedPerm, tuple[int, ...]] = field(init=False)

    def __post_init__(self):
        # breadth-first search gives l' and a reduced word in the given generators
        e = identity(self.n)
        self.length = {e: 0}
        self.word = {e: ()}
        queue = deque([e])
        while queue:
            w = queue.popleft()
            for i, s in enumerate(self.params.gens):
                x = mul(s, w)
                if x not in self.length:
                    self.length[x] = self.length[w] + 1
                    self.word[x] = (i,) + self.word[w]
                    queue.append(x)

    @property
    def elements(self) -> list[SignedPerm]:
        return sorted(self.length)

    def basis(self, w: SignedPerm) -> HeckeElt:
        if w not in self.length:
            raise ValueError(f"{w} is not in the group")
        return HeckeElt({w: LaurentInt.const(1)})

    def one(self) -> HeckeElt:
        return self.basis(identity(self.n))

    def gen(self, i: int) -> HeckeElt:
        """T_s for the i-th generator (0-based)."""
        return self.basis(self.params.gens[i])

    def q_of(self, i: int) -> LaurentInt:
        return LaurentInt.v2(self.params.c[i])

    def _left_gen(self, i: int, x: HeckeElt) -> HeckeElt:
        s = self.params.gens[i]
        qs = self.q_of(i)
        out: dict[SignedPerm, LaurentInt] = {}

        def add(w, c):
            out[w] = out.get(w, LaurentInt()) + c

        for w, c in x.terms.items():
            sw = mul(s, w)
            if self.length[sw] > self.length[w]:
                add(sw, c)
            else:
                add(sw, c * qs)
                add(w, c * (qs - 1))
        return HeckeElt(out)

    def mul(self, x: HeckeElt, y: HeckeElt) -> HeckeElt:
        for w in list(x.terms) + list(y.terms):
            if w not in self.length:
                raise ValueError(f"{w} lies outside the group generated by the parameters")
        out = HeckeElt()
        for w, c in x.terms.items():
            z = y
            for i in reversed(self.word[w]):
                z = self._left_gen(i, z)
            out = out + z.scale(c)
        return out

    def prod(self, *xs: HeckeElt) -> HeckeElt:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out


def t_mul(params: ParamExponents, x: HeckeElt, y: HeckeElt) -> HeckeElt:
    n = params.gens[0].n if params.gens else next(iter(x.terms)).n
    return HeckeAlgebra(params, n).mul(x, y)


def type_b_algebra(n: int, t: int, k: int) -> HeckeAlgebra:
    """The algebra on cw(J_t) with parameters v^2, ..., v^2, v^(2(2k+1))."""
    gens = cw_generators(n, t)
    c = [1] * (t - 1) + [2 * k + 1] if t else []
    return HeckeAlgebra(ParamExponents(tuple(gens), tuple(c)), n)


def specialize(x: HeckeElt, q) -> dict[SignedPerm, Fraction]:
    out = {w: c.evaluate_q(q) for w, c in x.terms.items()}
    return {w: c for w, c in out.items() if c}


def verify_presentation(n: int, t: int, k: int) -> dict[str, bool]:
    """
    Check the braid relations and quadratic relations
    (T_s + 1)(T_s - v^{2c_s}) = 0 for the generators s_1..s_{t-1}, s'_t.
    """
    if not 0 <= t <= n:
        raise ValueError(f"t={t} outside [0, {n}]")
    if n - t != k * k + k:
        raise ValueError(f"n - t = {n - t} is not k^2 + k for k = {k}")
    H = type_b_algebra(n, t, k)
    gens = H.params.gens
    names = [f"s{i}" for i in range(1, t)] + [f"s'{t}"] if t else []
    report: dict[str, bool] = {}
    m = coxeter_matrix(gens) if gens else []
    expected = _type_b_matrix(t)
    report["coxeter matrix is type B"] = m == expected
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = H.gen(i), H.gen(j)
            lhs = H.prod(*[a if r % 2 == 0 else b for r in range(m[i][j])])
            rhs = H.prod(*[b if r % 2 == 0 else a for r in range(m[i][j])])
            report[f"braid {names[i]},{names[j]}"] = lhs == rhs
    for i in range(len(gens)):
        T = H.gen(i)
        res = H.mul(T + H.one(), T - H.one().scale(H.q_of(i)))
        report[f"quadratic {names[i]}"] = res.is_zero()
    return report


def _type_b_matrix(t: int) -> list[list[int]]:
    m = [[1 if i == j else 2 for j in range(t)] for i in range(t)]
    for i in range(t - 1):
        m[i][i + 1] = m[i + 1][i] = 4 if i == t - 2 else 3
    return m
