"""
Parabolic subgroups of W(B_n) and the coset combinatorics built on them.

Subsets of simple reflections are frozensets of generator indices (``{2}``
means ``{s_2}``).  The diagram automorphism is carried explicitly but only the
identity occurs for symplectic groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .coxeter import (
    SignedPerm, all_elements, conjugacy_class_reps, generated_group, generator,
    identity, inverse, length, longest_element, mul,
)

__all__ = [
    "Automorphism", "subset", "parabolic_subgroup", "in_left_min", "in_right_min",
    "min_double_coset_rep", "double_coset", "jw_set", "wk_set", "jwk_set",
    "reduce_pair", "star_spade_partition", "is_star", "conjugate_subset",
    "cw_subgroup", "jt_subset", "s_prime", "cw_generators", "cw_relative",
    "cw_relative_generators", "xi_set", "xi_t_set", "bedard_j1", "m_set",
    "m_bang_set", "m_t_set", "m_t_bang_set", "format_subset",
]


@dataclass(frozen=True)
class Automorphism:
    """A permutation of generator indices preserving the Coxeter matrix."""

    mapping: tuple[int, ...]  # mapping[i-1] = image of s_i

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(1, n + 1)))

    def __post_init__(self):
        # a split symplectic group over F_q has trivial Frobenius action on the
        # simple reflections, so nothing else is ever needed here
        if self.mapping != tuple(range(1, len(self.mapping) + 1)):
            raise ValueError("only the identity automorphism occurs in type B")

    def apply(self, J: Iterable[int]) -> frozenset[int]:
        return frozenset(self.mapping[i - 1] for i in J)

    def inverse_apply(self, J: Iterable[int]) -> frozenset[int]:
        inv = {v: k for k, v in enumerate(self.mapping, start=1)}
        return frozenset(inv[i] for i in J)


def subset(n: int, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(J)
    if not all(1 <= i <= n for i in J):
        raise ValueError(f"{sorted(J)} is not a subset of the generators of B_{n}")
    return J


def format_subset(J: Iterable[int]) -> list[int]:
    return sorted(J)


def _tau(n, tau):
    return tau if tau is not None else Automorphism.identity(n)


@lru_cache(maxsize=None)
def parabolic_subgroup(n: int, J: frozenset[int]) -> frozenset[SignedPerm]:
    return frozenset(generated_group([generator(n, i) for i in sorted(J)], n))


def in_left_min(J: Iterable[int], w: SignedPerm) -> bool:
    """w lies in ^JW: no left descent in J."""
    lw = length(w)
    return all(length(mul(generator(w.n, i), w)) > lw for i in J)


def in_right_min(w: SignedPerm, K: Iterable[int]) -> bool:
    """w lies in W^K: no right descent in K."""
    lw = length(w)
    return all(length(mul(w, generator(w.n, i))) > lw for i in K)


def min_double_coset_rep(J: Iterable[int], w: SignedPerm, K: Iterable[int]) -> SignedPerm:
    """The unique element of minimal length in W_J w W_K (greedy descent)."""
    n = w.n
    J, K = sorted(J), sorted(K)
    changed = True
    while changed:
        changed = False
        lw = length(w)
        for i in J:
            x = mul(generator(n, i), w)
            if length(x) < lw:
                w, lw, changed = x, lw - 1, True
        for i in K:
            x = mul(w, generator(n, i))
            if length(x) < lw:
                w, lw, changed = x, lw - 1, True
    return w


def double_coset(J: Iterable[int], w: SignedPerm, K: Iterable[int]) -> set[SignedPerm]:
    WJ = parabolic_subgroup(w.n, frozenset(J))
    WK = parabolic_subgroup(w.n, frozenset(K))
    return {mul(mul(a, w), b) for a in WJ for b in WK}


def jw_set(n: int, J: Iterable[int]) -> list[SignedPerm]:
    J = subset(n, J)
    return [w for w in all_elements(n) if in_left_min(J, w)]


def wk_set(n: int, K: Iterable[int]) -> list[SignedPerm]:
    K = subset(n, K)
    return [w for w in all_elements(n) if in_right_min(w, K)]


def jwk_set(n: int, J: Iterable[int], K: Iterable[int]) -> list[SignedPerm]:
    J, K = subset(n, J), subset(n, K)
    return [w for w in all_elements(n) if in_left_min(J, w) and in_right_min(w, K)]


def reduce_pair(w: SignedPerm, J: Iterable[int], tau: Automorphism | None = None) -> SignedPerm:
    """w_J: the minimal element of W_{tau(J)} w W_J."""
    tau = _tau(w.n, tau)
    return min_double_coset_rep(tau.apply(J), w, J)


def conjugate_subset(z: SignedPerm, J: Iterable[int]) -> frozenset[int] | None:
    """
    The set {i : s_i = z s_j z^-1 for some j in J} when every conjugate is a
    simple reflection, otherwise None.  Elements are compared by their action.
    """
    n = z.n
    zi = inverse(z)
    simple = {generator(n, i): i for i in range(1, n + 1)}
    out = set()
    for j in J:
        c = mul(mul(z, generator(n, j)), zi)
        if c not in simple:
            return None
        out.add(simple[c])
    return frozenset(out)


def is_star(w: SignedPerm, J: Iterable[int], tau: Automorphism | None = None) -> bool:
    """Membership of w (assumed in ^{tau(J)}W) in the star part."""
    tau = _tau(w.n, tau)
    J = frozenset(J)
    wj = reduce_pair(w, J, tau)
    return conjugate_subset(wj, J) == tau.apply(J)


def star_spade_partition(
    n: int, J: Iterable[int], tau: Automorphism | None = None,
) -> tuple[list[SignedPerm], list[SignedPerm]]:
    tau = _tau(n, tau)
    J = subset(n, J)
    star, spade = [], []
    for w in jw_set(n, tau.apply(J)):
        (star if is_star(w, J, tau) else spade).append(w)
    return star, spade


@lru_cache(maxsize=None)
def _cw(n: int, J: frozenset[int]) -> tuple[SignedPerm, ...]:
    WJ = parabolic_subgroup(n, J)
    out = []
    for w in all_elements(n):
        wi = inverse(w)
        if all(mul(mul(w, generator(n, j)), wi) in WJ for j in J) and in_right_min(w, J):
            out.append(w)
    return tuple(out)


def cw_subgroup(n: int, J: Iterable[int]) -> list[SignedPerm]:
    """Elements of the normalizer of W_J that are minimal in their W_J-coset."""
    return list(_cw(n, subset(n, J)))


def jt_subset(n: int, t: int) -> frozenset[int]:
    """J_t = {s_{t+1}, ..., s_n}."""
    if not 0 <= t <= n:
        raise ValueError(f"t={t} outside [0, {n}]")
    return frozenset(range(t + 1, n + 1))


def s_prime(n: int, t: int) -> SignedPerm:
    """
    The last Coxeter generator of cw(J_t): the longest element of W_{J_{t-1}}
    times the longest element of W_{J_t}, i.e. the sign change of coordinate t.
    """
    if not 1 <= t <= n:
        raise ValueError(f"t={t} outside [1, {n}]")
    return mul(longest_element(n, jt_subset(n, t - 1)), longest_element(n, jt_subset(n, t)))


def cw_generators(n: int, t: int) -> list[SignedPerm]:
    """Coxeter generators s_1, ..., s_{t-1}, s'_t of cw(J_t) (type B_t)."""
    if not 0 <= t <= n:
        raise ValueError(f"t={t} outside [0, {n}]")
    if t == 0:
        return []
    return [generator(n, i) for i in range(1, t)] + [s_prime(n, t)]


def cw_relative_generators(n: int, t: int, tp: int) -> list[SignedPerm]:
    """Generators s_{t+1}, ..., s_{t+t'-1}, s'_{t+t'} of cw(J_{t,t'})."""
    if not (0 <= t <= n and 0 <= tp <= n and t + tp <= n):
        raise ValueError(f"need t, t', t+t' in [0, {n}]; got t={t}, t'={tp}")
    if tp == 0:
        return []
    return [generator(n, i) for i in range(t + 1, t + tp)] + [s_prime(n, t + tp)]


def cw_relative(n: int, t: int, tp: int) -> list[SignedPerm]:
    gens = cw_relative_generators(n, t, tp)
    if not gens:
        return [identity(n)]
    return sorted(generated_group(gens, n))


def xi_set(n: int) -> list[tuple[int, int]]:
    """Pairs (t, k) with t in [0, n] and n - t = k^2 + k."""
    out = []
    k = 0
    while k * k + k <= n:
        out.append((n - k * k - k, k))
        k += 1
    return sorted(out)


def xi_t_set(n: int, t: int) -> list[tuple[int, int]]:
    """Pairs (t', k') with t' in [0, n-t] and n - t - t' = k'^2 + k'."""
    return [(s - t, k) for s, k in xi_set(n) if s >= t]


def bedard_j1(
    n: int, J: Iterable[int], z: SignedPerm, tau: Automorphism | None = None,
) -> frozenset[int]:
    """J_1 = J ∩ tau^-1(z J z^-1), computed on reflections."""
    tau = _tau(n, tau)
    J = subset(n, J)
    if not (in_left_min(tau.apply(J), z) and in_right_min(z, J)):
        raise ValueError(f"{z} is not a minimal (tau(J), J) double coset representative")
    zi = inverse(z)
    conj = {mul(mul(z, generator(n, j)), zi) for j in J}
    return frozenset(j for j in J if generator(n, next(iter(tau.apply([j])))) in conj)


def m_set(n: int) -> list[tuple[SignedPerm, int]]:
    """M = {(w, t) : t in Xi, w in cw(J_t)}."""
    return [(w, t) for t, _ in xi_set(n) for w in cw_subgroup(n, jt_subset(n, t))]


def m_bang_set(n: int) -> list[tuple[SignedPerm, int]]:
    return [(w, t) for t, _ in xi_set(n)
            for w in conjugacy_class_reps(cw_subgroup(n, jt_subset(n, t)))]


def m_t_set(n: int, t: int) -> list[tuple[SignedPerm, int]]:
    """M_t = {(y, t') : t' in Xi_t, y in cw(J_{t,t'})}."""
    return [(y, tp) for tp, _ in xi_t_set(n, t) for y in cw_relative(n, t, tp)]


def m_t_bang_set(n: int, t: int) -> list[tuple[SignedPerm, int]]:
    return [(y, tp) for tp, _ in xi_t_set(n, t)
            for y in conjugacy_class_reps(cw_relative(n, t, tp))]
