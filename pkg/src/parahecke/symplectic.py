"""
Symplectic spaces over a prime field, their isotropic subspaces, the maps
gamma and psi attached to good pairs, and brute-force enumeration of the
finite group Sp_{2n}(F_p) with its rational linear characters.

Basis order is e_1, ..., e_n, f_n, ..., f_1 with <e_i, f_i> = 1, so the Gram
matrix is antidiagonal and the standard isotropic flag is spanned by initial
segments of the basis.  Group elements act on column vectors.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .gf import Subspace, is_prime, mat_inv, nullspace, rref, solve

__all__ = [
    "SymplecticSpace", "Bracket", "BudgetExceeded", "Group", "ClassFunction",
    "group_order", "enumerate_group", "linear_characters", "is_cuspidal",
    "standard_blocks", "block_masks", "coset_keys", "coset_key_matrices", "load_class_function",
    "save_class_function", "GOOD_MODES",
]

GOOD_MODES = ("i", "ii", "iii", "iv")
DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


def group_order(n: int, q: int) -> int:
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


@dataclass(frozen=True)
class Bracket:
    """[A, A'] = carrier / kernel with carrier = A^perp ∩ A'^perp, kernel = A ∩ A'."""

    carrier: Subspace
    kernel: Subspace

    @property
    def dim(self) -> int:
        return self.carrier.dim - self.kernel.dim


@dataclass(frozen=True)
class SymplecticSpace:
    n: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"q = {self.p} must be prime")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def gram(self) -> np.ndarray:
        d = self.dim
        om = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            om[i, d - 1 - i] = 1 if i < self.n else self.p - 1
        return om

    def form(self, x, y) -> int:
        return int(np.asarray(x) @ self.gram @ np.asarray(y)) % self.p

    def is_symplectic(self, g) -> bool:
        g = np.asarray(g, dtype=np.int64)
        return np.array_equal((g.T @ self.gram @ g) % self.p, self.gram)

    # subspaces

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.p, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.p, self.dim)

    def whole(self) -> Subspace:
        return Subspace.whole(self.p, self.dim)

    def perp(self, A: Subspace) -> Subspace:
        if A.dim == 0:
            return self.whole()
        return self.span(nullspace(A.basis @ self.gram % self.p, self.p))

    def is_isotropic(self, A: Subspace) -> bool:
        if A.dim == 0:
            return True
        return not np.any(A.basis @ self.gram @ A.basis.T % self.p)

    def vectors_of(self, A: Subspace) -> np.ndarray:
        """All q^dim vectors of A."""
        coeffs = np.array(list(itertools.product(range(self.p), repeat=A.dim)), dtype=np.int64)
        if A.dim == 0:
            return np.zeros((1, self.dim), dtype=np.int64)
        return coeffs @ A.basis % self.p

    def isotropic_subspaces(self, t: int) -> list[Subspace]:
        """E_t, sorted by canonical rows."""
        if not 0 <= t <= self.n:
            raise ValueError(f"t={t} outside [0, {self.n}]")
        return list(_isotropic(self.n, self.p, t))

    def lines(self) -> list[Subspace]:
        return self.isotropic_subspaces(1)

    # pairs of isotropic subspaces

    def _check_pair(self, A: Subspace, B: Subspace):
        if A.dim != B.dim:
            raise ValueError("subspaces of unequal dimension")
        if not (self.is_isotropic(A) and self.is_isotropic(B)):
            raise ValueError("subspaces must be isotropic")

    def bracket(self, A: Subspace, B: Subspace) -> Bracket:
        self._check_pair(A, B)
        return Bracket(self.perp(A).intersect(self.perp(B)), A.intersect(B))

    def is_good(self, A: Subspace, B: Subspace, mode: str = "ii") -> bool:
        self._check_pair(A, B)
        cap = A.intersect(B)
        if mode == "i":
            return self._find_common_complement(A, B) is not None
        if mode == "ii":
            return self.perp(A).intersect(B) == cap
        if mode == "iii":
            return A.intersect(self.perp(B)) == cap
        if mode == "iv":
            return self.perp(A).intersect(self.perp(B)).intersect(A + B) == cap
        raise ValueError(f"unknown goodness mode {mode!r}")

    def _find_common_complement(self, A: Subspace, B: Subspace) -> Subspace | None:
        """
        Exhaustive search for L with A^perp = L + A and B^perp = L + B (direct).
        Such an L lies in C = A^perp ∩ B^perp and meets A ∩ B trivially, so it is
        a complement of K = A ∩ B in C; all q^(dim L * dim K) of them are tried.
        """
        Ap, Bp = self.perp(A), self.perp(B)
        C = Ap.intersect(Bp)
        K = A.intersect(B)
        L0 = _complement_basis(C, K, self.p)
        r, m = L0.shape[0], K.dim
        for phi in itertools.product(range(self.p), repeat=r * m):
            if m:
                L = (L0 + np.array(phi, dtype=np.int64).reshape(r, m) @ K.basis) % self.p
            else:
                L = L0
            Ls = self.span(L) if r else self.zero()
            if Ls.dim != r:
                continue
            if (Ls + A) == Ap and Ls.intersect(A).dim == 0 and (Ls + B) == Bp \
                    and Ls.intersect(B).dim == 0:
                return Ls
        return None

    def psi_vector(self, A: Subspace, B: Subspace, x) -> np.ndarray:
        """
        psi^A_B applied to x (a lift in A^perp of a class in A^perp/A): the lift
        l in A^perp ∩ B^perp with l = x mod A, representing a class in B^perp/B.
        """
        x = np.asarray(x, dtype=np.int64) % self.p
        if A.dim == 0:
            return x
        # find a in A with <x - a, b_j> = 0 for a basis b_j of B
        gram_ab = A.basis @ self.gram @ B.basis.T % self.p     # <a_i, b_j>
        rhs = (x @ self.gram @ B.basis.T) % self.p             # <x, b_j>
        c = solve(gram_ab.T, rhs, self.p)
        if c is None:
            raise ValueError("pair is not good: psi is undefined")
        return (x - c @ A.basis) % self.p

    def quotient_basis(self, A: Subspace) -> np.ndarray:
        """Rows forming a standard symplectic basis of A^perp/A (lifts)."""
        g = self.adapted_basis([A])
        t = A.dim
        return g[:, t:self.dim - t].T

    def quotient_coords(self, A: Subspace, vectors) -> np.ndarray:
        """Coordinates of A^perp vectors modulo A in quotient_basis(A)."""
        g = self.adapted_basis([A])
        ginv = _inv_cached(g.tobytes(), g.shape[0], self.p)
        t = A.dim
        v = np.asarray(vectors, dtype=np.int64)
        coords = (ginv @ v.T % self.p).T
        return coords[..., t:self.dim - t]

    def gamma_matrix(self, A: Subspace, B: Subspace) -> np.ndarray:
        """Matrix of gamma_{A,B}: [A,B] -> A^perp/A in the bases (complement of K in C, quotient_basis(A))."""
        br = self.bracket(A, B)
        L0 = _complement_basis(br.carrier, br.kernel, self.p)
        if L0.shape[0] == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return self.quotient_coords(A, L0).T

    def psi_matrix(self, A: Subspace, B: Subspace) -> np.ndarray:
        """Matrix of psi^A_B from quotient_basis(A) to quotient_basis(B) coordinates."""
        src = self.quotient_basis(A)
        if src.shape[0] == 0:
            return np.zeros((0, 0), dtype=np.int64)
        imgs = np.array([self.psi_vector(A, B, x) for x in src])
        return self.quotient_coords(B, imgs).T

    def quotient_form(self, A: Subspace) -> np.ndarray:
        Q = self.quotient_basis(A)
        return Q @ self.gram @ Q.T % self.p

    def adapted_basis(self, chain: Sequence[Subspace]) -> np.ndarray:
        """
        A symplectic matrix g whose first d columns span each member of the
        isotropic chain of dimension d (columns in the order e_1..e_n, f_n..f_1).
        Deterministic in the chain.
        """
        key = tuple(s.rows for s in chain)
        return _adapted(self.n, self.p, key).copy()


def _complement_basis(C: Subspace, K: Subspace, p: int) -> np.ndarray:
    """Rows of C completing a basis of K to one of C (chosen among C's RREF rows)."""
    chosen = list(K.basis)
    out = []
    for row in C.basis:
        trial = np.array(chosen + [row], dtype=np.int64)
        if len(rref(trial, p)[1]) == len(chosen) + 1:
            chosen.append(row)
            out.append(row)
    return np.array(out, dtype=np.int64).reshape(-1, C.dim_ambient)


@lru_cache(maxsize=None)
def _inv_cached(buf: bytes, d: int, p: int) -> np.ndarray:
    g = np.frombuffer(buf, dtype=np.int64).reshape(d, d)
    return mat_inv(g, p)


@lru_cache(maxsize=None)
def _isotropic(n: int, p: int, t: int) -> tuple[Subspace, ...]:
    S = SymplecticSpace(n, p)
    if t == 0:
        return (S.zero(),)
    out = set()
    for A in _isotropic(n, p, t - 1):
        for x in S.vectors_of(S.perp(A)):
            if not A.contains(x):
                out.add(A + S.span([x]))
    return tuple(sorted(out, key=lambda s: s.rows))


@lru_cache(maxsize=None)
def _adapted(n: int, p: int, key) -> np.ndarray:
    S = SymplecticSpace(n, p)
    d = 2 * n
    chain = [Subspace(p, d, rows) for rows in key]
    vs: list[np.ndarray] = []
    cur = S.zero()
    for V in sorted(chain, key=lambda s: s.dim):
        if not cur.dim <= V.dim or not V.contains_space(cur):
            raise ValueError("subspaces do not form a chain")
        if not S.is_isotropic(V):
            raise ValueError("chain member is not isotropic")
        for row in V.basis:
            if not cur.contains(row):
                vs.append(row)
                cur = cur + S.span([row])
    # extend to a Lagrangian
    while cur.dim < n:
        for row in S.perp(cur).basis:
            if not cur.contains(row):
                vs.append(row)
                cur = cur + S.span([row])
                break
    # dual vectors u_i with <v_j, u_i> = delta_ij and <u_j, u_i> = 0
    gram = S.gram
    us: dict[int, np.ndarray] = {}
    for i in range(n - 1, -1, -1):
        rows = [v @ gram % p for v in vs] + [us[j] @ gram % p for j in sorted(us)]
        rhs = [1 if j == i else 0 for j in range(n)] + [0] * len(us)
        x = solve(np.array(rows), np.array(rhs), p)
        if x is None:
            raise ArithmeticError("failed to complete a symplectic basis")
        us[i] = x % p
    g = np.zeros((d, d), dtype=np.int64)
    for i in range(n):
        g[:, i] = vs[i]
        g[:, d - 1 - i] = us[i]
    if not S.is_symplectic(g):
        raise ArithmeticError("adapted basis is not symplectic")
    return g


# ----------------------------------------------------------------------------
# parabolic block structure

def standard_blocks(n: int, dims: Iterable[int]) -> list[tuple[int, int]]:
    """
    Column blocks [a, b) of the self-dual chain completing the standard flag
    with the given dimensions: V_{d_1} ⊂ ... ⊂ V_{d_m} ⊆ V_{d_m}^perp ⊂ ... ⊂ V.
    """
    ds = sorted(set(dims))
    if ds and (ds[0] < 1 or ds[-1] > n):
        raise ValueError(f"flag dimensions {ds} outside [1, {n}]")
    cuts = [0] + ds + [2 * n - d for d in reversed(ds)] + [2 * n]
    cuts = sorted(set(cuts))
    return [(a, b) for a, b in zip(cuts, cuts[1:])]


def _block_index(n: int, blocks) -> np.ndarray:
    idx = np.zeros(2 * n, dtype=np.int64)
    for k, (a, b) in enumerate(blocks):
        idx[a:b] = k
    return idx


def block_masks(n: int, dims: Iterable[int]):
    """(lower mask, diagonal-block mask, blocks) for the standard parabolic."""
    blocks = standard_blocks(n, dims)
    bi = _block_index(n, blocks)
    lower = bi[:, None] > bi[None, :]
    diag = bi[:, None] == bi[None, :]
    return lower, diag, blocks


def coset_keys(mats: np.ndarray, n: int, dims: Iterable[int], p: int) -> np.ndarray:
    """Integer codes of the canonical coset keys (see coset_key_matrices), chunked."""
    mats = np.asarray(mats)
    if mats.ndim == 2:
        mats = mats[None]
    dims = tuple(dims)
    out = np.empty(mats.shape[0], dtype=np.int64)
    for sl in _chunked(mats.shape[0]):
        out[sl] = encode(coset_key_matrices(mats[sl], n, dims, p), p)
    return out


def coset_key_matrices(mats: np.ndarray, n: int, dims: Iterable[int], p: int) -> np.ndarray:
    """
    Canonical key of the coset gU0 for each g in mats, where U0 is the unipotent
    radical of the standard parabolic with the given flag dimensions.

    Right multiplication by U0 adds to each column block multiples of earlier
    blocks, so each block is reduced modulo the span of all earlier columns
    (against a fully reduced echelon basis); the reduced columns are the key.
    """
    blocks = standard_blocks(n, dims)
    M = np.asarray(mats, dtype=np.int64) % p
    N, d, _ = M.shape
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    rows = np.arange(N)
    reducers: list[tuple[np.ndarray, np.ndarray]] = []
    out = np.empty_like(M)
    for a, b in blocks:
        new = []
        for j in range(a, b):
            v = M[:, :, j].copy()
            for R, piv in reducers:
                v = (v - v[rows, piv][:, None] * R) % p
            out[:, :, j] = v
            new.append(v)
        for v in new:
            for R, piv in reducers:
                v = (v - v[rows, piv][:, None] * R) % p
            nz = v != 0
            if not nz.any(axis=1).all():
                raise ValueError("singular matrix in coset key computation")
            piv = nz.argmax(axis=1)
            v = v * inv[v[rows, piv]][:, None] % p
            reducers = [((R - R[rows, piv][:, None] * v) % p, pv) for R, pv in reducers]
            reducers.append((v, piv))
    return out


# ----------------------------------------------------------------------------
# group enumeration

def _encode_weights(d: int, p: int) -> np.ndarray:
    if p ** (d * d) >= 2 ** 63:
        raise OverflowError(f"matrices of size {d} over F_{p} do not fit a 64-bit code")
    return np.array([p ** (d * d - 1 - i) for i in range(d * d)], dtype=np.int64)


def encode(mats: np.ndarray, p: int) -> np.ndarray:
    """Integer code of each matrix; numeric order is row-major lexicographic order."""
    mats = np.asarray(mats)
    d = mats.shape[-1]
    flat = mats.reshape(-1, d * d).astype(np.int64) % p
    return flat @ _encode_weights(d, p)


def decode(codes, d: int, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64).reshape(-1)
    out = np.empty((codes.size, d * d), dtype=np.int64)
    c = codes.copy()
    for i in range(d * d - 1, -1, -1):
        out[:, i] = c % p
        c //= p
    return out.reshape(-1, d, d)


def transvection(S: SymplecticSpace, v) -> np.ndarray:
    """x -> x + <x, v> v."""
    v = np.asarray(v, dtype=np.int64)
    row = v @ S.gram.T % S.p   # x -> <x, v> = x^T gram v = (gram v) . x
    return (np.eye(S.dim, dtype=np.int64) + np.outer(v, row)) % S.p


def default_generators(S: SymplecticSpace) -> list[np.ndarray]:
    d = S.dim
    gens = []
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        gens.append(transvection(S, v))
    for i in range(d - 1):
        v = np.zeros(d, dtype=np.int64)
        v[i] = v[i + 1] = 1
        gens.append(transvection(S, v))
    if S.p > 2:
        a = next(x for x in range(2, S.p) if all(pow(x, k, S.p) != 1 for k in range(1, S.p - 1)))
        diag = [a] * S.n + [pow(a, -1, S.p)] * S.n
        gens.append(np.diag(diag).astype(np.int64))
    for g in gens:
        assert S.is_symplectic(g)
    return gens


@dataclass
class Group:
    """A finite matrix group stored as sorted integer codes with matrices alongside."""

    S: SymplecticSpace
    codes: np.ndarray
    mats: np.ndarray
    gens: list[np.ndarray] = field(default_factory=list)

    @property
    def order(self) -> int:
        return int(self.codes.size)

    @property
    def d(self) -> int:
        return self.S.dim

    @property
    def p(self) -> int:
        return self.S.p

    def index(self, mats_or_codes, codes: bool = False) -> np.ndarray:
        if codes:
            c = np.asarray(mats_or_codes)
        else:
            m = np.asarray(mats_or_codes)
            c = np.concatenate([encode(m[sl], self.p) for sl in _chunked(m.shape[0])]) \
                if m.shape[0] else np.zeros(0, dtype=np.int64)
        idx = np.searchsorted(self.codes, c)
        idx = np.minimum(idx, self.codes.size - 1)
        if not np.array_equal(self.codes[idx], c):
            raise KeyError("element not in group")
        return idx

    @cached_property
    def identity_index(self) -> int:
        return int(self.index(np.eye(self.d, dtype=np.int64)[None])[0])

    def matmul(self, a, b) -> np.ndarray:
        """Product mod p; a batch of matrices is processed in chunks and kept as int8."""
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim == 3 or b.ndim == 3:
            big = a if a.ndim == 3 else b
            out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=np.int8)
            for sl in _chunked(big.shape[0]):
                x = a[sl] if a.ndim == 3 else a
                y = b[sl] if b.ndim == 3 else b
                out[sl] = (x.astype(np.int32) @ y.astype(np.int32)) % self.p
            return out
        return (a.astype(np.int64) @ b.astype(np.int64)) % self.p

    @cached_property
    def inverse_index(self) -> np.ndarray:
        # symplectic inverse: g^-1 = gram^-1 g^T gram
        gram = self.S.gram
        gram_inv = mat_inv(gram, self.p)
        inv = self.matmul(self.matmul(gram_inv, np.swapaxes(self.mats, 1, 2)), gram)
        return self.index(inv)

    def right_perm(self, s) -> np.ndarray:
        """Index of g s for every g."""
        return self.index(self.matmul(self.mats, s))

    def conj_perm(self, s) -> np.ndarray:
        """Index of s g s^-1 for every g."""
        sinv = mat_inv(s, self.p)
        return self.index(self.matmul(self.matmul(s, self.mats), sinv))

    @cached_property
    def classes(self) -> tuple[np.ndarray, np.ndarray]:
        """(class index per element, representative index per class); reps are code-minimal."""
        labels = orbit_labels(self.order, [self.conj_perm(s) for s in self.gens])
        return canonical_orbits(labels)

    @property
    def class_count(self) -> int:
        return int(self.classes[1].size)

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.classes[0])


def orbit_labels(size: int, perms: Sequence[np.ndarray]) -> np.ndarray:
    """Connected components of the graph with edges i -> perm[i]."""
    if not perms:
        return np.arange(size)
    src = np.concatenate([np.arange(size)] * len(perms))
    dst = np.concatenate(perms)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def canonical_orbits(labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Relabel orbits by their minimal member; return (orbit index per item, reps)."""
    order = np.argsort(labels, kind="stable")
    first = np.ones(labels.size, dtype=bool)
    first[1:] = labels[order][1:] != labels[order][:-1]
    # minimal index in each orbit (items are already sorted by code)
    mins = np.minimum.reduceat(order, np.nonzero(first)[0])
    reps = np.sort(mins)
    lab_of_rep = {int(labels[r]): k for k, r in enumerate(reps)}
    remap = np.array([lab_of_rep[int(x)] for x in range(labels.max() + 1)]) \
        if labels.size else np.zeros(0, dtype=np.int64)
    return remap[labels], reps


CHUNK = 1 << 17


def _chunked(n: int, size: int = CHUNK):
    for a in range(0, n, size):
        yield slice(a, min(a + size, n))


@lru_cache(maxsize=4)
def _enumerate(n: int, p: int) -> Group:
    S = SymplecticSpace(n, p)
    d = S.dim
    gens = default_generators(S) if n else []
    e = np.eye(d, dtype=np.int8)[None]
    visited = encode(e, p)
    chunks = [e]
    frontier = e
    while frontier.shape[0] and gens:
        new_codes, new_mats = [], []
        for sl in _chunked(frontier.shape[0], CHUNK // max(1, len(gens))):
            block = frontier[sl].astype(np.int16)
            cand = np.concatenate([(block @ g.astype(np.int16)) % p for g in gens]).astype(np.int8)
            c = encode(cand, p)
            c, first = np.unique(c, return_index=True)
            fresh = ~np.isin(c, visited, assume_unique=True)
            new_codes.append(c[fresh])
            new_mats.append(cand[first[fresh]])
        c = np.concatenate(new_codes)
        m = np.concatenate(new_mats)
        c, first = np.unique(c, return_index=True)
        frontier = m[first]
        visited = np.union1d(visited, c)
        chunks.append(frontier)
    mats = np.concatenate(chunks)
    codes = encode(mats, p)
    order = np.argsort(codes)
    return Group(S, codes[order], mats[order], gens)


def enumerate_group(S: SymplecticSpace, budget: int = DEFAULT_BUDGET, force: bool = False) -> Group:
    """All of Sp(V)^F, by closure from transvections (and a torus element for odd q)."""
    size = group_order(S.n, S.p)
    if size > budget and not force:
        raise BudgetExceeded(f"|Sp_{2 * S.n}(F_{S.p})| = {size} exceeds budget {budget}")
    G = _enumerate(S.n, S.p)
    if G.order != size:
        raise ArithmeticError(f"enumerated {G.order} elements, expected {size}")
    return G


# ----------------------------------------------------------------------------
# class functions and characters

@dataclass
class ClassFunction:
    group: Group
    values: list[Fraction]          # one value per class (in Group.classes order)

    @cached_property
    def element_values(self) -> np.ndarray:
        """Values on all elements as an object array of Fractions."""
        cls = self.group.classes[0]
        vals = np.array(self.values, dtype=object)
        return vals[cls]

    def integer_values(self) -> np.ndarray:
        if any(v.denominator != 1 for v in self.values):
            raise ValueError("class function is not integer valued")
        return np.array([int(v) for v in self.values], dtype=np.int64)[self.group.classes[0]]

    @property
    def degree(self) -> Fraction:
        return self.values[self.group.classes[0][self.group.identity_index]]

    @classmethod
    def trivial(cls, group: Group) -> "ClassFunction":
        return cls(group, [Fraction(1)] * group.class_count)

    @classmethod
    def from_element_values(cls, group: Group, vals) -> "ClassFunction":
        cls_idx, reps = group.classes
        vals = list(vals)
        out = [Fraction(vals[r]) for r in reps]
        for i, c in enumerate(cls_idx):
            if Fraction(vals[i]) != out[c]:
                raise ValueError("values are not constant on conjugacy classes")
        return cls(group, out)


def linear_characters(group: Group) -> list[ClassFunction]:
    """
    All homomorphisms G -> Q^*.  Their values are roots of unity in Q, so
    ±1; each is fixed by its signs on the generators, and a sign pattern is
    kept exactly when it propagates consistently along the Cayley graph.
    """
    perms = [group.right_perm(s) for s in group.gens]
    out = []
    for signs in itertools.product((1, -1), repeat=len(perms)):
        vals = np.zeros(group.order, dtype=np.int64)
        vals[group.identity_index] = 1
        changed = True
        while changed:
            changed = False
            for perm, eps in zip(perms, signs):
                known = vals != 0
                tgt = perm[known]
                new = vals[known] * eps
                unset = vals[tgt] == 0
                if unset.any():
                    vals[tgt[unset]] = new[unset]
                    changed = True
        ok = all(np.array_equal(vals[perm], vals * eps) for perm, eps in zip(perms, signs))
        if ok:
            out.append(ClassFunction.from_element_values(group, vals.tolist()))
    uniq = []
    for chi in out:
        if all(chi.values != u.values for u in uniq):
            uniq.append(chi)
    return uniq


def is_cuspidal(group: Group, chi: ClassFunction) -> bool:
    """
    Harish-Chandra test: sum over u in U of chi(g u) vanishes for every g and
    the unipotent radical U of every proper standard parabolic.
    """
    n = group.S.n
    den = math.lcm(*(v.denominator for v in chi.values))
    per_class = np.array([int(v * den) for v in chi.values], dtype=np.int64)
    vals = per_class[group.classes[0]]
    for r in range(1, n + 1):
        for dims in itertools.combinations(range(1, n + 1), r):
            total = np.zeros(group.order, dtype=np.int64)
            for u in unipotent_radical_indices(group, dims):
                total += vals[group.right_perm(group.mats[u])]
            if total.any():
                return False
    return True


def unipotent_radical_indices(group: Group, dims) -> np.ndarray:
    lower, diag, _ = block_masks(group.S.n, dims)
    M = group.mats
    inP = ~np.any(M[:, lower] != 0, axis=1)
    eye = np.eye(group.d, dtype=M.dtype)
    inU = inP & np.all(M[:, diag] == eye[diag], axis=1)
    return np.nonzero(inU)[0]


def save_class_function(chi: ClassFunction, path) -> None:
    G = chi.group
    reps = G.classes[1]
    doc = {
        "version": 1,
        "n": G.S.n,
        "q": G.p,
        "classes": [
            {"class_rep": [int(x) for x in G.mats[r].reshape(-1)], "value": f"{v.numerator}/{v.denominator}"}
            for r, v in zip(reps, chi.values)
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=1))


def load_class_function(path, group: Group) -> ClassFunction:
    doc = json.loads(Path(path).read_text())
    if doc.get("version") != 1:
        raise ValueError(f"unsupported character file version {doc.get('version')!r}")
    if (doc.get("n"), doc.get("q")) not in ((group.S.n, group.p), (None, None)):
        raise ValueError("character file is for a different group")
    cls_idx = group.classes[0]
    values: list[Fraction | None] = [None] * group.class_count
    d = group.d
    for entry in doc["classes"]:
        m = np.array(entry["class_rep"], dtype=np.int64).reshape(1, d, d)
        c = int(cls_idx[group.index(m)[0]])
        values[c] = Fraction(entry["value"])
    if any(v is None for v in values):
        raise ValueError("character file does not cover every conjugacy class")
    return ClassFunction(group, values)
