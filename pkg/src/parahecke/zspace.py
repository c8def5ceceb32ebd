"""
F_q-points of the varieties Z_J for G = Sp_{2n}: isotropic flags, their
stabilizers, relative position, Bédard's induction and the partition it
defines, the incidence sets Z_{J',J}^{y,w}, and the based model used for
convolution.

A parabolic of type J is the stabilizer of an isotropic flag whose dimension
set is {i : s_i not in J}; the chain J_t = {s_{t+1}, ..., s_n} corresponds to
flags V_1 ⊂ ... ⊂ V_t.  A point (V_*, V'_*, gU(V_*)) of Z_J is stored with the
canonical key of the coset g A U0, where A is the adapted symplectic basis of
V_* and U0 is the standard unipotent radical.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import tempfile
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .coxeter import SignedPerm
from .gf import Subspace, mat_inv
from .parabolics import (
    bedard_j1, is_star, jt_subset, min_double_coset_rep,
)
from .symplectic import (
    DEFAULT_BUDGET, Group, SymplecticSpace, block_masks, canonical_orbits, coset_keys,
    encode, enumerate_group, orbit_labels, standard_blocks,
)

__all__ = [
    "IsotropicFlag", "ZPoint", "ParabolicData", "ZContext", "BasedModel",
    "dims_of", "subset_of_dims", "CACHE_VERSION", "orbit_cache_path", "read_orbit_cache",
    "write_orbit_cache",
]

CACHE_VERSION = 1


def dims_of(n: int, J: Iterable[int]) -> tuple[int, ...]:
    J = set(J)
    return tuple(i for i in range(1, n + 1) if i not in J)


def subset_of_dims(n: int, dims: Iterable[int]) -> frozenset[int]:
    dims = set(dims)
    return frozenset(i for i in range(1, n + 1) if i not in dims)


@dataclass(frozen=True)
class IsotropicFlag:
    """A chain of isotropic subspaces, strictly increasing in dimension."""

    chain: tuple[Subspace, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(V.dim for V in self.chain)

    @property
    def top(self) -> Subspace | None:
        return self.chain[-1] if self.chain else None

    def truncate(self, t: int) -> "IsotropicFlag":
        return IsotropicFlag(tuple(V for V in self.chain if V.dim <= t))

    def image(self, g) -> "IsotropicFlag":
        return IsotropicFlag(tuple(V.image(g) for V in self.chain))

    def refines(self, other: "IsotropicFlag") -> bool:
        """Every member of other occurs in self."""
        return set(other.chain) <= set(self.chain)

    def __str__(self):
        return "(" + " ⊂ ".join(str(V) for V in self.chain) + ")"


@dataclass(frozen=True)
class ZPoint:
    """(V_*, V'_*, gU(V_*)); g is a representative, not part of the identity."""

    flag: IsotropicFlag
    flag2: IsotropicFlag
    key: int
    g: tuple = field(compare=False, hash=False, repr=False)

    def matrix(self, d: int) -> np.ndarray:
        return np.array(self.g, dtype=np.int64).reshape(d, d)


@dataclass
class ParabolicData:
    flag: IsotropicFlag
    P: np.ndarray     # group indices
    U: np.ndarray
    R: np.ndarray


class ZContext:
    """Everything attached to one finite symplectic group Sp_{2n}(F_q)."""

    def __init__(self, n: int, q: int, budget: int = DEFAULT_BUDGET, force: bool = False,
                 cache_dir=None):
        self.S = SymplecticSpace(n, q)
        self.cache_dir = cache_dir
        self.n, self.q = n, q
        self.budget, self.force = budget, force
        self._adapted: dict[IsotropicFlag, np.ndarray] = {}
        self._adapted_inv: dict[IsotropicFlag, np.ndarray] = {}
        self._stab: dict[IsotropicFlag, ParabolicData] = {}
        self._flags: dict[tuple[int, ...], list[IsotropicFlag]] = {}
        self._bedard: dict[ZPoint, SignedPerm] = {}
        self._kernels: dict = {}

    @cached_property
    def G(self) -> Group:
        return enumerate_group(self.S, self.budget, self.force)

    @property
    def d(self) -> int:
        return 2 * self.n

    # flags

    def flags(self, dims: Sequence[int]) -> list[IsotropicFlag]:
        dims = tuple(sorted(dims))
        if dims not in self._flags:
            if not dims:
                out = [IsotropicFlag(())]
            else:
                out = []
                top_d = dims[-1]
                for prefix in self.flags(dims[:-1]):
                    base = prefix.top
                    for V in self.S.isotropic_subspaces(top_d):
                        if base is None or V.contains_space(base):
                            out.append(IsotropicFlag(prefix.chain + (V,)))
            self._flags[dims] = sorted(out, key=lambda f: [V.rows for V in f.chain])
        return self._flags[dims]

    def standard_flag(self, dims: Sequence[int]) -> IsotropicFlag:
        e = np.eye(self.d, dtype=np.int64)
        return IsotropicFlag(tuple(self.S.span(e[:k]) for k in sorted(dims)))

    def flag_of_columns(self, M, dims: Sequence[int]) -> IsotropicFlag:
        M = np.asarray(M)
        return IsotropicFlag(tuple(self.S.span(M[:, :k].T) for k in sorted(dims)))

    def adapted(self, flag: IsotropicFlag) -> np.ndarray:
        if flag not in self._adapted:
            self._adapted[flag] = self.S.adapted_basis(list(flag.chain))
        return self._adapted[flag]

    def adapted_inv(self, flag: IsotropicFlag) -> np.ndarray:
        if flag not in self._adapted_inv:
            self._adapted_inv[flag] = mat_inv(self.adapted(flag), self.q)
        return self._adapted_inv[flag]

    def complete(self, flag: IsotropicFlag) -> IsotropicFlag:
        """The complete isotropic flag spanned by the adapted basis of flag."""
        return self.flag_of_columns(self.adapted(flag), range(1, self.n + 1))

    # subgroups

    def stabilizer_data(self, flag: IsotropicFlag) -> ParabolicData:
        if flag not in self._stab:
            self._stab[flag] = self._compute_stab(flag)
        return self._stab[flag]

    def _compute_stab(self, flag: IsotropicFlag) -> ParabolicData:
        G = self.G
        A, Ainv = self.adapted(flag), self.adapted_inv(flag)
        lower, diag, blocks = block_masks(self.n, flag.dims)
        conj = G.matmul(G.matmul(Ainv, G.mats), A)
        inP = ~np.any(conj[:, lower] != 0, axis=1)
        eye = np.eye(self.d, dtype=conj.dtype)
        inU = inP & np.all(conj[:, diag] == eye[diag], axis=1)
        # R: a scalar on each V_i / V_{i-1} and its dual piece, identity in the middle
        m = len(flag.dims)
        inR = inP.copy()
        for k, (a, b) in enumerate(blocks):
            sub = conj[:, a:b, a:b]
            ident = np.eye(b - a, dtype=sub.dtype)
            if m <= k < len(blocks) - m:
                inR &= np.all(sub == ident, axis=(1, 2))
            else:
                inR &= np.all(sub == sub[:, :1, :1] * ident, axis=(1, 2))
        return ParabolicData(flag, np.nonzero(inP)[0], np.nonzero(inU)[0], np.nonzero(inR)[0])

    def levi_indices(self, flag: IsotropicFlag) -> np.ndarray:
        """The Levi subgroup stabilizing every block span of the adapted basis."""
        G = self.G
        A, Ainv = self.adapted(flag), self.adapted_inv(flag)
        _, diag, _ = block_masks(self.n, flag.dims)
        conj = G.matmul(G.matmul(Ainv, G.mats), A)
        return np.nonzero(~np.any(conj[:, ~diag] != 0, axis=1))[0]

    # relative position

    def pos_full(self, B: IsotropicFlag, B2: IsotropicFlag) -> SignedPerm:
        """
        pos(B, B2) for complete isotropic flags: the w with (B, B2) in the
        G-orbit of (B0, w B0).  Read off from the jumps of dim(V_i ∩ V2_j)
        along the completed chains V_1 ⊂ ... ⊂ V_n ⊂ V_{n-1}^perp ⊂ ... ⊂ V.
        """
        if B.dims != tuple(range(1, self.n + 1)) or B2.dims != B.dims:
            raise ValueError("pos_full needs complete isotropic flags")
        return self._pos_mats(self.adapted(B), self.adapted_inv(B), self.adapted(B2))

    def _pos_mats(self, A, Ainv, A2) -> SignedPerm:
        n, p, d = self.n, self.q, self.d
        M = (Ainv @ A2) % p
        reduced: dict[int, np.ndarray] = {}
        images = []
        for j in range(n):
            v = M[:, j].copy()
            while True:
                nz = np.nonzero(v)[0]
                bottom = int(nz[-1])
                if bottom not in reduced:
                    break
                r = reduced[bottom]
                v = (v - v[bottom] * pow(int(r[bottom]), -1, p) * r) % p
            reduced[bottom] = v
            pos = bottom + 1
            images.append(pos if pos <= n else -(d + 1 - pos))
        return SignedPerm(tuple(images))

    def pos(self, flag: IsotropicFlag, flag2: IsotropicFlag) -> SignedPerm:
        """pos(P(flag), P(flag2)) in ^J W^K, J, K the types of the two flags."""
        J = subset_of_dims(self.n, flag.dims)
        K = subset_of_dims(self.n, flag2.dims)
        w = self._pos_mats(self.adapted(flag), self.adapted_inv(flag), self.adapted(flag2))
        return min_double_coset_rep(J, w, K)

    # points of Z_J

    def coset_key(self, g, flag: IsotropicFlag) -> int:
        A = self.adapted(flag)
        return int(coset_keys((np.asarray(g) @ A % self.q)[None], self.n, flag.dims, self.q)[0])

    def make_point(self, flag: IsotropicFlag, g) -> ZPoint:
        g = np.asarray(g, dtype=np.int64) % self.q
        return ZPoint(flag, flag.image(g), self.coset_key(g, flag), tuple(int(x) for x in g.reshape(-1)))

    @cached_property
    def _based(self) -> dict:
        return {}

    def based(self, dims: Sequence[int], radical: str = "U") -> "BasedModel":
        key = (tuple(sorted(dims)), radical)
        if key not in self._based:
            bm = BasedModel(self, key[0], radical)
            if self.cache_dir is not None and key[0] == tuple(range(1, len(key[0]) + 1)):
                doc = read_orbit_cache(orbit_cache_path(bm, self.cache_dir))
                if doc is None or not bm.adopt_cache(doc):
                    write_orbit_cache(bm, self.cache_dir)
            self._based[key] = bm
        return self._based[key]

    def z_points(self, dims: Sequence[int]) -> list[ZPoint]:
        """All F_q-points of Z_J, J the type of flags with these dimensions."""
        bm = self.based(dims)
        out = []
        for flag in self.flags(dims):
            A, Ainv = self.adapted(flag), self.adapted_inv(flag)
            for c in bm.rep_mats:
                g = A @ c.astype(np.int64) @ Ainv % self.q
                out.append(self.make_point(flag, g))
        return out

    def z_count(self, dims: Sequence[int], radical: str = "U") -> int:
        """
        |Z_J^F| (radical U) or |Zbar_J^F| (radical R): the sum over flags V of
        the number of cosets of G/U(V), resp. G/R(V).  Since A_V lies in G,
        G A_V = G and the coset count of the standard flag serves every flag.
        """
        return len(self.flags(dims)) * self.based(dims, radical).size

    # Bédard induction

    def subgroup_flag(self, elements: np.ndarray, dims: Sequence[int]) -> IsotropicFlag:
        """The unique isotropic flag with the given dimensions fixed by all listed elements."""
        G = self.G
        mats = G.mats[elements].astype(np.int64)
        chain = []
        for k in sorted(dims):
            fixed = []
            for V in self.S.isotropic_subspaces(k):
                imgs = np.einsum("gij,rj->gri", mats, V.basis) % self.q
                if not np.any(V.reduce(imgs.reshape(-1, self.d))):
                    fixed.append(V)
            if len(fixed) != 1:
                raise ArithmeticError(f"{len(fixed)} fixed subspaces of dimension {k}")
            chain.append(fixed[0])
        return IsotropicFlag(tuple(chain))

    def bedard_step(self, pt: ZPoint) -> tuple[ZPoint, SignedPerm, frozenset[int]]:
        """One step (P, P', gU_P) -> (P^1, P'^1, gU_{P^1}); returns (point, z, J_1)."""
        n = self.n
        J = subset_of_dims(n, pt.flag.dims)
        z = self.pos(pt.flag2, pt.flag)
        J1 = bedard_j1(n, J, z)
        if J1 == J:
            return pt, z, J1
        G = self.G
        Pd = self.stabilizer_data(pt.flag)
        P2d = self.stabilizer_data(pt.flag2)
        cap = np.intersect1d(Pd.P, P2d.P)
        prods = G.matmul(G.mats[cap][:, None], G.mats[P2d.U][None]).reshape(-1, self.d, self.d)
        sub = np.unique(G.index(prods))
        dims1 = dims_of(n, J1)
        flag2_1 = self.subgroup_flag(sub, dims1)
        g = pt.matrix(self.d)
        ginv = mat_inv(g, self.q)
        flag_1 = flag2_1.image(ginv)
        return self.make_point(flag_1, g), z, J1

    def bedard_trace(self, pt: ZPoint) -> list[tuple[frozenset[int], SignedPerm]]:
        """The sequence (J, z) visited by the induction, ending at a star position."""
        trace = []
        while True:
            nxt, z, J1 = self.bedard_step(pt)
            J = subset_of_dims(self.n, pt.flag.dims)
            trace.append((J, z))
            if J1 == J:
                return trace
            pt = nxt

    def bedard_w(self, pt: ZPoint) -> SignedPerm:
        if pt not in self._bedard:
            self._bedard[pt] = self.bedard_trace(pt)[-1][1]
        return self._bedard[pt]

    def z_partition(self, dims: Sequence[int]) -> dict[SignedPerm, list[ZPoint]]:
        out: dict[SignedPerm, list[ZPoint]] = defaultdict(list)
        for pt in self.z_points(dims):
            out[self.bedard_w(pt)].append(pt)
        return dict(sorted(out.items()))

    def theta_fibers(self, dims: Sequence[int], w: SignedPerm) -> dict[ZPoint, int]:
        """
        Fiber sizes of theta_w : Z_J^w -> Z_{J_1}^w over every point of Z_{J_1}^w
        (zero entries mean the map misses that point).
        """
        n = self.n
        J = subset_of_dims(n, dims)
        J1 = bedard_j1(n, J, min_double_coset_rep(J, w, J))
        counts: Counter = Counter()
        for pt in self.z_points(dims):
            if self.bedard_w(pt) != w:
                continue
            img, _, J1_pt = self.bedard_step(pt)
            if J1_pt != J1:
                raise ArithmeticError("theta_w landed outside Z_{J_1}")
            counts[img] += 1
        target = [pt for pt in self.z_points(dims_of(n, J1)) if self.bedard_w(pt) == w]
        stray = set(counts) - set(target)
        if stray:
            raise ArithmeticError("theta_w image meets a point outside Z_{J_1}^w")
        return {pt: counts.get(pt, 0) for pt in target}

    # incidence sets Z_{J',J}^{y,w} for J' = J_{t2} ⊆ J = J_{t1}

    def restriction_points(self, t1: int, t2: int):
        """
        Points (V_*, V'_*, gU(V_{*,t1})) with V_* of length t2 >= t1, yielded as
        (c-image in Z_{J_{t2}}, d-image in Z_{J_{t1}}).
        """
        if t2 < t1:
            raise ValueError("need J' ⊆ J, i.e. t' >= t")
        dims_long = tuple(range(1, t2 + 1))
        for q_pt in self.z_points(tuple(range(1, t1 + 1))):
            g = q_pt.matrix(self.d)
            for flag in self.flags(dims_long):
                if flag.truncate(t1) != q_pt.flag:
                    continue
                yield self.make_point(flag, g), q_pt

    def kernels(self, t1: int, t2: int) -> dict[tuple[SignedPerm, SignedPerm], set[tuple[ZPoint, ZPoint]]]:
        """
        The point-count kernels of all Z_{J',J}^{y,w} at once, keyed by (y, w):
        each five-tuple contributes the pair (c-image, d-image).
        """
        key = (t1, t2)
        if key not in self._kernels:
            out: dict = defaultdict(set)
            for c_pt, d_pt in self.restriction_points(t1, t2):
                out[self.bedard_w(c_pt), self.bedard_w(d_pt)].add((c_pt, d_pt))
            self._kernels[key] = dict(out)
        return self._kernels[key]

    def kernel(self, t1: int, t2: int, y: SignedPerm, w: SignedPerm) -> set[tuple[ZPoint, ZPoint]]:
        return self.kernels(t1, t2).get((y, w), set())

    def kernel_composition(self, tK: int, tJp: int, tJ: int, y: SignedPerm) -> dict:
        """
        Compare K_{J',J}^{x,w} o K_{K,J'}^{y,x} with K_{K,J}^{y,w} for
        K = J_{tK} ⊆ J' = J_{tJp} ⊆ J = J_{tJ}, x = y_{J'}, w = y_J.
        """
        if not tK >= tJp >= tJ:
            raise ValueError("need K ⊆ J' ⊆ J, i.e. tK >= tJ' >= tJ")
        n = self.n
        Jp, J = jt_subset(n, tJp), jt_subset(n, tJ)
        x = min_double_coset_rep(Jp, y, Jp)
        w = min_double_coset_rep(J, y, J)
        first = self.kernel(tJp, tK, y, x)        # Z_K^y -> Z_{J'}^x
        second = self.kernel(tJ, tJp, x, w)       # Z_{J'}^x -> Z_J^w
        direct = self.kernel(tJ, tK, y, w)
        by_mid = defaultdict(list)
        for p, q in second:
            by_mid[p].append(q)
        composed: Counter = Counter()
        for s, p in first:
            for q in by_mid.get(p, ()):
                composed[s, q] += 1
        expected = Counter({pair: 1 for pair in direct})
        return {"x": x, "w": w, "x_star": is_star(x, Jp), "w_star": is_star(w, J),
                "entries": len(direct), "equal": composed == expected}

    # orbits and common Levi subgroups

    def orbit_reps(self, points: Sequence[ZPoint]) -> list[tuple[ZPoint, int]]:
        """One representative per G-orbit under h.(V, V', gU) = (hV, hV', hgh^-1 U)."""
        index = {pt: i for i, pt in enumerate(points)}
        perms = []
        for s in self.G.gens:
            sinv = mat_inv(s, self.q)
            perm = np.empty(len(points), dtype=np.int64)
            for i, pt in enumerate(points):
                g = pt.matrix(self.d)
                img = self.make_point(pt.flag.image(s), s @ g @ sinv % self.q)
                perm[i] = index[img]
            perms.append(perm)
        labels = orbit_labels(len(points), perms)
        lab, reps = canonical_orbits(labels)
        sizes = np.bincount(lab)
        return [(points[r], int(sizes[k])) for k, r in enumerate(reps)]

    def common_levi(self, flag: IsotropicFlag, flag2: IsotropicFlag):
        """
        Search the Levi subgroups of P(flag) (the U-conjugates of the standard
        one, each recorded by its decomposition of V into block spans) for one
        contained in P(flag2); a Levi L lies in P(flag2) exactly when every
        member of flag2 is a sum of L-isotypic pieces.  Returns the pieces or None.
        """
        G = self.G
        A = self.adapted(flag)
        _, _, blocks = block_masks(self.n, flag.dims)
        seen = set()
        for u in self.stabilizer_data(flag).U:
            B = G.mats[u].astype(np.int64) @ A % self.q
            pieces = tuple(self.S.span(B[:, a:b].T) for a, b in blocks)
            if pieces in seen:
                continue
            seen.add(pieces)
            if all(_is_sum_of_pieces(V, pieces) for V in flag2.chain):
                return pieces
        return None


def _is_sum_of_pieces(V: Subspace, pieces: Sequence[Subspace]) -> bool:
    inside = [X for X in pieces if V.contains_space(X)]
    total = sum((X.dim for X in inside), 0)
    return total == V.dim


def _r_keys(mats, keys, n, dims, p) -> np.ndarray:
    """Keys of gR0 cosets: minimum U0-key over the split torus of R0."""
    blocks = standard_blocks(n, dims)
    m = len(dims)
    out = keys.copy()
    for lams in itertools.product(range(1, p), repeat=m):
        t = np.ones(2 * n, dtype=np.int64)
        for k, lam in enumerate(lams):
            a, b = blocks[k]
            t[a:b] = lam
            a2, b2 = blocks[len(blocks) - 1 - k]
            t[a2:b2] = pow(lam, -1, p)
        scaled = (np.asarray(mats, dtype=np.int64) * t[None, None, :]) % p
        out = np.minimum(out, coset_keys(scaled, n, dims, p))
    return out


class BasedModel:
    """
    G-invariant functions on Z_J restricted to the fiber over the standard
    flag V0: functions on G/U0 (or G/R0) invariant under conjugation by P0.
    The point (V0, gV0, gU0) stands for its whole G-orbit.
    """

    def __init__(self, ctx: ZContext, dims: tuple[int, ...], radical: str = "U"):
        if radical not in ("U", "R"):
            raise ValueError("radical must be 'U' or 'R'")
        self.ctx, self.dims, self.radical = ctx, dims, radical
        G, n, q = ctx.G, ctx.n, ctx.q
        self.flag0 = ctx.standard_flag(dims)
        keys = coset_keys(G.mats, n, dims, q)
        if radical == "R":
            keys = _r_keys(G.mats, keys, n, dims, q)
        self.keys, first, self.coset_of = np.unique(keys, return_index=True, return_inverse=True)
        self.rep_index = first                  # minimal-code element of each coset
        self.rep_mats = G.mats[first]
        lower, _, _ = block_masks(n, dims)
        self.P0 = np.nonzero(~np.any(G.mats[:, lower] != 0, axis=1))[0]

    @property
    def size(self) -> int:
        return int(self.keys.size)

    def coset_index(self, mats) -> np.ndarray:
        ctx = self.ctx
        keys = coset_keys(mats, ctx.n, self.dims, ctx.q)
        if self.radical == "R":
            keys = _r_keys(mats, keys, ctx.n, self.dims, ctx.q)
        idx = np.searchsorted(self.keys, keys)
        if not np.array_equal(self.keys[np.minimum(idx, self.size - 1)], keys):
            raise KeyError("coset not found")
        return idx

    @cached_property
    def p0_generators(self) -> list[np.ndarray]:
        """A generating set of P0 grown deterministically until it generates P0."""
        G = self.ctx.G
        P0 = self.P0
        rng = np.random.default_rng(0)
        member = {int(c) for c in G.codes[P0]}
        gens: list[np.ndarray] = []
        generated = {int(G.codes[G.identity_index])}
        while len(generated) < len(member):
            cand = G.mats[P0[rng.integers(len(P0))]]
            if int(encode(cand[None], G.p)[0]) in generated:
                continue
            gens.append(cand)
            generated = _closure(G, gens)
        return gens

    @cached_property
    def orbits(self) -> tuple[np.ndarray, np.ndarray]:
        """(orbit index per coset, representative coset per orbit) under P0-conjugation."""
        G = self.ctx.G
        perms = []
        for s in self.p0_generators:
            sinv = mat_inv(s, G.p)
            conj = G.matmul(G.matmul(s, self.rep_mats), sinv)
            perms.append(self.coset_index(conj))
        return canonical_orbits(orbit_labels(self.size, perms))

    def orbit_sizes(self) -> np.ndarray:
        return np.bincount(self.orbits[0])

    def flag_of(self, c: int) -> IsotropicFlag:
        return self.ctx.flag_of_columns(self.rep_mats[c], self.dims)

    @cached_property
    def positions(self) -> np.ndarray:
        """pos(gV0, V0) for every coset, as an object array of SignedPerm."""
        ctx = self.ctx
        cache: dict[IsotropicFlag, SignedPerm] = {}
        out = np.empty(self.size, dtype=object)
        for c in range(self.size):
            f = self.flag_of(c)
            if f not in cache:
                cache[f] = ctx.pos(f, self.flag0)
            out[c] = cache[f]
        return out

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.keys, dtype=np.int64).tobytes()).hexdigest()

    def cache_payload(self) -> dict:
        lab, reps = self.orbits
        return {
            "version": CACHE_VERSION,
            "n": self.ctx.n, "q": self.ctx.q, "dims": list(self.dims), "radical": self.radical,
            "cosets": self.size,
            "digest": self.digest,
            "labels": [int(x) for x in lab],
            "orbit_reps": [int(self.keys[r]) for r in reps],
            "orbit_sizes": [int(x) for x in np.bincount(lab)],
        }

    def adopt_cache(self, doc: dict) -> bool:
        """Take the orbit table from a cache document if it describes this model."""
        want = {"n": self.ctx.n, "q": self.ctx.q, "dims": list(self.dims), "radical": self.radical,
                "cosets": self.size, "digest": self.digest}
        if any(doc.get(k) != v for k, v in want.items()):
            return False
        lab = np.array(doc["labels"], dtype=np.int64)
        reps = np.searchsorted(self.keys, np.array(doc["orbit_reps"], dtype=np.int64))
        if lab.size != self.size or not np.array_equal(lab[reps], np.arange(reps.size)):
            return False
        self.__dict__["orbits"] = (lab, reps)
        return True


def _closure(G: Group, gens: Sequence[np.ndarray]) -> set[int]:
    e = np.eye(G.d, dtype=np.int64)
    seen = {int(encode(e[None], G.p)[0])}
    frontier = e[None]
    while frontier.shape[0]:
        cand = np.concatenate([G.matmul(frontier, s) for s in gens])
        codes = encode(cand, G.p)
        codes, first = np.unique(codes, return_index=True)
        fresh = np.array([int(c) not in seen for c in codes], dtype=bool)
        seen.update(int(c) for c in codes[fresh])
        frontier = cand[first[fresh]]
    return seen


def orbit_cache_path(bm: BasedModel, cache_dir) -> Path:
    t = len(bm.dims)
    return Path(cache_dir) / f"orbits_n{bm.ctx.n}_q{bm.ctx.q}_t{t}_{bm.radical}.json"


def _atomic_write_json(path, doc: dict) -> Path:
    """Write JSON to a temporary file in the same directory, then rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)
    return path


def write_orbit_cache(bm: BasedModel, cache_dir) -> Path:
    return _atomic_write_json(orbit_cache_path(bm, cache_dir), bm.cache_payload())


def read_orbit_cache(path) -> dict | None:
    """The cached table, or None when missing, unreadable or of another version."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError):
        return None
    if doc.get("version") != CACHE_VERSION:
        return None
    return doc
