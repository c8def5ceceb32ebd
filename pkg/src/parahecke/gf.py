"""
Linear algebra over the prime field F_p on small numpy integer matrices.

Vectors are rows.  Subspaces are stored in reduced row echelon form, which is
canonical, so two subspaces are equal exactly when their stored rows agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "rref", "rank", "nullspace", "solve", "mat_inv", "Subspace", "is_prime",
]


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of M mod p, with the pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        for j in others:
            if j != r:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Rows spanning {x : M x = 0}."""
    M = np.array(M, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    cols = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for r, c in enumerate(piv):
            x[c] = (-R[r, f]) % p
        basis.append(x)
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def solve(A, b, p: int) -> np.ndarray | None:
    """A particular solution x of A x = b (mod p), or None if inconsistent."""
    A = np.array(A, dtype=np.int64)
    b = np.array(b, dtype=np.int64).reshape(A.shape[0], -1)
    aug = np.concatenate([A, b], axis=1)
    R, piv = rref(aug, p)
    ncols = A.shape[1]
    if any(c >= ncols for c in piv):
        return None
    x = np.zeros((ncols, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, ncols:]
    return x if b.shape[1] > 1 else x[:, 0]


def mat_inv(M, p: int) -> np.ndarray:
    M = np.array(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:] % p


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^dim, canonically represented by its RREF rows."""

    p: int
    dim_ambient: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors, p: int, dim_ambient: int | None = None) -> "Subspace":
        V = np.array(vectors, dtype=np.int64)
        if dim_ambient is None:
            dim_ambient = V.shape[-1]
        if V.size == 0:
            return cls(p, dim_ambient, ())
        R, _ = rref(V.reshape(-1, dim_ambient), p)
        return cls(p, dim_ambient, tuple(tuple(int(x) for x in row) for row in R))

    @classmethod
    def zero(cls, p: int, dim_ambient: int) -> "Subspace":
        return cls(p, dim_ambient, ())

    @classmethod
    def whole(cls, p: int, dim_ambient: int) -> "Subspace":
        return cls.span(np.eye(dim_ambient, dtype=np.int64), p)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def basis(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.dim_ambient), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)

    @cached_property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.rows]

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of v modulo this subspace (batched on rows)."""
        v = np.array(v, dtype=np.int64) % self.p
        for row, c in zip(self.basis, self.pivots):
            v = (v - np.multiply.outer(v[..., c], row)) % self.p if v.ndim > 1 \
                else (v - v[c] * row) % self.p
        return v

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.p, self.dim_ambient)

    def annihilator(self) -> np.ndarray:
        """Rows spanning {x : <x, v>_dot = 0 for v in self} (standard dot product)."""
        if self.dim == 0:
            return np.eye(self.dim_ambient, dtype=np.int64)
        return nullspace(self.basis, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        stacked = np.concatenate([self.annihilator(), other.annihilator()])
        if stacked.shape[0] == 0:
            return Subspace.whole(self.p, self.dim_ambient)
        return Subspace.span(nullspace(stacked, self.p), self.p, self.dim_ambient)

    def image(self, g) -> "Subspace":
        """Image under the matrix g acting on column vectors."""
        if self.dim == 0:
            return self
        return Subspace.span((np.asarray(g) @ self.basis.T).T, self.p, self.dim_ambient)

    def __str__(self):
        return "<" + "; ".join("".join(str(x) for x in r) for r in self.rows) + ">"
