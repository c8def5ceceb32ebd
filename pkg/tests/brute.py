"""
Independent brute-force oracles.  Nothing here imports the package: each
value is recomputed from first principles so the tests compare two separate
derivations.
"""

from __future__ import annotations

import itertools
from collections import deque
from math import prod


# signed permutations as plain tuples; composition (a*b)(i) = a(b(i))

def sp_apply(w, i):
    x = w[abs(i) - 1]
    return x if i > 0 else -x


def sp_mul(a, b):
    return tuple(sp_apply(a, x) for x in b)


def sp_gens(n):
    out = []
    for i in range(1, n):
        w = list(range(1, n + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        out.append(tuple(w))
    out.append(tuple(range(1, n)) + (-n,))
    return out


def bfs_word_lengths(n):
    e = tuple(range(1, n + 1))
    dist = {e: 0}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for s in sp_gens(n):
            x = sp_mul(w, s)
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def weyl_order(n):
    return 2 ** n * prod(range(1, n + 1))


# finite symplectic geometry with the form <e_i, f_i> = 1 in the basis e_1..e_n, f_n..f_1

def form(x, y, n, q):
    d = 2 * n
    s = 0
    for i in range(n):
        s += x[i] * y[d - 1 - i] - x[d - 1 - i] * y[i]
    return s % q


def sp_order_formula(n, q):
    return q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))


def sl2_order_brute(q):
    """|Sp_2(F_q)| = |SL_2(F_q)| by counting all 2x2 matrices of determinant 1."""
    return sum(1 for a, b, c, d in itertools.product(range(q), repeat=4) if (a * d - b * c) % q == 1)


def isotropic_subspaces_brute(n, q, t):
    """All totally isotropic t-dimensional subspaces, as frozensets of vectors."""
    d = 2 * n
    vecs = [v for v in itertools.product(range(q), repeat=d) if any(v)]
    found = {frozenset([tuple([0] * d)])}
    for _ in range(t):
        nxt = set()
        for S in found:
            for v in vecs:
                if v in S:
                    continue
                if all(form(v, u, n, q) == 0 for u in S):
                    nxt.add(_extend(S, v, q))
        found = nxt
    return found


def _extend(S, v, q):
    pts = set()
    for u in S:
        for c in range(q):
            pts.add(tuple((a + c * b) % q for a, b in zip(u, v)))
    return frozenset(pts)


def gaussian_isotropic_count(n, q, t):
    num = prod(q ** (2 * (n - i)) - 1 for i in range(t))
    den = prod(q ** (i + 1) - 1 for i in range(t))
    return num // den


def flag_count(n, q, t):
    """Number of isotropic flags V_1 < ... < V_t with dim V_i = i."""
    out = 1
    for i in range(t):
        # lines in V_i^perp / V_i, a symplectic space of dimension 2(n - i)
        out *= (q ** (2 * (n - i)) - 1) // (q - 1)
    return out


def unipotent_radical_order(n, q, t):
    """q^(number of positive roots outside the Levi GL_1^t x Sp_{2(n-t)})."""
    return q ** (n * n - (n - t) ** 2)


def z_count(n, q, t):
    return flag_count(n, q, t) * sp_order_formula(n, q) // unipotent_radical_order(n, q, t)


def zbar_count(n, q, t):
    return z_count(n, q, t) // (q - 1) ** t


def dim_unipotent_radical(n, dims):
    """dim U_P for the stabilizer of an isotropic flag with the given dimensions."""
    dims = sorted(dims)
    blocks = [b - a for a, b in zip([0] + dims, dims)]
    levi_pos = sum(m * (m - 1) // 2 for m in blocks) + (n - (dims[-1] if dims else 0)) ** 2
    return n * n - levi_pos
