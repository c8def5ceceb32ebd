import numpy as np
import pytest
from hypothesis import given, strategies as st

from parahecke.gf import Subspace, is_prime, mat_inv, nullspace, rank, rref, solve

P = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, rows=None, cols=None):
    p = draw(P)
    r = rows or draw(st.integers(1, 4))
    c = cols or draw(st.integers(1, 5))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def brute_rank(M, p):
    """Dimension of the row span by counting its vectors."""
    rows = [tuple(r) for r in M]
    span = {tuple([0] * M.shape[1])}
    for r in rows:
        span = {tuple((a + c * b) % p for a, b in zip(v, r)) for v in span for c in range(p)}
    return round(np.log(len(span)) / np.log(p))


def test_is_prime():
    assert [x for x in range(12) if is_prime(x)] == [2, 3, 5, 7, 11]


@given(matrices())
def test_rank_matches_span_size(mp):
    M, p = mp
    assert rank(M, p) == brute_rank(M, p)


@given(matrices())
def test_rref_idempotent_and_nullspace(mp):
    M, p = mp
    R, piv = rref(M, p)
    R2, piv2 = rref(R, p)
    assert np.array_equal(R, R2) and piv == piv2
    N = nullspace(M, p)
    assert N.shape[0] == M.shape[1] - len(piv)
    assert not np.any(M @ N.T % p)


@given(matrices(), st.data())
def test_solve(mp, data):
    M, p = mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=M.shape[1], max_size=M.shape[1])))
    b = M @ x % p
    y = solve(M, b, p)
    assert y is not None and np.array_equal(M @ y % p, b)


def test_solve_inconsistent():
    assert solve([[1, 0], [1, 0]], [0, 1], 2) is None


@given(matrices(rows=3, cols=3))
def test_inverse(mp):
    M, p = mp
    if rank(M, p) < 3:
        with pytest.raises(ValueError):
            mat_inv(M, p)
    else:
        assert np.array_equal(M @ mat_inv(M, p) % p, np.eye(3, dtype=np.int64))


@given(matrices(cols=4), matrices(cols=4))
def test_subspace_dimension_formula(a, b):
    (A, p), (B, _) = a, b
    B = B % p
    U, V = Subspace.span(A, p), Subspace.span(B, p)
    assert (U + V).dim + U.intersect(V).dim == U.dim + V.dim
    assert U.contains_space(U.intersect(V)) and (U + V).contains_space(V)


@given(matrices(cols=4))
def test_canonical_form(mp):
    M, p = mp
    U = Subspace.span(M, p)
    # a different spanning set of the same space gives the same key
    V = Subspace.span(np.concatenate([M[::-1], (M.sum(axis=0) % p)[None]]), p)
    assert U == V
    for row in M:
        assert U.contains(row) and not np.any(U.reduce(row))


def test_zero_and_whole():
    assert Subspace.zero(3, 4).dim == 0
    assert Subspace.whole(3, 4).dim == 4
    assert str(Subspace.span([[1, 1]], 2)) == "<11>"
