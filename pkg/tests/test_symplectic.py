import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brute import form, gaussian_isotropic_count, isotropic_subspaces_brute, sl2_order_brute, sp_order_formula
from parahecke.symplectic import (
    BudgetExceeded, ClassFunction, SymplecticSpace, coset_keys, decode, default_generators, encode,
    enumerate_group, group_order, is_cuspidal, linear_characters, load_class_function,
    save_class_function,
)


def test_group_order_formula():
    assert [group_order(n, q) for n, q in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]] == \
        [6, 24, 720, 51840, 1451520]
    assert all(group_order(n, q) == sp_order_formula(n, q) for n in range(4) for q in (2, 3, 5))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_sp2_enumeration_matches_sl2_count(q):
    assert enumerate_group(SymplecticSpace(1, q)).order == sl2_order_brute(q)


def test_form_matches_independent_definition():
    S = SymplecticSpace(2, 3)
    for x in itertools.product(range(3), repeat=4):
        for y in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]:
            assert S.form(x, y) == form(x, y, 2, 3)


def test_generators_symplectic():
    for n, q in [(1, 2), (2, 3), (3, 2)]:
        S = SymplecticSpace(n, q)
        assert all(S.is_symplectic(g) for g in default_generators(S))


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3)])
def test_isotropic_subspaces_match_brute_force(n, q):
    S = SymplecticSpace(n, q)
    for t in range(n + 1):
        ours = S.isotropic_subspaces(t)
        assert len(ours) == gaussian_isotropic_count(n, q, t)
        brute = isotropic_subspaces_brute(n, q, t)
        as_sets = {frozenset(tuple(int(x) for x in v) for v in S.vectors_of(A)) for A in ours}
        assert as_sets == brute


def test_enum_isotropic_example():
    assert len(SymplecticSpace(2, 2).isotropic_subspaces(2)) == 15


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_group(SymplecticSpace(2, 3), budget=100)


def test_encode_round_trip():
    G = enumerate_group(SymplecticSpace(1, 3))
    assert np.array_equal(decode(encode(G.mats, 3), 2, 3), G.mats)


def test_group_closure_and_inverses():
    G = enumerate_group(SymplecticSpace(1, 5))
    inv = G.inverse_index
    prods = G.matmul(G.mats, G.mats[inv])
    assert np.all(prods == np.eye(2, dtype=prods.dtype))


def test_class_counts():
    assert enumerate_group(SymplecticSpace(1, 2)).class_count == 3
    assert enumerate_group(SymplecticSpace(1, 3)).class_count == 7
    # Sp_4(F_2) is isomorphic to S_6: eleven classes
    G = enumerate_group(SymplecticSpace(2, 2))
    assert G.class_count == 11
    assert sum(G.class_sizes()) == 720


def test_sp4f2_sign_character_is_cuspidal(tmp_path):
    G = enumerate_group(SymplecticSpace(2, 2))
    chars = linear_characters(G)
    assert len(chars) == 2
    sign = next(c for c in chars if any(v != 1 for v in c.values))
    assert is_cuspidal(G, sign)
    assert not is_cuspidal(G, ClassFunction.trivial(G))
    path = tmp_path / "chi.json"
    save_class_function(sign, path)
    assert load_class_function(path, G).values == sign.values
    assert sign.degree == Fraction(1)


def test_coset_keys_constant_on_cosets():
    S = SymplecticSpace(2, 2)
    G = enumerate_group(S)
    keys = coset_keys(G.mats.astype(np.int64), 2, (1, 2), 2)
    assert np.unique(keys).size == 720 // 16


# goodness and psi on random pairs

def _pairs(n, q, t):
    Es = SymplecticSpace(n, q).isotropic_subspaces(t)
    return st.tuples(st.sampled_from(Es), st.sampled_from(Es))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2)]).flatmap(
    lambda c: st.tuples(st.just(c), _pairs(*c))))
def test_goodness_modes_agree(case):
    (n, q, t), (A, B) = case
    S = SymplecticSpace(n, q)
    modes = {S.is_good(A, B, m) for m in ("i", "ii", "iii", "iv")}
    assert len(modes) == 1
    assert S.bracket(A, B).dim == 2 * n - 2 * t


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2, 1), (2, 3, 1), (3, 2, 1)]).flatmap(
    lambda c: st.tuples(st.just(c), _pairs(*c))))
def test_psi_round_trip(case):
    (n, q, t), (A, B) = case
    S = SymplecticSpace(n, q)
    if not S.is_good(A, B):
        with pytest.raises(ValueError):
            S.psi_matrix(A, B)
        return
    P, R = S.psi_matrix(A, B), S.psi_matrix(B, A)
    assert np.array_equal(R @ P % q, np.eye(P.shape[0], dtype=np.int64))
    assert np.array_equal(P.T @ S.quotient_form(B) @ P % q, S.quotient_form(A))


def test_adapted_basis_is_symplectic():
    S = SymplecticSpace(2, 3)
    for A in S.isotropic_subspaces(1):
        g = S.adapted_basis([A])
        assert S.is_symplectic(g)
        assert S.span(g[:, :1].T) == A
