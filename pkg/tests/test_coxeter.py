import pytest
from hypothesis import given, strategies as st

from brute import bfs_word_lengths, weyl_order
from parahecke.coxeter import (
    SignedPerm, all_elements, bfs_lengths, conjugacy_class_reps, coxeter_matrix, element_order,
    format_word, generator, generators, identity, inverse, length, longest_element, mul,
    parse_element, parse_word, reduced_word,
)


@st.composite
def signed_perms(draw, n=None):
    n = n or draw(st.integers(1, 5))
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    return SignedPerm(tuple(s * x for s, x in zip(signs, perm)))


@st.composite
def same_rank_pair(draw):
    n = draw(st.integers(1, 5))
    return draw(signed_perms(n)), draw(signed_perms(n))


def test_rejects_non_signed_permutation():
    with pytest.raises(ValueError):
        SignedPerm((1, 1))
    with pytest.raises(ValueError):
        SignedPerm((1, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_group_order(n):
    assert len(all_elements(n)) == weyl_order(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_length_matches_independent_bfs(n):
    oracle = bfs_word_lengths(n)
    assert {w.images: length(w) for w in all_elements(n)} == oracle
    assert {w.images: l for w, l in bfs_lengths(n).items()} == oracle


def test_generator_convention():
    assert generator(2, 1) == SignedPerm((2, 1))
    assert generator(2, 2) == SignedPerm((1, -2))
    assert str(parse_word(2, "s1 s2 s1")) == "[-1,2]"
    assert length(parse_word(2, "s1 s2 s1")) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_longest_element_is_minus_identity(n):
    w0 = longest_element(n, range(1, n + 1))
    assert w0 == SignedPerm(tuple(-i for i in range(1, n + 1)))
    assert length(w0) == n * n


def test_longest_of_parabolic():
    # W_{s1} in B_2 is {1, s1}
    assert longest_element(2, [1]) == generator(2, 1)
    assert longest_element(3, []) == identity(3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_coxeter_matrix_type_b(n):
    m = coxeter_matrix(generators(n))
    for i in range(n):
        for j in range(n):
            if i == j:
                want = 1
            elif abs(i - j) > 1:
                want = 2
            else:
                want = 4 if max(i, j) == n - 1 else 3
            assert m[i][j] == want


def test_conjugacy_classes_b2():
    # W(B_2) is dihedral of order 8: five classes
    assert len(conjugacy_class_reps(all_elements(2))) == 5


def test_parse_format_round_trip():
    assert parse_element("[-1,2]") == SignedPerm((-1, 2))
    assert format_word([1, 2, 1]) == "s1 s2 s1"
    with pytest.raises(ValueError):
        parse_word(2, "t1")


@given(same_rank_pair())
def test_multiplication_and_inverse(pair):
    a, b = pair
    e = identity(a.n)
    assert mul(a, inverse(a)) == e == mul(inverse(a), a)
    assert inverse(mul(a, b)) == mul(inverse(b), inverse(a))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(signed_perms(n), signed_perms(n), signed_perms(n))))
def test_associativity(t):
    a, b, c = t
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(signed_perms())
def test_length_properties(w):
    assert length(w) == length(inverse(w))
    for s in generators(w.n):
        assert abs(length(mul(w, s)) - length(w)) == 1
        assert abs(length(mul(s, w)) - length(w)) == 1


@given(signed_perms())
def test_reduced_word(w):
    word = reduced_word(w)
    assert len(word) == length(w)
    assert SignedPerm.from_word(w.n, word) == w


@given(signed_perms())
def test_element_order_divides_group_order(w):
    assert weyl_order(w.n) % element_order(w) == 0
