from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from hnkspaces.combinat import (IndexSubset, complementary_pairs, eps_iI, eps_IiJ, eps_IJ, perm_sign,
                                subsets_lex)
from hnkspaces.errors import DomainError


def sign_by_cycles(seq):
    """Oracle: (-1)^(n - #cycles) of the permutation sorting seq."""
    order = sorted(seq)
    target = [order.index(x) for x in seq]
    seen, cycles = set(), 0
    for start in range(len(target)):
        if start in seen:
            continue
        cycles += 1
        j = start
        while j not in seen:
            seen.add(j)
            j = target[j]
    return (-1) ** (len(seq) - cycles)


def test_subsets_lex_examples():
    assert [s.elements for s in subsets_lex(2, 1)] == [(1,), (2,)]
    assert [s.elements for s in subsets_lex(4, 2)] == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(subsets_lex(5, 2)) == 10
    assert [s.elements for s in subsets_lex(3, 0)] == [()]


@pytest.mark.parametrize("n,r", [(3, -1), (3, 4), (0, 0)])
def test_subsets_lex_domain(n, r):
    with pytest.raises(DomainError):
        subsets_lex(n, r)


@given(st.integers(1, 10), st.data())
def test_subsets_lex_count_and_order(n, data):
    r = data.draw(st.integers(0, n))
    subs = subsets_lex(n, r)
    assert len(subs) == comb(n, r)
    assert all(a < b for a, b in zip(subs, subs[1:]))


def test_index_subset_validation():
    with pytest.raises(DomainError):
        IndexSubset((2, 1), 3)
    with pytest.raises(DomainError):
        IndexSubset((0, 1), 3)
    assert IndexSubset((1, 3), 4).complement().elements == (2, 4)


def test_perm_sign_examples():
    assert perm_sign((1, 2, 3)) == 1
    assert perm_sign((2, 1, 3)) == -1
    assert perm_sign((3, 1, 2)) == 1
    with pytest.raises(DomainError):
        perm_sign((1, 1, 2))


@given(st.permutations(range(8)), st.permutations(range(8)))
def test_perm_sign_multiplicative(p, q):
    composed = [p[q[i]] for i in range(8)]
    assert perm_sign(composed) == perm_sign(p) * perm_sign(q)
    assert perm_sign(p) == sign_by_cycles(p)


def test_eps_IiJ_examples():
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert eps_IiJ(tuple(range(1, k)), k, tuple(range(k + 1, n + 1))) == 1
    assert eps_IiJ((), 2, (1,)) == perm_sign((2, 1)) == -1
    assert eps_IiJ((2,), 1, (3,)) == perm_sign((2, 1, 3)) == -1
    with pytest.raises(DomainError):
        eps_IiJ((1,), 1, (2,))


def test_eps_IJ_examples():
    assert eps_IJ((1,), (3,), 2) == 1
    assert eps_IJ((3,), (1,), 2) == perm_sign((3, 1)) == -1
    with pytest.raises(DomainError):
        eps_IJ((1,), (2,), 2)


def test_eps_iI_examples():
    assert eps_iI(1, (2, 3)) == 1
    assert eps_iI(3, (1, 2)) == 1
    assert eps_iI(2, (1, 3)) == -1
    with pytest.raises(DomainError):
        eps_iI(2, (2, 3))


def test_eps_iI_is_a_permutation_sign():
    for I in combinations(range(1, 7), 3):
        for i in set(range(1, 7)) - set(I):
            assert eps_iI(i, I) == perm_sign((i,) + I)


@pytest.mark.parametrize("n", range(1, 8))
def test_eps_product_identity_exhaustive(n):
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for I, J in complementary_pairs(n, k, i):
                assert eps_IiJ(I, i, J) * eps_IJ(I, J, i) == (-1) ** (i + k)


@pytest.mark.parametrize("n", range(1, 8))
def test_w_sign_independent_of_choice(n):
    for k in range(1, n + 1):
        for J in subsets_lex(n, n - k):
            rest = J.complement().elements
            vals = {eps_iI(i, [x for x in rest if x != i]) * eps_IiJ([x for x in rest if x != i], i, J)
                    for i in rest}
            assert len(vals) == 1


def test_complementary_pairs_count():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert len(complementary_pairs(n, k, 1)) == comb(n - 1, k - 1)
