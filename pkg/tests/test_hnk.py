from math import comb

import numpy as np
import pytest

from conftest import cvec
from hnkspaces.combinat import subsets_lex
from hnkspaces.errors import CertificateError, DomainError
from hnkspaces.fock import basis_vector, creation_matrix, full_fock_creation
from hnkspaces.hnk import (basis_matrix, diagram_unitaries, element, flip_w_sign, hnk_space, hs_gram,
                           intersection_basis, intertwining_sides, restrict_full_fock, verify_intertwining,
                           w_sign)
from hnkspaces.linalg import ExactMatrix, operator_norm


def test_basis_matrix_small_examples():
    assert basis_matrix(2, 1, 1) == ExactMatrix.from_rows([[0], [1]])
    assert basis_matrix(2, 1, 2) == ExactMatrix.from_rows([[-1], [0]])
    assert basis_matrix(2, 2, 1) == ExactMatrix.from_rows([[0, -1]])
    assert basis_matrix(2, 2, 2) == ExactMatrix.from_rows([[1, 0]])


def test_basis_matrix_n3_k2():
    b = basis_matrix(3, 2, 1)
    rows = [s.elements for s in subsets_lex(3, 1)]
    cols = [s.elements for s in subsets_lex(3, 1)]
    assert b[rows.index((2,)), cols.index((3,))] == 1
    assert b[rows.index((3,)), cols.index((2,))] == -1
    assert b.nonzero_count() == 2


def test_basis_matrix_domain():
    for args in [(3, 0, 1), (3, 4, 1), (3, 2, 0), (3, 2, 4)]:
        with pytest.raises(DomainError):
            basis_matrix(*args)


@pytest.mark.parametrize("n", range(1, 8))
def test_basis_structure(n):
    for k in range(1, n + 1):
        space = hnk_space(n, k)
        assert (space.p, space.q) == (comb(n, n - k), comb(n, k - 1))
        for b in space.basis:
            assert set(b.data.flat) <= {-1, 0, 1}
            assert b.nonzero_count() == comb(n - 1, k - 1)
        assert hs_gram(space) == ExactMatrix.diagonal([comb(n - 1, k - 1)] * n)


def test_element_examples(rng):
    space = hnk_space(4, 2)
    assert np.array_equal(element(space, np.eye(4)[2]), basis_matrix(4, 2, 3).to_complex())
    assert not np.any(element(space, np.zeros(4)))
    with pytest.raises(DomainError):
        element(space, np.zeros(3))


@pytest.mark.parametrize("n", range(1, 8))
def test_hilbertian(n):
    rng = np.random.default_rng(100 + n)
    for k in range(1, n + 1):
        space = hnk_space(n, k)
        for _ in range(20):
            a = cvec(rng, n)
            assert abs(operator_norm(element(space, a)) - np.linalg.norm(a)) < 1e-10


def test_diagram_examples():
    d = diagram_unitaries(3, 2)
    assert d.U_km1 == ExactMatrix.identity(3) and d.U_nmk == ExactMatrix.identity(3)
    v = diagram_unitaries(2, 1).V
    # coordinate {1} -> {2}, {2} -> {1}
    assert v == ExactMatrix.from_rows([[0, 1], [1, 0]])
    signs = d.w_signs()
    assert signs[[s.elements for s in subsets_lex(3, 1)].index((3,))] == -1


@pytest.mark.parametrize("n", range(1, 8))
def test_diagram_unitary_exact(n):
    for k in range(1, n + 1):
        d = diagram_unitaries(n, k)
        for m in (d.U_km1, d.U_nmk, d.V, d.W):
            assert m.H @ m == ExactMatrix.identity(m.cols)
        assert d.W @ d.W == ExactMatrix.identity(d.W.rows)
        assert set(d.w_signs()) <= {-1, 1}


@pytest.mark.parametrize("n", range(1, 8))
def test_intertwining_all(n):
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            assert verify_intertwining(n, k, i)


def test_intertwining_n2_k1_by_hand():
    # b_1^{2,1} = (0, 1)^t, W = diag(+1, ...), V swaps, C_{e_1}: vacuum -> e_1
    lhs, rhs = intertwining_sides(2, 1, 1)
    assert lhs == rhs == ExactMatrix.from_rows([[0], [1]])


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (4, 2), (5, 3)])
def test_intertwining_sensitive_to_w(n, k):
    d = diagram_unitaries(n, k)
    for pos in range(d.W.rows):
        broken = flip_w_sign(d, pos)
        assert not all(verify_intertwining(n, k, i, broken) for i in range(1, n + 1))


def test_intersection_examples():
    inter = intersection_basis(2, {1, 2})
    assert inter.generators[0] == ExactMatrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, -1]])
    assert intersection_basis(4, {2}).generators[1] == basis_matrix(4, 2, 2)
    with pytest.raises(DomainError):
        intersection_basis(3, set())


@pytest.mark.parametrize("n", range(1, 6))
def test_intersection_full_is_phi(n):
    inter = intersection_basis(n, range(1, n + 1))
    assert inter.verify()
    for i, c in zip(range(1, n + 1), inter.creations):
        assert restrict_full_fock(full_fock_creation(n, basis_vector(n, i)), n, range(1, n + 1)) == c


def test_intersection_partial():
    inter = intersection_basis(5, {2, 4})
    assert inter.grades == (2, 4)
    assert inter.verify()
