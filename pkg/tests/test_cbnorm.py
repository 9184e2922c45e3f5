import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cvec
from hnkspaces.cbnorm import (LevelEvaluator, OperatorTuple, cb_distance, cb_norm_forward, cb_norm_inverse,
                              closed_form_distance, col_gram, col_norm, degenerate_triangle_gap, explore,
                              forward_ratio, inverse_ratio, operator_tuple, random_search, row_gram, row_norm,
                              spectrum_k_sums, trace_identity)
from hnkspaces.errors import DomainError
from hnkspaces.linalg import hermitian_eigenvalues, operator_norm


def test_row_col_norm_single(rng):
    h = cvec(rng, 4)
    for k in range(1, 5):
        t = operator_tuple(4, k, [h])
        assert abs(row_norm(t) - np.linalg.norm(h)) < 1e-10
        assert abs(col_norm(t) - np.linalg.norm(h)) < 1e-10


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_tuple_norms(n):
    for k in range(1, n + 1):
        t = operator_tuple(n, k, np.eye(n))
        assert abs(row_norm(t) ** 2 - k) < 1e-10
        assert abs(col_norm(t) ** 2 - (n - k + 1)) < 1e-10
        assert np.allclose(row_gram(n, k, np.eye(n)), k * np.eye(comb(n, k)))
        assert np.allclose(col_gram(n, k, np.eye(n)), (n - k + 1) * np.eye(comb(n, k - 1)))


def test_spectrum_k_sums_examples():
    assert list(spectrum_k_sums([1, 0, 0], 2)) == [1, 1, 0]
    eig = hermitian_eigenvalues(row_gram(3, 2, [[1, 0, 0]]))
    assert np.allclose(eig, [1, 1, 0], atol=1e-12)
    assert np.allclose(spectrum_k_sums([1] * 5, 3), 3)
    assert list(spectrum_k_sums([3.5, 2, -1], 3)) == [4.5]
    with pytest.raises(DomainError):
        spectrum_k_sums([1, 2], 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_k_sum_spectra(n):
    rng = np.random.default_rng(7 * n)
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            for _ in range(5):
                hs = np.array([cvec(rng, n) for _ in range(m)])
                base = hermitian_eigenvalues(row_gram(n, 1, hs))
                top = hermitian_eigenvalues(row_gram(n, k, hs))
                assert np.max(np.abs(top - spectrum_k_sums(base, k))) < 1e-8


def test_trace_identity_examples():
    assert trace_identity(4, 2, [1, 0, 0, 0]) == pytest.approx((3.0, 3.0))
    h = np.array([1 + 1j, 2, -0.5j])
    got, want = trace_identity(3, 1, h)
    assert abs(got - np.vdot(h, h).real) < 1e-12 and abs(want - np.vdot(h, h).real) < 1e-12
    assert trace_identity(5, 3, np.zeros(5)) == (0.0, 0.0)


@given(st.integers(1, 7), st.data())
@settings(max_examples=50)
def test_trace_identity_random(n, data):
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(data.draw(st.integers(0, 2 ** 32 - 1)))
    h = cvec(rng, n)
    got, want = trace_identity(n, k, h)
    assert abs(got - want) < 1e-10 * (1 + np.vdot(h, h).real)


def test_level_evaluator_matches_blocks(rng):
    for n, k, m in [(3, 2, 2), (4, 3, 4), (5, 2, 3), (4, 1, 2)]:
        hs = np.array([cvec(rng, n) for _ in range(m)])
        t, t1 = operator_tuple(n, k, hs), operator_tuple(n, 1, hs)
        lo, hi = LevelEvaluator(n, 1), LevelEvaluator(n, k)
        assert abs(forward_ratio(lo, hi, hs) - row_norm(t) / row_norm(t1)) < 1e-10
        assert abs(inverse_ratio(lo, hi, hs) - col_norm(t1) / col_norm(t)) < 1e-10


def test_operator_tuple_invariants(rng):
    hs = np.array([cvec(rng, 4) for _ in range(3)])
    t = operator_tuple(4, 2, hs)
    assert isinstance(t, OperatorTuple) and t.m == 3
    assert abs(row_norm(t) ** 2 - hermitian_eigenvalues(row_gram(4, 2, hs))[0]) < 1e-10
    assert abs(col_norm(t) ** 2 - hermitian_eigenvalues(col_gram(4, 2, hs))[0]) < 1e-10


def test_cb_norms_examples():
    assert cb_norm_forward(5, 1).value == pytest.approx(1, abs=1e-12)
    f = cb_norm_forward(4, 2)
    assert abs(f.value - math.sqrt(2)) < 1e-10 and f.max_random_ratio <= math.sqrt(2) + 1e-9
    assert cb_norm_inverse(5, 1).value == pytest.approx(1, abs=1e-12)
    assert abs(cb_norm_inverse(4, 2).value - math.sqrt(4 / 3)) < 1e-10
    for n in range(1, 7):
        assert abs(cb_norm_inverse(n, n).value - math.sqrt(n)) < 1e-10


def test_cb_distance_examples():
    assert cb_distance(4, 1).value == pytest.approx(1, abs=1e-12)
    assert abs(cb_distance(6, 6).value - 6) < 1e-12
    assert abs(cb_distance(4, 2).value - math.sqrt(8 / 3)) < 1e-9
    assert abs(math.sqrt(8 / 3) - 1.632993) < 1e-6
    row = cb_distance(5, 2, "row")
    assert abs(row.value - math.sqrt(4 * 5 / 2)) < 1e-9
    with pytest.raises(DomainError):
        cb_distance(3, 2, "diagonal")


def test_degenerate_triangle():
    for n in range(1, 13):
        for k in range(1, n + 1):
            assert degenerate_triangle_gap(n, k) < 1e-12
            assert closed_form_distance(n, k, "row") == pytest.approx(closed_form_distance(n, n - k + 1, "column"))


def test_random_search_examples():
    r = random_search(3, 2, 2000, 42)
    assert math.sqrt(2) - 0.05 <= r.forward <= math.sqrt(2) + 1e-9
    r = random_search(2, 1, 50, 3)
    assert r.forward == 1.0 and r.inverse == 1.0
    r = random_search(5, 3, 2000, 0)
    assert math.sqrt(5 / 3) - 0.05 <= r.inverse <= math.sqrt(5 / 3) + 1e-9
    with pytest.raises(DomainError):
        random_search(3, 2, 0, 0)


def test_random_search_deterministic():
    a, b = random_search(3, 3, 200, 9), random_search(3, 3, 200, 9)
    assert a.forward == b.forward and a.inverse == b.inverse


def test_random_search_certificate_is_real(rng):
    r = random_search(4, 3, 300, 5)
    t, t1 = operator_tuple(4, 3, r.forward_tuple), operator_tuple(4, 1, r.forward_tuple)
    assert abs(row_norm(t) / row_norm(t1) - r.forward) < 1e-9


def test_explore_examples():
    empty = explore(4, 2, 3, 0, 0)
    assert empty.estimate is None and empty.heuristic
    r = explore(4, 2, 3, 2000, 1)
    assert r.estimate >= 1 and r.heuristic
    r = explore(5, 2, 4, 2000, 0)
    bound = closed_form_distance(5, 2) * closed_form_distance(5, 4)
    assert 1 <= r.estimate <= bound + 1e-9
    for args in [(4, 1, 3), (4, 2, 2), (4, 2, 4)]:
        with pytest.raises(DomainError):
            explore(*args)
