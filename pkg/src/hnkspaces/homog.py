"""Unitary maps on H_n^k and their realization as ``x -> lambda v x w``."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .combinat import IndexSubset, complementary_pairs, eps_IiJ, subsets_lex
from .errors import DomainError
from .fock import wedge_coords
from .hnk import hnk_space
from .linalg import is_unitary, operator_norm, submatrix_det

UNITARY_TOL = 1e-10


def _check_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, UNITARY_TOL):
        raise DomainError("u must be unitary within 1e-10")
    return u


def psi_image(n: int, k: int, u, i: int) -> np.ndarray:
    """``psi(u_i) = sum_j u_{ji} b_j^{n,k}`` for the ``i``-th column of ``u``."""
    u = _check_unitary(u)
    if u.shape != (n, n) or not 1 <= i <= n:
        raise DomainError("u must be n x n and 1 <= i <= n")
    return np.tensordot(u[:, i - 1], hnk_space(n, k).dense_basis(), axes=1)


def entry_formula(n: int, k: int, u, i: int, Jp: IndexSubset, Ip: IndexSubset) -> complex:
    """Entry ``(J', I')`` of ``psi(u_i)`` from minors of the conjugate of ``u``."""
    u = np.asarray(u, dtype=complex)
    ubar = u.conj()
    d = np.linalg.det(ubar)
    if abs(d) <= 1e-12:
        raise DomainError("u is singular")
    if len(Jp) != n - k or len(Ip) != k - 1:
        raise DomainError(f"need |J'| = {n - k} and |I'| = {k - 1}")
    total = 0j
    for I, J in complementary_pairs(n, k, i):
        total += eps_IiJ(I, i, J) * submatrix_det(ubar, Jp, J) * submatrix_det(ubar, Ip, I)
    return total / d


def wedge_columns(u, subsets) -> np.ndarray:
    """Matrix whose column ``s`` holds the coordinates of ``wedge_{i in subsets[s]} u_i``."""
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    return np.column_stack([wedge_coords([u[:, i - 1] for i in S], n, exact=False) for S in subsets])


@dataclass(frozen=True)
class HomogeneityFactors:
    lam: complex
    v: np.ndarray
    w: np.ndarray

    def apply(self, x) -> np.ndarray:
        return self.lam * self.v @ x @ self.w


def homogeneity_factors(n: int, k: int, u) -> HomogeneityFactors:
    """``lambda = det(conj u)``, ``w`` from wedges over ``I``-subsets, ``v`` from wedges over ``J``-subsets."""
    u = _check_unitary(u)
    lam = complex(np.linalg.det(u.conj()))
    w = wedge_columns(u, subsets_lex(n, k - 1))
    v = wedge_columns(u, subsets_lex(n, n - k)).T
    for name, m in (("v", v), ("w", w)):
        if not is_unitary(m, UNITARY_TOL):
            raise DomainError(f"{name} failed the unitarity check")
    if abs(abs(lam) - 1) > 1e-12:
        raise DomainError("|det u| differs from 1")
    return HomogeneityFactors(lam, v, w)


def alpha(n: int, k: int, u, x=None, coeffs=None) -> np.ndarray:
    """The map on H_n^k sending ``psi(u_i)`` to ``b_i``: coefficients ``a -> u^{-1} a``."""
    space = hnk_space(n, k)
    u = np.asarray(u, dtype=complex)
    if coeffs is None:
        coeffs = coefficients(space, x)
    return np.tensordot(u.conj().T @ np.asarray(coeffs, dtype=complex), space.dense_basis(), axes=1)


def coefficients(space, x) -> np.ndarray:
    """Coordinates of ``x`` in the basis ``b_i`` (Hilbert-Schmidt projection)."""
    B = space.dense_basis()
    norms = np.einsum("ipq,ipq->i", B.conj(), B).real
    return np.einsum("ipq,pq->i", B.conj(), np.asarray(x)) / norms


def claim_expansion(n: int, k: int, u, i: int) -> np.ndarray:
    """``psi(u_i)`` rebuilt from outer products of wedges of the conjugate columns."""
    u = np.asarray(u, dtype=complex)
    ubar = u.conj()
    total = np.zeros((comb(n, n - k), comb(n, k - 1)), dtype=complex)
    for I, J in complementary_pairs(n, k, i):
        wj = wedge_coords([ubar[:, j - 1] for j in J], n, exact=False)
        wi = wedge_coords([ubar[:, a - 1] for a in I], n, exact=False)
        total += eps_IiJ(I, i, J) * np.outer(wj, wi)
    return total / np.linalg.det(ubar)


@dataclass(frozen=True)
class HomogeneityReport:
    n: int
    k: int
    trials: int
    max_factor_deviation: float  # max |v psi(u_i) w - b_i / det(conj u)|
    max_map_deviation: float     # max |alpha(x) - lambda v x w|
    max_norm_deviation: float    # 2x2 amplification norm gap

    @property
    def max_deviation(self) -> float:
        return max(self.max_factor_deviation, self.max_map_deviation, self.max_norm_deviation)


def verify_homogeneity(n: int, k: int, u, trials: int = 20, rng: np.random.Generator | None = None,
                       ) -> HomogeneityReport:
    u = _check_unitary(u)
    rng = rng if rng is not None else np.random.default_rng(0)
    space = hnk_space(n, k)
    B = space.dense_basis()
    f = homogeneity_factors(n, k, u)
    lam_bar = np.linalg.det(u.conj())

    factor_dev = 0.0
    for i in range(1, n + 1):
        got = f.v @ psi_image(n, k, u, i) @ f.w
        factor_dev = max(factor_dev, float(np.max(np.abs(got - B[i - 1] / lam_bar))))

    map_dev = norm_dev = 0.0
    for _ in range(trials):
        coeffs = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = np.tensordot(coeffs, B, axes=1)
        map_dev = max(map_dev, float(np.max(np.abs(alpha(n, k, u, coeffs=coeffs) - f.apply(x)))))
        xs = [np.tensordot(rng.standard_normal(n) + 1j * rng.standard_normal(n), B, axes=1) for _ in range(4)]
        before = np.block([[xs[0], xs[1]], [xs[2], xs[3]]])
        ys = [f.apply(x_) for x_ in xs]
        after = np.block([[ys[0], ys[1]], [ys[2], ys[3]]])
        norm_dev = max(norm_dev, abs(operator_norm(before) - operator_norm(after)))
    return HomogeneityReport(n, k, trials, factor_dev, map_dev, norm_dev)
