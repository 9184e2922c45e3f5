"""The spaces H_n^k, their basis matrices, and the unitaries identifying them
with spans of creation operators.

Rows of every ``p x q`` matrix are indexed by ``J``-subsets (size ``n-k``),
columns by ``I``-subsets (size ``k-1``), both lexicographic.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .combinat import (IndexSubset, complementary_pairs, eps_iI, eps_IiJ,
                       subset_index, subsets_lex)
from .errors import CertificateError, DomainError
from .fock import basis_vector, creation_matrix
from .linalg import ExactMatrix


def _check_nk(n: int, k: int):
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")


def basis_matrix(n: int, k: int, i: int) -> ExactMatrix:
    """``b_i^{n,k}``: entry ``(J, I)`` is ``eps(I, i, J)`` when ``I, {i}, J`` partition ``1..n``."""
    _check_nk(n, k)
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got i={i}")
    rows = subset_index(n, n - k)
    cols = subset_index(n, k - 1)
    b = ExactMatrix.zeros(len(rows), len(cols))
    for I, J in complementary_pairs(n, k, i):
        b.data[rows[J.elements], cols[I.elements]] = eps_IiJ(I, i, J)
    return b


@dataclass(frozen=True)
class HnkSpace:
    n: int
    k: int
    basis: tuple[ExactMatrix, ...]
    row_subsets: tuple[IndexSubset, ...]
    col_subsets: tuple[IndexSubset, ...]

    @property
    def p(self) -> int:
        return comb(self.n, self.n - self.k)

    @property
    def q(self) -> int:
        return comb(self.n, self.k - 1)

    def dense_basis(self) -> np.ndarray:
        """Basis as a complex array of shape ``(n, p, q)``."""
        return _dense_basis(self)


_DENSE_CACHE: dict = {}


def _dense_basis(space: HnkSpace) -> np.ndarray:
    key = (space.n, space.k)
    if key not in _DENSE_CACHE:
        _DENSE_CACHE[key] = np.stack([b.to_complex() for b in space.basis])
    return _DENSE_CACHE[key]


def hnk_space(n: int, k: int) -> HnkSpace:
    _check_nk(n, k)
    return HnkSpace(
        n, k,
        tuple(basis_matrix(n, k, i) for i in range(1, n + 1)),
        tuple(subsets_lex(n, n - k)),
        tuple(subsets_lex(n, k - 1)),
    )


def element(space: HnkSpace, a) -> np.ndarray:
    """``sum_i a_i b_i^{n,k}`` as a complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (space.n,):
        raise DomainError(f"coefficient vector must have length {space.n}")
    return np.tensordot(a, space.dense_basis(), axes=1)


def hs_gram(space: HnkSpace) -> ExactMatrix:
    """Exact Hilbert-Schmidt Gram matrix ``tr(b_j^* b_i)`` of the basis."""
    n = space.n
    g = ExactMatrix.zeros(n, n)
    for a in range(n):
        for b in range(n):
            ba, bb = space.basis[a], space.basis[b]
            g.data[a, b] = sum((x * y.conjugate() for x, y in zip(ba.data.flat, bb.data.flat)), 0)
    return g


@dataclass(frozen=True)
class DiagramUnitaries:
    """Exact unitaries with ``W U_nmk b_i = V C_{e_i} U_km1``."""

    n: int
    k: int
    U_km1: ExactMatrix
    U_nmk: ExactMatrix
    V: ExactMatrix
    W: ExactMatrix

    def w_signs(self) -> list[int]:
        return [self.W.data[r, r] for r in range(self.W.rows)]


def w_sign(J: IndexSubset, n: int) -> int:
    """``eps(i, I) eps(I, i, J)`` for the complement of ``J``.

    Every admissible choice of ``i`` is tried; they must all agree.
    """
    rest = J.complement().elements
    signs = set()
    for i in rest:
        I = tuple(x for x in rest if x != i)
        signs.add(eps_iI(i, I) * eps_IiJ(I, i, J))
    if len(signs) != 1:
        raise CertificateError(f"W sign at J={J.label()} depends on the choice of i: {signs}")
    return signs.pop()


def diagram_unitaries(n: int, k: int) -> DiagramUnitaries:
    _check_nk(n, k)
    p, q = comb(n, n - k), comb(n, k - 1)
    target = subset_index(n, n - k)
    V = ExactMatrix.zeros(p, comb(n, k))
    for col, K in enumerate(subsets_lex(n, k)):
        V.data[target[K.complement().elements], col] = 1
    W = ExactMatrix.diagonal([w_sign(J, n) for J in subsets_lex(n, n - k)])
    return DiagramUnitaries(n, k, ExactMatrix.identity(q), ExactMatrix.identity(p), V, W)


def intertwining_sides(n: int, k: int, i: int, unitaries: DiagramUnitaries | None = None):
    """Both sides ``(W U_nmk b_i, V C_{e_i} U_km1)`` as exact matrices."""
    d = unitaries if unitaries is not None else diagram_unitaries(n, k)
    lhs = d.W @ d.U_nmk @ basis_matrix(n, k, i)
    rhs = d.V @ creation_matrix(n, k, basis_vector(n, i)).matrix @ d.U_km1
    return lhs, rhs


def verify_intertwining(n: int, k: int, i: int, unitaries: DiagramUnitaries | None = None) -> bool:
    lhs, rhs = intertwining_sides(n, k, i, unitaries)
    return lhs == rhs


def flip_w_sign(d: DiagramUnitaries, position: int) -> DiagramUnitaries:
    """Copy of ``d`` with one diagonal sign of ``W`` negated."""
    signs = d.w_signs()
    signs[position] = -signs[position]
    return DiagramUnitaries(d.n, d.k, d.U_km1, d.U_nmk, d.V, ExactMatrix.diagonal(signs))


@dataclass(frozen=True)
class IntersectionBasis:
    """Block-diagonal generators of the intersection over grades ``S``.

    ``left @ generators[i] == right @ creations[i]`` exactly, where
    ``left = diag(W U_nmk)`` and ``right = diag(V)`` with ``U_km1 = I``.
    """

    n: int
    grades: tuple[int, ...]
    generators: tuple[ExactMatrix, ...]
    creations: tuple[ExactMatrix, ...]
    left: ExactMatrix
    right: ExactMatrix
    right_domain: ExactMatrix

    def verify(self) -> bool:
        return all(self.left @ g == self.right @ c @ self.right_domain
                   for g, c in zip(self.generators, self.creations))


def intersection_basis(n: int, S: Iterable[int]) -> IntersectionBasis:
    grades = tuple(sorted(set(S)))
    if not grades:
        raise DomainError("grade set S must be nonempty")
    for k in grades:
        _check_nk(n, k)
    diagrams = [diagram_unitaries(n, k) for k in grades]
    gens, creations = [], []
    for i in range(1, n + 1):
        gens.append(ExactMatrix.block_diagonal([basis_matrix(n, k, i) for k in grades]))
        creations.append(ExactMatrix.block_diagonal(
            [creation_matrix(n, k, basis_vector(n, i)).matrix for k in grades]))
    left = ExactMatrix.block_diagonal([d.W @ d.U_nmk for d in diagrams])
    right = ExactMatrix.block_diagonal([d.V for d in diagrams])
    right_domain = ExactMatrix.block_diagonal([d.U_km1 for d in diagrams])
    return IntersectionBasis(n, grades, tuple(gens), tuple(creations), left, right, right_domain)


def restrict_full_fock(full: ExactMatrix, n: int, grades: Sequence[int]) -> ExactMatrix:
    """Block-diagonal restriction of a full Fock operator: grade ``k-1`` to grade ``k`` for ``k`` in ``grades``."""
    from .fock import fock_offsets
    offs = fock_offsets(n)
    blocks = [ExactMatrix(full.data[offs[k]:offs[k + 1], offs[k - 1]:offs[k]].copy()) for k in sorted(grades)]
    return ExactMatrix.block_diagonal(blocks)
