"""Exterior algebra over C^n and creation operators on the anti-symmetric Fock space.

Grade-``r`` coordinates are indexed by ``subsets_lex(n, r)``. Inputs made of
exact scalars (ints, Fractions, Gaussian rationals) stay exact throughout;
anything else is computed in complex double precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .combinat import subset_index, subsets_lex
from .errors import DomainError
from .linalg import ExactMatrix, is_exact_scalar, normalize


def _exact(vectors) -> bool:
    return all(
        (isinstance(v, np.ndarray) and v.dtype == object and all(is_exact_scalar(x) for x in v))
        or (not isinstance(v, np.ndarray) and all(is_exact_scalar(x) for x in v))
        for v in vectors
    )


def basis_vector(n: int, i: int) -> list[int]:
    """Exact standard basis vector ``e_i`` of C^n (1-based)."""
    if not 1 <= i <= n:
        raise DomainError(f"basis index {i} outside 1..{n}")
    return [1 if j == i else 0 for j in range(1, n + 1)]


@dataclass(frozen=True)
class WedgeVector:
    """Element of the grade-``grade`` exterior power of C^n in lexicographic coordinates."""

    n: int
    grade: int
    coords: np.ndarray

    def __post_init__(self):
        if len(self.coords) != comb(self.n, self.grade):
            raise DomainError(f"expected {comb(self.n, self.grade)} coordinates, got {len(self.coords)}")

    @property
    def exact(self) -> bool:
        return self.coords.dtype == object

    def coordinate(self, subset) -> complex:
        key = tuple(subset)
        return self.coords[subset_index(self.n, self.grade)[key]]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def _wedge_left(x, coords: dict, n: int) -> dict:
    """``x ^ (sum_K c_K e_K)`` using ``e_j ^ e_K = (-1)^{#{K < j}} e_{K+j}``."""
    out: dict = {}
    for K, cK in coords.items():
        if cK == 0:
            continue
        for j in range(1, n + 1):
            xj = x[j - 1]
            if xj == 0 or j in K:
                continue
            pos = sum(1 for a in K if a < j)
            key = K[:pos] + (j,) + K[pos:]
            term = xj * cK if pos % 2 == 0 else -(xj * cK)
            out[key] = out.get(key, 0) + term
    return out


def wedge_coords(vectors: Sequence, n: int, exact: bool | None = None) -> np.ndarray:
    """Coordinates of ``x_1 ^ ... ^ x_p``; the empty product is the vacuum ``[1]``.

    ``exact`` defaults to whether every input entry is an exact scalar.
    """
    p = len(vectors)
    if p > n:
        raise DomainError(f"cannot wedge {p} vectors in C^{n}")
    if exact is None:
        exact = _exact(vectors)
    for v in vectors:
        if len(v) != n:
            raise DomainError(f"vector of length {len(v)} in C^{n}")
    coords: dict = {(): 1}
    for x in reversed(vectors):
        x = list(x) if exact else np.asarray(x, dtype=complex)
        coords = _wedge_left(x, coords, n)
    index = subset_index(n, p)
    if exact:
        out = np.empty(comb(n, p), dtype=object)
        out.fill(0)
        for key, val in coords.items():
            out[index[key]] = normalize(val)
    else:
        out = np.zeros(comb(n, p), dtype=complex)
        for key, val in coords.items():
            out[index[key]] = val
    return out


def wedge(vectors: Sequence) -> WedgeVector:
    """Wedge product of ``p`` vectors of C^n, ``0 < p <= n``."""
    if not vectors:
        raise DomainError("wedge needs at least one vector")
    n = len(vectors[0])
    if len(vectors) > n:
        raise DomainError(f"cannot wedge {len(vectors)} vectors in C^{n}")
    return WedgeVector(n, len(vectors), wedge_coords(vectors, n))


def wedge_inner(x: WedgeVector, y: WedgeVector):
    """``<x, y>``: linear in ``x``, conjugate-linear in ``y``."""
    if x.n != y.n or x.grade != y.grade:
        raise DomainError(f"grade/dimension mismatch: ({x.n},{x.grade}) vs ({y.n},{y.grade})")
    if x.exact and y.exact:
        return normalize(sum((a * b.conjugate() for a, b in zip(x.coords, y.coords)), 0))
    return complex(np.vdot(np.asarray(y.coords, dtype=complex), np.asarray(x.coords, dtype=complex)))


@dataclass(frozen=True)
class CreationOp:
    """Matrix of ``h ^ -`` from grade ``k-1`` to grade ``k`` of C^n."""

    n: int
    k: int
    h: tuple
    matrix: object  # ExactMatrix for exact h, complex ndarray otherwise

    @property
    def exact(self) -> bool:
        return isinstance(self.matrix, ExactMatrix)

    def dense(self) -> np.ndarray:
        return self.matrix.to_complex() if self.exact else self.matrix


def creation_matrix(n: int, k: int, h) -> CreationOp:
    """Build ``C_h^{n,k}`` column by column: column ``I`` holds ``h ^ e_I``."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if len(h) != n:
        raise DomainError(f"h has length {len(h)}, expected {n}")
    exact = _exact([h])
    cols = []
    for I in subsets_lex(n, k - 1):
        es = [basis_vector(n, i) for i in I]
        if not exact:
            es = [np.asarray(e, dtype=complex) for e in es]
        cols.append(wedge_coords([h if exact else np.asarray(h, dtype=complex)] + es, n))
    if exact:
        data = np.empty((comb(n, k), len(cols)), dtype=object)
        for c, col in enumerate(cols):
            data[:, c] = col
        return CreationOp(n, k, tuple(normalize(x) for x in h), ExactMatrix(data))
    return CreationOp(n, k, tuple(complex(x) for x in h), np.column_stack(cols))


def annihilation_matrix(c: CreationOp):
    """Adjoint of a creation operator (conjugate transpose)."""
    return c.matrix.H if c.exact else c.matrix.conj().T


def fock_offsets(n: int) -> list[int]:
    """Start index of each grade ``0..n`` inside the 2^n-dimensional Fock space."""
    offs = [0]
    for r in range(n + 1):
        offs.append(offs[-1] + comb(n, r))
    return offs


def full_fock_creation(n: int, h, exact: bool | None = None):
    """Creation operator by ``h`` on the full Fock space (dimension 2^n).

    Grades are stacked in ascending order, lexicographic inside each grade.
    Returns an :class:`ExactMatrix` for exact ``h``, else a complex array.
    """
    if exact is None:
        exact = _exact([h])
    offs = fock_offsets(n)
    dim = offs[-1]
    out = ExactMatrix.zeros(dim, dim) if exact else np.zeros((dim, dim), dtype=complex)
    for k in range(1, n + 1):
        block = creation_matrix(n, k, h if exact else np.asarray(h, dtype=complex)).matrix
        rs, cs = slice(offs[k], offs[k + 1]), slice(offs[k - 1], offs[k])
        if exact:
            out.data[rs, cs] = block.data
        else:
            out[rs, cs] = block
    return out


def creation_adjoint_product(h, vectors: Sequence) -> np.ndarray:
    """Closed-form ``C_h^* C_h (h_1 ^ ... ^ h_{k-1})`` as grade ``k-1`` coordinates.

    ``<h,h> h_1^...^h_{k-1} - sum_j (-1)^{j-1} <h_j,h> h ^ h_1 ^ ..^h_j^.. ^ h_{k-1}``.
    """
    h = np.asarray(h, dtype=complex)
    n = len(h)
    vs = [np.asarray(v, dtype=complex) for v in vectors]
    out = np.vdot(h, h) * wedge_coords(vs, n)
    for j, hj in enumerate(vs):
        rest = vs[:j] + vs[j + 1:]
        sign = -1 if j % 2 == 0 else 1
        out = out + sign * np.vdot(h, hj) * wedge_coords([h] + rest, n)
    return out


def creation_product_adjoint(h, vectors: Sequence) -> np.ndarray:
    """Closed-form ``C_h C_h^* (h_1 ^ ... ^ h_k)``: sum over replacing ``h_j`` by ``h``."""
    h = np.asarray(h, dtype=complex)
    n = len(h)
    vs = [np.asarray(v, dtype=complex) for v in vectors]
    out = np.zeros(comb(n, len(vs)), dtype=complex)
    for j, hj in enumerate(vs):
        out = out + np.vdot(h, hj) * wedge_coords(vs[:j] + [h] + vs[j + 1:], n)
    return out
