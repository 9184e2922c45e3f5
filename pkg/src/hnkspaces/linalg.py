"""Dense exact and complex-float matrix kernel.

Exact matrices hold Python scalars (``int``, ``Fraction`` or
:class:`GaussianRational`) in a numpy object array, so products and
determinants never round. Complex matrices are plain ``numpy`` arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Complex, Rational
from typing import Iterable, Sequence

import numpy as np

from .combinat import IndexSubset, perm_sign
from .errors import DomainError


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, Rational):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        if isinstance(other, Complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


def normalize(x):
    """Collapse an exact scalar to the simplest of int / Fraction / GaussianRational."""
    if isinstance(x, GaussianRational):
        if x.im != 0:
            return x
        x = x.re
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, np.integer)) and not isinstance(x, bool)


def _as_field(x):
    """Lift an exact scalar into a field type so ``/`` stays exact."""
    if isinstance(x, GaussianRational):
        return x
    return Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)


def _object_array(rows) -> np.ndarray:
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            arr[r, c] = normalize(v) if not isinstance(v, np.integer) else int(v)
    return arr


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Dense matrix of exact scalars; arithmetic never rounds."""

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.dtype != object:
            raise DomainError("ExactMatrix needs a 2-d object array")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        for row in rows:
            for v in row:
                if not is_exact_scalar(v):
                    raise DomainError(f"non-exact entry {v!r}")
        if len({len(r) for r in rows}) > 1:
            raise DomainError("ragged rows")
        return cls(_object_array(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(0)
        return cls(arr)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i, i] = 1
        return m

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        m = cls.zeros(len(values), len(values))
        for i, v in enumerate(values):
            m.data[i, i] = normalize(v)
        return m

    @classmethod
    def block_diagonal(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        out = cls.zeros(sum(b.rows for b in blocks), sum(b.cols for b in blocks))
        r = c = 0
        for b in blocks:
            out.data[r:r + b.rows, c:c + b.cols] = b.data
            r += b.rows
            c += b.cols
        return out

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx):
        return self.data[idx]

    def _wrap(self, arr) -> "ExactMatrix":
        return ExactMatrix(np.vectorize(normalize, otypes=[object])(arr) if arr.size else arr)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0:
            return ExactMatrix.zeros(self.rows, other.cols)
        return self._wrap(self.data.dot(other.data))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} + {other.shape}")
        return self._wrap(self.data + other.data)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} - {other.shape}")
        return self._wrap(self.data - other.data)

    def __neg__(self) -> "ExactMatrix":
        return self._wrap(-self.data)

    def scale(self, c) -> "ExactMatrix":
        return self._wrap(self.data * c)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.data.T.copy())

    @property
    def H(self) -> "ExactMatrix":
        """Conjugate transpose."""
        conj = np.vectorize(lambda v: v.conjugate(), otypes=[object])
        return ExactMatrix(conj(self.data.T) if self.data.size else self.data.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix) or self.shape != other.shape:
            return False
        return all(a == b for a, b in zip(self.data.flat, other.data.flat))

    __hash__ = None

    def nonzero_count(self) -> int:
        return sum(1 for v in self.data.flat if v != 0)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        """Keep the given 1-based rows and columns, in increasing order."""
        r = [i - 1 for i in rows]
        c = [j - 1 for j in cols]
        return ExactMatrix(self.data[np.ix_(r, c)].copy() if r and c else np.empty((len(r), len(c)), dtype=object))

    def to_complex(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for idx, v in np.ndenumerate(self.data):
            out[idx] = complex(v)
        return out

    def to_json(self) -> dict:
        """``{rows, cols, entries}`` with each entry ``[num_re, den_re, num_im, den_im]``."""
        entries = []
        for v in self.data.flat:
            g = v if isinstance(v, GaussianRational) else GaussianRational(v)
            entries.append([g.re.numerator, g.re.denominator, g.im.numerator, g.im.denominator])
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMatrix":
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if len(entries) != rows * cols:
            raise DomainError("entries length must equal rows*cols")
        vals = [GaussianRational(Fraction(a, b), Fraction(c, d)) for a, b, c, d in entries]
        return cls(_object_array([vals[r * cols:(r + 1) * cols] for r in range(rows)]) if rows else
                   np.empty((0, cols), dtype=object))

    def __repr__(self):
        return f"ExactMatrix({self.data.tolist()!r})"


def _bareiss(data: np.ndarray):
    n = data.shape[0]
    if n == 0:
        return 1
    m = np.vectorize(_as_field, otypes=[object])(data)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r, k] != 0), None)
            if swap is None:
                return 0
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        pivot = m[k, k]
        m[k + 1:, k + 1:] = (m[k + 1:, k + 1:] * pivot - np.outer(m[k + 1:, k], m[k, k + 1:])) / prev
        prev = pivot
    return normalize(sign * m[n - 1, n - 1])


def det(X):
    """Determinant: Bareiss elimination for exact input, LU (LAPACK) for floats."""
    if isinstance(X, ExactMatrix):
        if X.rows != X.cols:
            raise DomainError(f"det needs a square matrix, got {X.shape}")
        return _bareiss(X.data)
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise DomainError(f"det needs a square matrix, got {X.shape}")
    if X.dtype == object:
        return _bareiss(X)
    if X.shape[0] == 0:
        return 1.0
    return np.linalg.det(X)


def submatrix_det(X, H, K):
    """``det X[H, K]`` with 1-based row set ``H`` and column set ``K``."""
    H, K = list(H), list(K)
    if len(H) != len(K):
        raise DomainError(f"|H| = {len(H)} differs from |K| = {len(K)}")
    rows, cols = (X.rows, X.cols) if isinstance(X, ExactMatrix) else np.shape(X)
    if any(not 1 <= h <= rows for h in H) or any(not 1 <= k <= cols for k in K):
        raise DomainError("index set outside matrix range")
    if isinstance(X, ExactMatrix):
        return det(X.submatrix(H, K))
    X = np.asarray(X)
    return det(X[np.ix_([h - 1 for h in H], [k - 1 for k in K])])


def concat_sign(H, Hc) -> int:
    """Sign of the concatenation ``H`` followed by ``Hc`` relative to sorted order."""
    return perm_sign(tuple(H) + tuple(Hc))


def minor_table(X: ExactMatrix) -> dict:
    """All square minors of ``X`` keyed by ``(rows, cols)`` element tuples.

    The empty minor is 1.
    """
    n, m = X.shape
    table = {((), ()): 1}
    for r in range(1, min(n, m) + 1):
        for R in combinations(range(1, n + 1), r):
            for K in combinations(range(1, m + 1), r):
                table[R, K] = submatrix_det(X, R, K)
    return table


def _minor(X, table, R, K):
    R, K = tuple(R), tuple(K)
    if table is not None:
        return table[R, K]
    return 1 if not R else submatrix_det(X, R, K)


def laplace_expansion(X: ExactMatrix, H, table: dict | None = None):
    """Generalized Laplace expansion of ``det X`` along the column set ``H``.

    Returns ``sign(H, H') * sum_R sign(R, R') det X[R, H] det X[R', H']``.
    """
    n = X.rows
    H = tuple(H)
    Hc = tuple(j for j in range(1, n + 1) if j not in H)
    total = 0
    for R in combinations(range(1, n + 1), len(H)):
        Rc = tuple(j for j in range(1, n + 1) if j not in R)
        total = total + concat_sign(R, Rc) * _minor(X, table, R, H) * _minor(X, table, Rc, Hc)
    return normalize(concat_sign(H, Hc) * total)


def laplace_cross_sum(X: ExactMatrix, H, K, table: dict | None = None):
    """``sum_R sign(R, R') det X[R, H] det X[R', K]`` for ``|H| + |K| = n``.

    Vanishes whenever ``H`` and ``K`` overlap.
    """
    n = X.rows
    H, K = tuple(H), tuple(K)
    if len(H) + len(K) != n:
        raise DomainError("need |H| + |K| = n")
    total = 0
    for R in combinations(range(1, n + 1), len(H)):
        Rc = tuple(j for j in range(1, n + 1) if j not in R)
        total = total + concat_sign(R, Rc) * _minor(X, table, R, H) * _minor(X, table, Rc, K)
    return normalize(total)


def random_gaussian_rational_matrix(n: int, rng: np.random.Generator, bound: int = 5) -> ExactMatrix:
    """Square matrix with entries ``(a + b i) / d``, small random integers."""
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            a, b = (int(x) for x in rng.integers(-bound, bound + 1, size=2))
            d = int(rng.integers(1, bound + 1))
            row.append(normalize(GaussianRational(Fraction(a, d), Fraction(b, d))))
        rows.append(row)
    return ExactMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# Hermitian eigenvalues by cyclic Jacobi rotations


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: n-1 rounds of disjoint pairs covering every pair once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[a], players[m - 1 - a]) for a in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p >= 0 and q >= 0]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


_TINY = 1e-280


def jacobi_eigenvalues(M: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by two-sided Jacobi sweeps.

    Each round applies a set of disjoint plane rotations at once (they
    commute), so one sweep costs ``n - 1`` vectorized updates. Iteration stops
    when the off-diagonal Frobenius norm drops below ``tol * ||M||_F``.
    Returned unsorted.
    """
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    if n <= 1:
        return A.diagonal().real.copy()
    scale = np.linalg.norm(A)
    if scale == 0:
        return np.zeros(n)
    schedule = _round_robin(n)
    target = tol * scale
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.linalg.norm(A) ** 2 - np.sum(np.abs(A.diagonal()) ** 2), 0.0))
        if off <= target:
            break
        for P, Q in schedule:
            c = A[P, Q]
            mag = np.abs(c)
            live = mag > _TINY
            if not np.any(live):
                continue
            mag = np.where(live, mag, 1.0)
            phase = np.where(live, c / mag, 1.0)
            a = A[P, P].real
            b = A[Q, Q].real
            theta = np.where(live, 0.5 * np.arctan2(2 * mag, b - a), 0.0)
            cs, sn = np.cos(theta), np.sin(theta)
            ph = np.conj(phase)
            # 2x2 block of G on (p, q): [[cs, sn], [-sn*ph, cs*ph]]
            gpp, gpq, gqp, gqq = cs, sn, -sn * ph, cs * ph
            colP, colQ = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = colP * gpp + colQ * gqp
            A[:, Q] = colP * gpq + colQ * gqq
            rowP, rowQ = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = np.conj(gpp)[:, None] * rowP + np.conj(gqp)[:, None] * rowQ
            A[Q, :] = np.conj(gpq)[:, None] * rowP + np.conj(gqq)[:, None] * rowQ
            A[P, Q] = 0
            A[Q, P] = 0
    return A.diagonal().real.copy()


def _check_hermitian(M: np.ndarray, tol: float):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    norm = np.linalg.norm(M)
    if np.linalg.norm(M - M.conj().T) > tol * max(norm, 1.0):
        raise DomainError("matrix is not Hermitian within tolerance")


def hermitian_eigenvalues(M, method: str = "jacobi", tol: float = 1e-12) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order.

    ``method="jacobi"`` uses the in-house rotation solver; ``"lapack"`` defers
    to ``numpy.linalg.eigvalsh`` for bulk sampling loops.
    """
    M = np.asarray(M, dtype=complex)
    _check_hermitian(M, tol)
    H = 0.5 * (M + M.conj().T)
    if method == "jacobi":
        vals = jacobi_eigenvalues(H)
    elif method == "lapack":
        vals = np.linalg.eigvalsh(H)
    else:
        raise DomainError(f"unknown eigenvalue method {method!r}")
    return np.sort(vals)[::-1]


def operator_norm(M, method: str = "jacobi") -> float:
    """Largest singular value, via the smaller of the two Gram matrices."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0.0
    gram = M.conj().T @ M if M.shape[1] <= M.shape[0] else M @ M.conj().T
    top = hermitian_eigenvalues(gram, method=method)[0]
    return float(np.sqrt(max(top, 0.0)))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like unitary from QR of a complex Gaussian matrix (phases fixed)."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])), initial=0.0) <= tol)
