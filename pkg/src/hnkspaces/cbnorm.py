"""Row/column cb norms of the canonical map ``C_h^{n,1} -> C_h^{n,k}``,
closed-form cb Banach-Mazur distances, and a random-search oracle for them.

Certified values are computed from explicit block operators with the Jacobi
solver. Sampling loops go through :class:`LevelEvaluator`, which assembles
``sum_i C_{h_i} C_{h_i}^*`` from precomputed basis products and uses LAPACK.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Sequence

import numpy as np

from .errors import CertificateError, DomainError
from .fock import creation_matrix
from .linalg import hermitian_eigenvalues, operator_norm

CERT_TOL = 1e-10
BOUND_TOL = 1e-9


def _check_nk(n: int, k: int):
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")


@dataclass(frozen=True)
class OperatorTuple:
    """Tuple ``(h_1..h_m)`` with the block row and block column of ``C_{h_i}^{n,k}``."""

    n: int
    k: int
    hs: np.ndarray  # shape (m, n)
    row_block: np.ndarray = field(repr=False)
    col_block: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.hs.shape[0]


def operator_tuple(n: int, k: int, hs) -> OperatorTuple:
    _check_nk(n, k)
    hs = np.atleast_2d(np.asarray(hs, dtype=complex))
    if hs.shape[1] != n or hs.shape[0] < 1:
        raise DomainError(f"need m >= 1 vectors of length {n}")
    blocks = [creation_matrix(n, k, h).matrix for h in hs]
    return OperatorTuple(n, k, hs, np.hstack(blocks), np.vstack(blocks))


def row_norm(t: OperatorTuple) -> float:
    return operator_norm(t.row_block)


def col_norm(t: OperatorTuple) -> float:
    return operator_norm(t.col_block)


def spectrum_k_sums(base_eigs: Sequence[float], k: int) -> np.ndarray:
    """All sums of ``k`` of the given eigenvalues, descending (size ``C(n, k)``)."""
    base = list(base_eigs)
    if not 0 <= k <= len(base):
        raise DomainError(f"k={k} outside 0..{len(base)}")
    return np.sort(np.array([sum(c) for c in combinations(base, k)], dtype=float))[::-1]


def row_gram(n: int, k: int, hs) -> np.ndarray:
    """``sum_i C_{h_i}^{n,k} C_{h_i}^{n,k*}`` built from explicit creation matrices."""
    mats = [creation_matrix(n, k, h).matrix for h in np.atleast_2d(np.asarray(hs, dtype=complex))]
    return sum(c @ c.conj().T for c in mats)


def col_gram(n: int, k: int, hs) -> np.ndarray:
    """``sum_i C_{h_i}^{n,k*} C_{h_i}^{n,k}``."""
    mats = [creation_matrix(n, k, h).matrix for h in np.atleast_2d(np.asarray(hs, dtype=complex))]
    return sum(c.conj().T @ c for c in mats)


def trace_identity(n: int, k: int, h) -> tuple[float, float]:
    """``(tr C_h^* C_h, C(n-1, k-1) ||h||^2)``."""
    _check_nk(n, k)
    h = np.asarray(h, dtype=complex)
    c = creation_matrix(n, k, h).matrix
    computed = float(np.trace(c.conj().T @ c).real)
    return computed, comb(n - 1, k - 1) * float(np.vdot(h, h).real)


class LevelEvaluator:
    """Fast top eigenvalues of the row and column Gram sums at one grade.

    Both sums depend on the tuple only through ``P = sum_i h_i h_i^*``:
    ``sum C C^* = sum_{jl} P_{jl} E_j E_l^*`` and
    ``sum C^* C = sum_{jl} conj(P_{jl}) E_j^* E_l`` with ``E_j = C_{e_j}``.
    """

    def __init__(self, n: int, k: int):
        _check_nk(n, k)
        self.n, self.k = n, k
        E = np.stack([creation_matrix(n, k, np.eye(n)[j]).matrix for j in range(n)])
        self._row = np.einsum("jab,lcb->jlac", E, E.conj())
        self._col = np.einsum("jba,lbc->jlac", E.conj(), E)

    @staticmethod
    def moment(hs: np.ndarray) -> np.ndarray:
        return hs.T @ hs.conj()

    def gram(self, P: np.ndarray, side: str) -> np.ndarray:
        if side == "row":
            return np.einsum("jl,jlac->ac", P, self._row)
        return np.einsum("jl,jlac->ac", P.conj(), self._col)

    def smooth_top_gradient(self, hs: np.ndarray, side: str, tau: float) -> tuple[float, np.ndarray]:
        """Top eigenvalue of the Gram sum and the ascent direction of its soft maximum.

        The soft maximum is ``log-sum-exp`` of the spectrum at inverse
        temperature ``tau / lambda_max``; the direction is with respect to
        ``conj(hs)``.
        """
        vals, vecs = np.linalg.eigh(self.gram(self.moment(hs), side))
        top = vals[-1]
        if top <= 0:
            return 0.0, np.zeros_like(hs)
        w = np.exp(tau * (vals - top) / top)
        w /= w.sum()
        D = (vecs * w) @ vecs.conj().T
        if side == "row":
            c = np.einsum("ca,jlac->jl", D, self._row)
            return float(top), hs @ c
        c = np.einsum("ca,jlac->jl", D, self._col)
        return float(top), hs @ c.T

    def row_top(self, P: np.ndarray) -> float:
        G = np.einsum("jl,jlac->ac", P, self._row)
        return float(np.linalg.eigvalsh(G)[-1])

    def col_top(self, P: np.ndarray) -> float:
        G = np.einsum("jl,jlac->ac", P.conj(), self._col)
        return float(np.linalg.eigvalsh(G)[-1])


def _ratio(num: float, den: float) -> float:
    return math.sqrt(num / den) if den > 0 else 0.0


def forward_ratio(lo: LevelEvaluator, hi: LevelEvaluator, hs: np.ndarray) -> float:
    """``||(C^{hi}_{h_i})_row|| / ||(C^{lo}_{h_i})_row||``."""
    P = LevelEvaluator.moment(hs)
    return _ratio(hi.row_top(P), lo.row_top(P))


def inverse_ratio(lo: LevelEvaluator, hi: LevelEvaluator, hs: np.ndarray) -> float:
    """``||(C^{lo}_{h_i})_col|| / ||(C^{hi}_{h_i})_col||``."""
    P = LevelEvaluator.moment(hs)
    return _ratio(lo.col_top(P), hi.col_top(P))


def closed_form_forward(n: int, k: int) -> float:
    return math.sqrt(k)


def closed_form_inverse(n: int, k: int) -> float:
    return math.sqrt(n / (n - k + 1))


def closed_form_distance(n: int, k: int, target: str = "column") -> float:
    """``d_cb(H_n^k, H_n^1)`` for ``column``; ``d_cb(H_n^k, H_n^n)`` for ``row``."""
    _check_nk(n, k)
    if target == "column":
        return math.sqrt(k * n / (n - k + 1))
    if target == "row":
        return math.sqrt((n - k + 1) * n / k)
    raise DomainError(f"target must be 'column' or 'row', got {target!r}")


def _random_tuple(rng: np.random.Generator, n: int, m: int, normalize: bool = False) -> np.ndarray:
    hs = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    if normalize:
        hs /= np.linalg.norm(hs, axis=1, keepdims=True)
    return hs


@dataclass(frozen=True)
class CbNorm:
    n: int
    k: int
    kind: str  # "row-cb forward" or "col-cb inverse"
    value: float
    closed_form: float
    certificate: OperatorTuple = field(repr=False)
    max_random_ratio: float

    @property
    def abs_err(self) -> float:
        return abs(self.value - self.closed_form)


def _random_bound(ratio: Callable, n: int, k: int, n_random: int, seed: int, bound: float) -> float:
    lo, hi = LevelEvaluator(n, 1), LevelEvaluator(n, k)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_random):
        hs = _random_tuple(rng, n, int(rng.integers(1, n + 1)))
        worst = max(worst, ratio(lo, hi, hs))
    if worst > bound + BOUND_TOL:
        raise CertificateError(f"random tuple ratio {worst} exceeds proven bound {bound} at n={n}, k={k}")
    return worst


def cb_norm_forward(n: int, k: int, n_random: int = 200, seed: int = 0) -> CbNorm:
    """``||psi||_{row-cb} = sqrt(k)``, certified by ``h_i = e_i`` (``m = n``)."""
    _check_nk(n, k)
    hs = np.eye(n)
    B, A = operator_tuple(n, k, hs), operator_tuple(n, 1, hs)
    value = row_norm(B) / row_norm(A)
    closed = closed_form_forward(n, k)
    if abs(value - closed) > CERT_TOL:
        raise CertificateError(f"forward certificate {value} misses sqrt(k) = {closed}")
    worst = _random_bound(forward_ratio, n, k, n_random, seed, closed)
    return CbNorm(n, k, "row-cb forward", value, closed, B, worst)


def cb_norm_inverse(n: int, k: int, n_random: int = 200, seed: int = 0) -> CbNorm:
    """``||psi^{-1}||_{col-cb} = sqrt(n / (n-k+1))``, certified by ``h_i = e_i``."""
    _check_nk(n, k)
    hs = np.eye(n)
    C, D = operator_tuple(n, k, hs), operator_tuple(n, 1, hs)
    value = col_norm(D) / col_norm(C)
    closed = closed_form_inverse(n, k)
    if abs(value - closed) > CERT_TOL:
        raise CertificateError(f"inverse certificate {value} misses sqrt(n/(n-k+1)) = {closed}")
    worst = _random_bound(inverse_ratio, n, k, n_random, seed, closed)
    return CbNorm(n, k, "col-cb inverse", value, closed, C, worst)


@dataclass(frozen=True)
class DistanceRecord:
    n: int
    k: int
    target: str
    forward_cb: float
    inverse_cb: float
    closed_form: float
    forward: CbNorm = field(repr=False)
    inverse: CbNorm = field(repr=False)

    @property
    def value(self) -> float:
        return self.forward_cb * self.inverse_cb

    @property
    def abs_err(self) -> float:
        return abs(self.value - self.closed_form)

    def as_row(self) -> dict:
        return {"n": self.n, "k": self.k, "target": self.target, "forward_cb": self.forward_cb,
                "inverse_cb": self.inverse_cb, "distance": self.value,
                "closed_form": self.closed_form, "abs_err": self.abs_err}


def cb_distance(n: int, k: int, target: str = "column", n_random: int = 200, seed: int = 0) -> DistanceRecord:
    """cb distance from ``H_n^k`` to column space (``H_n^1``) or row space (``H_n^n``).

    The row case is computed through the reflection ``k -> n-k+1``.
    """
    _check_nk(n, k)
    closed = closed_form_distance(n, k, target)
    if target == "row":
        kk = n - k + 1
        if abs(closed - closed_form_distance(n, kk, "column")) > 1e-12:
            raise CertificateError("reflection identity failed")
    else:
        kk = k
    fwd = cb_norm_forward(n, kk, n_random, seed)
    inv = cb_norm_inverse(n, kk, n_random, seed)
    rec = DistanceRecord(n, k, target, fwd.value, inv.value, closed, fwd, inv)
    if rec.abs_err > BOUND_TOL:
        raise CertificateError(f"distance {rec.value} misses closed form {closed}")
    return rec


def degenerate_triangle_gap(n: int, k: int) -> float:
    """``|d(H_n^k, H_n^n) d(H_n^k, H_n^1) - d(H_n^n, H_n^1)|`` from the closed forms."""
    return abs(closed_form_distance(n, k, "row") * closed_form_distance(n, k, "column")
               - closed_form_distance(n, n, "column"))


# ---------------------------------------------------------------------------
# random search


@dataclass(frozen=True)
class SearchConfig:
    trials: int = 2000
    seed: int = 0
    max_m: int | None = None  # defaults to n; larger values allowed for falsification runs
    normalize: bool = True
    refine_rounds: int = 40  # step shrinks (by ``shrink``) after each sweep without improvement
    shrink: float = 0.7
    refine_starts: int = 2  # extra leaders refined beyond the best tuple of each size
    proposals: int = 3
    max_sweeps: int = 400
    polish_steps: int = 150  # smoothed-gradient ascent after coordinate descent; 0 disables
    tau_start: float = 5.0
    tau_end: float = 200.0


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    trials: int
    seed: int
    forward: float
    inverse: float
    forward_tuple: np.ndarray = field(repr=False)
    inverse_tuple: np.ndarray = field(repr=False)


def _refine(objective: Callable[[np.ndarray], float], hs: np.ndarray, value: float,
            rng: np.random.Generator, cfg: SearchConfig) -> tuple[float, np.ndarray]:
    """Coordinate descent: perturb one ``h_i`` at a time with a shrinking step."""
    best, best_val = hs.copy(), value
    step = 1.0
    shrinks = sweeps = 0
    while shrinks < cfg.refine_rounds and sweeps < cfg.max_sweeps:
        sweeps += 1
        improved = False
        for i in range(best.shape[0]):
            scale = step * max(np.linalg.norm(best[i]), 1e-12)
            for _ in range(cfg.proposals):
                cand = best.copy()
                cand[i] = cand[i] + scale * (rng.standard_normal(best.shape[1])
                                             + 1j * rng.standard_normal(best.shape[1])) / math.sqrt(2 * best.shape[1])
                val = objective(cand)
                if val > best_val:
                    best, best_val, improved = cand, val, True
        if not improved:
            step *= cfg.shrink
            shrinks += 1
    return best_val, best


@dataclass(frozen=True)
class RatioObjective:
    """``sqrt(top(num) / top(den))`` for Gram sums of two evaluators.

    ``num`` and ``den`` are ``(evaluator, side)`` pairs with side ``row`` or ``col``.
    """

    num: tuple
    den: tuple

    def __call__(self, hs: np.ndarray) -> float:
        P = LevelEvaluator.moment(hs)
        (a, sa), (b, sb) = self.num, self.den
        return _ratio(float(np.linalg.eigvalsh(a.gram(P, sa))[-1]), float(np.linalg.eigvalsh(b.gram(P, sb))[-1]))

    def ascent(self, hs: np.ndarray, tau: float) -> np.ndarray:
        (a, sa), (b, sb) = self.num, self.den
        ta, da = a.smooth_top_gradient(hs, sa, tau)
        tb, db = b.smooth_top_gradient(hs, sb, tau)
        if ta <= 0 or tb <= 0:
            return np.zeros_like(hs)
        return da / ta - db / tb


def _polish(objective: RatioObjective, hs: np.ndarray, value: float, cfg: SearchConfig,
            ) -> tuple[float, np.ndarray]:
    """Backtracking ascent along the smoothed gradient; only true improvements are kept."""
    best, best_val = hs.copy(), value
    stalled = 0
    for it in range(cfg.polish_steps):
        if stalled >= 5:
            break
        tau = cfg.tau_start + (cfg.tau_end - cfg.tau_start) * it / max(cfg.polish_steps - 1, 1)
        d = objective.ascent(best, tau)
        dn = np.linalg.norm(d)
        if dn == 0:
            break
        d *= np.linalg.norm(best) / dn
        t = 0.5
        while t > 1e-10:
            cand = best + t * d
            val = objective(cand)
            if val > best_val:
                stalled = stalled + 1 if val - best_val < 1e-13 else 0
                best, best_val = cand / np.linalg.norm(cand) * math.sqrt(best.shape[0]), val
                break
            t *= 0.5
        else:
            stalled += 1
    return best_val, best


def maximize(objectives: dict[str, Callable[[np.ndarray], float]], n: int, cfg: SearchConfig,
             ) -> dict[str, tuple[float, np.ndarray]]:
    """Maximize each objective over seeded random tuples, then refine the best starts.

    Refinement starts from the best tuple of each size ``m`` so that a
    larger-``m`` optimum is not crowded out by small tuples.

    Trial ``t`` draws from its own child of ``SeedSequence(cfg.seed)``, so
    results do not depend on evaluation order.
    """
    max_m = cfg.max_m or n
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.trials + 1)
    scored: dict[str, list] = {name: [] for name in objectives}
    for t in range(cfg.trials):
        rng = np.random.default_rng(children[t])
        hs = _random_tuple(rng, n, int(rng.integers(1, max_m + 1)), cfg.normalize)
        for name, f in objectives.items():
            scored[name].append((f(hs), t, hs))
    refine_rng = np.random.default_rng(children[-1])
    out = {}
    for name, f in objectives.items():
        ranked = sorted(scored[name], key=lambda s: (-s[0], s[1]))
        # best start of every tuple size, then the overall leaders
        by_size: dict[int, tuple] = {}
        for entry in ranked:
            by_size.setdefault(entry[2].shape[0], entry)
        starts = sorted(by_size.values(), key=lambda s: (-s[0], s[1]))
        starts += [e for e in ranked[:cfg.refine_starts] if all(e is not s for s in starts)]
        best_val, best_hs = starts[0][0], starts[0][2]
        for val, _, hs in starts:
            v, h = _refine(f, hs, val, refine_rng, cfg)
            if isinstance(f, RatioObjective) and cfg.polish_steps:
                v, h = _polish(f, h, v, cfg)
            if v > best_val:
                best_val, best_hs = v, h
        out[name] = (best_val, best_hs)
    return out


def random_search(n: int, k: int, trials: int = 2000, seed: int = 0,
                  config: SearchConfig | None = None) -> SearchResult:
    """Largest forward and inverse ratios found by random search plus refinement."""
    _check_nk(n, k)
    if trials < 1:
        raise DomainError("trials must be >= 1")
    cfg = config or SearchConfig()
    cfg = SearchConfig(trials, seed, cfg.max_m, cfg.normalize, cfg.refine_rounds, cfg.shrink,
                       cfg.refine_starts, cfg.proposals, cfg.max_sweeps,
                       cfg.polish_steps, cfg.tau_start, cfg.tau_end)
    lo, hi = LevelEvaluator(n, 1), LevelEvaluator(n, k)
    best = maximize({"forward": RatioObjective((hi, "row"), (lo, "row")),
                     "inverse": RatioObjective((lo, "col"), (hi, "col"))}, n, cfg)
    return SearchResult(n, k, trials, seed, best["forward"][0], best["inverse"][0],
                        best["forward"][1], best["inverse"][1])


@dataclass(frozen=True)
class ExploreReport:
    """Heuristic lower estimate for the canonical map ``H_n^{k1} -> H_n^{k2}``.

    Not a certified distance: the row/column suprema found only bound the cb
    norms of one particular isomorphism from below.
    """

    n: int
    k1: int
    k2: int
    trials: int
    seed: int
    forward_estimate: float | None
    inverse_estimate: float | None
    heuristic: bool = True

    @property
    def estimate(self) -> float | None:
        if self.forward_estimate is None or self.inverse_estimate is None:
            return None
        return self.forward_estimate * self.inverse_estimate

    def to_json(self) -> dict:
        return {"n": self.n, "k1": self.k1, "k2": self.k2, "trials": self.trials, "seed": self.seed,
                "forward_estimate": self.forward_estimate, "inverse_estimate": self.inverse_estimate,
                "estimate": self.estimate, "heuristic": self.heuristic}


def explore(n: int, k1: int, k2: int, trials: int = 2000, seed: int = 0,
            config: SearchConfig | None = None) -> ExploreReport:
    if not 1 < k1 < k2 < n:
        raise DomainError(f"need 1 < k1 < k2 < n, got n={n}, k1={k1}, k2={k2}")
    if trials == 0:
        return ExploreReport(n, k1, k2, 0, seed, None, None)
    cfg = config or SearchConfig()
    cfg = SearchConfig(trials, seed, cfg.max_m, cfg.normalize, cfg.refine_rounds, cfg.shrink,
                       cfg.refine_starts, cfg.proposals, cfg.max_sweeps,
                       cfg.polish_steps, cfg.tau_start, cfg.tau_end)
    a, b = LevelEvaluator(n, k1), LevelEvaluator(n, k2)
    objectives = {
        "forward_row": RatioObjective((b, "row"), (a, "row")),
        "forward_col": RatioObjective((b, "col"), (a, "col")),
        "inverse_row": RatioObjective((a, "row"), (b, "row")),
        "inverse_col": RatioObjective((a, "col"), (b, "col")),
    }
    best = maximize(objectives, n, cfg)
    fwd = max(best["forward_row"][0], best["forward_col"][0])
    inv = max(best["inverse_row"][0], best["inverse_col"][0])
    return ExploreReport(n, k1, k2, trials, seed, fwd, inv)
