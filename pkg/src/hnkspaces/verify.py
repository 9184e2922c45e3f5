"""Verification suites driven by the ``verify`` command.

Each suite yields ``(id, params, passed, max_abs_err)`` tuples; the runner
times them and assembles a :class:`VerificationReport`.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterator

import numpy as np

from . import __version__
from .cbnorm import (LevelEvaluator, cb_distance, closed_form_distance, col_gram,
                     degenerate_triangle_gap, row_gram, spectrum_k_sums, trace_identity)
from .errors import DomainError
from .combinat import complementary_pairs, eps_iI, eps_IiJ, eps_IJ, subsets_lex
from .fock import (basis_vector, creation_adjoint_product, creation_matrix,
                   creation_product_adjoint, full_fock_creation, wedge_coords)
from .hnk import (diagram_unitaries, element, hnk_space, hs_gram, intersection_basis,
                  restrict_full_fock, verify_intertwining)
from .homog import entry_formula, psi_image, verify_homogeneity
from .linalg import (ExactMatrix, det, hermitian_eigenvalues, laplace_cross_sum, laplace_expansion,
                     minor_table, operator_norm, random_gaussian_rational_matrix, random_unitary,
                     submatrix_det)

Outcome = tuple[str, dict, bool, float]

DEFAULT_NMAX = {"combinat": 7, "detlemma": 6, "fock": 6, "car": 6, "intertwine": 6,
                "homogeneity": 4, "spectra": 5, "distance": 7}
HARD_NMAX = {"car": 8, "fock": 8, "distance": 12}


@dataclass
class Case:
    id: str
    params: dict
    status: str
    max_abs_err: float
    elapsed_ms: float


@dataclass
class VerificationReport:
    suite: str
    seed: int
    version: str
    cases: list[Case] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if all(c.status == "pass" for c in self.cases) else "fail"

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "version": self.version,
                "cases": [asdict(c) for c in self.cases], "status": self.status}


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed, *key])


def _cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def suite_combinat(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(1, nmax + 1):
        ok = all(len(subsets_lex(n, r)) == comb(n, r)
                 and all(a.elements < b.elements for a, b in zip(subsets_lex(n, r), subsets_lex(n, r)[1:]))
                 for r in range(n + 1))
        yield f"subsets_lex[n={n}]", {"n": n}, ok, 0.0
        ok = all(eps_IiJ(I, i, J) * eps_IJ(I, J, i) == (-1) ** (i + k)
                 for k in range(1, n + 1) for i in range(1, n + 1) for I, J in complementary_pairs(n, k, i))
        yield f"eps_product[n={n}]", {"n": n}, ok, 0.0
        ok = True
        for k in range(1, n + 1):
            for J in subsets_lex(n, n - k):
                rest = J.complement().elements
                vals = {eps_iI(i, tuple(x for x in rest if x != i)) * eps_IiJ(tuple(x for x in rest if x != i), i, J)
                        for i in rest}
                ok &= len(vals) == 1
        yield f"w_sign_independence[n={n}]", {"n": n}, ok, 0.0


def suite_detlemma(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(2, min(nmax, 6) + 1):
        X = random_gaussian_rational_matrix(n, _rng(seed, 1, n))
        table = minor_table(X)
        d = det(X)
        subsets = [H for r in range(n + 1) for H in combinations(range(1, n + 1), r)]
        ok = all(laplace_expansion(X, H, table) == d for H in subsets)
        yield f"laplace_expansion[n={n}]", {"n": n}, ok, 0.0
        ok = all(laplace_cross_sum(X, H, K, table) == 0
                 for H in subsets for K in combinations(range(1, n + 1), n - len(H)) if set(H) & set(K))
        yield f"laplace_cross_sum[n={n}]", {"n": n}, ok, 0.0


def suite_fock(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(1, nmax + 1):
        rng = _rng(seed, 2, n)
        err = 0.0
        for p in range(1, n + 1):
            vs = [_cvec(rng, n) for _ in range(p)]
            X = np.column_stack(vs)
            coords = wedge_coords(vs, n)
            for pos, H in enumerate(subsets_lex(n, p)):
                err = max(err, abs(coords[pos] - submatrix_det(X, H, range(1, p + 1))))
        yield f"wedge_minors[n={n}]", {"n": n}, err < 1e-10, err
        for k in range(1, n + 1):
            h = _cvec(rng, n)
            C = creation_matrix(n, k, h).matrix
            norm_err = abs(operator_norm(C) - np.linalg.norm(h))
            vs = [_cvec(rng, n) for _ in range(k - 1)]
            e1 = np.max(np.abs(C.conj().T @ C @ wedge_coords(vs, n, exact=False) - creation_adjoint_product(h, vs)))
            ws = [_cvec(rng, n) for _ in range(k)]
            e2 = np.max(np.abs(C @ C.conj().T @ wedge_coords(ws, n) - creation_product_adjoint(h, ws)))
            err = max(norm_err / (1 + np.linalg.norm(h)), e1, e2)
            yield f"creation[n={n},k={k}]", {"n": n, "k": k}, err < 1e-9, float(err)


def suite_car(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(1, nmax + 1):
        cs = [full_fock_creation(n, basis_vector(n, i)).to_complex() for i in range(1, n + 1)]
        eye = np.eye(2 ** n)
        err = 0.0
        for i, a in enumerate(cs):
            for j, b in enumerate(cs):
                err = max(err, np.max(np.abs(a @ b + b @ a)))
                err = max(err, np.max(np.abs(a @ b.conj().T + b.conj().T @ a - (eye if i == j else 0))))
        yield f"car[n={n}]", {"n": n}, err < 1e-12, float(err)


def suite_intertwine(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            d = diagram_unitaries(n, k)
            unitary = (d.V.T @ d.V == ExactMatrix.identity(d.V.cols)
                       and d.W @ d.W == ExactMatrix.identity(d.W.rows))
            ok = unitary and all(verify_intertwining(n, k, i, d) for i in range(1, n + 1))
            yield f"intertwining[n={n},k={k}]", {"n": n, "k": k}, ok, 0.0
            space = hnk_space(n, k)
            g = hs_gram(space)
            orth = g == ExactMatrix.diagonal([comb(n - 1, k - 1)] * n)
            counts = all(b.nonzero_count() == comb(n - 1, k - 1) for b in space.basis)
            yield f"hs_orthogonal[n={n},k={k}]", {"n": n, "k": k}, orth and counts, 0.0
            rng = _rng(seed, 3, n, k)
            err = 0.0
            for _ in range(100):
                a = _cvec(rng, n)
                err = max(err, abs(operator_norm(element(space, a)) - np.linalg.norm(a)))
            yield f"hilbertian[n={n},k={k}]", {"n": n, "k": k}, err < 1e-10, float(err)
        inter = intersection_basis(n, range(1, n + 1))
        ok = inter.verify() and all(
            restrict_full_fock(full_fock_creation(n, basis_vector(n, i)), n, range(1, n + 1)) == c
            for i, c in zip(range(1, n + 1), inter.creations))
        yield f"intersection_phi[n={n}]", {"n": n}, ok, 0.0


def suite_homogeneity(nmax: int, seed: int, unitaries: int = 20) -> Iterator[Outcome]:
    for n in range(1, min(nmax, 5) + 1):
        for k in range(1, n + 1):
            rng = _rng(seed, 4, n, k)
            factor = entry = 0.0
            for _ in range(unitaries):
                u = random_unitary(n, rng)
                rep = verify_homogeneity(n, k, u, trials=2, rng=rng)
                factor = max(factor, rep.max_deviation)
                for i in range(1, n + 1):
                    img = psi_image(n, k, u, i)
                    for a, Jp in enumerate(subsets_lex(n, n - k)):
                        for b, Ip in enumerate(subsets_lex(n, k - 1)):
                            entry = max(entry, abs(entry_formula(n, k, u, i, Jp, Ip) - img[a, b]))
            yield f"homogeneity[n={n},k={k}]", {"n": n, "k": k}, factor < 1e-9, float(factor)
            yield f"entry_formula[n={n},k={k}]", {"n": n, "k": k}, entry < 1e-9, float(entry)


def suite_spectra(nmax: int, seed: int) -> Iterator[Outcome]:
    rng = _rng(seed, 5)
    err = 0.0
    for _ in range(50):
        n = int(rng.integers(1, min(nmax, 7) + 1))
        k = int(rng.integers(1, n + 1))
        h = _cvec(rng, n)
        got, want = trace_identity(n, k, h)
        err = max(err, abs(got - want) / (1 + np.linalg.norm(h) ** 2))
    yield "trace_identity", {"samples": 50}, err < 1e-10, float(err)
    for n in range(1, min(nmax, 6) + 1):
        for m in range(1, n + 1):
            for k in range(1, n + 1):
                r = _rng(seed, 6, n, m, k)
                err = 0.0
                for _ in range(20):
                    hs = np.array([_cvec(r, n) for _ in range(m)])
                    base = hermitian_eigenvalues(row_gram(n, 1, hs))
                    top = hermitian_eigenvalues(row_gram(n, k, hs))
                    err = max(err, float(np.max(np.abs(top - spectrum_k_sums(base, k)))))
                yield f"k_sums[n={n},m={m},k={k}]", {"n": n, "m": m, "k": k}, err < 1e-8, err


def suite_distance(nmax: int, seed: int) -> Iterator[Outcome]:
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            for target in ("column", "row"):
                rec = cb_distance(n, k, target, seed=seed)
                kk = k if target == "column" else n - k + 1
                err = max(abs(rec.forward_cb - math.sqrt(kk)), abs(rec.inverse_cb - math.sqrt(n / (n - kk + 1))),
                          rec.abs_err)
                yield f"distance[n={n},k={k},{target}]", {"n": n, "k": k, "target": target}, err < 1e-9, err
            gap = degenerate_triangle_gap(n, k)
            yield f"degenerate_triangle[n={n},k={k}]", {"n": n, "k": k}, gap < 1e-12, gap


SUITES: dict[str, Callable[[int, int], Iterator[Outcome]]] = {
    "combinat": suite_combinat,
    "detlemma": suite_detlemma,
    "fock": suite_fock,
    "car": suite_car,
    "intertwine": suite_intertwine,
    "homogeneity": suite_homogeneity,
    "spectra": suite_spectra,
    "distance": suite_distance,
}


def run_suite(name: str, nmax: int | None = None, seed: int = 0) -> VerificationReport:
    """Run one suite (or ``all``) and collect its cases in a deterministic order."""
    if name != "all" and name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and nmax is not None and nmax > HARD_NMAX.get(name, 7):
        raise DomainError(f"nmax {nmax} exceeds the limit {HARD_NMAX.get(name, 7)} for suite {name!r}")
    report = VerificationReport(name, seed, __version__)
    for suite in names:
        limit = DEFAULT_NMAX[suite] if nmax is None else min(nmax, HARD_NMAX.get(suite, 7))
        it = SUITES[suite](limit, seed)
        while True:
            t0 = time.perf_counter()
            try:
                cid, params, ok, err = next(it)
            except StopIteration:
                break
            except Exception as exc:  # a crashing case is a failed case
                report.cases.append(Case(f"{suite}:error", {"error": repr(exc)}, "fail", float("inf"),
                                         (time.perf_counter() - t0) * 1e3))
                break
            report.cases.append(Case(f"{suite}:{cid}", params, "pass" if ok else "fail", float(err),
                                     round((time.perf_counter() - t0) * 1e3, 3)))
    return report
