"""Command-line interface: ``hnk {basis,verify,distance,explore,spectra}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings

import numpy as np

from . import __version__
from .cbnorm import cb_distance, explore, hermitian_eigenvalues, row_gram, spectrum_k_sums
from .combinat import subsets_lex
from .errors import CertificateError, DomainError
from .hnk import basis_matrix
from .verify import SUITES, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_COLUMNS = ["n", "k", "target", "forward_cb", "inverse_cb", "distance", "closed_form", "abs_err"]
SOFT_NMAX, HARD_NMAX = 12, 16


def resolve_seed(flag: int | None) -> int:
    """``--seed`` wins, then ``HNK_SEED``, then 0."""
    if flag is not None:
        return flag
    env = os.environ.get("HNK_SEED")
    return int(env) if env else 0


def format_pretty(n: int, k: int, i: int, m) -> str:
    rows = [s.label() for s in subsets_lex(n, n - k)]
    cols = [s.label() for s in subsets_lex(n, k - 1)]
    width = max([len(c) for c in cols] + [2])
    lw = max(len(r) for r in rows)
    lines = [f"b_{i}^({n},{k})  rows: J-subsets, cols: I-subsets",
             " " * lw + " " + " ".join(c.rjust(width) for c in cols)]
    for r, label in enumerate(rows):
        cells = []
        for c in range(len(cols)):
            v = m[r, c]
            cells.append(("+1" if v == 1 else "-1" if v == -1 else "0").rjust(width))
        lines.append(label.rjust(lw) + " " + " ".join(cells))
    return "\n".join(lines)


def cmd_basis(args) -> int:
    n, k = args.n, args.k
    if n > HARD_NMAX:
        raise DomainError(f"n={n} exceeds the hard cap {HARD_NMAX}")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > SOFT_NMAX:
        warnings.warn(f"n={n} is above the soft cap {SOFT_NMAX}; output may be large")
    indices = [args.i] if args.i is not None else list(range(1, n + 1))
    mats = [(i, basis_matrix(n, k, i)) for i in indices]
    if args.format == "json":
        out = {"n": n, "k": k,
               "row_subsets": [list(s) for s in subsets_lex(n, n - k)],
               "col_subsets": [list(s) for s in subsets_lex(n, k - 1)],
               "basis": [{"i": i, "matrix": m.to_json()} for i, m in mats]}
        print(json.dumps(out))
    else:
        print("\n\n".join(format_pretty(n, k, i, m) for i, m in mats))
    return EXIT_PASS


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    report = run_suite(args.suite, args.nmax, seed)
    payload = json.dumps(report.to_json(), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    for c in report.cases:
        if c.status != "pass":
            print(f"FAIL {c.id} max_abs_err={c.max_abs_err}", file=sys.stderr)
    print(f"{report.suite}: {report.status} ({len(report.cases)} cases)", file=sys.stderr)
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


def distance_rows(nmax: int, target: str, seed: int = 0) -> list[dict]:
    targets = ["column", "row"] if target == "both" else [target]
    rows = []
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            for t in targets:
                rows.append(cb_distance(n, k, t, seed=seed).as_row())
    return rows


def cmd_distance(args) -> int:
    if not 1 <= args.nmax <= SOFT_NMAX:
        raise DomainError(f"nmax must be in 1..{SOFT_NMAX}")
    try:
        rows = distance_rows(args.nmax, args.target, resolve_seed(args.seed))
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: (repr(r[c]) if isinstance(r[c], float) else r[c]) for c in CSV_COLUMNS})
        print(buf.getvalue(), end="")
    else:
        print("| " + " | ".join(CSV_COLUMNS) + " |")
        print("|" + "---|" * len(CSV_COLUMNS))
        for r in rows:
            print("| " + " | ".join(f"{r[c]:.12g}" if isinstance(r[c], float) else str(r[c])
                                    for c in CSV_COLUMNS) + " |")
    return EXIT_PASS


def cmd_explore(args) -> int:
    report = explore(args.n, args.k1, args.k2, args.trials, resolve_seed(args.seed))
    out = report.to_json()
    out["note"] = "heuristic lower estimate for the canonical map; not a certified distance"
    print(json.dumps(out, indent=2))
    return EXIT_PASS


def _parse_vector(v) -> list[complex]:
    return [complex(x[0], x[1]) if isinstance(x, (list, tuple)) else complex(x) for x in v]


def cmd_spectra(args) -> int:
    with open(args.file) as fh:
        obj = json.load(fh)
    vectors = obj["vectors"] if isinstance(obj, dict) else obj
    hs = np.array([_parse_vector(v) for v in vectors])
    if hs.ndim != 2 or hs.shape[0] == 0:
        raise DomainError("expected a nonempty list of equal-length vectors")
    n = hs.shape[1]
    ks = [args.k] if args.k is not None else (
        [obj["k"]] if isinstance(obj, dict) and "k" in obj else list(range(1, n + 1)))
    base = hermitian_eigenvalues(row_gram(n, 1, hs))
    levels = []
    for k in ks:
        if not 1 <= k <= n:
            raise DomainError(f"k={k} outside 1..{n}")
        eig = hermitian_eigenvalues(row_gram(n, k, hs))
        pred = spectrum_k_sums(base, k)
        levels.append({"k": k, "eigenvalues": eig.tolist(), "k_sums": pred.tolist(),
                       "max_abs_err": float(np.max(np.abs(eig - pred)))})
    print(json.dumps({"n": n, "m": hs.shape[0], "base_eigenvalues": base.tolist(), "levels": levels}, indent=2))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hnk", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hnkspaces {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print the basis matrices b_i^{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--nmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", help="tabulate certified cb distances")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--target", choices=["column", "row", "both"], default="both")
    p.add_argument("--format", choices=["csv", "json", "md"], default="csv")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("explore", help="heuristic search for d_cb(H_n^k1, H_n^k2); not authoritative")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("spectra", help="compare grade-k spectra with k-sums of the grade-1 spectrum")
    p.add_argument("--file", required=True, help="JSON: {\"vectors\": [[...], ...], \"k\": optional}")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_spectra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
