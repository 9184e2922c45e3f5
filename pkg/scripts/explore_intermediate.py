"""Heuristic search for d_cb(H_n^k1, H_n^k2) with 1 < k1 < k2 < n.

Reports, for every admissible pair, the search estimate for the canonical map
alongside the triangle bound through C_n. The estimates are lower bounds on
the cb norms of one map, not distances.

    python3 scripts/explore_intermediate.py --nmax 6 --trials 1000
"""
import argparse
import json

from hnkspaces.cbnorm import closed_form_distance, explore


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for n in range(4, args.nmax + 1):
        for k1 in range(2, n - 1):
            for k2 in range(k1 + 1, n):
                rep = explore(n, k1, k2, trials=args.trials, seed=args.seed)
                out = rep.to_json()
                out["triangle_bound"] = closed_form_distance(n, k1) * closed_form_distance(n, k2)
                print(json.dumps(out))


if __name__ == "__main__":
    main()
