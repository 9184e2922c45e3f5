"""How fast the seeded random search approaches the certified cb norms.

For each (n, k) and trial budget, prints the shortfall of the best forward and
inverse ratios below sqrt(k) and sqrt(n/(n-k+1)). A positive excess would
contradict the certified bound and is flagged.

    python3 scripts/search_convergence.py --nmax 4 --budgets 10 100 1000
"""
import argparse

from hnkspaces.cbnorm import closed_form_forward, closed_form_inverse, random_search


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--budgets", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>2} {'k':>2} {'trials':>6} {'fwd gap':>10} {'inv gap':>10}")
    for n in range(2, args.nmax + 1):
        for k in range(1, n + 1):
            for t in args.budgets:
                r = random_search(n, k, trials=t, seed=args.seed)
                gf = closed_form_forward(n, k) - r.forward
                gi = closed_form_inverse(n, k) - r.inverse
                flag = "  EXCEEDS BOUND" if min(gf, gi) < -1e-9 else ""
                print(f"{n:>2} {k:>2} {t:>6} {gf:>10.2e} {gi:>10.2e}{flag}")


if __name__ == "__main__":
    main()
