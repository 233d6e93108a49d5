"""Empirical size of the gamma_1^* test at n = 2..10 under each sidedness.

    python3 scripts/size_experiment.py [--reps 100000] [--barlow-csv ttt.csv] [--format md]
"""

import argparse

from nbuetest.montecarlo import read_external_table
from nbuetest.tables import build_size_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--barlow-csv", help="n,alpha,value total-time-on-test percentiles")
    ap.add_argument("--format", choices=["text", "csv", "md", "json"], default="md")
    args = ap.parse_args()

    ext = read_external_table(args.barlow_csv) if args.barlow_csv else None
    for sided in ("upper", "lower", "two-sided"):
        t = build_size_table(range(2, 11), replications=args.reps, seed=args.seed,
                             alpha=args.alpha, sided=sided, external=ext,
                             include_external=ext is not None)
        out = {"text": t.to_text, "csv": t.to_csv, "md": t.to_markdown, "json": t.to_json}
        print(out[args.format]())


if __name__ == "__main__":
    main()
