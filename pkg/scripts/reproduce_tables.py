"""Regenerate the j=0.25 and j=1 critical-value tables as CSV, Markdown and JSON.

    python3 scripts/reproduce_tables.py --out results/ [--reps 1000000] [--exact-max-n 60]
"""

import argparse
from pathlib import Path

from nbuetest.tables import DEFAULT_N, TablePolicy, build_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--reps", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--exact-max-n", type=int, default=60)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    policy = TablePolicy(exact_max_n=args.exact_max_n, replications=args.reps,
                         seed=args.seed, workers=args.workers)
    args.out.mkdir(parents=True, exist_ok=True)
    for j, stem in ((0.25, "critical_values_j0.25"), (1.0, "critical_values_j1")):
        t = build_table(j, n_list=DEFAULT_N, policy=policy)
        (args.out / f"{stem}.csv").write_text(t.to_csv())
        (args.out / f"{stem}.md").write_text(t.to_markdown())
        (args.out / f"{stem}.json").write_text(t.to_json())
        print(f"wrote {stem}.{{csv,md,json}} to {args.out}")


if __name__ == "__main__":
    main()
