"""Write exact percentiles of the total-time-on-test statistic V as an n,alpha,value CSV.

Under exponentiality V is a sum of n-1 independent uniforms (Irwin-Hall), so
its percentiles are computed here from the rational CDF by bisection.  The
file stands in for the classical printed table in the size experiment.

    python3 scripts/ttt_percentiles_csv.py ttt.csv --n 2:10 --alphas 0.05,0.95
"""

import argparse
from fractions import Fraction
from math import comb, factorial, floor


def irwin_hall_cdf(m: int, v: float) -> Fraction:
    if v <= 0:
        return Fraction(0)
    if v >= m:
        return Fraction(1)
    x = Fraction(v)
    s = sum((-1) ** k * comb(m, k) * (x - k) ** m for k in range(floor(x) + 1))
    return s / factorial(m)


def irwin_hall_quantile(m: int, p: float, tol: float = 1e-13) -> float:
    lo, hi = 0.0, float(m)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if irwin_hall_cdf(m, mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def parse_range(text: str) -> list[int]:
    if ":" in text:
        a, b = map(int, text.split(":"))
        return list(range(a, b + 1))
    return [int(t) for t in text.split(",")]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--n", default="2:10")
    ap.add_argument("--alphas", default="0.01,0.025,0.05,0.95,0.975,0.99")
    args = ap.parse_args()

    alphas = [float(a) for a in args.alphas.split(",")]
    with open(args.path, "w") as fh:
        fh.write("n,alpha,value\n")
        for n in parse_range(args.n):
            for a in alphas:
                fh.write(f"{n},{a},{irwin_hall_quantile(n - 1, a):.12g}\n")
    print(f"wrote {args.path}")


if __name__ == "__main__":
    main()
