"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure,
4 missing external table.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from typing import Sequence

from . import __version__
from .errors import (
    BadParameter,
    MissingExternalTable,
    NbueError,
    PrecisionExhausted,
    SampleError,
    TableFormatError,
)
from .exact import DEFAULT_EXACT_MAX_N, ExactNullCdf
from .montecarlo import read_external_table
from .report import run_test
from .samples import parse_sample_text, ttt_statistic
from .statistic import HP1975, check_scale_for, default_scale, generalized, scale_factor
from .tables import DEFAULT_ALPHAS, DEFAULT_N, TablePolicy, build_size_table, build_table, fmt

EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC, EXIT_MISSING_TABLE = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    """``"2,3,10"`` or inclusive ranges ``"2:25"`` / ``"30:100:5"``, comma-joined."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                bits = [int(b) for b in part.split(":")]
                step = bits[2] if len(bits) == 3 else 1
                out.extend(range(bits[0], bits[1] + 1, step))
            elif part:
                out.append(int(part))
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _variant(args):
    return HP1975 if args.variant == "hp1975" else generalized(args.j)


def _scale_name(args, variant) -> str:
    name = args.scale
    if name == "paper":
        name = default_scale(variant)
        if name == "none":
            raise BadParameter(f"no named scale for j = {variant.j:g}; "
                               "use --scale user --scale-constant C")
    if name == "user" and args.scale_constant is None:
        raise BadParameter("--scale user needs --scale-constant")
    check_scale_for(variant, name)
    return name


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SampleError(f"cannot read {path}: {exc.strerror}") from None


def _add_variant_args(p, default_j: float = 1.0):
    p.add_argument("--j", type=float, default=default_j, help="weight exponent j > 0")
    p.add_argument("--variant", choices=("generalized", "hp1975"), default="generalized")


def _add_scale_args(p, default: str = "none"):
    p.add_argument("--scale", default=default,
                   choices=("none", "paper", "paper_j_quarter", "paper_j_one", "user"))
    p.add_argument("--scale-constant", type=float, default=None,
                   help="c for --scale user (factor c * sqrt(n))")


def _add_output_args(p, formats=("text", "csv", "md", "json")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--precision", type=int, default=6, help="significant digits")


def _emit_record(rec: dict, fmt_name: str, digits: int) -> str:
    if fmt_name == "json":
        return json.dumps(rec, sort_keys=True) + "\n"
    vals = {k: fmt(v, digits) if isinstance(v, float) else ("" if v is None else str(v))
            for k, v in rec.items()}
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(vals.keys())
        w.writerow(vals.values())
        return buf.getvalue()
    if fmt_name == "md":
        return ("| " + " | ".join(vals) + " |\n|" + "---|" * len(vals) + "\n| "
                + " | ".join(vals.values()) + " |\n")
    width = max(len(k) for k in vals)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in vals.items())


def cmd_stat(args) -> int:
    s = parse_sample_text(_read_input(args.input))
    variant = _variant(args)
    report = run_test(s, variant, alpha=args.alpha, sided=args.sided,
                      scale_name=_scale_name(args, variant), constant=args.scale_constant,
                      exact_max_n=args.exact_max_n, replications=args.reps, seed=args.seed)
    if args.format == "json":
        sys.stdout.write(report.rounded(args.precision).to_json() + "\n")
    else:
        sys.stdout.write(_emit_record(asdict(report), args.format, args.precision))
    return 0


def _dist(args):
    variant = _variant(args)
    name = _scale_name(args, variant)
    d = ExactNullCdf.for_n(args.n, variant, max_n=max(DEFAULT_EXACT_MAX_N, args.n))
    return variant, name, d, scale_factor(args.n, name, args.scale_constant)


def cmd_cdf(args) -> int:
    variant, name, d, c = _dist(args)
    v = d.cdf(args.x / c)
    rec = {"n": args.n, "variant": variant.kind, "j": variant.j, "scale": name,
           "x": args.x, "p": v.p, "achieved_bits": v.achieved_bits}
    if args.format == "text":
        print(fmt(v.p, args.precision))
    else:
        sys.stdout.write(_emit_record(rec, args.format, args.precision))
    return 0


def cmd_quantile(args) -> int:
    variant, name, d, c = _dist(args)
    x = c * d.quantile(args.p)
    rec = {"n": args.n, "variant": variant.kind, "j": variant.j, "scale": name,
           "p": args.p, "x": x}
    if args.format == "text":
        print(fmt(x, args.precision))
    else:
        sys.stdout.write(_emit_record(rec, args.format, args.precision))
    return 0


def _render(obj, fmt_name: str, digits: int) -> str:
    return {"text": obj.to_text, "csv": obj.to_csv, "md": obj.to_markdown,
            "json": obj.to_json}[fmt_name](digits)


def cmd_table(args) -> int:
    variant = _variant(args)
    name = _scale_name(args, variant)
    policy = TablePolicy(exact_max_n=args.exact_max_n, replications=args.reps,
                         seed=args.seed, workers=args.workers)
    table = build_table(variant, args.n, args.alphas, policy, name, args.scale_constant)
    sys.stdout.write(_render(table, args.format, args.precision))
    return 0


def cmd_size_sim(args) -> int:
    external = read_external_table(args.barlow_csv) if args.barlow_csv else None
    table = build_size_table(args.n, args.reps, args.seed, args.alpha, args.sided,
                             external=external, include_external=args.with_barlow)
    sys.stdout.write(_render(table, args.format, args.precision))
    return 0


def cmd_ttt(args) -> int:
    s = parse_sample_text(_read_input(args.input))
    v = ttt_statistic(s)
    if args.format == "text":
        print(fmt(v, args.precision))
    else:
        sys.stdout.write(_emit_record({"n": s.n, "ttt": v}, args.format, args.precision))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nbuetest", description="Exact and simulated tests of exponentiality "
                "against NBUE alternatives.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("stat", help="statistic, p-values and decision for a data file")
    q.add_argument("input", help="file of lifetimes, or - for stdin")
    _add_variant_args(q)
    _add_scale_args(q)
    q.add_argument("--alpha", type=float, default=0.05)
    q.add_argument("--sided", choices=("lower", "upper", "two-sided"), default="upper")
    q.add_argument("--exact-max-n", type=int, default=DEFAULT_EXACT_MAX_N)
    q.add_argument("--reps", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=42)
    _add_output_args(q)
    q.set_defaults(func=cmd_stat)

    for name, fn, arg, helptext in (("cdf", cmd_cdf, "--x", "null CDF at x"),
                                    ("quantile", cmd_quantile, "--p", "null quantile at p")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--n", type=int, required=True)
        q.add_argument(arg, type=float, required=True)
        _add_variant_args(q)
        _add_scale_args(q)
        _add_output_args(q)
        q.set_defaults(func=fn)

    q = sub.add_parser("table", help="critical-value table")
    _add_variant_args(q)
    _add_scale_args(q, default="paper")
    q.add_argument("--n", type=_int_list, default=list(DEFAULT_N))
    q.add_argument("--alphas", type=_float_list, default=list(DEFAULT_ALPHAS))
    q.add_argument("--exact-max-n", type=int, default=60)
    q.add_argument("--reps", type=int, default=1_000_000)
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--workers", type=int, default=1)
    _add_output_args(q)
    q.set_defaults(func=cmd_table)

    q = sub.add_parser("size-sim", help="empirical size under exponentiality")
    q.add_argument("--n", type=_int_list, default=list(range(2, 11)))
    q.add_argument("--reps", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--alpha", type=float, default=0.05)
    q.add_argument("--sided", choices=("lower", "upper", "two-sided"), default="upper")
    q.add_argument("--barlow-csv", default=None,
                   help="CSV n,alpha,value of total-time-on-test percentiles")
    q.add_argument("--with-barlow", action="store_true",
                   help="require the TTT-table columns (exit 4 without --barlow-csv)")
    _add_output_args(q)
    q.set_defaults(func=cmd_size_sim)

    q = sub.add_parser("ttt", help="cumulative total-time-on-test statistic")
    q.add_argument("input")
    _add_output_args(q, formats=("text", "csv", "md", "json"))
    q.set_defaults(func=cmd_ttt)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MissingExternalTable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_TABLE
    except PrecisionExhausted as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SampleError, TableFormatError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BadParameter as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NbueError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
