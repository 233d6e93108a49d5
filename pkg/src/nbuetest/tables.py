"""Critical-value grids and the empirical-size comparison, with per-cell provenance."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import BadParameter, MissingExternalTable
from .exact import DEFAULT_EXACT_MAX_N, ExactNullCdf, PrecisionPolicy
from .montecarlo import (
    EmpiricalSizeReport,
    SimConfig,
    empirical_size,
    sample_null_statistics,
    simulated_critical_values,
    ttt_to_hp_critical,
)
from .statistic import HP1975, Variant, check_scale_for, default_scale, generalized, scale_factor

__all__ = [
    "DEFAULT_N",
    "DEFAULT_ALPHAS",
    "TablePolicy",
    "Cell",
    "CriticalValueTable",
    "build_table",
    "SizeRow",
    "SizeTable",
    "build_size_table",
    "fmt",
]

DEFAULT_N = tuple(range(2, 26)) + tuple(range(30, 101, 5))
DEFAULT_ALPHAS = (0.01, 0.05, 0.10, 0.90, 0.95, 0.99)


def fmt(x: float | None, digits: int = 6) -> str:
    return "" if x is None else f"{x:.{digits}g}"


def _round(x: float | None, digits: int) -> float | None:
    return None if x is None else float(fmt(x, digits))


@dataclass(frozen=True)
class TablePolicy:
    exact_max_n: int = 60
    replications: int = 1_000_000
    seed: int = 42
    workers: int = 1
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)


@dataclass(frozen=True)
class Cell:
    alpha: float
    value: float
    provenance: str


@dataclass(frozen=True)
class CriticalValueTable:
    variant: Variant
    scale_name: str
    alphas: tuple[float, ...]
    rows: tuple[tuple[int, tuple[Cell, ...]], ...]

    def value(self, n: int, alpha: float) -> float:
        return self.cell(n, alpha).value

    def cell(self, n: int, alpha: float) -> Cell:
        for m, cells in self.rows:
            if m == n:
                for c in cells:
                    if c.alpha == alpha:
                        return c
        raise KeyError((n, alpha))

    @property
    def n_values(self) -> list[int]:
        return [n for n, _ in self.rows]

    def to_csv(self, digits: int = 6) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [fmt(a) for a in self.alphas])
        for n, cells in self.rows:
            w.writerow([n] + [fmt(c.value, digits) for c in cells])
        return buf.getvalue()

    def to_markdown(self, digits: int = 6) -> str:
        head = "| n | " + " | ".join(f"alpha={fmt(a)}" for a in self.alphas) + " |"
        lines = [f"Critical values of {self.variant.label}, scale {self.scale_name}", "",
                 head, "|" + "---|" * (len(self.alphas) + 1)]
        for n, cells in self.rows:
            lines.append(f"| {n} | " + " | ".join(fmt(c.value, digits) for c in cells) + " |")
        return "\n".join(lines) + "\n"

    def as_dict(self, digits: int = 6) -> dict:
        return {
            "variant": self.variant.kind,
            "j": self.variant.j,
            "scale": self.scale_name,
            "alphas": list(self.alphas),
            "rows": [
                {"n": n, "cells": [{"alpha": c.alpha, "value": _round(c.value, digits),
                                    "provenance": c.provenance} for c in cells]}
                for n, cells in self.rows
            ],
        }

    def to_json(self, digits: int = 6) -> str:
        return json.dumps(self.as_dict(digits), indent=2) + "\n"

    def to_text(self, digits: int = 6) -> str:
        width = max(digits + 7, 10)
        head = f"{'n':>4}" + "".join(f"{fmt(a):>{width}}" for a in self.alphas)
        lines = [f"# {self.variant.label}, scale={self.scale_name}", head]
        for n, cells in self.rows:
            tag = "" if cells[0].provenance == "exact" else "  *"
            lines.append(f"{n:>4}" + "".join(f"{fmt(c.value, digits):>{width}}" for c in cells) + tag)
        if any(cells[0].provenance != "exact" for _, cells in self.rows):
            lines.append("# * simulated rows")
        return "\n".join(lines) + "\n"


def build_table(variant: Variant | float = 1.0,
                n_list: Sequence[int] = DEFAULT_N,
                alphas: Sequence[float] = DEFAULT_ALPHAS,
                policy: TablePolicy = TablePolicy(),
                scale_name: str | None = None,
                constant: float | None = None) -> CriticalValueTable:
    """Critical values for every ``(n, alpha)``.

    Rows with ``n <= policy.exact_max_n`` come from the exact distribution;
    larger ``n`` are simulated with ``policy.replications`` draws.
    """
    if not isinstance(variant, Variant):
        variant = generalized(variant)
    if scale_name is None:
        scale_name = default_scale(variant)
    check_scale_for(variant, scale_name)
    alphas = tuple(sorted(float(a) for a in alphas))
    if any(not (0 < a < 1) for a in alphas):
        raise BadParameter("every alpha must lie in (0,1)")
    exact_cap = max(DEFAULT_EXACT_MAX_N, policy.exact_max_n)
    rows = []
    for n in n_list:
        c = scale_factor(n, scale_name, constant)
        if n <= policy.exact_max_n:
            d = ExactNullCdf.for_n(n, variant, policy=policy.precision, max_n=exact_cap)
            values = [c * d.quantile(a) for a in alphas]
            prov = "exact"
        else:
            cfg = SimConfig(n=n, variant=variant, replications=policy.replications,
                            seed=policy.seed, workers=policy.workers)
            values = simulated_critical_values(cfg, alphas, scale_name, constant)
            prov = f"simulated(N={policy.replications}, seed={policy.seed})"
        rows.append((int(n), tuple(Cell(a, v, prov) for a, v in zip(alphas, values))))
    return CriticalValueTable(variant, scale_name, alphas, tuple(rows))


@dataclass(frozen=True)
class SizeRow:
    n: int
    gamma1_exact: EmpiricalSizeReport
    gamma1_external: EmpiricalSizeReport | None = None
    hp_external: EmpiricalSizeReport | None = None


_SIZE_COLUMNS = (
    ("gamma1_exact", "gamma1* vs exact critical values"),
    ("gamma1_external", "gamma1* vs TTT table"),
    ("hp_external", "K* (hp1975) vs TTT table"),
)


@dataclass(frozen=True)
class SizeTable:
    alpha: float
    sided: str
    replications: int
    seed: int
    rows: tuple[SizeRow, ...]

    def _cols(self):
        return [(k, label) for k, label in _SIZE_COLUMNS
                if any(getattr(r, k) is not None for r in self.rows)]

    def percent(self, n: int, column: str = "gamma1_exact") -> float:
        for r in self.rows:
            if r.n == n:
                return getattr(r, column).empirical_size_percent
        raise KeyError(n)

    def to_csv(self, digits: int = 6) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = self._cols()
        w.writerow(["n"] + [k for k, _ in cols])
        for r in self.rows:
            w.writerow([r.n] + [fmt(getattr(r, k).empirical_size_percent, digits) for k, _ in cols])
        return buf.getvalue()

    def to_markdown(self, digits: int = 6) -> str:
        cols = self._cols()
        lines = [f"Empirical size (%), nominal {fmt(100 * self.alpha)}%, {self.sided} tail, "
                 f"N={self.replications}, seed={self.seed}", "",
                 "| n | " + " | ".join(label for _, label in cols) + " |",
                 "|" + "---|" * (len(cols) + 1)]
        for r in self.rows:
            lines.append(f"| {r.n} | " + " | ".join(
                fmt(getattr(r, k).empirical_size_percent, digits) for k, _ in cols) + " |")
        return "\n".join(lines) + "\n"

    def to_text(self, digits: int = 6) -> str:
        cols = self._cols()
        lines = [f"# nominal {fmt(100 * self.alpha)}%, {self.sided}, N={self.replications}, seed={self.seed}",
                 f"{'n':>4}" + "".join(f"{k:>18}" for k, _ in cols)]
        for r in self.rows:
            lines.append(f"{r.n:>4}" + "".join(
                f"{fmt(getattr(r, k).empirical_size_percent, digits):>18}" for k, _ in cols))
        return "\n".join(lines) + "\n"

    def as_dict(self, digits: int = 6) -> dict:
        def rep(r: EmpiricalSizeReport | None):
            if r is None:
                return None
            d = r.as_dict()
            for k in ("lower", "upper", "empirical_size_percent"):
                d[k] = _round(d[k], digits)
            return d
        return {
            "alpha": self.alpha, "sided": self.sided,
            "replications": self.replications, "seed": self.seed,
            "rows": [{"n": r.n, **{k: rep(getattr(r, k)) for k, _ in _SIZE_COLUMNS}}
                     for r in self.rows],
        }

    def to_json(self, digits: int = 6) -> str:
        return json.dumps(self.as_dict(digits), indent=2) + "\n"


def _exact_crit(d: ExactNullCdf, alpha: float, sided: str):
    if sided == "upper":
        return d.quantile(1 - alpha)
    if sided == "lower":
        return d.quantile(alpha)
    return d.quantile(alpha / 2), d.quantile(1 - alpha / 2)


def _external_crit(table: Mapping[tuple[int, float], float], n: int, alpha: float, sided: str):
    def look(level: float) -> float:
        for (m, a), v in table.items():
            if m == n and abs(a - level) < 1e-9:
                return ttt_to_hp_critical(v, n)
        raise MissingExternalTable(f"external table has no entry for n={n}, alpha={level:g}")
    if sided == "upper":
        return look(1 - alpha)
    if sided == "lower":
        return look(alpha)
    return look(alpha / 2), look(1 - alpha / 2)


def build_size_table(n_list: Sequence[int] = tuple(range(2, 11)),
                     replications: int = 100_000,
                     seed: int = 42,
                     alpha: float = 0.05,
                     sided: str = "upper",
                     external: Mapping[tuple[int, float], float] | None = None,
                     include_external: bool = False,
                     precision: PrecisionPolicy = PrecisionPolicy()) -> SizeTable:
    """Empirical size of gamma_1^* and the hp1975 statistic under exponentiality.

    ``external`` holds total-time-on-test percentiles keyed by
    ``(n, alpha)``; they are mapped to hp1975 critical values and applied to
    both statistics. gamma_1^* and hp1975 are computed on the same draws.
    """
    if include_external and external is None:
        raise MissingExternalTable("TTT-table columns requested but no external CSV was supplied")
    if sided not in ("lower", "upper", "two-sided"):
        raise BadParameter(f"unknown sidedness {sided!r}")
    rows = []
    for n in n_list:
        d = ExactNullCdf.for_n(n, 1.0, policy=precision)
        cfg = SimConfig(n=n, variant=generalized(1.0), replications=replications, seed=seed)
        g = sample_null_statistics(cfg)
        col2 = empirical_size(cfg, alpha, _exact_crit(d, alpha, sided), sided, "exact_table", draws=g)
        col3 = col4 = None
        if external is not None:
            crit = _external_crit(external, n, alpha, sided)
            col3 = empirical_size(cfg, alpha, crit, sided, "external_table", draws=g)
            hcfg = SimConfig(n=n, variant=HP1975, replications=replications, seed=seed)
            col4 = empirical_size(hcfg, alpha, crit, sided, "external_table")
        rows.append(SizeRow(int(n), col2, col3, col4))
    return SizeTable(alpha, sided, replications, seed, tuple(rows))
