"""Seeded null simulation, simulated critical values and empirical size.

Random numbers come from Philox4x64 used as a counter-based generator.
Replicate ``r`` of a run with seed ``s`` always reads the counter range
``[r*m + 1, (r+1)*m]`` under key ``s`` with ``m = ceil(n / 4)``, so its
draws depend only on ``(s, r, n)``. Splitting replicates across workers in
any way therefore reproduces the same statistics bit for bit.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from .errors import BadParameter, TableFormatError
from .statistic import Variant, coefficients, gamma_star_batch, generalized, scale_factor

__all__ = [
    "SimConfig",
    "EmpiricalSizeReport",
    "Sidedness",
    "draw_exponential_samples",
    "sample_null_statistics",
    "simulated_critical_values",
    "empirical_quantile",
    "empirical_size",
    "read_external_table",
    "ttt_to_hp_critical",
    "CHUNK",
]

# replicates per vectorised chunk; only affects memory, never results
CHUNK = 16384

Sidedness = Literal["lower", "upper", "two-sided"]


@dataclass(frozen=True)
class SimConfig:
    n: int
    variant: Variant = field(default_factory=lambda: generalized(1.0))
    replications: int = 100_000
    seed: int = 42
    rate: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.variant, (int, float)):
            object.__setattr__(self, "variant", generalized(self.variant))
        if int(self.n) != self.n or self.n < 2:
            raise BadParameter(f"n must be an integer >= 2, got {self.n!r}")
        if self.replications < 1:
            raise BadParameter("replications must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise BadParameter("seed must be a 64-bit unsigned integer")
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise BadParameter("rate must be positive")
        if self.workers < 1:
            raise BadParameter("workers must be >= 1")


def draw_exponential_samples(seed: int, n: int, start: int, stop: int,
                             rate: float = 1.0) -> np.ndarray:
    """Exponential samples for replicates ``start <= r < stop``, shape ``(stop - start, n)``."""
    m = -(-n // 4)
    bitgen = np.random.Philox(key=seed, counter=start * m)
    u = np.random.Generator(bitgen).random((stop - start, 4 * m))[:, :n]
    # 1 - U lies in (0, 1], so the log is finite
    return -np.log1p(-u) / rate


def _chunk_stats(args) -> np.ndarray:
    seed, n, variant, rate, start, stop = args
    cs = coefficients(n, variant)
    return gamma_star_batch(draw_exponential_samples(seed, n, start, stop, rate), cs)


def _chunks(total: int) -> list[tuple[int, int]]:
    return [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]


def sample_null_statistics(cfg: SimConfig) -> np.ndarray:
    """``cfg.replications`` draws of the (unscaled) statistic under exponentiality."""
    jobs = [(cfg.seed, cfg.n, cfg.variant, cfg.rate, a, b)
            for a, b in _chunks(cfg.replications)]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            parts = list(ex.map(_chunk_stats, jobs))
    else:
        parts = [_chunk_stats(job) for job in jobs]
    return np.concatenate(parts)


def empirical_quantile(sorted_draws: np.ndarray, alpha: float) -> float:
    """The ``ceil(alpha * N)``-th order statistic (1-based) of sorted draws."""
    N = sorted_draws.shape[0]
    # round first so that e.g. 0.05 * 1e6 does not ceil to 50001
    k = max(1, math.ceil(round(alpha * N, 9)))
    return float(sorted_draws[min(k, N) - 1])


def simulated_critical_values(cfg: SimConfig, alphas: Sequence[float],
                              scale_name: str = "none",
                              constant: float | None = None,
                              draws: np.ndarray | None = None) -> list[float]:
    """Empirical alpha-quantiles of the scaled statistic.

    ``draws`` may be passed to reuse an existing simulation of ``cfg``.
    """
    for a in alphas:
        if not (0.0 < a < 1.0):
            raise BadParameter(f"alpha must lie in (0,1), got {a!r}")
    if draws is None:
        draws = sample_null_statistics(cfg)
    c = scale_factor(cfg.n, scale_name, constant)
    s = np.sort(draws)
    return [c * empirical_quantile(s, a) for a in alphas]


@dataclass(frozen=True)
class EmpiricalSizeReport:
    n: int
    variant: str
    alpha: float
    crit_source: str
    sided: str
    rejections: int
    replications: int
    lower: float | None = None
    upper: float | None = None

    @property
    def empirical_size_percent(self) -> float:
        return 100.0 * self.rejections / self.replications

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["empirical_size_percent"] = self.empirical_size_percent
        return d


def empirical_size(cfg: SimConfig, alpha: float, crit: float | tuple[float, float],
                   sided: Sidedness = "upper", crit_source: str = "supplied",
                   draws: np.ndarray | None = None) -> EmpiricalSizeReport:
    """Rejection rate of the unscaled statistic against fixed critical values.

    ``crit`` is a single value for one-sided tests (reject below it for
    ``lower``, above it for ``upper``) or a ``(lower, upper)`` pair for
    ``two-sided``. Critical values are on the raw, unscaled statistic.
    """
    if sided not in ("lower", "upper", "two-sided"):
        raise BadParameter(f"unknown sidedness {sided!r}")
    if crit_source not in ("exact_table", "external_table", "supplied"):
        raise BadParameter(f"unknown crit_source {crit_source!r}")
    if draws is None:
        draws = sample_null_statistics(cfg)
    lo = hi = None
    if sided == "two-sided":
        lo, hi = crit
        rejected = (draws < lo) | (draws > hi)
    elif sided == "lower":
        lo = float(crit)
        rejected = draws < lo
    else:
        hi = float(crit)
        rejected = draws > hi
    return EmpiricalSizeReport(
        n=cfg.n, variant=cfg.variant.label, alpha=alpha, crit_source=crit_source,
        sided=sided, rejections=int(np.count_nonzero(rejected)),
        replications=int(draws.shape[0]), lower=lo, upper=hi)


def read_external_table(path: str | Path) -> dict[tuple[int, float], float]:
    """Strictly parse a ``n,alpha,value`` CSV of external critical values.

    ``alpha`` is the lower-tail probability of the tabulated percentile.
    """
    out: dict[tuple[int, float], float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["n", "alpha", "value"]:
            raise TableFormatError(f"{path}: header must be exactly 'n,alpha,value'")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise TableFormatError(f"{path}: line {lineno}: expected 3 fields")
            try:
                n = int(row[0])
                alpha = float(row[1])
                value = float(row[2])
            except ValueError:
                raise TableFormatError(f"{path}: line {lineno}: bad number") from None
            if n < 2 or not (0 < alpha < 1) or not math.isfinite(value):
                raise TableFormatError(f"{path}: line {lineno}: value out of range")
            if (n, alpha) in out:
                raise TableFormatError(f"{path}: line {lineno}: duplicate ({n}, {alpha})")
            out[(n, alpha)] = value
    return out


def ttt_to_hp_critical(v: float, n: int) -> float:
    """Map a total-time-on-test percentile to the hp1975 scale: ``K* = (V - (n-1)/2) / n``."""
    return (v - (n - 1) / 2) / n

