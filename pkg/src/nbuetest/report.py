"""One-sample test of exponentiality against NBUE (or NWUE) alternatives."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BadParameter
from .exact import DEFAULT_EXACT_MAX_N, ExactNullCdf, PrecisionPolicy
from .montecarlo import SimConfig, sample_null_statistics
from .samples import Sample
from .statistic import Variant, check_scale_for, gamma_star, scale_factor

__all__ = ["TestReport", "run_test"]


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # keep pytest from collecting this class

    n: int
    variant: str
    j: float
    raw: float
    scale_name: str
    scaled: float | None
    p_lower: float
    p_upper: float
    method: str
    alpha: float
    sided: str
    p_value: float
    decision: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        return cls(**json.loads(text))

    def rounded(self, digits: int) -> "TestReport":
        """Copy with every float cut to ``digits`` significant digits."""
        def r(v):
            return float(f"{v:.{digits}g}") if isinstance(v, float) else v
        return TestReport(**{k: r(v) for k, v in asdict(self).items()})


def run_test(s: Sample, variant: Variant, alpha: float = 0.05, sided: str = "upper",
             scale_name: str = "none", constant: float | None = None,
             exact_max_n: int = DEFAULT_EXACT_MAX_N, replications: int = 100_000,
             seed: int = 42, precision: PrecisionPolicy = PrecisionPolicy()) -> TestReport:
    """Statistic, both tail p-values and the decision at ``alpha``.

    Large values of the statistic point to NBUE, small values to NWUE. The
    exact null law is used for ``n <= exact_max_n``; otherwise p-values are
    simulated fractions ``#{draws <= obs} / N`` and ``#{draws >= obs} / N``.
    """
    if not (0 < alpha < 1):
        raise BadParameter(f"alpha must lie in (0,1), got {alpha!r}")
    if sided not in ("lower", "upper", "two-sided"):
        raise BadParameter(f"unknown sidedness {sided!r}")
    check_scale_for(variant, scale_name)
    raw = gamma_star(s, variant)
    scaled = None if scale_name == "none" else scale_factor(s.n, scale_name, constant) * raw
    if s.n <= exact_max_n:
        d = ExactNullCdf.for_n(s.n, variant, policy=precision, max_n=max(exact_max_n, s.n))
        p_lower = d.cdf(raw).p
        p_upper = 1.0 - p_lower
        method = "exact"
    else:
        draws = sample_null_statistics(
            SimConfig(n=s.n, variant=variant, replications=replications, seed=seed))
        p_lower = float(np.count_nonzero(draws <= raw)) / replications
        p_upper = float(np.count_nonzero(draws >= raw)) / replications
        method = f"monte-carlo(N={replications}, seed={seed})"
    if sided == "upper":
        p = p_upper
    elif sided == "lower":
        p = p_lower
    else:
        p = min(1.0, 2 * min(p_lower, p_upper))
    return TestReport(
        n=s.n, variant=variant.kind, j=variant.j, raw=raw, scale_name=scale_name,
        scaled=scaled, p_lower=p_lower, p_upper=p_upper, method=method, alpha=alpha,
        sided=sided, p_value=p, decision="reject" if p <= alpha else "do not reject")
