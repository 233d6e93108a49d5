"""Exact finite-sample null distribution of gamma_j^*.

Under exponentiality the normalized spacings are i.i.d. exponential, so
``gamma_j^* = sum e_k W_k`` with ``W`` uniform on the simplex. For distinct
coefficients ``e_1 > ... > e_n``

    P(gamma^* <= x) = 1 - sum_{i: x < e_i} prod_{k != i} (e_i - x) / (e_i - e_k).

The sum alternates in sign and its terms grow like ``(2e)^n`` while the
result stays in [0, 1], so it is evaluated in binary floating point with
an adaptive mantissa: start at ``initial_bits`` and keep doubling until two
consecutive levels agree to ``agreement_tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .errors import BadParameter, PrecisionExhausted
from .statistic import CoefficientSet, Variant, coefficients

__all__ = [
    "PrecisionPolicy",
    "CdfValue",
    "ExactNullCdf",
    "exact_cdf",
    "exact_quantile",
    "support",
    "DEFAULT_EXACT_MAX_N",
]

DEFAULT_EXACT_MAX_N = 100


@dataclass(frozen=True)
class PrecisionPolicy:
    initial_bits: int = 256
    max_bits: int = 16384
    agreement_tol: float = 1e-12
    # bisection stopping rules for quantiles
    x_tol: float = 1e-12
    p_tol: float = 1e-10


@dataclass(frozen=True)
class CdfValue:
    p: float
    achieved_bits: int
    estimated_abs_error: float


class ExactNullCdf:
    """CDF evaluator for one (n, variant) pair.

    Instances are immutable from the caller's side; per-precision
    coefficient products are cached internally.
    """

    def __init__(self, coeffs: CoefficientSet,
                 policy: PrecisionPolicy = PrecisionPolicy(),
                 max_n: int = DEFAULT_EXACT_MAX_N):
        if coeffs.n > max_n:
            raise BadParameter(
                f"exact path is capped at n <= {max_n} (got n = {coeffs.n}); "
                "use the Monte Carlo routines for larger samples")
        self.coeffs = coeffs
        self.policy = policy
        self._cache: dict[int, tuple[list, list]] = {}

    @classmethod
    def for_n(cls, n: int, j: float | Variant = 1.0, **kw) -> "ExactNullCdf":
        return cls(coefficients(n, j), **kw)

    @property
    def n(self) -> int:
        return self.coeffs.n

    def support(self) -> tuple[float, float]:
        return self.coeffs.lower, self.coeffs.upper

    def _terms(self, bits: int) -> tuple[list, list]:
        hit = self._cache.get(bits)
        if hit is not None:
            return hit
        cs = self.coeffs
        n = cs.n
        with gmpy2.context(precision=bits):
            if cs.j == 1.0:
                e = [mpfr(n + 2 - 2 * k) / (2 * n) for k in range(1, n + 1)]
            else:
                j = mpfr(cs.j)
                c = 1 / (j * (j + 1))
                e = [(mpfr(n - k + 1) / n) ** j / j - c for k in range(1, n + 1)]
            if cs.shift:
                e = [v - mpfr(1) / (2 * n) for v in e]
            den = []
            for i in range(n):
                prod = mpfr(1)
                for k in range(n):
                    if k != i:
                        prod *= e[i] - e[k]
                den.append(prod)
        self._cache[bits] = (e, den)
        return e, den

    def _cdf_at(self, x: float, bits: int, side: str | None = None):
        """CDF at ``bits`` from the upper or lower coefficient set.

        ``upper``: ``1 - sum_{i: x < e_i} (e_i - x)^(n-1) / prod_{k != i}(e_i - e_k)``.
        ``lower``: ``sum_{i: e_i <= x}`` of the same terms; the two agree because
        the terms summed over every i add up to 1. The side with fewer terms
        is used by default, which keeps the lower tail accurate relative to
        its own size.
        """
        e, den = self._terms(bits)
        m = self.n - 1
        with gmpy2.context(precision=bits):
            xm = mpfr(x)
            above = sum(1 for ei in e if xm < ei)
            if side is None:
                side = "upper" if above <= self.n - above else "lower"
            total = mpfr(0)
            for ei, di in zip(e, den):
                if (xm < ei) == (side == "upper"):
                    total += (ei - xm) ** m / di
            return 1 - total if side == "upper" else total

    def cdf(self, x: float) -> CdfValue:
        x = float(x)
        lo, hi = self.support()
        if x <= lo:
            return CdfValue(0.0, 0, 0.0)
        if x >= hi:
            return CdfValue(1.0, 0, 0.0)
        pol = self.policy
        bits = pol.initial_bits
        prev = self._cdf_at(x, bits)
        while True:
            bits *= 2
            if bits > pol.max_bits:
                raise PrecisionExhausted(
                    f"no agreement to {pol.agreement_tol:g} up to {pol.max_bits} bits "
                    f"(n = {self.n}, x = {x!r})")
            cur = self._cdf_at(x, bits)
            with gmpy2.context(precision=bits):
                err = float(abs(cur - prev))
            if err <= pol.agreement_tol:
                break
            prev = cur
        p = float(cur)
        slack = max(err, pol.agreement_tol)
        if p < 0.0:
            if p < -slack:
                raise PrecisionExhausted(f"cdf({x!r}) = {p!r} is below 0 beyond its error bound")
            p = 0.0
        elif p > 1.0:
            if p > 1.0 + slack:
                raise PrecisionExhausted(f"cdf({x!r}) = {p!r} is above 1 beyond its error bound")
            p = 1.0
        return CdfValue(p, bits, err)

    def __call__(self, x: float) -> float:
        return self.cdf(x).p

    def sf(self, x: float) -> float:
        """Upper-tail probability ``P(gamma^* >= x)``."""
        return 1.0 - self.cdf(x).p

    def quantile(self, p: float) -> float:
        """Bisection on the support for ``x`` with ``cdf(x) = p``."""
        if not (0.0 < p < 1.0):
            raise BadParameter(f"p must lie in (0,1), got {p!r}")
        pol = self.policy
        lo, hi = self.support()
        while True:
            mid = 0.5 * (lo + hi)
            f = self.cdf(mid).p
            if hi - lo <= pol.x_tol and abs(f - p) <= pol.p_tol:
                return mid
            if mid in (lo, hi):
                # float resolution exhausted
                return mid
            if f < p:
                lo = mid
            else:
                hi = mid

    def mean(self) -> float:
        """Null mean, ``sum e_k / n`` (each simplex weight has mean 1/n)."""
        return math.fsum(self.coeffs.e) / self.n


def exact_cdf(d: ExactNullCdf, x: float) -> CdfValue:
    return d.cdf(x)


def exact_quantile(d: ExactNullCdf, p: float) -> float:
    return d.quantile(p)


def support(d: ExactNullCdf) -> tuple[float, float]:
    return d.support()
