"""The scale-free NBUE statistic gamma_j^* and the historical hp1975 form.

With normalized spacings ``D_k`` the statistic is the weighted ratio

    gamma_j^* = sum_k e_k D_k / sum_k D_k,
    e_k = (1/j) ((n - k + 1)/n)^j - 1/(j (j + 1)),

so it is a convex combination of the coefficients and always lies in
``[e_n, e_1]``. ``j = 1`` is the corrected Hollander-Proschan statistic;
the ``hp1975`` variant is the historically printed form with weights
``3n/2 - 2k + 1/2``, which sits exactly ``1/(2n)`` below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .errors import BadParameter, NonpositiveUserConstant, UnknownScale
from .samples import Sample, order_and_space

__all__ = [
    "Variant",
    "generalized",
    "HP1975",
    "CoefficientSet",
    "coefficients",
    "gamma_star",
    "gamma_star_order_form",
    "gamma_star_batch",
    "ScaledValue",
    "SCALE_NAMES",
    "scale",
    "scale_factor",
    "default_scale",
    "check_scale_for",
]


@dataclass(frozen=True)
class Variant:
    kind: Literal["generalized", "hp1975"]
    j: float = 1.0

    def __post_init__(self):
        if self.kind not in ("generalized", "hp1975"):
            raise BadParameter(f"unknown statistic variant {self.kind!r}")
        if self.kind == "hp1975" and self.j != 1.0:
            raise BadParameter("the hp1975 variant is defined for j = 1 only")
        if not (math.isfinite(self.j) and self.j > 0):
            raise BadParameter(f"j must be a positive real, got {self.j!r}")

    @property
    def label(self) -> str:
        return "hp1975" if self.kind == "hp1975" else f"gamma_j(j={self.j:g})"


def generalized(j: float) -> Variant:
    return Variant("generalized", float(j))


HP1975 = Variant("hp1975", 1.0)


@dataclass(frozen=True)
class CoefficientSet:
    """Weights of the normalized spacings for a fixed sample size and variant.

    ``shift`` is subtracted from every generalized coefficient; it is 0 for
    gamma_j^* and ``1/(2n)`` for the hp1975 variant.
    """

    n: int
    j: float
    e: np.ndarray
    shift: float = 0.0
    variant: Variant | None = None

    @property
    def upper(self) -> float:
        return float(self.e[0])

    @property
    def lower(self) -> float:
        return float(self.e[-1])


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise BadParameter(f"n must be an integer >= 2, got {n!r}")
    return int(n)


@lru_cache(maxsize=512)
def _coefficients(n: int, variant: Variant) -> CoefficientSet:
    j = variant.j
    k = np.arange(1, n + 1, dtype=float)
    if j == 1.0:
        # exact in binary for the common case
        e = (n + 2 - 2 * k) / (2 * n)
    else:
        e = ((n - k + 1) / n) ** j / j - 1.0 / (j * (j + 1))
        e[0] = 1.0 / (j + 1)
    shift = 1.0 / (2 * n) if variant.kind == "hp1975" else 0.0
    e = e - shift
    e.setflags(write=False)
    return CoefficientSet(n=n, j=j, e=e, shift=shift, variant=variant)


def coefficients(n: int, j: float | Variant = 1.0) -> CoefficientSet:
    """Coefficient vector ``e_1 > e_2 > ... > e_n`` for sample size ``n``.

    ``j`` may be a positive real or a :class:`Variant`.
    """
    n = _check_n(n)
    variant = j if isinstance(j, Variant) else generalized(j)
    return _coefficients(n, variant)


def _as_variant(v: Variant | float) -> Variant:
    return v if isinstance(v, Variant) else generalized(v)


def gamma_star(s: Sample, variant: Variant | float = 1.0) -> float:
    """Statistic via normalized spacings: ``sum e_k D_k / sum D_k``."""
    cs = coefficients(s.n, _as_variant(variant))
    _, sp = order_and_space(s)
    return math.fsum(cs.e * sp.d) / math.fsum(sp.d)


def gamma_star_order_form(s: Sample, variant: Variant | float = 1.0) -> float:
    """Statistic via order statistics, ``gamma_j(F_n) / mean``.

    Kept as an independent route to the same number as :func:`gamma_star`.
    """
    variant = _as_variant(variant)
    n = s.n
    ordered, _ = order_and_space(s)
    x = ordered.sorted
    k = np.arange(1, n + 1, dtype=float)
    if variant.kind == "hp1975":
        w = (1.5 * n - 2 * k + 0.5) / n**2
    else:
        j = variant.j
        w = (((n - k + 1) / n) ** (j + 1) - ((n - k) / n) ** (j + 1)) / j \
            - 1.0 / (j * (j + 1) * n)
    return math.fsum(w * x) / ordered.mean


def gamma_star_batch(x: np.ndarray, cs: CoefficientSet) -> np.ndarray:
    """Vectorised statistic for a ``(reps, n)`` array of raw (unsorted) samples."""
    x = np.sort(x, axis=1)
    n = x.shape[1]
    d = np.diff(x, axis=1, prepend=0.0)
    d *= np.arange(n, 0, -1, dtype=float)
    return (d @ cs.e) / d.sum(axis=1)


SCALE_NAMES = ("none", "paper_j_quarter", "paper_j_one", "user")


@dataclass(frozen=True)
class ScaledValue:
    raw: float
    scaled: float
    scale_factor: float
    scale_name: str


def scale_factor(n: int, scale_name: str = "none", constant: float | None = None) -> float:
    n = _check_n(n)
    if scale_name == "none":
        return 1.0
    if scale_name == "paper_j_quarter":
        return 1.25 * math.sqrt(1.5 * n)
    if scale_name == "paper_j_one":
        return math.sqrt(12 * n)
    if scale_name == "user":
        if constant is None or not math.isfinite(constant) or constant <= 0:
            raise NonpositiveUserConstant(
                f"user scale needs a positive constant c, got {constant!r}")
        return constant * math.sqrt(n)
    raise UnknownScale(f"unknown scale {scale_name!r}; choose from {SCALE_NAMES}")


def scale(value: float, n: int, scale_name: str = "none",
          constant: float | None = None) -> ScaledValue:
    """Multiply a raw statistic (or critical value) by a named normalising factor."""
    c = scale_factor(n, scale_name, constant)
    return ScaledValue(raw=float(value), scaled=c * float(value),
                       scale_factor=c, scale_name=scale_name)


def default_scale(variant: Variant | float) -> str:
    """Named scale matching the asymptotic normalisation, if one is known."""
    variant = _as_variant(variant)
    if variant.kind == "hp1975" or variant.j == 1.0:
        return "paper_j_one"
    if variant.j == 0.25:
        return "paper_j_quarter"
    return "none"


def check_scale_for(variant: Variant, scale_name: str) -> None:
    if scale_name not in SCALE_NAMES:
        raise UnknownScale(f"unknown scale {scale_name!r}; choose from {SCALE_NAMES}")
    if variant.kind == "hp1975" and scale_name not in ("none", "paper_j_one"):
        raise BadParameter("hp1975 is only defined unscaled or with the sqrt(12 n) scale")
