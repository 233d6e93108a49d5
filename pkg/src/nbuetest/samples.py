"""Lifetime samples, order statistics, normalized spacings and total time on test.

A :class:`Sample` is validated once at construction and is immutable
afterwards. Everything downstream works from the sorted values and the
normalized spacings ``D_k = (n - k + 1) (X_(k) - X_(k-1))`` with
``X_(0) = 0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .errors import (
    AllZero,
    EmptyOrSingleton,
    NegativeValue,
    NonFiniteValue,
    SampleParseError,
)

__all__ = [
    "Sample",
    "OrderedSample",
    "Spacings",
    "make_sample",
    "order_and_space",
    "ttt_statistic",
    "ttt_curve",
    "parse_sample_text",
    "read_sample",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Sample:
    """Observed lifetimes in their original order."""

    values: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.values.shape[0]))

    @property
    def mean(self) -> float:
        return float(math.fsum(self.values)) / self.n


@dataclass(frozen=True)
class OrderedSample:
    sorted: np.ndarray
    mean: float

    @property
    def n(self) -> int:
        return int(self.sorted.shape[0])


@dataclass(frozen=True)
class Spacings:
    d: np.ndarray

    @property
    def n(self) -> int:
        return int(self.d.shape[0])

    def total_time_on_test(self) -> np.ndarray:
        """Cumulative sums ``tau(X_(i)) = sum_{j<=i} D_j`` for i = 1..n."""
        return np.cumsum(self.d)

    def reconstruct(self) -> np.ndarray:
        """Recover the order statistics from the spacings."""
        n = self.n
        return np.cumsum(self.d / np.arange(n, 0, -1, dtype=float))


def make_sample(values: Iterable[float]) -> Sample:
    """Validate raw lifetimes and wrap them in a :class:`Sample`.

    Raises EmptyOrSingleton for fewer than two values, NonFiniteValue for
    nan/inf, NegativeValue for anything below zero and AllZero when the
    sample mean would vanish.
    """
    arr = np.array(list(values) if not isinstance(values, np.ndarray) else values,
                   dtype=float).ravel()
    if arr.shape[0] < 2:
        raise EmptyOrSingleton(
            f"need at least n >= 2 observations, got n = {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("sample contains nan or infinite values")
    if np.any(arr < 0):
        i = int(np.argmax(arr < 0))
        raise NegativeValue(f"lifetimes must be >= 0; value #{i + 1} is {arr[i]!r}")
    if not np.any(arr > 0):
        raise AllZero("all observations are zero; the sample mean must be positive")
    return Sample(_frozen(arr))


def order_and_space(s: Sample) -> tuple[OrderedSample, Spacings]:
    x = np.sort(s.values, kind="stable")
    n = s.n
    d = np.arange(n, 0, -1, dtype=float) * np.diff(x, prepend=0.0)
    return OrderedSample(_frozen(x), s.mean), Spacings(_frozen(d))


def ttt_curve(s: Sample) -> np.ndarray:
    """Scaled total-time-on-test values ``tau(X_(i)) / tau(X_(n))``, i = 1..n."""
    _, sp = order_and_space(s)
    tau = sp.total_time_on_test()
    return tau / tau[-1]


def ttt_statistic(s: Sample) -> float:
    """Barlow's cumulative total-time-on-test statistic.

    ``V = sum_{i=1}^{n-1} tau(X_(i)) / tau(X_(n))``. Under exponentiality
    V is distributed as the sum of n - 1 independent uniforms.
    """
    return float(math.fsum(ttt_curve(s)[:-1]))


_SPLIT = re.compile(r"[,\s]+")


def parse_sample_text(text: str | TextIO) -> Sample:
    """Parse lifetimes from text.

    Numbers may be separated by newlines, whitespace or commas. Lines whose
    first non-blank character is ``#`` are skipped. A bad token raises
    SampleParseError carrying its line number.
    """
    if not isinstance(text, str):
        text = text.read()
    values: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for tok in _SPLIT.split(stripped):
            if not tok:
                continue
            try:
                values.append(float(tok))
            except ValueError:
                raise SampleParseError(f"cannot parse {tok!r} as a number",
                                       line=lineno) from None
    return make_sample(values)


def read_sample(path: str | Path) -> Sample:
    with open(path, encoding="utf-8") as fh:
        return parse_sample_text(fh.read())
