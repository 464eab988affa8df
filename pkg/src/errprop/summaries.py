"""Summary statistics with central-tendency error rules.

The error of a central-tendency summary can never be smaller than the
errors of the individual measurements, so mean-like summaries take the
maximum of the dispersion-based estimate (SEM) and the mean of the
individual errors.  The median's error is sqrt(pi/2) times the mean's.
"""

from __future__ import annotations

import math

import numpy as np

from .core import UncertainScalar, UncertainVector, as_uncertain
from .exceptions import EmptyInput, LengthMismatch, NegativeError, ZeroWeightSum
from .propagation import cumulative_prod

__all__ = [
    "total",
    "product",
    "mean",
    "weighted_mean",
    "median",
    "minimum",
    "maximum",
    "value_range",
    "MEDIAN_FACTOR",
]

# asymptotic efficiency of the median for normal data
MEDIAN_FACTOR = math.sqrt(math.pi / 2.0)


def _nonempty(x: UncertainVector, what: str) -> UncertainVector:
    if len(x) == 0:
        raise EmptyInput(f"{what} of an empty vector")
    return x


def total(x) -> UncertainScalar:
    """Sum of all elements; error is the quadrature of the element errors."""
    x = _nonempty(as_uncertain(x), "sum")
    return UncertainScalar(
        float(np.sum(x.values)),
        float(np.sqrt(np.sum(x.errors**2))),
    )


def product(x) -> UncertainScalar:
    """Product of all elements (left fold of the mul rule)."""
    x = _nonempty(as_uncertain(x), "product")
    return cumulative_prod(x)[-1]


def mean(x) -> UncertainScalar:
    """Arithmetic mean with error = max(SEM, mean of individual errors).

    SEM uses the n-1 sample standard deviation.  For a single element the
    SEM is undefined and the element's own error is returned.
    """
    x = _nonempty(as_uncertain(x), "mean")
    return weighted_mean(x, np.ones(len(x)))


def weighted_mean(x, weights) -> UncertainScalar:
    """Weighted mean with error = max(weighted SEM, weighted mean of errors).

    weighted SEM = sqrt(sum w_i (v_i - vbar)^2 * n / (sum w_i * (n-1))) / sqrt(n);
    the n/(n-1) factor makes uniform weights reduce exactly to the
    sample-sd SEM of `mean`.
    """
    x = _nonempty(as_uncertain(x), "weighted mean")
    w = np.asarray(weights, dtype=float)
    if len(w) != len(x):
        raise LengthMismatch(f"{len(x)} values but {len(w)} weights")
    if (w < 0).any():
        raise NegativeError("weights must be nonnegative")
    wsum = float(np.sum(w))
    if wsum <= 0:
        raise ZeroWeightSum("weights sum to zero")
    n = len(x)
    value = float(np.sum(w * x.values) / wsum)
    werr = float(np.sum(w * x.errors) / wsum)
    if n == 1:
        return UncertainScalar(value, werr)
    wsem = float(
        math.sqrt(np.sum(w * (x.values - value) ** 2) * n / (wsum * (n - 1)))
        / math.sqrt(n)
    )
    return UncertainScalar(value, max(wsem, werr))


def median(x) -> UncertainScalar:
    """Sample median; error is sqrt(pi/2) times the mean's error."""
    x = _nonempty(as_uncertain(x), "median")
    return UncertainScalar(
        float(np.median(x.values)),
        MEDIAN_FACTOR * mean(x).error,
    )


def minimum(x) -> UncertainScalar:
    """Smallest value, carrying the extremal element's own error."""
    x = _nonempty(as_uncertain(x), "min")
    i = int(np.argmin(x.values))
    return x[i]


def maximum(x) -> UncertainScalar:
    """Largest value, carrying the extremal element's own error."""
    x = _nonempty(as_uncertain(x), "max")
    i = int(np.argmax(x.values))
    return x[i]


def value_range(x) -> UncertainScalar:
    """max - min, extremal errors combined in quadrature."""
    lo, hi = minimum(x), maximum(x)
    return UncertainScalar(hi.value - lo.value, math.hypot(lo.error, hi.error))
