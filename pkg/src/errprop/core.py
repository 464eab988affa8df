"""Uncertain-value data model: vectors of quantity values with standard uncertainties.

Values and uncertainties travel in lockstep through every structural
operation.  All functions are pure; vectors are immutable after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import IndexOutOfBounds, LengthMismatch, NegativeError

__all__ = [
    "UncertainVector",
    "UncertainScalar",
    "make_uncertain",
    "get_errors",
    "errors_min",
    "errors_max",
    "subset",
    "concat",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


class UncertainVector:
    """Parallel sequences of values and nonnegative standard uncertainties."""

    __slots__ = ("values", "errors")

    def __init__(self, values, errors, _validate: bool = True):
        values = _frozen(np.atleast_1d(np.asarray(values, dtype=float)))
        errors = _frozen(np.atleast_1d(np.asarray(errors, dtype=float)))
        if _validate:
            if len(values) != len(errors):
                raise LengthMismatch(
                    f"{len(values)} values but {len(errors)} errors"
                )
            neg = errors < 0
            if neg.any():
                raise NegativeError(
                    f"negative uncertainty at index {int(np.argmax(neg))}"
                )
            bad_nan = np.isnan(errors) & ~np.isnan(values)
            if bad_nan.any():
                raise NegativeError(
                    "NaN uncertainty only allowed for NaN values "
                    f"(index {int(np.argmax(bad_nan))})"
                )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "errors", errors)

    def __setattr__(self, name, value):
        raise AttributeError("UncertainVector is immutable")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        for v, e in zip(self.values, self.errors):
            yield UncertainScalar(float(v), float(e))

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            n = len(self)
            if not -n <= i < n:
                raise IndexOutOfBounds(f"index {i} out of bounds for length {n}")
            return UncertainScalar(float(self.values[i]), float(self.errors[i]))
        return subset(self, i)

    def __repr__(self) -> str:
        return f"UncertainVector({self.values.tolist()}, {self.errors.tolist()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, UncertainVector):
            return NotImplemented
        return bool(
            np.array_equal(self.values, other.values, equal_nan=True)
            and np.array_equal(self.errors, other.errors, equal_nan=True)
        )

    # Arithmetic delegates to the propagation rules.  Plain numbers are
    # treated as exact (error 0); operands are always independent.
    def _binary(self, fn, other, swap=False):
        from . import propagation

        other = as_uncertain(other)
        if swap:
            return propagation.propagate_binary(fn, other, self)
        return propagation.propagate_binary(fn, self, other)

    def __add__(self, other):
        return self._binary("add", other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary("sub", other)

    def __rsub__(self, other):
        return self._binary("sub", other, swap=True)

    def __mul__(self, other):
        return self._binary("mul", other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary("div", other)

    def __rtruediv__(self, other):
        return self._binary("div", other, swap=True)

    def __pow__(self, other):
        return self._binary("pow", other)

    def __rpow__(self, other):
        return self._binary("pow", other, swap=True)

    def __neg__(self):
        from . import propagation

        return propagation.propagate_unary("neg", self)

    def __abs__(self):
        from . import propagation

        return propagation.propagate_unary("abs", self)


@dataclass(frozen=True)
class UncertainScalar:
    """A single quantity value with its standard uncertainty."""

    value: float
    error: float

    def __post_init__(self):
        if self.error < 0:
            raise NegativeError(f"negative uncertainty {self.error}")

    def as_vector(self) -> UncertainVector:
        return UncertainVector([self.value], [self.error])

    def _binary(self, fn, other, swap=False):
        from . import propagation

        other = as_uncertain(other)
        a, b = (other, self.as_vector()) if swap else (self.as_vector(), other)
        out = propagation.propagate_binary(fn, a, b)
        return out[0] if len(out) == 1 else out

    def __add__(self, other):
        return self._binary("add", other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary("sub", other)

    def __rsub__(self, other):
        return self._binary("sub", other, swap=True)

    def __mul__(self, other):
        return self._binary("mul", other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary("div", other)

    def __rtruediv__(self, other):
        return self._binary("div", other, swap=True)

    def __pow__(self, other):
        return self._binary("pow", other)

    def __rpow__(self, other):
        return self._binary("pow", other, swap=True)

    def __neg__(self):
        from . import propagation

        return propagation.propagate_unary("neg", self.as_vector())[0]

    def __abs__(self):
        from . import propagation

        return propagation.propagate_unary("abs", self.as_vector())[0]

    def __format__(self, spec: str) -> str:
        if spec:
            return format(self.value, spec)
        return str(self)

    def __str__(self) -> str:
        from .formatting import Notation, format_value

        return format_value(self.value, self.error, Notation())


def as_uncertain(x) -> UncertainVector:
    """Coerce plain numbers/sequences to an exact (error 0) UncertainVector."""
    if isinstance(x, UncertainVector):
        return x
    if isinstance(x, UncertainScalar):
        return x.as_vector()
    values = np.atleast_1d(np.asarray(x, dtype=float))
    return UncertainVector(values, np.zeros_like(values), _validate=False)


def make_uncertain(values: Sequence[float], errors) -> UncertainVector:
    """Build an UncertainVector; a single error value is broadcast to all elements.

    Raises NegativeError for negative uncertainties and LengthMismatch when
    1 < len(errors) != len(values).  Broadcasting is scalar-to-vector only.
    """
    values = np.atleast_1d(np.asarray(values, dtype=float))
    errors = np.atleast_1d(np.asarray(errors, dtype=float))
    if len(errors) == 1 and len(values) != 1:
        errors = np.repeat(errors, len(values))
    finite_required = ~np.isnan(errors)
    if not np.isfinite(errors[finite_required]).all():
        raise NegativeError("uncertainties must be finite")
    return UncertainVector(values, errors)


def get_errors(x: UncertainVector) -> np.ndarray:
    """Return the standard-uncertainty sequence of `x`."""
    return x.errors


def errors_min(x: UncertainVector) -> np.ndarray:
    """Lower interval bound: values - errors, elementwise."""
    return x.values - x.errors


def errors_max(x: UncertainVector) -> np.ndarray:
    """Upper interval bound: values + errors, elementwise."""
    return x.values + x.errors


def subset(x: UncertainVector, indices) -> UncertainVector:
    """Select elements by index or slice, keeping value/error pairing."""
    if isinstance(indices, slice):
        return UncertainVector(x.values[indices], x.errors[indices], _validate=False)
    idx = np.atleast_1d(np.asarray(indices))
    if idx.dtype == bool:
        if len(idx) != len(x):
            raise IndexOutOfBounds("boolean mask length mismatch")
    else:
        idx = idx.astype(int)
        n = len(x)
        if ((idx >= n) | (idx < -n)).any():
            raise IndexOutOfBounds(f"index out of bounds for length {n}")
    return UncertainVector(x.values[idx], x.errors[idx], _validate=False)


def concat(xs: Iterable[UncertainVector]) -> UncertainVector:
    """Join vectors end to end."""
    xs = [as_uncertain(x) for x in xs]
    if not xs:
        return UncertainVector([], [], _validate=False)
    return UncertainVector(
        np.concatenate([x.values for x in xs]),
        np.concatenate([x.errors for x in xs]),
        _validate=False,
    )
