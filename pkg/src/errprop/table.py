"""Named-column tables with optional uncertainty, backed by CSV.

Columns come in three flavors: text (anything non-numeric, e.g. a group
label), plain numeric, and uncertain.  Cells written as "5.1(1)" or
"5.1 ± 0.1" are auto-detected and parsed, making CSV files
self-describing.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

import numpy as np

from .core import UncertainScalar, UncertainVector, make_uncertain
from .exceptions import ErrpropError, ParseError
from .expr import parse_expr, eval_uncertain
from .formatting import Notation, format_column, parse_value
from . import summaries

__all__ = ["Table", "read_csv", "attach_errors", "derive_column", "summarize"]

_UNCERT_CELL_RE = re.compile(r".*(\(.*\)|±|\+/-)")


@dataclass
class Table:
    """Ordered named columns of equal length."""

    names: list[str] = field(default_factory=list)
    columns: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(c) for c in self.columns.values()}
        if len(lengths) > 1:
            raise ErrpropError(f"ragged columns: lengths {sorted(lengths)}")

    @property
    def nrows(self) -> int:
        if not self.names:
            return 0
        return len(self.columns[self.names[0]])

    def add(self, name: str, column):
        if name in self.columns:
            raise ErrpropError(f"duplicate column {name!r}")
        if self.names and len(column) != self.nrows:
            raise ErrpropError(
                f"column {name!r} has {len(column)} rows, table has {self.nrows}"
            )
        self.names.append(name)
        self.columns[name] = column

    def row_env(self, i: int) -> dict:
        """Environment for row-wise expression evaluation."""
        env = {}
        for name in self.names:
            col = self.columns[name]
            if isinstance(col, UncertainVector):
                env[name] = col[i]
            elif isinstance(col, np.ndarray):
                env[name] = UncertainScalar(float(col[i]), 0.0)
        return env

    def formatted(self, notation: Notation) -> list[list[str]]:
        """All cells as strings, uncertain columns rendered per notation."""
        cols = []
        for name in self.names:
            col = self.columns[name]
            if isinstance(col, UncertainVector):
                cols.append(format_column(col, notation))
            elif isinstance(col, np.ndarray):
                cols.append([_num_str(v) for v in col])
            else:
                cols.append([str(v) for v in col])
        return [list(row) for row in zip(*cols)] if cols else []


def _num_str(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(float(v))


def _try_float(s: str) -> float | None:
    try:
        return float(s)
    except ValueError:
        return None


def read_csv(stream) -> Table:
    """Read an RFC-4180 CSV with a header row into a Table.

    Numeric columns become float arrays; columns where every cell parses
    as an uncertain value (and at least one carries explicit uncertainty
    syntax) become UncertainVector; everything else stays text.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        return Table()
    seen = set()
    for name in header:
        if name in seen:
            raise ErrpropError(f"duplicate column {name!r} in header")
        seen.add(name)
    rows = [row for row in reader if row]
    table = Table()
    for j, name in enumerate(header):
        cells = [row[j].strip() if j < len(row) else "" for row in rows]
        table.add(name, _classify(cells))
    return table


def _classify(cells: list[str]):
    floats = [_try_float(c) for c in cells]
    if all(f is not None for f in floats):
        return np.asarray(floats, dtype=float)
    if any(_UNCERT_CELL_RE.match(c) for c in cells):
        try:
            parsed = [parse_value(c) for c in cells]
        except ParseError:
            return cells
        return UncertainVector(
            [p.value for p in parsed], [p.error for p in parsed]
        )
    return cells


def attach_errors(table: Table, column: str, *, absolute=None, relative=None,
                  error_column: str | None = None) -> None:
    """Turn a plain numeric column into an uncertain one, in place."""
    if column not in table.columns:
        raise ErrpropError(f"no such column: {column!r}")
    col = table.columns[column]
    if not isinstance(col, np.ndarray):
        raise ErrpropError(f"column {column!r} is not plain numeric")
    if absolute is not None:
        errs = np.full(len(col), float(absolute))
    elif relative is not None:
        errs = np.abs(col) * float(relative)
    elif error_column is not None:
        ecol = table.columns.get(error_column)
        if not isinstance(ecol, np.ndarray):
            raise ErrpropError(f"error column {error_column!r} is not plain numeric")
        errs = ecol
    else:
        raise ErrpropError("one of absolute/relative/error_column is required")
    table.columns[column] = make_uncertain(col, errs)


def derive_column(table: Table, name: str, expression: str) -> None:
    """Evaluate an expression row-wise over the table's columns, in place."""
    ast = parse_expr(expression)
    results = [eval_uncertain(ast, table.row_env(i)) for i in range(table.nrows)]
    table.add(name, UncertainVector(
        [r.value for r in results], [r.error for r in results], _validate=False
    ))


_SUMMARY_FUNCS = {
    "mean": summaries.mean,
    "median": summaries.median,
    "sum": summaries.total,
}

_SUMMARY_RE = re.compile(r"\s*(?P<fn>mean|median|sum)\(\s*(?P<col>[^)]+?)\s*\)\s*$")


def summarize(table: Table, spec: str) -> UncertainScalar:
    """Evaluate a cross-row aggregate like "mean(x)" over one column."""
    m = _SUMMARY_RE.match(spec)
    if not m:
        raise ErrpropError(f"bad summary {spec!r}; use mean(col)|median(col)|sum(col)")
    col = table.columns.get(m.group("col"))
    if col is None:
        raise ErrpropError(f"no such column: {m.group('col')!r}")
    if isinstance(col, np.ndarray):
        col = make_uncertain(col, 0.0)
    if not isinstance(col, UncertainVector):
        raise ErrpropError(f"column {m.group('col')!r} is not numeric")
    return _SUMMARY_FUNCS[m.group("fn")](col)
