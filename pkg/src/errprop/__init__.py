"""errprop: measurements with standard uncertainties.

First-order Taylor (delta method) propagation through arithmetic and
elementary functions, GUM-style reporting and parsing, summary
statistics with central-tendency error rules, and a Monte Carlo oracle
to validate the linear approximation.
"""

from .core import (
    UncertainScalar,
    UncertainVector,
    concat,
    errors_max,
    errors_min,
    get_errors,
    make_uncertain,
    subset,
)
from .exceptions import ErrpropError
from .expr import eval_numeric, eval_uncertain, parse_expr, render
from .formatting import Notation, format_column, format_value, parse_value
from .mc import McConfig, McResult, compare_tsm_mcm, mc_propagate
from .propagation import (
    cumulative_prod,
    cumulative_sum,
    diff,
    propagate_binary,
    propagate_general,
    propagate_unary,
)
from .summaries import (
    maximum,
    mean,
    median,
    minimum,
    product,
    total,
    value_range,
    weighted_mean,
)

__version__ = "0.1.0"

__all__ = [
    "UncertainScalar",
    "UncertainVector",
    "make_uncertain",
    "get_errors",
    "errors_min",
    "errors_max",
    "subset",
    "concat",
    "propagate_unary",
    "propagate_binary",
    "propagate_general",
    "cumulative_sum",
    "cumulative_prod",
    "diff",
    "total",
    "product",
    "mean",
    "weighted_mean",
    "median",
    "minimum",
    "maximum",
    "value_range",
    "Notation",
    "format_value",
    "parse_value",
    "format_column",
    "parse_expr",
    "render",
    "eval_uncertain",
    "eval_numeric",
    "McConfig",
    "McResult",
    "mc_propagate",
    "compare_tsm_mcm",
    "ErrpropError",
    "__version__",
]
