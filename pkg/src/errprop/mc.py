"""Monte Carlo propagation oracle.

Inputs are modeled as independent normals N(value, error^2), sampled
with numpy's default PCG64 bit generator, pushed through the expression
and summarized.  Given the same (expr, env, config), the result is
bitwise reproducible.  Used to cross-check the first-order Taylor
approximation, which degrades when the relative errors are large and
the expression is strongly nonlinear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import UncertainScalar
from .exceptions import NonFiniteSamples, UnboundVariable
from .expr import ExprAst, eval_numeric, eval_uncertain, free_variables

__all__ = ["McConfig", "McResult", "TsmMcmReport", "mc_propagate", "compare_tsm_mcm"]

# normal-consistency constant for the median absolute deviation
MAD_SCALE = 1.4826

# above this fraction of non-finite evaluations the run is rejected
NONFINITE_LIMIT = 0.01


@dataclass(frozen=True)
class McConfig:
    samples: int = 100_000
    seed: int = 0
    quantiles: tuple = (0.025, 0.975)

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if any(not 0 < q < 1 for q in self.quantiles):
            raise ValueError("quantiles must lie in (0, 1)")


@dataclass(frozen=True)
class McResult:
    mean: float
    sd: float
    median: float
    mad: float
    quantile_values: tuple
    n_nonfinite: int = 0


@dataclass(frozen=True)
class TsmMcmReport:
    tsm_value: float
    tsm_sd: float
    mcm: McResult
    relative_gap: float

    @property
    def mcm_sd(self) -> float:
        return self.mcm.sd


def _coerce(val) -> UncertainScalar:
    if isinstance(val, UncertainScalar):
        return val
    return UncertainScalar(float(val), 0.0)


def mc_propagate(expr: ExprAst, env: dict, cfg: McConfig = McConfig()) -> McResult:
    """Sample the inputs, evaluate the expression, summarize the output.

    Raises NonFiniteSamples when more than 1% of evaluations are
    non-finite; below that threshold they are excluded and counted.
    """
    names = sorted(free_variables(expr))
    missing = [n for n in names if n not in env]
    if missing:
        raise UnboundVariable(missing[0])
    rng = np.random.default_rng(cfg.seed)
    # draw in sorted-name order so the stream assignment is reproducible
    draws = {}
    for name in names:
        s = _coerce(env[name])
        draws[name] = rng.normal(s.value, s.error, cfg.samples)
    out = np.asarray(eval_numeric(expr, draws), dtype=float)
    if out.ndim == 0:
        out = np.full(cfg.samples, float(out))
    finite = np.isfinite(out)
    n_bad = int(cfg.samples - finite.sum())
    if n_bad > NONFINITE_LIMIT * cfg.samples:
        raise NonFiniteSamples(
            f"{n_bad} of {cfg.samples} evaluations non-finite"
        )
    if n_bad:
        out = out[finite]
    med = float(np.median(out))
    return McResult(
        mean=float(np.mean(out)),
        sd=float(np.std(out, ddof=1)),
        median=med,
        mad=float(MAD_SCALE * np.median(np.abs(out - med))),
        quantile_values=tuple(float(q) for q in np.quantile(out, cfg.quantiles)),
        n_nonfinite=n_bad,
    )


def compare_tsm_mcm(expr: ExprAst, env: dict, cfg: McConfig = McConfig()) -> TsmMcmReport:
    """Run both propagation methods and report the relative spread gap."""
    tsm = eval_uncertain(expr, {k: _coerce(v) for k, v in env.items()})
    mcm = mc_propagate(expr, env, cfg)
    gap = abs(tsm.error - mcm.sd) / mcm.sd if mcm.sd else float("inf")
    return TsmMcmReport(
        tsm_value=tsm.value,
        tsm_sd=tsm.error,
        mcm=mcm,
        relative_gap=gap,
    )
