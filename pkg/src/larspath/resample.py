"""Pairs bootstrap for statistics of a whole fitting procedure.

Replicate ``r`` draws its rows from ``numpy.random.default_rng([seed, r])``
(PCG64 seeded through SeedSequence), so results do not depend on the order
in which replicates run.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import BootstrapFailureError, LarsError

__all__ = ["BootstrapReport", "bootstrap_se", "cp_prediction_shift", "MAX_FAILURE_RATE"]

MAX_FAILURE_RATE = 0.2

# numerical failures a refit may legitimately hit on a resample
_REPLICATE_ERRORS = (LarsError, np.linalg.LinAlgError, FloatingPointError)


@dataclass(frozen=True, eq=False)
class BootstrapReport:
    b_reps: int
    statistic_values: np.ndarray
    point_estimate: float
    se: float
    seed: int
    n_failed: int = 0


def bootstrap_se(raw_x, raw_y, statistic, b_reps: int = 200, seed: int = 0) -> BootstrapReport:
    """Bootstrap standard error of ``statistic(x, y)`` under row resampling.

    Replicates on which ``statistic`` raises a fitting error are skipped and
    counted; more than 20% failures is an error.
    """
    x = np.asarray(raw_x, dtype=float)
    y = np.asarray(raw_y, dtype=float)
    n = y.shape[0]
    if x.shape[0] != n:
        raise ValueError("x and y disagree on the number of rows")
    if b_reps < 2:
        raise ValueError("need at least 2 bootstrap replicates")
    point = float(statistic(x, y))
    values = []
    failed = 0
    for r in range(b_reps):
        rows = np.random.default_rng([seed, r]).integers(0, n, size=n)
        try:
            values.append(float(statistic(x[rows], y[rows])))
        except _REPLICATE_ERRORS:
            failed += 1
    if failed > MAX_FAILURE_RATE * b_reps:
        raise BootstrapFailureError(f"{failed} of {b_reps} replicates failed")
    values = np.asarray(values)
    se = float(values.std(ddof=1)) if values.size > 1 else 0.0
    if values.size and np.all(values == values[0]):
        se = 0.0
    if not math.isfinite(se):
        raise BootstrapFailureError("non-finite bootstrap standard error")
    return BootstrapReport(b_reps, values, point, se, seed, failed)


def cp_prediction_shift(column: int, sd_shift: float = 1.0, quadratic: bool = True,
                        mult=2.0, method: str = "LAR"):
    """Statistic re-running the whole Cp-selected fit on each data set.

    The returned callable standardizes, fits the path, picks the knot with
    minimal Cp (sigma^2 from the full least-squares fit), and reports how much
    the fitted response rises when ``column`` moves ``sd_shift`` standard
    deviations above its mean with every other covariate at its mean.
    """
    from .design import destandardize, standardize
    from .experiments import expand_point, quadratic_design
    from .select import cp_curve, estimate_sigma2, fit_path

    def statistic(x, y):
        m = x.shape[1]
        if quadratic:
            expanded, mapping, _, _ = quadratic_design(x)
            base = np.zeros(m)
        else:
            mapping = []
            expanded = x
            base = x.mean(axis=0)
        design = standardize(expanded, y)
        path = fit_path(design, method)
        report = cp_curve(path, design, estimate_sigma2(design), mult)
        _, coef = destandardize(design, path.knots[report.selected].beta)
        moved = base.copy()
        if quadratic:
            moved[column] += sd_shift
        else:
            moved[column] += sd_shift * x[:, column].std(ddof=1)
        return float((expand_point(moved, mapping) - expand_point(base, mapping)) @ coef)

    return statistic
