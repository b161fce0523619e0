"""Centering and scaling of regression designs."""
from __future__ import annotations

from dataclasses import dataclass
import hashlib

import numpy as np

from .errors import ConstantColumnError, DimensionError, NotStandardizedError

__all__ = ["StandardizedDesign", "standardize", "correlations", "destandardize"]


@dataclass(frozen=True, eq=False)
class StandardizedDesign:
    """Predictor matrix and response ready for path fitting.

    In standard mode every column of ``x`` has mean zero and unit L2 norm and
    ``y`` is centered; ``column_means``, ``column_scales`` and ``y_mean`` map
    coefficients back to the original units. In raw mode the inputs are kept
    as given.
    """

    x: np.ndarray
    y: np.ndarray
    column_means: np.ndarray
    column_scales: np.ndarray
    y_mean: float
    raw_mode: bool = False

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def m(self) -> int:
        return self.x.shape[1]

    @property
    def max_steps(self) -> int:
        """Largest number of LAR steps the design supports."""
        if self.raw_mode:
            return min(self.m, self.n)
        return min(self.m, self.n - 1)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.x).tobytes())
        h.update(np.ascontiguousarray(self.y).tobytes())
        h.update(b"raw" if self.raw_mode else b"std")
        return h.hexdigest()[:16]

    def with_response(self, y) -> "StandardizedDesign":
        """Same predictors, a new response (centered unless raw mode)."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise DimensionError(f"response has shape {y.shape}, expected ({self.n},)")
        if self.raw_mode:
            return StandardizedDesign(self.x, y.copy(), self.column_means,
                                      self.column_scales, 0.0, True)
        ybar = float(y.mean())
        return StandardizedDesign(self.x, y - ybar, self.column_means,
                                  self.column_scales, ybar, False)

    def raw_data(self):
        """Reconstruct the data the design was built from."""
        if self.raw_mode:
            return self.x.copy(), self.y.copy()
        return (self.x * self.column_scales + self.column_means,
                self.y + self.y_mean)


def standardize(raw_x, raw_y, mode: str = "standard") -> StandardizedDesign:
    """Center and scale ``raw_x`` to unit-norm columns and center ``raw_y``.

    Raises ConstantColumnError naming the first zero-variance column and
    DimensionError when shapes disagree.
    """
    x = np.array(raw_x, dtype=float, copy=True)
    y = np.array(raw_y, dtype=float, copy=True)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or y.ndim != 1:
        raise DimensionError("expected a 2-d predictor matrix and a 1-d response")
    n, m = x.shape
    if y.shape[0] != n:
        raise DimensionError(f"x has {n} rows but y has {y.shape[0]} entries")
    if n < 2 or m < 1:
        raise DimensionError("need at least 2 rows and 1 column")
    if mode == "raw":
        return StandardizedDesign(x, y, np.zeros(m), np.ones(m), 0.0, raw_mode=True)
    if mode != "standard":
        raise ValueError(f"unknown standardization mode {mode!r}")

    means = x.mean(axis=0)
    xc = x - means
    scales = np.sqrt(np.einsum("ij,ij->j", xc, xc))
    # zero variance up to rounding of the mean subtraction
    size = np.maximum(np.abs(x).max(axis=0), np.finfo(float).tiny)
    for j in range(m):
        if scales[j] <= 1e-13 * size[j] * np.sqrt(n):
            raise ConstantColumnError(j)
    xs = xc / scales
    ybar = float(y.mean())
    return StandardizedDesign(xs, y - ybar, means, scales, ybar, raw_mode=False)


def correlations(design: StandardizedDesign, residual) -> np.ndarray:
    """Inner products of every column with ``residual``."""
    r = np.asarray(residual, dtype=float)
    if r.shape != (design.n,):
        raise DimensionError(f"residual has shape {r.shape}, expected ({design.n},)")
    return design.x.T @ r


def destandardize(design: StandardizedDesign, beta):
    """Map standardized coefficients to ``(intercept, coefficients)`` in raw units."""
    if design.raw_mode:
        raise NotStandardizedError()
    beta = np.asarray(beta, dtype=float)
    coef = beta / design.column_scales
    intercept = design.y_mean - float(coef @ design.column_means)
    return intercept, coef
