"""Stopping rules over a computed path: Cp, cross-validation and Monte-Carlo df."""
from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .design import StandardizedDesign, destandardize, standardize
from .errors import ConstantColumnError, SigmaUnestimableError
from .path import CoefficientPath, arc_length, fs_path, interpolate, lar_path, lasso_path

__all__ = [
    "CpRow", "CpReport", "CvReport", "estimate_sigma2", "cp_curve", "mult_presets",
    "resolve_mult", "threshold_alpha", "normal_cdf", "kfold_cv", "df_monte_carlo",
    "path_df", "fit_path",
]

PRESET_NAMES = ("two", "four", "bic", "lm")


@dataclass(frozen=True)
class CpRow:
    step_index: int
    rss: float
    df: float
    mult: float
    cp: float


@dataclass(frozen=True)
class CpReport:
    mult: object
    sigma2: float
    n: int
    rows: tuple
    selected: int

    @property
    def cp(self) -> np.ndarray:
        return np.array([r.cp for r in self.rows])


@dataclass(frozen=True, eq=False)
class CvReport:
    folds: int
    grid: tuple
    mean_error: np.ndarray
    se_error: np.ndarray
    selected_fraction: float
    seed: int
    fold_errors: np.ndarray
    method: str = "LAR"


def fit_path(design: StandardizedDesign, method: str, max_steps=None) -> CoefficientPath:
    method = method.upper()
    if method == "LAR":
        return lar_path(design, max_steps)
    if method == "LASSO":
        return lasso_path(design, max_steps)
    if method == "FS":
        return fs_path(design, max_steps)
    raise ValueError(f"unknown method {method!r}")


def estimate_sigma2(design: StandardizedDesign) -> float:
    """Residual variance of the full least-squares fit.

    Returns 0.0 (with a warning) when the response lies in the column span;
    ``cp_curve`` refuses that value.
    """
    n, m = design.x.shape
    dof = n - m - (0 if design.raw_mode else 1)
    if dof < 1:
        raise SigmaUnestimableError(
            f"n={n}, m={m} leaves {dof} residual degrees of freedom; supply sigma2")
    coef = np.linalg.lstsq(design.x, design.y, rcond=None)[0]
    resid = design.y - design.x @ coef
    rss = float(resid @ resid)
    if rss <= 1e-24 * max(float(design.y @ design.y), np.finfo(float).tiny):
        warnings.warn("response lies in the column span; sigma2 estimate is 0",
                      RuntimeWarning, stacklevel=2)
        return 0.0
    return rss / dof


def path_df(path: CoefficientPath) -> np.ndarray:
    """Degrees of freedom per knot: step count for LAR, nonzero count otherwise."""
    if path.method == "LAR":
        return np.array([float(k.step_index) for k in path.knots])
    return np.array([float(np.count_nonzero(k.beta)) for k in path.knots])


def mult_presets(n: int, k: int = 1) -> dict:
    """Named df multipliers: 2, 4, BIC ``log n`` and the ``log(n/k)`` rule."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= k < n:
        raise ValueError(f"log(n/k) needs 1 <= k < n, got k={k}, n={n}")
    return {"two": 2.0, "four": 4.0, "bic": math.log(n),
            "loubes_massart": math.log(n / k)}


def resolve_mult(mult, n: int, dfs) -> np.ndarray:
    """Per-knot multipliers from a number, a preset name, or a sequence."""
    dfs = np.asarray(dfs, dtype=float)
    if isinstance(mult, str):
        name = mult.lower()
        if name in ("lm", "loubes_massart"):
            return np.array([math.log(n / max(int(round(k)), 1)) for k in dfs])
        if name not in ("two", "four", "bic"):
            raise ValueError(f"unknown mult preset {mult!r}")
        return np.full(dfs.shape, mult_presets(n)[name])
    arr = np.asarray(mult, dtype=float)
    if arr.ndim == 0:
        return np.full(dfs.shape, float(arr))
    if arr.shape != dfs.shape:
        raise ValueError("per-knot mult sequence must match the number of knots")
    return arr


def cp_curve(path: CoefficientPath, design: StandardizedDesign, sigma2: float,
             mult=2.0) -> CpReport:
    """Cp = RSS/sigma2 - n + mult*df at every knot, with the minimizing knot."""
    if not sigma2 > 0.0:
        raise ValueError("sigma2 must be positive")
    n = design.n
    dfs = path_df(path)
    mults = resolve_mult(mult, n, dfs)
    if np.any(mults < 0):
        raise ValueError("mult must be non-negative")
    rows = []
    for knot, df, mk in zip(path.knots, dfs, mults):
        r = design.y - design.x @ knot.beta
        rss = float(r @ r)
        cp = rss / sigma2 - n + mk * df
        rows.append(CpRow(knot.step_index, rss, float(df), float(mk), cp))
    cps = np.array([r.cp for r in rows])
    selected = rows[int(np.argmin(cps))].step_index
    label = mult if isinstance(mult, str) else (float(mult) if np.ndim(mult) == 0
                                                  else tuple(float(v) for v in mults))
    return CpReport(label, float(sigma2), n, tuple(rows), selected)


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def threshold_alpha(mult: float) -> float:
    """Two-sided normal tail beyond ``sqrt(mult)``: the test size implied by ``mult``."""
    if not mult > 0:
        raise ValueError("mult must be positive")
    # 2 * (1 - Phi(sqrt(mult))) without cancellation
    return math.erfc(math.sqrt(mult) / math.sqrt(2.0))


def _fold_ids(rng, n, k):
    ids = np.empty(n, dtype=int)
    ids[rng.permutation(n)] = np.arange(n) % k
    return ids


def _predict(design, beta, x_new):
    if design.raw_mode:
        return x_new @ beta
    intercept, coef = destandardize(design, beta)
    return intercept + x_new @ coef


def kfold_cv(design: StandardizedDesign, method: str = "LAR", K: int = 10,
             grid=None, seed: int = 0) -> CvReport:
    """K-fold prediction error along arc-length fractions of each fold's path."""
    n = design.n
    if K < 2 or n < 2 * K and K != n:
        raise ValueError(f"need K >= 2 and n >= 2K (n={n}, K={K})")
    if grid is None:
        grid = np.linspace(0.0, 1.0, 101)
    grid = np.asarray(grid, dtype=float)
    if np.any(grid < 0) or np.any(grid > 1):
        raise ValueError("grid fractions must lie in [0, 1]")
    raw_x, raw_y = design.raw_data()
    mode = "raw" if design.raw_mode else "standard"
    rng = np.random.default_rng(seed)

    for attempt in range(2):
        ids = _fold_ids(rng, n, K)
        try:
            errors = np.empty((K, grid.size))
            for f in range(K):
                test = ids == f
                train_design = standardize(raw_x[~test], raw_y[~test], mode)
                path = fit_path(train_design, method)
                total = arc_length(path)[0]
                for g, frac in enumerate(grid):
                    beta = interpolate(path, frac * total)
                    resid = raw_y[test] - _predict(train_design, beta, raw_x[test])
                    errors[f, g] = float(np.mean(resid ** 2))
            break
        except ConstantColumnError:
            if attempt == 1:
                raise
    mean = errors.mean(axis=0)
    se = errors.std(axis=0, ddof=1) / math.sqrt(K)
    sel = float(grid[int(np.argmin(mean))])
    return CvReport(K, tuple(float(g) for g in grid), mean, se, sel, seed, errors,
                    method.upper())


def df_monte_carlo(design: StandardizedDesign, mu_true, sigma: float, k: int,
                   reps: int = 1000, seed: int = 0):
    """Monte-Carlo estimate of sum_i cov(muhat_i, y_i) / sigma^2 for k-step LAR.

    The fit excludes the intercept, so the estimate targets the k degrees of
    freedom spent on the predictors. Returns ``(df_hat, mc_se)``.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    if reps < 2:
        raise ValueError("need at least 2 replicates")
    mu_true = np.asarray(mu_true, dtype=float)
    n = design.n
    ys = np.empty((reps, n))
    fits = np.empty((reps, n))
    for r in range(reps):
        rng = np.random.default_rng([seed, r])
        y = mu_true + sigma * rng.standard_normal(n)
        ys[r] = y
        if k == 0:
            fits[r] = 0.0
            continue
        path = lar_path(design.with_response(y), max_steps=k)
        fits[r] = design.x @ path.terminal.beta
    dy = ys - ys.mean(axis=0)
    dm = fits - fits.mean(axis=0)
    contrib = (dy * dm).sum(axis=1) / sigma ** 2 * reps / (reps - 1)
    df_hat = float(contrib.mean())
    mc_se = float(contrib.std(ddof=1) / math.sqrt(reps))
    return df_hat, mc_se
