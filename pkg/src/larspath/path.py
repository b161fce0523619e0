"""Piecewise-linear LAR, Lasso and Forward Stagewise coefficient paths.

All three methods share one stepping loop. From the current knot the
coefficients move along the equiangular direction of the active columns
until either an inactive column's absolute correlation with the residual
catches up with the active one, or (Lasso) an active coefficient reaches
zero, or the correlations reach zero at the least-squares fit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
import math

import numpy as np
from scipy.linalg import lapack, solve_triangular

from .design import StandardizedDesign
from .errors import SingularActiveSetError
from .kernels import drop_step, entry_step, fs_epsilon_trace

__all__ = [
    "TIE_RTOL", "PathKnot", "CoefficientPath", "EquiangularFrame",
    "equiangular_frame", "lar_path", "lasso_path", "fs_path", "fs_epsilon",
    "interpolate", "at_lambda", "arc_length", "cumulative_arc_length",
]

TIE_RTOL = 1e-9
PIVOT_RTOL = 1e-12
NNLS_TOL = 1e-12

METHODS = ("LAR", "LASSO", "FS")


@dataclass(frozen=True, eq=False)
class PathKnot:
    """One breakpoint of a coefficient path.

    ``active`` and ``signs`` describe the columns that moved along the segment
    ending at this knot (empty for the starting knot). ``entered`` and
    ``dropped`` describe the change of active set applied at this knot.
    """

    step_index: int
    active: tuple
    signs: tuple
    beta: np.ndarray
    max_abs_corr: float
    gamma: float
    event: str
    entered: tuple = ()
    dropped: tuple = ()


@dataclass(frozen=True, eq=False)
class CoefficientPath:
    method: str
    knots: tuple
    design_fingerprint: str
    exhausted: bool = False
    _cum_arc: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        betas = np.array([k.beta for k in self.knots])
        steps = np.abs(np.diff(betas, axis=0)).sum(axis=1)
        cum = np.concatenate([[0.0], np.cumsum(steps)])
        object.__setattr__(self, "_cum_arc", cum)

    def __len__(self):
        return len(self.knots)

    @property
    def betas(self) -> np.ndarray:
        return np.array([k.beta for k in self.knots])

    @property
    def max_abs_corrs(self) -> np.ndarray:
        return np.array([k.max_abs_corr for k in self.knots])

    @property
    def terminal(self) -> PathKnot:
        return self.knots[-1]


@dataclass(frozen=True, eq=False)
class EquiangularFrame:
    active: tuple
    signs: tuple
    u: np.ndarray
    w: np.ndarray
    a_scalar: float
    inner_products: np.ndarray


def _pivoted_cholesky_solve(gram, rhs, active):
    """Solve ``gram @ z = rhs`` with a rank-revealing Cholesky factorization."""
    k = gram.shape[0]
    tol = PIVOT_RTOL * float(np.max(np.diag(gram)))
    c, piv, rank, info = lapack.dpstrf(gram, tol=tol, lower=0)
    if info < 0 or rank < k:
        raise SingularActiveSetError(active)
    upper = np.triu(c)
    p = piv - 1
    tmp = solve_triangular(upper, rhs[p], trans="T", lower=False, check_finite=False)
    sol = solve_triangular(upper, tmp, lower=False, check_finite=False)
    z = np.empty(k)
    z[p] = sol
    return z


def equiangular_frame(design: StandardizedDesign, active, signs) -> EquiangularFrame:
    """Unit vector making equal angles with every signed active column."""
    active = tuple(int(j) for j in active)
    signs = tuple(int(s) for s in signs)
    if not active:
        raise ValueError("active set must be nonempty")
    if len(signs) != len(active):
        raise ValueError("signs must align with the active set")
    s = np.asarray(signs, dtype=float)
    xa = design.x[:, list(active)] * s
    gram = xa.T @ xa
    z = _pivoted_cholesky_solve(gram, np.ones(len(active)), active)
    total = float(z.sum())
    if not total > 0.0:
        raise SingularActiveSetError(active)
    a_scalar = 1.0 / math.sqrt(total)
    w = a_scalar * z
    u = xa @ w
    return EquiangularFrame(active, signs, u, w, a_scalar, design.x.T @ u)


def _positive_cone_weights(gram):
    """Minimize ``p'Gp/2 - 1'p`` over ``p >= 0`` (Lawson-Hanson active set)."""
    k = gram.shape[0]
    p = np.zeros(k)
    free = np.zeros(k, dtype=bool)
    grad = np.ones(k)
    for _ in range(3 * k + 10):
        if free.all() or np.max(np.where(free, -np.inf, grad)) <= NNLS_TOL:
            break
        free[int(np.argmax(np.where(free, -np.inf, grad)))] = True
        while True:
            idx = np.flatnonzero(free)
            z = np.zeros(k)
            z[idx] = np.linalg.solve(gram[np.ix_(idx, idx)], np.ones(idx.size))
            if np.all(z[idx] > NNLS_TOL):
                p = z
                break
            bad = idx[z[idx] <= NNLS_TOL]
            alpha = np.min(p[bad] / (p[bad] - z[bad]))
            p = p + alpha * (z - p)
            free &= p > NNLS_TOL
            p[~free] = 0.0
        grad = 1.0 - gram @ p
    return p


def _fresh_corr(design, beta):
    return design.x.T @ (design.y - design.x @ beta)


def _sign(v):
    return 1 if v >= 0.0 else -1


def _run(design: StandardizedDesign, method: str, max_knots: int) -> CoefficientPath:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    x = design.x
    m = design.m
    rank_limit = design.max_steps
    beta = np.zeros(m)
    c = _fresh_corr(design, beta)
    big_c = float(np.max(np.abs(c)))
    knots = [PathKnot(0, (), (), beta.copy(), big_c, 0.0, "start")]
    if big_c == 0.0 or max_knots == 0:
        knots[0] = replace(knots[0], event="terminal")
        return CoefficientPath(method, tuple(knots), design.fingerprint(),
                               exhausted=big_c == 0.0)

    active: list[int] = []
    excluded: set[int] = set()
    pending: set[int] = set()
    removed: list[int] = []
    exhausted = False

    while True:
        previous = list(active)
        # admit every column tied with the maximal correlation, lowest index first
        if method == "FS":
            tied = [j for j in range(m)
                    if abs(c[j]) >= big_c * (1.0 - TIE_RTOL) or j in pending]
            candidates = [j for j in active if j in tied] + \
                [j for j in tied if j not in active]
            signs_all = [_sign(c[j]) for j in candidates]
            xa = x[:, candidates] * np.asarray(signs_all, dtype=float)
            weights = _positive_cone_weights(xa.T @ xa)
            active = [j for j, p in zip(candidates, weights) if p > 0.0]
            # tied but held by the cone constraint: may only re-tie with flipped sign
            excluded = {j for j in candidates if j not in active}
        elif len(active) < rank_limit:
            tied = sorted(j for j in range(m)
                          if j not in active and j not in excluded
                          and (abs(c[j]) >= big_c * (1.0 - TIE_RTOL) or j in pending))
            active.extend(tied[: rank_limit - len(active)])
        pending = set()
        entered = tuple(j for j in active if j not in previous)
        left = tuple(sorted(set(removed) | {j for j in previous if j not in active}))
        knots[-1] = replace(knots[-1], entered=entered, dropped=left)
        if not active:
            break

        signs = [_sign(c[j]) for j in active]
        frame = equiangular_frame(design, active, signs)
        direction = np.zeros(m)
        direction[active] = np.asarray(signs, dtype=float) * frame.w
        a = frame.inner_products
        big_a = frame.a_scalar
        gamma_full = big_c / big_a

        gamma_enter, j_enter = math.inf, -1
        if len(active) < rank_limit or method == "FS":
            mask = np.ones(m, dtype=np.uint8)
            mask[active] = 0
            for j in excluded:
                mask[j] = 0
            gamma_enter, j_enter = entry_step(c, a, big_c, big_a, mask)
            # excluded columns can still reach the opposite bound
            for j in excluded:
                if j in active:
                    continue
                sj = _sign(c[j])
                den = big_a + sj * a[j]
                if den > 0.0:
                    g = (big_c + abs(c[j])) / den
                    if g < gamma_enter:
                        gamma_enter, j_enter = g, j

        gamma_drop, j_drop = math.inf, -1
        if method == "LASSO":
            gamma_drop, j_drop = drop_step(beta, direction, np.asarray(active, dtype=np.intp))

        removed = []
        if gamma_drop < gamma_full and gamma_drop <= gamma_enter * (1.0 + TIE_RTOL):
            gamma, kind = gamma_drop, "variable_dropped"
        elif gamma_enter < gamma_full * (1.0 - TIE_RTOL):
            gamma, kind = gamma_enter, "variable_entered"
        else:
            gamma, kind = gamma_full, "terminal"

        beta = beta + gamma * direction
        if kind == "variable_dropped":
            start = beta - gamma * direction
            for j in active:
                if start[j] != 0.0 and direction[j] != 0.0:
                    g = -start[j] / direction[j]
                    if 0.0 < g <= gamma_drop * (1.0 + TIE_RTOL):
                        removed.append(j)
            removed.append(j_drop)
            removed = sorted(set(removed))
            beta[removed] = 0.0
        elif kind == "variable_entered":
            pending = {j_enter}

        if kind == "terminal":
            c = _fresh_corr(design, beta)
            big_c = float(np.max(np.abs(c)))
        else:
            c = _fresh_corr(design, beta)
            big_c = float(np.max(np.abs(c[active])))
        knots.append(PathKnot(len(knots), tuple(active), tuple(signs), beta.copy(),
                              big_c, float(gamma), kind,
                              entered=(j_enter,) if kind == "variable_entered" else (),
                              dropped=tuple(removed)))
        if kind == "terminal":
            exhausted = True
            break
        if len(knots) - 1 >= max_knots:
            break
        if removed:
            active = [j for j in active if j not in removed]
            excluded = set(removed)
        elif method != "FS":
            excluded = set()

    return CoefficientPath(method, tuple(knots), design.fingerprint(), exhausted=exhausted)


def lar_path(design: StandardizedDesign, max_steps: int | None = None) -> CoefficientPath:
    """Least angle regression path with at most ``max_steps`` steps.

    Knot ``k`` carries exactly ``k`` active columns. When ``max_steps`` equals
    the rank limit (``min(m, n - 1)`` for centered designs) the last step runs
    to the least-squares fit.
    """
    limit = design.max_steps
    if max_steps is None:
        max_steps = limit
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    return _run(design, "LAR", min(max_steps, limit))


def lasso_path(design: StandardizedDesign, max_knots: int | None = None) -> CoefficientPath:
    """Lasso path: LAR steps truncated where a coefficient would change sign."""
    if max_knots is None:
        max_knots = 20 * design.m + 50
    return _run(design, "LASSO", max_knots)


def fs_path(design: StandardizedDesign, max_knots: int | None = None) -> CoefficientPath:
    """Forward Stagewise path.

    Each segment moves only the tied columns that keep a non-negative weight
    in the cone of signed tied columns, so coordinates change monotonically
    between knots and often sit on flat plateaus.
    """
    if max_knots is None:
        max_knots = 20 * design.m + 50
    return _run(design, "FS", max_knots)


def fs_epsilon(design: StandardizedDesign, epsilon: float, iterations: int) -> list:
    """Classic epsilon-stagewise: nudge the most correlated coefficient by ``epsilon``."""
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if iterations <= 0:
        return []
    gram = design.x.T @ design.x
    c0 = design.x.T @ design.y
    trace = fs_epsilon_trace(gram, c0, float(epsilon), int(iterations))
    return list(trace)


def cumulative_arc_length(path: CoefficientPath) -> np.ndarray:
    """L1 arc length from the origin to each knot."""
    return path._cum_arc.copy()


def arc_length(path: CoefficientPath):
    """Total L1 arc length and the total variation of each coordinate."""
    betas = path.betas
    per = np.abs(np.diff(betas, axis=0)).sum(axis=0) if len(betas) > 1 \
        else np.zeros(betas.shape[1])
    return float(path._cum_arc[-1]), per


def interpolate(path: CoefficientPath, t: float) -> np.ndarray:
    """Coefficients at cumulative L1 arc length ``t`` along the path."""
    if t < 0:
        raise ValueError("arc length must be non-negative")
    cum = path._cum_arc
    knots = path.knots
    if t >= cum[-1]:
        return knots[-1].beta.copy()
    k = int(np.searchsorted(cum, t, side="right")) - 1
    # skip zero-length segments
    while cum[k + 1] == cum[k]:
        k += 1
    frac = (t - cum[k]) / (cum[k + 1] - cum[k])
    return knots[k].beta + frac * (knots[k + 1].beta - knots[k].beta)


def at_lambda(path: CoefficientPath, lam: float) -> np.ndarray:
    """Coefficients where the maximal absolute correlation equals ``lam``.

    The correlation bound falls linearly along each segment, so the
    coefficients are linear in it between knots.
    """
    corr = path.max_abs_corrs
    knots = path.knots
    if lam >= corr[0]:
        return knots[0].beta.copy()
    if lam <= corr[-1]:
        return knots[-1].beta.copy()
    k = int(np.flatnonzero(corr > lam)[-1])
    frac = (corr[k] - lam) / (corr[k] - corr[k + 1])
    return knots[k].beta + frac * (knots[k + 1].beta - knots[k].beta)
