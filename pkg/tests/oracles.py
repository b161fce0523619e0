"""Independent reference computations used by the tests."""
import itertools

import numpy as np

from larspath import arc_length, fs_epsilon, interpolate


def constrained_ls(x, y, t):
    """Exact minimizer of ||y - x b||^2 subject to ||b||_1 <= t.

    Enumerates every sign pattern; for each one solves the least-squares
    problem on the support with the sign-weighted sum fixed at ``t`` (or free
    when the unconstrained fit already satisfies the budget) and keeps the
    best sign-consistent candidate.
    """
    n, m = x.shape
    best_rss, best_b = float(y @ y), np.zeros(m)
    for pattern in itertools.product((-1, 0, 1), repeat=m):
        s = np.array(pattern, dtype=float)
        support = np.flatnonzero(s)
        if support.size == 0:
            continue
        xs, ss = x[:, support], s[support]
        g = xs.T @ xs
        candidates = []
        b_free = np.linalg.solve(g, xs.T @ y)
        if ss @ b_free <= t:
            candidates.append(b_free)
        k = support.size
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = 2 * g
        kkt[:k, k] = ss
        kkt[k, :k] = ss
        rhs = np.concatenate([2 * xs.T @ y, [t]])
        candidates.append(np.linalg.solve(kkt, rhs)[:k])
        for b in candidates:
            if np.any(ss * b < -1e-12) or np.abs(b).sum() > t + 1e-9:
                continue
            full = np.zeros(m)
            full[support] = b
            r = y - x @ full
            rss = float(r @ r)
            if rss < best_rss - 1e-15:
                best_rss, best_b = rss, full
    return best_b


def soft_threshold(b, lam):
    return np.sign(b) * np.maximum(np.abs(b) - lam, 0.0)


def lasso_kkt_violation(x, y, beta, lam):
    """Largest violation of the Lasso stationarity conditions at penalty ``lam``."""
    c = x.T @ (y - x @ beta)
    worst = 0.0
    for j in range(x.shape[1]):
        if beta[j] != 0.0:
            worst = max(worst, abs(c[j] - lam * np.sign(beta[j])))
        else:
            worst = max(worst, abs(c[j]) - lam)
    return worst


def stagewise_gap(design, path, eps):
    """Sup-norm gap between epsilon-stagewise and the exact path at equal arc length."""
    total, _ = arc_length(path)
    steps = int(total / eps)
    trace = fs_epsilon(design, eps, steps)
    return max(np.abs(trace[i] - interpolate(path, (i + 1) * eps)).max()
               for i in range(steps))
