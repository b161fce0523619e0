"""Pure-numpy versions of the inner loops in ``_kernels.pyx``.

Both modules expose the same functions with the same floating-point
operation order, so either backend yields identical paths.
"""
import numpy as np


def fs_epsilon_trace(gram, c0, epsilon, iterations):
    """Run ``iterations`` epsilon-stagewise updates.

    ``gram`` is the predictor Gram matrix and ``c0`` the starting correlations
    with the response. Returns the coefficient vector after every update as
    the rows of an ``(iterations, m)`` array.
    """
    gram = np.ascontiguousarray(gram, dtype=float)
    c = np.array(c0, dtype=float, copy=True)
    m = c.shape[0]
    beta = np.zeros(m)
    trace = np.empty((iterations, m))
    for it in range(iterations):
        j = int(np.argmax(np.abs(c)))
        cj = c[j]
        if cj > 0.0:
            step = epsilon
        elif cj < 0.0:
            step = -epsilon
        else:
            step = 0.0
        beta[j] += step
        c -= step * gram[j]
        trace[it] = beta
    return trace


def entry_step(c, a, big_c, big_a, candidates):
    """Smallest step at which a candidate column ties the active correlation.

    Returns ``(gamma, j)``; ``gamma`` is ``inf`` and ``j`` is -1 when no
    candidate ties before the correlations reach zero.
    """
    best = np.inf
    best_j = -1
    idx = np.flatnonzero(candidates)
    if idx.size == 0:
        return best, best_j
    cj = c[idx]
    aj = a[idx]
    with np.errstate(divide="ignore", invalid="ignore"):
        den1 = big_a - aj
        den2 = big_a + aj
        g1 = np.where(den1 > 0.0, np.maximum(big_c - cj, 0.0) / den1, np.inf)
        g2 = np.where(den2 > 0.0, np.maximum(big_c + cj, 0.0) / den2, np.inf)
    g = np.minimum(g1, g2)
    k = int(np.argmin(g))
    if g[k] < best:
        best = float(g[k])
        best_j = int(idx[k])
    return best, best_j


def drop_step(beta, direction, active):
    """Smallest positive step at which an active nonzero coefficient hits zero.

    Returns ``(gamma, j)`` with ``gamma = inf`` when no coefficient crosses.
    """
    best = np.inf
    best_j = -1
    for j in active:
        b = beta[j]
        d = direction[j]
        if b == 0.0 or d == 0.0:
            continue
        g = -b / d
        if 0.0 < g < best:
            best = g
            best_j = int(j)
    return best, best_j
