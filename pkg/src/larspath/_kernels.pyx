# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, INFINITY

cnp.import_array()


def fs_epsilon_trace(gram, c0, double epsilon, Py_ssize_t iterations):
    cdef double[:, ::1] g = np.ascontiguousarray(gram, dtype=np.float64)
    cdef double[::1] c = np.array(c0, dtype=np.float64, copy=True)
    cdef Py_ssize_t m = c.shape[0]
    cdef double[::1] beta = np.zeros(m)
    out = np.empty((iterations, m))
    cdef double[:, ::1] trace = out
    cdef Py_ssize_t it, k, j
    cdef double best, v, cj, step
    for it in range(iterations):
        j = 0
        best = -1.0
        for k in range(m):
            v = fabs(c[k])
            if v > best:
                best = v
                j = k
        cj = c[j]
        if cj > 0.0:
            step = epsilon
        elif cj < 0.0:
            step = -epsilon
        else:
            step = 0.0
        beta[j] += step
        for k in range(m):
            c[k] -= step * g[j, k]
        for k in range(m):
            trace[it, k] = beta[k]
    return out


def entry_step(c, a, double big_c, double big_a, candidates):
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.uint8_t[::1] mask = np.ascontiguousarray(candidates, dtype=np.uint8)
    cdef Py_ssize_t m = cv.shape[0]
    cdef Py_ssize_t k, best_j = -1
    cdef double best = INFINITY, g1, g2, g, den, num
    for k in range(m):
        if not mask[k]:
            continue
        g1 = INFINITY
        g2 = INFINITY
        den = big_a - av[k]
        if den > 0.0:
            num = big_c - cv[k]
            g1 = (num if num > 0.0 else 0.0) / den
        den = big_a + av[k]
        if den > 0.0:
            num = big_c + cv[k]
            g2 = (num if num > 0.0 else 0.0) / den
        g = g1 if g1 < g2 else g2
        if g < best:
            best = g
            best_j = k
    return best, best_j


def drop_step(beta, direction, active):
    cdef double[::1] b = np.ascontiguousarray(beta, dtype=np.float64)
    cdef double[::1] d = np.ascontiguousarray(direction, dtype=np.float64)
    cdef double best = INFINITY, g
    cdef Py_ssize_t best_j = -1, j
    for j in active:
        if b[j] == 0.0 or d[j] == 0.0:
            continue
        g = -b[j] / d[j]
        if 0.0 < g < best:
            best = g
            best_j = j
    return best, best_j
