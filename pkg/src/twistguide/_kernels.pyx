# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: banded LDL^T inertia of K - sigma M."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def band_inertia(const double[:, :] kb, const double[:, :] mb, double sigma, double pivot_tol):
    """Count negative pivots of ``K - sigma M`` (lower band storage, no pivoting).

    Returns ``(count, min_abs_pivot, stopped_at)``; ``stopped_at`` is -1 on
    success or the column whose pivot fell below ``pivot_tol``.
    """
    cdef Py_ssize_t bw = kb.shape[0] - 1
    cdef Py_ssize_t n = kb.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] work_arr = np.empty((n, bw + 1), dtype=np.float64)
    cdef double[:, ::1] w = work_arr
    cdef Py_ssize_t j, p, q, top
    cdef double d, lp, lq, minpiv = 1e308
    cdef long neg = 0
    for j in range(n):
        for p in range(bw + 1):
            w[j, p] = kb[p, j] - sigma * mb[p, j]
    for j in range(n):
        d = w[j, 0]
        if fabs(d) < minpiv:
            minpiv = fabs(d)
        if fabs(d) <= pivot_tol:
            return neg, minpiv, j
        if d < 0.0:
            neg += 1
        top = bw
        if j + top > n - 1:
            top = n - 1 - j
        for p in range(1, top + 1):
            w[j, p] = w[j, p] / d
        for p in range(1, top + 1):
            lp = w[j, p] * d
            for q in range(p, top + 1):
                w[j + p, q - p] -= w[j, q] * lp
    return neg, minpiv, -1
