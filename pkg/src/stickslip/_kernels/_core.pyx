# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stick-slip recursion kernels.

Arithmetic is kept step-for-step identical to ``_fallback`` so both
backends produce the same floating-point results.
"""

from libc.math cimport fabs, NAN

import numpy as np


def simulate(double[::1] r_m, double[::1] g, double rc, Py_ssize_t start):
    """Run the threshold recursion once; returns (stress, slipped, prediction).

    Entries before ``start`` are NaN (stress, prediction) / 0 (slipped).
    The state at ``start`` is a clean start: zero stress, previous step
    treated as slipped.
    """
    cdef Py_ssize_t T = r_m.shape[0]
    stress_arr = np.full(T, np.nan)
    slipped_arr = np.zeros(T, dtype=np.uint8)
    pred_arr = np.full(T, np.nan)
    cdef double[::1] stress_v = stress_arr
    cdef unsigned char[::1] slipped_v = slipped_arr
    cdef double[::1] pred_v = pred_arr

    cdef Py_ssize_t t
    cdef double stress = 0.0, gt, pred
    cdef bint prev_slip = True, slip

    for t in range(start, T):
        if prev_slip:
            stress = r_m[t]
        else:
            stress = stress + r_m[t]
        gt = g[t]
        slip = gt * fabs(stress) > rc
        pred = gt * stress if slip else 0.0
        stress_v[t] = stress
        slipped_v[t] = slip
        pred_v[t] = pred
        prev_slip = slip
    return stress_arr, slipped_arr, pred_arr


def scan_errors(double[::1] r_i, double[::1] r_m, double[::1] g,
                Py_ssize_t start, double[::1] grid):
    """Sum of squared prediction errors over t in [start, T), one value
    per threshold on ``grid``."""
    cdef Py_ssize_t T = r_m.shape[0]
    cdef Py_ssize_t K = grid.shape[0]
    err_arr = np.zeros(K)
    cdef double[::1] err = err_arr

    cdef Py_ssize_t k, t
    cdef double rc, stress, acc, gt, pred, d
    cdef bint prev_slip, slip

    for k in range(K):
        rc = grid[k]
        stress = 0.0
        prev_slip = True
        acc = 0.0
        for t in range(start, T):
            if prev_slip:
                stress = r_m[t]
            else:
                stress = stress + r_m[t]
            gt = g[t]
            slip = gt * fabs(stress) > rc
            pred = gt * stress if slip else 0.0
            d = pred - r_i[t]
            acc += d * d
            prev_slip = slip
        err[k] = acc
    return err_arr
