"""Pure-numpy stick-slip kernels, used when the compiled core is absent.

``simulate`` is a plain scalar loop; ``scan_errors`` runs the same
recursion vectorised across the threshold grid. Both apply the exact
operation sequence of the compiled kernel so results agree bitwise.
"""

import numpy as np


def simulate(r_m, g, rc, start):
    """Run the threshold recursion once; returns (stress, slipped, prediction)."""
    T = r_m.shape[0]
    stress_arr = np.full(T, np.nan)
    slipped_arr = np.zeros(T, dtype=np.uint8)
    pred_arr = np.full(T, np.nan)

    stress = 0.0
    prev_slip = True
    for t in range(start, T):
        stress = r_m[t] if prev_slip else stress + r_m[t]
        gt = g[t]
        slip = gt * abs(stress) > rc
        stress_arr[t] = stress
        slipped_arr[t] = slip
        pred_arr[t] = gt * stress if slip else 0.0
        prev_slip = slip
    return stress_arr, slipped_arr, pred_arr


def scan_errors(r_i, r_m, g, start, grid):
    """Squared-error totals over t in [start, T) for every threshold at once."""
    K = grid.shape[0]
    err = np.zeros(K)
    stress = np.zeros(K)
    prev_slip = np.ones(K, dtype=bool)
    for t in range(start, len(r_m)):
        stress = np.where(prev_slip, 0.0, stress) + r_m[t]
        gt = g[t]
        slip = gt * np.abs(stress) > grid
        pred = np.where(slip, gt * stress, 0.0)
        d = pred - r_i[t]
        err += d * d
        prev_slip = slip
    return err
