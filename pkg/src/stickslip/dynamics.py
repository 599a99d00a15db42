"""Threshold (stick-slip) dynamics of a stock coupled to its complement.

The complement return accumulates into a stress variable. While the
coupling-scaled absolute stress stays at or below the threshold the stock
ignores it (prediction 0); once it exceeds the threshold the full stress
is released into the predicted return and the accumulator resets. With a
zero threshold every step releases, which reduces the model to the
yard-stick prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stickslip._kernels import simulate as _simulate
from stickslip.exceptions import DegenerateInputError
from stickslip.linear import CouplingSeries


@dataclass(frozen=True)
class StickSlipTrace:
    """One run of the threshold recursion.

    Per step t >= start: stress is the complement return summed since the
    step after the last slip; ``slipped[t]`` is True iff
    g[t] * |stress[t]| > rc (strict, ties stick); the prediction is
    g[t] * stress[t] on slip steps and 0 otherwise. Entries before
    ``start`` are NaN / False.
    """

    rc: float
    start: int
    stress: np.ndarray
    slipped: np.ndarray        # bool
    prediction: np.ndarray


def simulate_stickslip(r_m, g: CouplingSeries, rc: float) -> StickSlipTrace:
    """Run the stress/release recursion over t in [g.start, T).

    The run begins with zero stress and the previous step treated as
    slipped, so the first stress value is just the first complement
    return. Step order: accumulate (or reset) stress using the previous
    step's slip flag, test the threshold, emit the prediction.
    """
    if rc < 0:
        raise ValueError("threshold must be >= 0")
    r_m = np.ascontiguousarray(r_m, dtype=float)
    if r_m.ndim != 1 or len(r_m) != len(g.values):
        raise ValueError("return series and coupling series lengths differ")
    start = g.start
    if start >= len(r_m):
        raise DegenerateInputError("no observations after the coupling warm-up")
    gv = np.ascontiguousarray(g.values, dtype=float)
    if not np.all(np.isfinite(gv[start:])) or not np.all(np.isfinite(r_m[start:])):
        raise ValueError("non-finite inputs inside the simulated range")
    stress, slipped, prediction = _simulate(r_m, gv, float(rc), start)
    return StickSlipTrace(rc=float(rc), start=start, stress=stress,
                          slipped=slipped.astype(bool), prediction=prediction)


def oscillation_stats(trace: StickSlipTrace) -> dict:
    """Slip counts and stress-oscillation diagnostics for one trace."""
    slips = np.flatnonzero(trace.slipped)
    intervals = np.diff(slips)
    return {
        "slip_count": int(slips.size),
        "mean_interslip": float(intervals.mean()) if intervals.size else float("nan"),
        "max_abs_stress": float(np.max(np.abs(trace.stress[trace.start:]))),
    }
