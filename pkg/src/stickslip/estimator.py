"""Threshold estimation: score predictions, scan the threshold grid,
locate the global error minimum and decide stickiness against a noise
envelope."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stickslip._kernels import scan_errors as _scan_errors
from stickslip.exceptions import DegenerateInputError, GridMismatchError
from stickslip.linear import CouplingSeries


@dataclass(frozen=True)
class ErrorCurve:
    """Sum of squared prediction errors per threshold. grid[0] is 0, so
    error[0] is exactly the zero-threshold (yard-stick) baseline error."""

    grid: np.ndarray
    error: np.ndarray
    scored_range: tuple[int, int]     # half-open index range actually summed


@dataclass(frozen=True)
class StickinessDecision:
    """Outcome of the two-condition rule: a stock is sticky iff its error
    minimum beats both the zero-threshold error and the 10th-percentile
    noise error at the minimizing threshold (both strictly)."""

    rc_min: float
    e_min: float
    e_zero: float
    noise10_at_min: float
    sticky: bool


def rc_grid(grid_max: float = 0.05, grid_step: float = 1e-4) -> np.ndarray:
    """Uniform threshold grid from 0 to grid_max inclusive."""
    if grid_max < 0 or grid_step <= 0:
        raise ValueError("grid_max must be >= 0 and grid_step > 0")
    n = int(round(grid_max / grid_step)) + 1 if grid_max > 0 else 1
    return np.linspace(0.0, grid_max, n)


def _check_grid(grid: np.ndarray) -> np.ndarray:
    grid = np.ascontiguousarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-d array")
    if grid[0] != 0.0:
        raise ValueError("grid must start at 0")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    return grid


def model_error(prediction, actual, scored_range: tuple[int, int]) -> float:
    """Sum over the scored range of squared prediction errors."""
    a, b = scored_range
    if not 0 <= a < b <= len(actual):
        raise DegenerateInputError(f"empty or invalid scored range ({a}, {b})")
    p = np.asarray(prediction, dtype=float)[a:b]
    y = np.asarray(actual, dtype=float)[a:b]
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(y))):
        raise ValueError("non-finite values inside the scored range")
    d = p - y
    return float(d @ d)


def scan_rc(r_i, r_m, g: CouplingSeries, grid) -> ErrorCurve:
    """Error curve over a threshold grid; scoring starts after the coupling
    warm-up. Deterministic: identical inputs give identical curves."""
    grid = _check_grid(grid)
    r_i = np.ascontiguousarray(r_i, dtype=float)
    r_m = np.ascontiguousarray(r_m, dtype=float)
    if not len(r_i) == len(r_m) == len(g.values):
        raise ValueError("series lengths differ")
    start = g.start
    if start >= len(r_m):
        raise DegenerateInputError("no observations after the coupling warm-up")
    gv = np.ascontiguousarray(g.values, dtype=float)
    for name, arr in (("stock", r_i), ("complement", r_m), ("coupling", gv)):
        if not np.all(np.isfinite(arr[start:])):
            raise ValueError(f"non-finite {name} values inside the scored range")
    error = _scan_errors(r_i, r_m, gv, start, grid)
    return ErrorCurve(grid=grid, error=error, scored_range=(start, len(r_m)))


def find_rc_min(curve: ErrorCurve) -> tuple[float, float]:
    """Global minimum of the error curve; ties go to the smallest threshold."""
    k = int(np.argmin(curve.error))
    return float(curve.grid[k]), float(curve.error[k])


def classify_stickiness(curve: ErrorCurve, envelope) -> StickinessDecision:
    """Apply the two-condition rule using the envelope's 10th percentile
    evaluated at the minimizing threshold."""
    if not np.array_equal(curve.grid, envelope.grid):
        raise GridMismatchError("error curve and noise envelope grids differ")
    k = int(np.argmin(curve.error))
    rc_min = float(curve.grid[k])
    e_min = float(curve.error[k])
    e_zero = float(curve.error[0])
    noise10 = float(envelope.p10[k])
    sticky = e_min < e_zero and e_min < noise10
    return StickinessDecision(rc_min=rc_min, e_min=e_min, e_zero=e_zero,
                              noise10_at_min=noise10, sticky=sticky)
