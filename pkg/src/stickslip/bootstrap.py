"""Reshuffle bootstrap for stickiness significance.

Reshuffling permutes the observations after the calibration head with one
uniformly random permutation, destroying temporal ordering while keeping
the multiset of values (and hence any overall trend). Re-running the
threshold scan on many reshuffles yields per-threshold error percentiles
that calibrate whether an observed error minimum is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stickslip.estimator import ErrorCurve, scan_rc
from stickslip.exceptions import DegenerateInputError, DegenerateWindowError
from stickslip.linear import coupling_series

RESHUFFLE_MODES = ("joint", "independent")


@dataclass(frozen=True)
class NoiseEnvelope:
    """Per-threshold 10th/90th percentile errors across reshuffled samples.

    Reproducible: the whole envelope is a pure function of (inputs, grid,
    n_samples, seed).
    """

    grid: np.ndarray
    p10: np.ndarray
    p90: np.ndarray
    n_samples: int
    seed: tuple[int, ...]
    attempts: int = 0


def _seed_tuple(seed) -> tuple[int, ...]:
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(s) for s in seed)


def sample_rng(seed, index: int) -> np.random.Generator:
    """Generator for one bootstrap sample: the per-sample seed is the
    user seed extended with the sample index, fed to SeedSequence."""
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(_seed_tuple(seed) + (index,))))


def _permute_tail(series: np.ndarray, calib: int, perm: np.ndarray) -> np.ndarray:
    out = series.copy()
    out[calib:] = series[calib:][perm]
    return out


def reshuffle_pair(r_i, r_m, calib: int, rng, mode: str = "joint"):
    """Permute both series past the first ``calib`` observations.

    In "joint" mode one permutation is applied to both series so the pairs
    (r_i[t], r_m[t]) travel together, preserving their contemporaneous
    relation; "independent" draws a second permutation for r_m.
    ``rng`` may be a numpy Generator or an integer seed.
    """
    if mode not in RESHUFFLE_MODES:
        raise ValueError(f"unknown reshuffle mode {mode!r}")
    r_i = np.asarray(r_i, dtype=float)
    r_m = np.asarray(r_m, dtype=float)
    if len(r_i) != len(r_m):
        raise ValueError("series lengths differ")
    if calib < 0 or calib >= len(r_i):
        raise DegenerateInputError(
            f"calibration head {calib} must be shorter than the series ({len(r_i)})")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    perm = rng.permutation(len(r_i) - calib)
    out_i = _permute_tail(r_i, calib, perm)
    if mode == "independent":
        perm = rng.permutation(len(r_i) - calib)
    out_m = _permute_tail(r_m, calib, perm)
    return out_i, out_m


def noise_envelope(r_i, r_m, *, mode: str = "vol-ratio", window: int = 20,
                   grid, n_samples: int = 100, seed=0,
                   reshuffle: str = "joint", calib: int | None = None) -> NoiseEnvelope:
    """Build the reshuffled-data error envelope.

    Each sample reshuffles the pair, recomputes the coupling series on the
    reshuffled data and rescans the threshold grid. A sample whose
    reshuffle produces a constant window (zero spread) is discarded and
    replaced using the next derived seed, with a hard cap of
    10 * n_samples attempts. Percentiles interpolate linearly between
    closest order statistics.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 bootstrap samples")
    if calib is None:
        calib = window
    curves = []
    attempt = 0
    cap = 10 * n_samples
    while len(curves) < n_samples:
        if attempt >= cap:
            raise DegenerateInputError(
                f"could not draw {n_samples} valid reshuffles in {cap} attempts")
        rng = sample_rng(seed, attempt)
        attempt += 1
        ri_s, rm_s = reshuffle_pair(r_i, r_m, calib, rng, mode=reshuffle)
        try:
            g_s = coupling_series(ri_s, rm_s, mode=mode, window=window)
        except DegenerateWindowError:
            continue
        curves.append(scan_rc(ri_s, rm_s, g_s, grid).error)
    stack = np.vstack(curves)
    p10, p90 = np.percentile(stack, [10.0, 90.0], axis=0)
    return NoiseEnvelope(grid=np.asarray(grid, dtype=float), p10=p10, p90=p90,
                         n_samples=n_samples, seed=_seed_tuple(seed),
                         attempts=attempt)


def envelope_from_curves(grid, curves: list[ErrorCurve] | list[np.ndarray],
                         n_samples: int, seed=0) -> NoiseEnvelope:
    """Assemble an envelope from pre-computed error curves (testing aid)."""
    rows = [c.error if isinstance(c, ErrorCurve) else np.asarray(c, dtype=float)
            for c in curves]
    stack = np.vstack(rows)
    p10, p90 = np.percentile(stack, [10.0, 90.0], axis=0)
    return NoiseEnvelope(grid=np.asarray(grid, dtype=float), p10=p10, p90=p90,
                         n_samples=n_samples, seed=_seed_tuple(seed))
