"""Per-stock estimation pipeline and report assembly.

One stock's estimate chains coupling estimation, the threshold-grid error
scan, the reshuffle-bootstrap envelope and the two-condition stickiness
decision. The report table mirrors the per-stock dumps: every number in
it can be re-derived from the curve files emitted alongside.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from stickslip import __version__
from stickslip._kernels import BACKEND
from stickslip.bootstrap import NoiseEnvelope, noise_envelope
from stickslip.dynamics import StickSlipTrace, simulate_stickslip
from stickslip.estimator import ErrorCurve, StickinessDecision, classify_stickiness, rc_grid, scan_rc
from stickslip.linear import coupling_series
from stickslip.panel import PricePanel, complement_return, open_close_returns, write_table

REPORT_COLUMNS = ("stock", "error_rc0", "noise_p10", "min_error", "rc")


@dataclass(frozen=True)
class EstimateConfig:
    """Resolved knobs of the estimation pipeline (defaults follow the
    report format: 20-day coupling window, 501-point grid, 100 samples)."""

    window: int = 20
    coupling: str = "vol-ratio"
    grid_max: float = 0.05
    grid_step: float = 1e-4
    samples: int = 100
    seed: int = 0
    reshuffle: str = "joint"
    complement: str = "open-close"
    jobs: int = 1


@dataclass(frozen=True)
class StockResult:
    ticker: str
    curve: ErrorCurve
    envelope: NoiseEnvelope
    decision: StickinessDecision
    g_values: np.ndarray
    trace: StickSlipTrace       # trace at the minimizing threshold


@dataclass(frozen=True)
class ReportRow:
    """One line of the stickiness table; rc is None for non-sticky stocks."""

    ticker: str
    e_zero: float
    noise_level: float
    e_min: float
    rc: float | None


def estimate_stock(ticker: str, r_i: np.ndarray, r_m: np.ndarray,
                   cfg: EstimateConfig, stock_index: int = 0) -> StockResult:
    """Full single-stock pipeline. The bootstrap seed is (cfg.seed,
    stock_index) so per-stock envelopes are independent yet reproducible."""
    g = coupling_series(r_i, r_m, mode=cfg.coupling, window=cfg.window)
    grid = rc_grid(cfg.grid_max, cfg.grid_step)
    curve = scan_rc(r_i, r_m, g, grid)
    env = noise_envelope(r_i, r_m, mode=cfg.coupling, window=cfg.window,
                         grid=grid, n_samples=cfg.samples,
                         seed=(cfg.seed, stock_index), reshuffle=cfg.reshuffle)
    decision = classify_stickiness(curve, env)
    trace = simulate_stickslip(r_m, g, decision.rc_min)
    return StockResult(ticker=ticker, curve=curve, envelope=env,
                       decision=decision, g_values=g.values, trace=trace)


def _estimate_job(args):
    ticker, r_i, r_m, cfg, idx = args
    return estimate_stock(ticker, r_i, r_m, cfg, stock_index=idx)


def estimate_panel(panel: PricePanel, cfg: EstimateConfig):
    """Run the pipeline for every stock in the panel.

    Returns (results, failures): results in ticker order, failures as
    (ticker, message) pairs; one stock's failure does not abort the rest.
    """
    returns = open_close_returns(panel)
    jobs = []
    for idx, ticker in enumerate(panel.tickers):
        r_m = complement_return(panel, ticker, convention=cfg.complement).values
        jobs.append((ticker, returns.r[idx], r_m, cfg, idx))

    results, failures = [], []
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = []
            for job in jobs:
                outcomes.append(pool.submit(_estimate_job, job))
            for job, fut in zip(jobs, outcomes):
                try:
                    results.append(fut.result())
                except Exception as exc:
                    failures.append((job[0], str(exc)))
    else:
        for job in jobs:
            try:
                results.append(_estimate_job(job))
            except Exception as exc:
                failures.append((job[0], str(exc)))
    return results, failures


def report_row(result: StockResult) -> ReportRow:
    d = result.decision
    return ReportRow(ticker=result.ticker, e_zero=d.e_zero,
                     noise_level=d.noise10_at_min, e_min=d.e_min,
                     rc=d.rc_min if d.sticky else None)


def render_report(rows: list[ReportRow]) -> str:
    """Report table: errors to 4 decimal places, thresholds to 5, '-' for
    stocks without a defined stickiness."""
    lines = ["\t".join(REPORT_COLUMNS)]
    for row in rows:
        rc = f"{row.rc:.5f}" if row.rc is not None else "-"
        lines.append(f"{row.ticker}\t{row.e_zero:.4f}\t{row.noise_level:.4f}"
                     f"\t{row.e_min:.4f}\t{rc}")
    return "\n".join(lines) + "\n"


def write_report(rows: list[ReportRow], path: str | Path) -> None:
    Path(path).write_text(render_report(rows), encoding="utf-8", newline="\n")


def write_curve_tsv(result: StockResult, path: str | Path) -> None:
    write_table(path, {
        "rc": result.curve.grid,
        "error": result.curve.error,
        "noise_p10": result.envelope.p10,
        "noise_p90": result.envelope.p90,
    })


def write_trace_tsv(result: StockResult, dates: np.ndarray, r_m: np.ndarray,
                    path: str | Path) -> None:
    write_table(path, {
        "date": dates.astype("datetime64[D]"),
        "r_m": r_m,
        "g": result.g_values,
        "stress": result.trace.stress,
        "slipped": result.trace.slipped,
        "prediction": result.trace.prediction,
    })


def write_manifest(path: str | Path, cfg: EstimateConfig, extra: dict) -> None:
    """Echo the fully resolved run configuration next to the outputs."""
    manifest = {
        "package": "stickslip",
        "version": __version__,
        "kernel_backend": BACKEND,
        "config": asdict(cfg),
        "per_stock_bootstrap_seed": "(seed, stock_index) extended with the "
                                    "sample index via numpy SeedSequence",
    }
    manifest.update(extra)
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")
