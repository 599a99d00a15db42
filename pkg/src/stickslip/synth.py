"""Synthetic markets with known ground truth.

Generates an i.i.d. Gaussian market return series and a stock driven by
the threshold recursion with a planted threshold (zero for pure
yard-stick data), plus optional Gaussian observation noise on the stock
return. Everything is a pure function of the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from stickslip.dynamics import simulate_stickslip
from stickslip.linear import CouplingSeries
from stickslip.panel import PricePanel


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic market/stock pair."""

    horizon: int
    market_vol: float = 0.01
    coupling: float | np.ndarray = 1.0
    rc_true: float = 0.0
    obs_noise: float = 0.0
    window: int = 20           # estimation window the data must outlast
    seed: int = 0

    def __post_init__(self):
        if self.horizon <= self.window:
            raise ValueError(f"horizon {self.horizon} must exceed window {self.window}")
        if not self.market_vol > 0:
            raise ValueError("market_vol must be positive")
        if self.rc_true < 0:
            raise ValueError("rc_true must be >= 0")
        if self.obs_noise < 0:
            raise ValueError("obs_noise must be >= 0")

    def coupling_series(self) -> CouplingSeries:
        """The exact coupling used for generation, defined from t=0."""
        if np.isscalar(self.coupling):
            return CouplingSeries.constant(float(self.coupling), self.horizon)
        sched = np.asarray(self.coupling, dtype=float)
        if len(sched) != self.horizon:
            raise ValueError("coupling schedule length must equal horizon")
        return CouplingSeries.from_schedule(sched)


def _rng(spec: SynthSpec, stream: int) -> np.random.Generator:
    # stream 0: market returns, stream 1: observation noise
    return np.random.default_rng(np.random.SeedSequence((spec.seed, stream)))


def generate_market(spec: SynthSpec) -> np.ndarray:
    """i.i.d. zero-mean Gaussian market returns, deterministic in the seed."""
    return _rng(spec, 0).normal(0.0, spec.market_vol, spec.horizon)


def plant_sticky_stock(r_m: np.ndarray, spec: SynthSpec) -> np.ndarray:
    """Stock returns generated by the threshold recursion with rc_true,
    plus additive Gaussian observation noise on the returns."""
    trace = simulate_stickslip(r_m, spec.coupling_series(), spec.rc_true)
    r_i = trace.prediction.copy()
    if spec.obs_noise > 0:
        r_i += _rng(spec, 1).normal(0.0, spec.obs_noise, spec.horizon)
    return r_i


def synth_pair(spec: SynthSpec) -> tuple[np.ndarray, np.ndarray]:
    """(stock, market) return pair for one spec."""
    r_m = generate_market(spec)
    return plant_sticky_stock(r_m, spec), r_m


def synth_panel(spec: SynthSpec, start_date: str = "2000-01-03") -> PricePanel:
    """Two-stock price panel whose derived return series reproduce the
    synthetic pair: the complement of SYN is exactly the market series.

    Every open is 100; closes are 100 * exp(return), so the open-close
    log returns recover the generated series (up to float round-trip).
    """
    r_i, r_m = synth_pair(spec)
    dates = np.datetime64(start_date) + np.arange(spec.horizon)
    open_ = np.full((2, spec.horizon), 100.0)
    close = 100.0 * np.exp(np.vstack([r_m, r_i]))
    return PricePanel(dates=dates.astype("datetime64[D]"),
                      tickers=("MKT", "SYN"), open=open_, close=close)
