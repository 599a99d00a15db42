"""Linear pricing baselines: single-beta regression, the capitalization-
weighted factor model, and the volatility-ratio (yard-stick) model.

All three predict a stock's daily open-close return from the return of the
rest of the index; they differ in how the coupling coefficient is formed.
The daily risk-free rate is fixed at zero throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from stickslip.exceptions import DegenerateInputError, DegenerateWindowError

COUPLING_MODES = ("vol-ratio", "beta")


@dataclass(frozen=True)
class CapmFit:
    """Single-factor regression fit. The daily risk-free rate is 0 by
    construction and not configurable."""

    beta: float
    risk_free: float = 0.0


@dataclass(frozen=True)
class CapWeightParams:
    """Fitted capitalization-weighted model: per-stock slope ``gamma`` scaled
    by the saturating capitalization weight ``alpha``."""

    cap: np.ndarray        # per-stock capitalization
    cap_rest: np.ndarray   # sum of the other stocks' capitalizations
    delta: float           # capitalization impact scale, > 0
    gamma: np.ndarray      # per-stock slopes
    alpha: np.ndarray      # 1 - exp(-cap / (cap_rest * delta))
    sse: float = field(default=float("nan"), compare=False)

    def predict(self, complements: np.ndarray) -> np.ndarray:
        """Predictions for a (n_stocks, T) matrix of complement returns."""
        return (self.alpha * self.gamma)[:, None] * complements


@dataclass(frozen=True)
class CouplingSeries:
    """Causal, time-varying coupling between a stock and its complement.

    ``values[t]`` is defined (finite) for t >= window and NaN before;
    simulation and scoring start at index ``window``. In "vol-ratio" mode
    the value is the ratio of trailing sample standard deviations, in
    "beta" mode the trailing covariance/variance slope. Windows end at and
    include t.
    """

    mode: str
    window: int
    values: np.ndarray

    @property
    def start(self) -> int:
        return self.window

    @classmethod
    def constant(cls, value: float, length: int, window: int = 0) -> "CouplingSeries":
        """Constant coupling, defined from index ``window`` on. Used for
        synthetic data and unit tests."""
        if value <= 0 or not np.isfinite(value):
            raise ValueError("constant coupling must be positive and finite")
        values = np.full(length, float(value))
        values[:window] = np.nan
        return cls(mode="constant", window=window, values=values)

    @classmethod
    def from_schedule(cls, values: np.ndarray, window: int = 0) -> "CouplingSeries":
        values = np.asarray(values, dtype=float).copy()
        values[:window] = np.nan
        return cls(mode="schedule", window=window, values=values)


@dataclass(frozen=True)
class ForecastMoments:
    """Sample moments of a forecast error series. Kurtosis is raw (the
    standardized fourth central moment), not excess."""

    mean: float
    stdev: float
    skewness: float
    kurtosis: float


def _as_series(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d return series")
    return arr


def capm_beta(r_i, r_m) -> CapmFit:
    """Covariance/variance slope of stock returns on market returns."""
    r_i, r_m = _as_series(r_i), _as_series(r_m)
    if len(r_i) != len(r_m):
        raise ValueError("series lengths differ")
    if len(r_m) < 2:
        raise DegenerateInputError("need at least 2 observations")
    xm = r_m - r_m.mean()
    var = float(xm @ xm)
    if var == 0.0:
        raise DegenerateInputError("market return has zero variance")
    beta = float(xm @ (r_i - r_i.mean())) / var
    return CapmFit(beta=beta)


def capm_predict(fit: CapmFit, r_m) -> np.ndarray:
    return fit.beta * _as_series(r_m)


def cap_alpha(cap_i, cap_rest, delta):
    """Saturating capitalization weight 1 - exp(-cap_i / (cap_rest * delta)).

    Accepts scalars or arrays; all inputs must be strictly positive.
    """
    cap_i = np.asarray(cap_i, dtype=float)
    cap_rest = np.asarray(cap_rest, dtype=float)
    delta = np.asarray(delta, dtype=float)
    for name, v in (("cap_i", cap_i), ("cap_rest", cap_rest), ("delta", delta)):
        if np.any(v <= 0) or not np.all(np.isfinite(v)):
            raise ValueError(f"{name} must be strictly positive and finite")
    out = 1.0 - np.exp(-cap_i / (cap_rest * delta))
    return float(out) if out.ndim == 0 else out


def coupling_series(r_i, r_m, mode: str = "vol-ratio", window: int = 20) -> CouplingSeries:
    """Trailing-window coupling of a stock to its complement.

    The window at t covers observations t-window+1 .. t (length ``window``,
    nothing after t); values exist for t >= window, the first ``window``
    indices are the warm-up and stay NaN. Standard deviations are sample
    deviations (divisor n-1).
    """
    r_i, r_m = _as_series(r_i), _as_series(r_m)
    if mode not in COUPLING_MODES:
        raise ValueError(f"unknown coupling mode {mode!r}")
    if window < 2:
        raise ValueError("window must be >= 2")
    T = len(r_m)
    if len(r_i) != T:
        raise ValueError("series lengths differ")
    if T <= window:
        raise DegenerateInputError(f"series length {T} must exceed window {window}")

    # row j of the view is the window ending at t = j + window - 1; rows
    # from j=1 give the windows for t = window .. T-1
    wins_i = sliding_window_view(r_i, window)[1:]
    wins_m = sliding_window_view(r_m, window)[1:]
    values = np.full(T, np.nan)
    if mode == "vol-ratio":
        s_i = wins_i.std(axis=1, ddof=1)
        s_m = wins_m.std(axis=1, ddof=1)
        for name, s in (("stock", s_i), ("complement", s_m)):
            zero = np.flatnonzero(s == 0.0)
            if zero.size:
                raise DegenerateWindowError(
                    f"constant {name} window at t={window + zero[0]}")
        values[window:] = s_i / s_m
    else:
        cm = wins_m - wins_m.mean(axis=1, keepdims=True)
        ci = wins_i - wins_i.mean(axis=1, keepdims=True)
        var = np.einsum("ij,ij->i", cm, cm)
        zero = np.flatnonzero(var == 0.0)
        if zero.size:
            raise DegenerateWindowError(
                f"constant complement window at t={window + zero[0]}")
        values[window:] = np.einsum("ij,ij->i", cm, ci) / var
    return CouplingSeries(mode=mode, window=window, values=values)


def yardstick_predict(g: CouplingSeries, r_m) -> np.ndarray:
    """Coupling times complement return; NaN over the warm-up where the
    coupling is undefined."""
    r_m = _as_series(r_m)
    if len(r_m) != len(g.values):
        raise ValueError("coupling and return series lengths differ")
    return g.values * r_m


def fit_cap_model(returns, complements: np.ndarray, caps, delta_grid,
                  in_sample: tuple[int, int],
                  smoothing_window: int = 250) -> CapWeightParams:
    """Grid-fit of the capitalization-weighted model.

    For each delta on the grid the per-stock slope gamma is the
    covariance/variance slope of the stock return on alpha * complement
    return, estimated over the trailing ``min(smoothing_window, available)``
    observations of the in-sample range; the delta with smallest total
    in-sample squared error wins (first on the grid in case of ties).

    Parameters
    ----------
    returns : ReturnPanel
        Open-close returns for all stocks.
    complements : ndarray, shape (n_stocks, T)
        Complement return series aligned with ``returns`` (row i excludes
        stock i).
    caps : dict[str, float]
        Capitalization per ticker; every panel ticker must be present.
    delta_grid : array-like of positive floats
    in_sample : (a, b)
        Half-open index range of the in-sample window.
    """
    delta_grid = np.asarray(delta_grid, dtype=float)
    if delta_grid.size == 0:
        raise ValueError("delta grid is empty")
    if np.any(delta_grid <= 0):
        raise ValueError("delta grid values must be positive")
    a, b = in_sample
    if b - a < 2:
        raise DegenerateInputError("in-sample window shorter than 2 observations")
    missing = [t for t in returns.tickers if t not in caps]
    if missing:
        raise KeyError(f"capitalization missing for {', '.join(missing)}")
    cap = np.array([caps[t] for t in returns.tickers], dtype=float)
    cap_rest = cap.sum() - cap

    fit_lo = b - min(smoothing_window, b - a)
    y_fit = returns.r[:, fit_lo:b]
    x_fit = complements[:, fit_lo:b]
    y_all = returns.r[:, a:b]
    x_all = complements[:, a:b]

    best = None
    for delta in delta_grid:
        alpha = cap_alpha(cap, cap_rest, float(delta))
        gamma = np.empty(len(cap))
        for i in range(len(cap)):
            gamma[i] = capm_beta(y_fit[i], alpha[i] * x_fit[i]).beta
        resid = y_all - (alpha * gamma)[:, None] * x_all
        sse = float(np.sum(resid * resid))
        if best is None or sse < best[0]:
            best = (sse, float(delta), gamma, alpha)
    sse, delta, gamma, alpha = best
    return CapWeightParams(cap=cap, cap_rest=cap_rest, delta=delta,
                           gamma=gamma, alpha=alpha, sse=sse)


def default_delta_grid(lo: float = 1e-5, hi: float = 1.0, points: int = 200) -> np.ndarray:
    """Log-spaced capitalization-scale grid."""
    return np.geomspace(lo, hi, points)


def forecast_moments(pred, actual) -> ForecastMoments:
    """Sample moments of the error series (pred - actual).

    Skewness and kurtosis are the standardized third and fourth central
    moments (kurtosis raw, so a normal error gives 3). On a zero-variance
    error they are NaN while mean and stdev are still reported.
    """
    pred, actual = _as_series(pred), _as_series(actual)
    if len(pred) != len(actual):
        raise ValueError("series lengths differ")
    if len(pred) < 4:
        raise DegenerateInputError("need at least 4 observations")
    err = pred - actual
    mean = float(err.mean())
    centered = err - mean
    m2 = float(np.mean(centered ** 2))
    stdev = float(centered.std(ddof=1))
    if m2 == 0.0:
        return ForecastMoments(mean=mean, stdev=stdev,
                               skewness=float("nan"), kurtosis=float("nan"))
    skew = float(np.mean(centered ** 3)) / m2 ** 1.5
    kurt = float(np.mean(centered ** 4)) / m2 ** 2
    return ForecastMoments(mean=mean, stdev=stdev, skewness=skew, kurtosis=kurt)
