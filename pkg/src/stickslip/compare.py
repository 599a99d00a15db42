"""In-sample / out-of-sample comparison of the linear pricing models.

Fits each requested model on the in-sample range, predicts the
out-of-sample range and reports the moments of the forecast errors, per
stock and pooled. All models are scored on the same out-of-sample days
(those past the coupling warm-up) so their error moments are comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stickslip.exceptions import DegenerateInputError
from stickslip.linear import (
    capm_beta,
    coupling_series,
    default_delta_grid,
    fit_cap_model,
    forecast_moments,
)
from stickslip.panel import PricePanel, complement_return, index_return, open_close_returns

MODELS = ("capm", "cap", "yardstick", "zero")


@dataclass(frozen=True)
class MomentRow:
    model: str
    stock: str                 # ticker or "ALL" for the pooled row
    mean: float
    stdev: float
    skewness: float
    kurtosis: float


@dataclass(frozen=True)
class CompareResult:
    rows: list[MomentRow]
    scatter: dict[str, np.ndarray]   # columns: model, date, stock, actual, predicted
    delta: float | None              # fitted capitalization scale, if cap ran


def _check_ranges(in_range: tuple[int, int], out_range: tuple[int, int]) -> None:
    (a1, b1), (a2, b2) = in_range, out_range
    if b1 <= a1 or b2 <= a2:
        raise DegenerateInputError("empty in-sample or out-of-sample range")
    if max(a1, a2) < min(b1, b2):
        raise ValueError("in-sample and out-of-sample ranges overlap")


def run_compare(panel: PricePanel, caps: dict[str, float] | None,
                in_range: tuple[int, int], out_range: tuple[int, int],
                window: int = 20, models: tuple[str, ...] = ("capm", "cap", "yardstick"),
                delta_grid=None, smoothing_window: int = 250,
                convention: str = "open-close") -> CompareResult:
    for m in models:
        if m not in MODELS:
            raise ValueError(f"unknown model {m!r}")
    _check_ranges(in_range, out_range)
    returns = open_close_returns(panel)
    complements = np.vstack([
        complement_return(panel, t, convention=convention).values
        for t in panel.tickers])
    r_index = index_return(panel)
    a, b = in_range
    oa, ob = out_range
    oa = max(oa, window)       # score only where the coupling is defined
    if oa >= ob:
        raise DegenerateInputError("out-of-sample range lies inside the warm-up")

    n = panel.n_stocks
    predictions: dict[str, np.ndarray] = {}
    delta = None
    if "capm" in models:
        betas = np.array([capm_beta(returns.r[i, a:b], r_index[a:b]).beta
                          for i in range(n)])
        predictions["capm"] = betas[:, None] * r_index[oa:ob]
    if "cap" in models:
        if caps is None:
            raise ValueError("the capitalization model needs a --caps file")
        if delta_grid is None:
            delta_grid = default_delta_grid()
        params = fit_cap_model(returns, complements, caps, delta_grid, (a, b),
                               smoothing_window=smoothing_window)
        predictions["cap"] = params.predict(complements[:, oa:ob])
        delta = params.delta
    if "yardstick" in models:
        preds = np.empty((n, ob - oa))
        for i in range(n):
            g = coupling_series(returns.r[i], complements[i], mode="vol-ratio",
                                window=window)
            preds[i] = g.values[oa:ob] * complements[i, oa:ob]
        predictions["yardstick"] = preds
    if "zero" in models:
        predictions["zero"] = np.zeros((n, ob - oa))

    actual = returns.r[:, oa:ob]
    rows: list[MomentRow] = []
    scatter_cols = {k: [] for k in ("model", "date", "stock", "actual", "predicted")}
    out_dates = panel.dates[oa:ob]
    for model in models:
        pred = predictions[model]
        for i, ticker in enumerate(panel.tickers):
            m = forecast_moments(pred[i], actual[i])
            rows.append(MomentRow(model, ticker, m.mean, m.stdev, m.skewness, m.kurtosis))
            scatter_cols["model"].extend([model] * (ob - oa))
            scatter_cols["date"].extend(out_dates)
            scatter_cols["stock"].extend([ticker] * (ob - oa))
            scatter_cols["actual"].extend(actual[i])
            scatter_cols["predicted"].extend(pred[i])
        pooled = forecast_moments(pred.ravel(), actual.ravel())
        rows.append(MomentRow(model, "ALL", pooled.mean, pooled.stdev,
                              pooled.skewness, pooled.kurtosis))

    scatter = {k: np.asarray(v) for k, v in scatter_cols.items()}
    return CompareResult(rows=rows, scatter=scatter, delta=delta)
