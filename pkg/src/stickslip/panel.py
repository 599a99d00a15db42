"""Daily open/close price panels and the return series derived from them.

Input formats
-------------
Per-stock CSV (one file per ticker, named ``<TICKER>.csv``)::

    date,open,close
    2015-03-23,127.12,127.23

Wide CSV (one file for the whole panel)::

    date,AAPL:open,AAPL:close,BA:open,BA:close
    2015-03-23,127.12,127.23,150.01,151.02

Dates are ISO-8601. Panels must be rectangular: every ticker has an open
and a close price on every date. Missing data is rejected, never imputed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from stickslip.exceptions import AlignmentError, DegenerateInputError, ValidationError

COMPLEMENT_CONVENTIONS = ("open-close", "close-close")


@dataclass(frozen=True)
class PricePanel:
    """Rectangular panel of daily open/close prices for N stocks over T dates."""

    dates: np.ndarray           # datetime64[D], shape (T,)
    tickers: tuple[str, ...]
    open: np.ndarray            # float64, shape (N, T)
    close: np.ndarray           # float64, shape (N, T)

    def __post_init__(self):
        n, t = len(self.tickers), len(self.dates)
        if self.open.shape != (n, t) or self.close.shape != (n, t):
            raise ValidationError("open/close arrays must have shape (n_stocks, n_dates)")
        if len(set(self.tickers)) != n:
            raise ValidationError("duplicate tickers")
        if t > 1 and not np.all(np.diff(self.dates) > np.timedelta64(0, "D")):
            raise ValidationError("dates must be strictly increasing")
        for name, arr in (("open", self.open), ("close", self.close)):
            if not np.all(np.isfinite(arr)):
                i, j = np.argwhere(~np.isfinite(arr))[0]
                raise AlignmentError(
                    f"stock {self.tickers[i]} missing {name} price on {self.dates[j]}")
            if np.any(arr <= 0):
                i, j = np.argwhere(arr <= 0)[0]
                raise ValidationError(
                    f"non-positive {name} price for {self.tickers[i]} on {self.dates[j]}")

    @property
    def n_stocks(self) -> int:
        return len(self.tickers)

    @property
    def n_dates(self) -> int:
        return len(self.dates)

    def ticker_index(self, ticker: str) -> int:
        try:
            return self.tickers.index(ticker)
        except ValueError:
            raise KeyError(f"ticker {ticker!r} not in panel") from None


@dataclass(frozen=True)
class ReturnPanel:
    """Open-close log returns, same stock ordering as the source panel."""

    dates: np.ndarray
    tickers: tuple[str, ...]
    r: np.ndarray               # float64, shape (N, T)

    def row(self, ticker: str) -> np.ndarray:
        return self.r[self.tickers.index(ticker)]


@dataclass(frozen=True)
class ComplementSeries:
    """Equal-weight return of the N-1 stocks other than ``excluded``.

    Computed from average prices, not by averaging returns. Under the
    default "open-close" convention value t is
    ln(mean_j close_j(t) / mean_j open_j(t)) over j != excluded; under
    "close-close" it is ln(mean_j close_j(t) / mean_j close_j(t-1)) with
    a NaN leading value.
    """

    excluded: str
    dates: np.ndarray
    values: np.ndarray          # float64, shape (T,)
    convention: str = "open-close"


def _parse_dates(raw) -> np.ndarray:
    try:
        return pd.to_datetime(raw, format="ISO8601").to_numpy().astype("datetime64[D]")
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"unparseable date column: {exc}") from None


def _panel_from_per_stock(frames: dict[str, pd.DataFrame]) -> PricePanel:
    all_dates = sorted(set().union(*(set(f["date"]) for f in frames.values())))
    for ticker, frame in frames.items():
        have = set(frame["date"])
        for d in all_dates:
            if d not in have:
                raise AlignmentError(f"stock {ticker} missing date {d}")
    tickers = tuple(sorted(frames))
    dates = _parse_dates(pd.Series(all_dates))
    open_ = np.empty((len(tickers), len(dates)))
    close = np.empty_like(open_)
    for i, ticker in enumerate(tickers):
        frame = frames[ticker].sort_values("date")
        open_[i] = frame["open"].to_numpy(dtype=float)
        close[i] = frame["close"].to_numpy(dtype=float)
    return PricePanel(dates=dates, tickers=tickers, open=open_, close=close)


def _load_stock_csv(path: Path) -> pd.DataFrame:
    frame = pd.read_csv(path, dtype={"date": str})
    if list(frame.columns) != ["date", "open", "close"]:
        raise ValidationError(f"{path}: header must be 'date,open,close'")
    if frame["date"].duplicated().any():
        dup = frame["date"][frame["date"].duplicated()].iloc[0]
        raise ValidationError(f"{path}: duplicate date {dup}")
    return frame


def _load_wide_csv(path: Path) -> PricePanel:
    frame = pd.read_csv(path, dtype={"date": str})
    if frame.columns[0] != "date":
        raise ValidationError(f"{path}: first column must be 'date'")
    cols: dict[str, dict[str, str]] = {}
    for col in frame.columns[1:]:
        ticker, sep, field = col.rpartition(":")
        if not sep or field not in ("open", "close"):
            raise ValidationError(f"{path}: column {col!r} is not '<ticker>:open|close'")
        cols.setdefault(ticker, {})[field] = col
    tickers = tuple(sorted(cols))
    for ticker in tickers:
        if set(cols[ticker]) != {"open", "close"}:
            raise ValidationError(f"{path}: ticker {ticker} needs both :open and :close")
    if frame["date"].duplicated().any():
        raise ValidationError(f"{path}: duplicate dates")
    dates = _parse_dates(frame["date"])
    order = np.argsort(dates)
    dates = dates[order]
    n, t = len(tickers), len(dates)
    open_ = np.empty((n, t))
    close = np.empty((n, t))
    for i, ticker in enumerate(tickers):
        sub = frame.iloc[order]
        for field, target in (("open", open_), ("close", close)):
            vals = pd.to_numeric(sub[cols[ticker][field]], errors="coerce").to_numpy(dtype=float)
            bad = np.flatnonzero(~np.isfinite(vals))
            if bad.size:
                raise AlignmentError(
                    f"stock {ticker} missing {field} price on {dates[bad[0]]}")
            target[i] = vals
    return PricePanel(dates=dates, tickers=tickers, open=open_, close=close)


def load_price_panel(source: str | Path) -> PricePanel:
    """Load and validate a price panel from a wide CSV file or a directory
    of per-stock CSVs."""
    source = Path(source)
    if not source.exists():
        raise FileNotFoundError(f"no such file or directory: {source}")
    if source.is_dir():
        files = sorted(source.glob("*.csv"))
        if not files:
            raise ValidationError(f"{source}: no *.csv files found")
        frames = {p.stem: _load_stock_csv(p) for p in files}
        return _panel_from_per_stock(frames)
    return _load_wide_csv(source)


def load_caps(path: str | Path) -> dict[str, float]:
    """Read a `ticker,capitalization` CSV into a dict; caps must be positive."""
    frame = pd.read_csv(path, dtype={"ticker": str})
    if list(frame.columns) != ["ticker", "capitalization"]:
        raise ValidationError(f"{path}: header must be 'ticker,capitalization'")
    caps = {}
    for ticker, cap in zip(frame["ticker"], frame["capitalization"]):
        cap = float(cap)
        if not np.isfinite(cap) or cap <= 0:
            raise ValidationError(f"{path}: non-positive capitalization for {ticker}")
        caps[ticker] = cap
    return caps


def open_close_returns(panel: PricePanel) -> ReturnPanel:
    """ln(close/open) for every stock and date."""
    r = np.log(panel.close / panel.open)
    if not np.all(np.isfinite(r)):
        raise ValidationError("non-finite return")
    return ReturnPanel(dates=panel.dates, tickers=panel.tickers, r=r)


def complement_return(panel: PricePanel, excluded: str,
                      convention: str = "open-close") -> ComplementSeries:
    """Return series of the equal-weight basket of all stocks but ``excluded``."""
    if panel.n_stocks < 2:
        raise DegenerateInputError("complement requires at least 2 stocks")
    if convention not in COMPLEMENT_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    idx = panel.ticker_index(excluded)
    keep = np.ones(panel.n_stocks, dtype=bool)
    keep[idx] = False
    mean_open = panel.open[keep].mean(axis=0)
    mean_close = panel.close[keep].mean(axis=0)
    if convention == "open-close":
        values = np.log(mean_close / mean_open)
    else:
        values = np.full(panel.n_dates, np.nan)
        values[1:] = np.log(mean_close[1:] / mean_close[:-1])
    return ComplementSeries(excluded=excluded, dates=panel.dates,
                            values=values, convention=convention)


def index_return(panel: PricePanel) -> np.ndarray:
    """Open-close return of the full equal-weight index (all N stocks)."""
    return np.log(panel.close.mean(axis=0) / panel.open.mean(axis=0))


def resolve_date_range(dates: np.ndarray, start: str | None,
                       end: str | None) -> tuple[int, int]:
    """Map an inclusive ISO date range onto half-open index bounds [a, b)."""
    a = 0 if start is None else int(np.searchsorted(dates, np.datetime64(start), "left"))
    b = len(dates) if end is None else int(np.searchsorted(dates, np.datetime64(end), "right"))
    if a >= b:
        raise DegenerateInputError(f"empty date range {start}..{end}")
    return a, b


def format_value(x) -> str:
    """Numeric formatting used by every TSV dump: 10 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.10g}"


def write_table(path: str | Path, columns: dict[str, np.ndarray],
                sep: str = "\t") -> None:
    """Write aligned columns as UTF-8, LF-terminated TSV with 10-significant-
    digit numeric formatting. A 'date' column is printed as ISO dates."""
    names = list(columns)
    rows = len(next(iter(columns.values())))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sep.join(names) + "\n")
        for i in range(rows):
            cells = []
            for name in names:
                v = columns[name][i]
                cells.append(str(v) if name == "date" else format_value(v))
            fh.write(sep.join(cells) + "\n")


def write_returns_tsv(returns: ReturnPanel, path: str | Path) -> None:
    cols: dict[str, np.ndarray] = {"date": returns.dates.astype("datetime64[D]")}
    for i, ticker in enumerate(returns.tickers):
        cols[ticker] = returns.r[i]
    write_table(path, cols)


def write_panel_csv(panel: PricePanel, path: str | Path) -> None:
    """Write a panel in the wide CSV input format (round-trips through
    load_price_panel)."""
    cols: dict[str, np.ndarray] = {"date": panel.dates.astype("datetime64[D]")}
    for i, ticker in enumerate(panel.tickers):
        cols[f"{ticker}:open"] = panel.open[i]
        cols[f"{ticker}:close"] = panel.close[i]
    write_table(path, cols, sep=",")
