"""
Price and risk-free rate ingestion, and excess-return construction.

Excess returns are in daily percentage points:

    y_j = 100 ln(x_j / x_{j-1}) - r*_j

where ``r*_j`` is the per-day rate implied by the annualised quote in force
on date ``j`` (last observation carried forward).
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = [
    "DataError",
    "DAY_COUNTS",
    "PriceSeries",
    "RiskFreeSeries",
    "ExcessReturnSeries",
    "load_series",
    "load_excess_returns",
    "compute_excess_returns",
    "save_excess_returns",
    "bundled_dataset_path",
]

# per-day rate = annualised percentage / denominator; None means already per day
DAY_COUNTS: dict[str, float | None] = {"act360": 360.0, "act365": 365.0, "none": None}


class DataError(ValueError):
    """Invalid or malformed input data."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.flags.writeable = False
    return arr


def _check_dates(dates: np.ndarray) -> None:
    if dates.size > 1:
        bad = np.nonzero(np.diff(dates) <= np.timedelta64(0, "D"))[0]
        if bad.size:
            i = int(bad[0]) + 1
            raise DataError(f"dates are not strictly increasing at position {i} ({dates[i]})")


def _normalise_day_count(day_count: str) -> str:
    key = str(day_count).lower().replace("/", "").replace("_", "")
    if key not in DAY_COUNTS:
        raise DataError(f"unsupported day-count convention {day_count!r}")
    return key


@dataclass(frozen=True)
class PriceSeries:
    dates: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        dates = np.asarray(self.dates, dtype="datetime64[D]")
        values = np.asarray(self.values, dtype=float)
        if dates.shape != values.shape or dates.ndim != 1:
            raise DataError("dates and values must be 1-d and of equal length")
        if values.size < 2:
            raise DataError("a price series needs at least two observations")
        bad = np.nonzero(~(np.isfinite(values) & (values > 0)))[0]
        if bad.size:
            raise DataError(f"non-positive price {values[bad[0]]} at position {bad[0]}")
        _check_dates(dates)
        object.__setattr__(self, "dates", _frozen(dates))
        object.__setattr__(self, "values", _frozen(values))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class RiskFreeSeries:
    """Annualised short rates in percentage points."""

    dates: np.ndarray
    annualized_rates: np.ndarray
    day_count: str = "act365"

    def __post_init__(self) -> None:
        dates = np.asarray(self.dates, dtype="datetime64[D]")
        rates = np.asarray(self.annualized_rates, dtype=float)
        if dates.shape != rates.shape or dates.ndim != 1:
            raise DataError("dates and rates must be 1-d and of equal length")
        if not np.all(np.isfinite(rates)):
            raise DataError("risk-free rates must be finite")
        _check_dates(dates)
        object.__setattr__(self, "dates", _frozen(dates))
        object.__setattr__(self, "annualized_rates", _frozen(rates))
        object.__setattr__(self, "day_count", _normalise_day_count(self.day_count))

    def __len__(self) -> int:
        return self.annualized_rates.size

    def daily_rates(self, convention: str | None = None) -> np.ndarray:
        denom = DAY_COUNTS[_normalise_day_count(convention or self.day_count)]
        if denom is None:
            return np.array(self.annualized_rates)
        return self.annualized_rates / denom


@dataclass(frozen=True)
class ExcessReturnSeries:
    """Excess returns ``y_j`` in daily percentage points."""

    dates: np.ndarray
    values: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        dates = np.asarray(self.dates, dtype="datetime64[D]")
        values = np.asarray(self.values, dtype=float)
        if dates.shape != values.shape or dates.ndim != 1:
            raise DataError("dates and values must be 1-d and of equal length")
        if values.size < 1:
            raise DataError("an excess-return series needs at least one observation")
        if not np.all(np.isfinite(values)):
            raise DataError("excess returns must be finite")
        object.__setattr__(self, "dates", _frozen(dates))
        object.__setattr__(self, "values", _frozen(values))

    def __len__(self) -> int:
        return self.values.size

    @classmethod
    def from_values(cls, values: Any, meta: dict[str, Any] | None = None) -> ExcessReturnSeries:
        """Wrap a bare array, assigning consecutive business days from 2000-01-03."""
        values = np.asarray(values, dtype=float)
        dates = np.busday_offset(np.datetime64("2000-01-03", "D"), np.arange(values.size))
        return cls(dates, values, dict(meta or {}))


def _read_columns(
    path: str | os.PathLike, date_column: str, value_column: str
) -> tuple[np.ndarray, np.ndarray]:
    if not os.path.isfile(path):
        raise DataError(f"file not found: {path}")
    dates: list[np.datetime64] = []
    values: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file or missing header row")
        missing = [c for c in (date_column, value_column) if c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing columns {missing} (found {reader.fieldnames})")
        # row numbers count the header as line 1
        for lineno, row in enumerate(reader, start=2):
            raw_date, raw_value = row.get(date_column), row.get(value_column)
            try:
                date = np.datetime64(str(raw_date).strip(), "D")
            except ValueError:
                raise DataError(f"{path}, row {lineno}: unparseable date {raw_date!r}") from None
            try:
                value = float(str(raw_value).strip())
            except ValueError:
                raise DataError(f"{path}, row {lineno}: unparseable value {raw_value!r}") from None
            if not math.isfinite(value):
                raise DataError(f"{path}, row {lineno}: non-finite value {raw_value!r}")
            dates.append(date)
            values.append(value)
    return np.array(dates, dtype="datetime64[D]"), np.array(values, dtype=float)


def _row_of(position: int) -> int:
    return position + 2


def load_series(
    path: str | os.PathLike,
    *,
    kind: str = "price",
    date_column: str = "date",
    value_column: str = "value",
    day_count: str = "act365",
) -> PriceSeries | RiskFreeSeries:
    """
    Load a price (``kind="price"``) or risk-free rate (``kind="riskfree"``)
    series from a CSV file with a header row and ISO-8601 dates.

    Raises
    ------
    DataError
        On a missing file or column, an unparseable row, a non-positive price
        or dates that are not strictly increasing; row numbers refer to file
        lines with the header as line 1.
    """
    dates, values = _read_columns(path, date_column, value_column)
    if dates.size > 1:
        bad = np.nonzero(np.diff(dates) <= np.timedelta64(0, "D"))[0]
        if bad.size:
            i = int(bad[0]) + 1
            raise DataError(f"{path}, row {_row_of(i)}: non-monotone dates ({dates[i - 1]} then {dates[i]})")
    if kind == "price":
        bad = np.nonzero(values <= 0)[0]
        if bad.size:
            i = int(bad[0])
            raise DataError(f"{path}, row {_row_of(i)}: non-positive price {values[i]}")
        return PriceSeries(dates, values)
    if kind == "riskfree":
        return RiskFreeSeries(dates, values, day_count)
    raise ValueError(f"kind must be 'price' or 'riskfree', got {kind!r}")


def load_excess_returns(
    path: str | os.PathLike, *, date_column: str = "date", value_column: str = "excess_return"
) -> ExcessReturnSeries:
    """Read a series previously written by :func:`save_excess_returns`."""
    dates, values = _read_columns(path, date_column, value_column)
    _check_dates(dates)
    return ExcessReturnSeries(dates, values, {"source": os.fspath(path)})


def save_excess_returns(series: ExcessReturnSeries, path: str | os.PathLike) -> None:
    """Write ``date,excess_return`` rows; values use ``repr`` for exact round trips."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "excess_return"])
        for d, v in zip(series.dates, series.values):
            writer.writerow([str(d), repr(float(v))])


def compute_excess_returns(
    prices: PriceSeries,
    riskfree: RiskFreeSeries | None = None,
    convention: str | None = None,
) -> ExcessReturnSeries:
    """
    Excess log returns in percentage points.

    Parameters
    ----------
    prices : PriceSeries
    riskfree : RiskFreeSeries or None
        Annualised rates. ``None`` means a zero risk-free rate.
    convention : {"act360", "act365", "none"}, optional
        Day count used to turn quotes into per-day rates; defaults to the
        series' own ``day_count``.  ``"none"`` treats quotes as per-day
        already.

    Returns
    -------
    ExcessReturnSeries
        One value per consecutive pair of prices, dated by the later price.
    """
    x = prices.values
    log_ret = 100.0 * np.log(x[1:] / x[:-1])
    dates = prices.dates[1:]
    meta: dict[str, Any] = {"returns": "100*log(x_j/x_{j-1})"}
    if riskfree is None:
        if convention is not None:
            _normalise_day_count(convention)
        meta["riskfree"] = None
        return ExcessReturnSeries(dates, log_ret, meta)
    conv = _normalise_day_count(convention or riskfree.day_count)
    daily = riskfree.daily_rates(conv)
    # last quote at or before each return date
    idx = np.searchsorted(riskfree.dates, dates, side="right") - 1
    if np.any(idx < 0):
        first = dates[int(np.argmax(idx < 0))]
        raise DataError(
            f"no risk-free quote at or before {first}; rates start {riskfree.dates[0]}"
        )
    meta["riskfree"] = {"day_count": conv, "alignment": "last observation carried forward"}
    return ExcessReturnSeries(dates, log_ret - daily[idx], meta)


def bundled_dataset_path(name: str = "synthetic_returns") -> str:
    """
    Path of a CSV shipped with the package.

    ``synthetic_returns`` holds 1000 simulated excess returns from a
    GARCH-in-Mean model with Beta(a=2, b=1) skewing (alpha=0.1,
    alpha0=0.05, alpha1=0.08, beta1=0.88, nu=8), seed 2024.
    """
    from importlib import resources

    path = resources.files("skewgarch") / "datasets" / f"{name}.csv"
    if not path.is_file():
        raise DataError(f"no bundled dataset named {name!r}")
    return str(path)
