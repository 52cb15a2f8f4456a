"""Price ingestion and multi-scale log-returns."""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError, InputFileError, InsufficientDataError

__all__ = [
    "FormatSpec",
    "PriceSeries",
    "ReturnSeries",
    "load_price_series",
    "log_returns",
    "write_price_series",
]

_DATE_FORMATS = {"iso": "%Y-%m-%d", "dmy": "%d/%m/%Y"}


@dataclass(frozen=True)
class FormatSpec:
    """Column mapping for a delimited price file.

    ``date_format`` is ``"iso"`` (YYYY-MM-DD), ``"dmy"`` (DD/MM/YYYY), any
    ``strptime`` pattern, or ``"auto"`` to try ISO then DD/MM/YYYY.
    ``delimiter=None`` sniffs among comma, semicolon and tab.
    """

    date_column: str = "date"
    price_column: str = "price"
    date_format: str = "auto"
    delimiter: str | None = None

    def to_dict(self) -> dict:
        return {
            "date_column": self.date_column,
            "price_column": self.price_column,
            "date_format": self.date_format,
            "delimiter": self.delimiter,
        }


@dataclass(frozen=True, eq=False)
class PriceSeries:
    instrument_id: str
    dates: np.ndarray  # datetime64[D]
    prices: np.ndarray
    n_dropped: int = 0

    def __post_init__(self):
        dates = np.asarray(self.dates, dtype="datetime64[D]")
        prices = np.asarray(self.prices, dtype=float)
        if dates.shape != prices.shape or prices.ndim != 1:
            raise DataError("dates and prices must be 1-d arrays of equal length")
        if len(prices) < 2:
            raise InsufficientDataError("insufficient data: a price series needs at least 2 rows")
        if not np.all(np.isfinite(prices)) or np.any(prices <= 0):
            raise DataError("prices must be finite and strictly positive")
        if np.any(np.diff(dates) <= np.timedelta64(0, "D")):
            bad = int(np.argmax(np.diff(dates) <= np.timedelta64(0, "D"))) + 1
            raise DataError(f"dates not strictly increasing at index {bad} ({dates[bad]})")
        dates.setflags(write=False)
        prices.setflags(write=False)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "prices", prices)

    def __len__(self) -> int:
        return len(self.prices)

    @classmethod
    def from_log_prices(cls, log_prices, instrument_id="synthetic", start="1900-01-01"):
        """Build a series from log-prices on consecutive calendar days."""
        log_prices = np.asarray(log_prices, dtype=float)
        dates = np.datetime64(start, "D") + np.arange(len(log_prices))
        return cls(instrument_id, dates, np.exp(log_prices))


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Log-returns at horizon ``scale_tau`` sampled every ``stride`` periods."""

    values: np.ndarray
    scale_tau: int = 1
    stride: int = 1
    instrument_id: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise DataError("return values must be 1-d")
        if not np.all(np.isfinite(values)):
            raise DataError("return values must be finite")
        if self.scale_tau < 1 or self.stride < 1:
            raise DataError("scale_tau and stride must be positive integers")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)


def _parse_date(text: str, fmt: str) -> dt.date:
    if fmt in ("auto", "iso") and len(text) == 10 and text[4] == "-":
        try:
            return dt.date.fromisoformat(text)
        except ValueError:
            if fmt == "iso":
                raise
    if fmt == "auto":
        for pattern in _DATE_FORMATS.values():
            try:
                return dt.datetime.strptime(text, pattern).date()
            except ValueError:
                pass
        raise ValueError(f"unrecognized date {text!r}")
    return dt.datetime.strptime(text, _DATE_FORMATS.get(fmt, fmt)).date()


def _parse_price(text: str | None) -> float | None:
    if text is None:
        return None
    try:
        value = float(text.strip())
    except ValueError:
        return None
    if not math.isfinite(value) or value <= 0:
        return None
    return value


def load_price_series(path, format_spec: FormatSpec | None = None, instrument_id: str | None = None) -> PriceSeries:
    """Read a delimited (date, price) file with one header row.

    Rows whose price is missing, unparsable or non-positive are skipped and
    counted in ``PriceSeries.n_dropped``. Dates must already be in strictly
    increasing order; the first offending row is named in the error.
    """
    spec = format_spec or FormatSpec()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc}", stage="load") from exc

    lines = text.splitlines()
    if not lines:
        raise InsufficientDataError(f"insufficient data: {path} is empty", stage="load")
    delimiter = spec.delimiter
    if delimiter is None:
        try:
            delimiter = csv.Sniffer().sniff(lines[0], delimiters=",;\t").delimiter
        except csv.Error:
            delimiter = ","
    reader = csv.DictReader(lines, delimiter=delimiter)
    fields = reader.fieldnames or []
    for col in (spec.date_column, spec.price_column):
        if col not in fields:
            raise DataError(f"column {col!r} not found in header {fields}", stage="load")

    dates: list[dt.date] = []
    prices: list[float] = []
    dropped = 0
    # row numbers are 1-based file lines, header is line 1
    for lineno, row in enumerate(reader, start=2):
        price = _parse_price(row.get(spec.price_column))
        if price is None:
            dropped += 1
            continue
        raw_date = (row.get(spec.date_column) or "").strip()
        try:
            date = _parse_date(raw_date, spec.date_format)
        except ValueError as exc:
            raise DataError(f"row {lineno}: {exc}", stage="load") from exc
        if dates and date <= dates[-1]:
            raise DataError(
                f"row {lineno}: date {date.isoformat()} is not after previous date {dates[-1].isoformat()}",
                stage="load",
            )
        dates.append(date)
        prices.append(price)

    if len(prices) < 2:
        raise InsufficientDataError(
            f"insufficient data: {len(prices)} valid row(s) in {path}", stage="load"
        )
    return PriceSeries(
        instrument_id or path.stem,
        np.array(dates, dtype="datetime64[D]"),
        np.array(prices),
        n_dropped=dropped,
    )


def log_returns(series: PriceSeries, tau: int = 1, stride: int = 1) -> ReturnSeries:
    """``values[k] = ln(prices[k*stride + tau] / prices[k*stride])``."""
    tau, stride = int(tau), int(stride)
    if tau < 1 or stride < 1:
        raise DataError(f"tau and stride must be >= 1 (got tau={tau}, stride={stride})", stage="returns", tau=tau)
    p = series.prices
    if tau >= len(p):
        raise InsufficientDataError(
            f"tau={tau} is not shorter than the series length {len(p)}", stage="returns", tau=tau
        )
    start = np.arange(0, len(p) - tau, stride)
    values = np.log(p[start + tau] / p[start])
    return ReturnSeries(values, scale_tau=tau, stride=stride, instrument_id=series.instrument_id)


def write_price_series(series: PriceSeries, path, delimiter: str = ",") -> None:
    """Write ``date,price`` rows readable by :func:`load_price_series`."""
    from ._io import atomic_write_text

    rows = [f"date{delimiter}price"]
    for d, p in zip(series.dates.astype(object), series.prices):
        rows.append(f"{d.isoformat()}{delimiter}{float(p)!r}")
    atomic_write_text(path, "\n".join(rows) + "\n")
