"""Price/return panels and CSV ingestion.

Panels are stored asset-major: ``values[i, t]`` is asset ``i`` on day ``t``.
CSV files are date-major (``date,<asset1>,<asset2>,...``), one row per day.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..exceptions import ValidationError

__all__ = ["PricePanel", "ReturnPanel", "load_price_panel", "load_return_panel", "log_returns"]


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype, copy=True)
    a.flags.writeable = False
    return a


def _check_dates(dates):
    d = _frozen(dates, dtype="datetime64[D]")
    if d.size > 1 and np.any(np.diff(d) <= np.timedelta64(0, "D")):
        raise ValidationError("dates must be strictly increasing")
    return d


@dataclass(frozen=True, eq=False)
class PricePanel:
    asset_ids: tuple
    dates: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        p = _frozen(self.prices)
        ids = tuple(str(a) for a in self.asset_ids)
        d = _check_dates(self.dates)
        if p.shape != (len(ids), d.size):
            raise ValidationError(f"prices have shape {p.shape}, expected ({len(ids)}, {d.size})")
        if not np.all(np.isfinite(p)) or np.any(p <= 0):
            raise ValidationError("prices must be finite and strictly positive")
        object.__setattr__(self, "asset_ids", ids)
        object.__setattr__(self, "dates", d)
        object.__setattr__(self, "prices", p)


@dataclass(frozen=True, eq=False)
class ReturnPanel:
    asset_ids: tuple
    dates: np.ndarray
    returns: np.ndarray

    def __post_init__(self):
        r = _frozen(self.returns)
        ids = tuple(str(a) for a in self.asset_ids)
        d = _check_dates(self.dates)
        if r.ndim != 2 or r.shape != (len(ids), d.size):
            raise ValidationError(f"returns have shape {r.shape}, expected ({len(ids)}, {d.size})")
        if not np.all(np.isfinite(r)):
            raise ValidationError("returns must be finite")
        object.__setattr__(self, "asset_ids", ids)
        object.__setattr__(self, "dates", d)
        object.__setattr__(self, "returns", r)

    @property
    def n(self):
        return self.returns.shape[0]

    @property
    def t(self):
        return self.returns.shape[1]

    @classmethod
    def from_array(cls, returns, dates=None, asset_ids=None):
        """Build a panel from an N x T array, with synthetic ids/dates if omitted."""
        r = np.asarray(returns, dtype=float)
        if r.ndim != 2:
            raise ValidationError(f"expected an N x T array, got shape {r.shape}")
        if dates is None:
            dates = np.datetime64("2000-01-01") + np.arange(r.shape[1])
        if asset_ids is None:
            asset_ids = [f"A{i}" for i in range(r.shape[0])]
        return cls(tuple(asset_ids), dates, r)


def _read_frame(source):
    try:
        df = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ValidationError(f"cannot parse CSV: {exc}") from exc
    if df.shape[1] < 2 or df.columns[0].strip().lower() != "date":
        raise ValidationError("CSV header must be 'date,<asset1>,<asset2>,...'")
    try:
        dates = pd.to_datetime(df.iloc[:, 0].str.strip(), format="ISO8601")
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"unparseable date: {exc}") from exc
    cells = df.iloc[:, 1:].apply(lambda s: s.str.strip())
    values = cells.apply(pd.to_numeric, errors="coerce")
    garbage = values.isna() & (cells != "") & ~cells.isin(["NA", "NaN", "nan", "null"])
    if garbage.to_numpy().any():
        row, col = np.argwhere(garbage.to_numpy())[0]
        raise ValidationError(
            f"unparseable value {cells.iat[row, col]!r} in row {row + 2}, column {df.columns[col + 1]!r}"
        )
    return dates.to_numpy().astype("datetime64[D]"), [str(c).strip() for c in df.columns[1:]], values


def _drop_incomplete(ids, values, positive):
    bad = values.isna().any(axis=0).to_numpy()
    if positive:
        bad |= (values <= 0).any(axis=0).to_numpy()
    if bad.any():
        dropped = [a for a, b in zip(ids, bad) if b]
        reason = "missing or non-positive values" if positive else "missing values"
        warnings.warn(f"dropping {len(dropped)} asset(s) with {reason}: {', '.join(dropped)}",
                      UserWarning, stacklevel=3)
    keep = ~bad
    return [a for a, k in zip(ids, keep) if k], values.to_numpy(dtype=float)[:, keep].T


def load_price_panel(source):
    """Read a ``date,<asset...>`` price CSV (path or text stream).

    Assets with a blank, non-numeric-missing or non-positive price are
    dropped with a warning, so only complete series survive.

    Raises
    ------
    ValidationError
        Unparseable rows, or fewer than 2 assets / 3 dates survive.
    """
    dates, ids, values = _read_frame(source)
    ids, prices = _drop_incomplete(ids, values, positive=True)
    if len(ids) < 2 or dates.size < 3:
        raise ValidationError(f"need at least 2 complete assets and 3 dates, got {len(ids)} and {dates.size}")
    return PricePanel(tuple(ids), dates, prices)


def load_return_panel(source):
    """Read a ``date,<asset...>`` return CSV; incomplete assets are dropped."""
    dates, ids, values = _read_frame(source)
    ids, returns = _drop_incomplete(ids, values, positive=False)
    if len(ids) < 2 or dates.size < 2:
        raise ValidationError(f"need at least 2 complete assets and 2 dates, got {len(ids)} and {dates.size}")
    return ReturnPanel(tuple(ids), dates, returns)


def log_returns(p):
    """``X_it = log(P_{i,t+1} / P_{i,t})``, dated by the later day."""
    return ReturnPanel(p.asset_ids, p.dates[1:], np.diff(np.log(p.prices), axis=1))
