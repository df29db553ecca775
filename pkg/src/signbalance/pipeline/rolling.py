"""Rolling-window correlation networks and their indicator series."""

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ..balance import global_balance
from ..conditioning import condition_ratio, ratio_gap_approx
from ..exceptions import DegenerateRankError, SignBalanceError, ValidationError, WindowError
from ..linalg import as_symmetric
from ..risk import IndicatorConfig, amri, average_correlation, crf
from ..sgraph import binarize, from_correlation

__all__ = [
    "WindowSpec",
    "RollingSeries",
    "standardize",
    "window_correlation",
    "rolling_windows",
    "window_record",
    "rolling_indicators",
]


@dataclass(frozen=True)
class WindowSpec:
    width: int
    step: int = 1

    def __post_init__(self):
        if int(self.width) < 2:
            raise ValidationError(f"window width must be >= 2, got {self.width}")
        if int(self.step) < 1:
            raise ValidationError(f"window step must be >= 1, got {self.step}")


def standardize(x, return_kept=False):
    """Standardize the rows of an N x T block with population moments.

    Rows with zero variance cannot be standardized and are dropped.
    """
    x = np.asarray(x, dtype=float)
    mu = x.mean(axis=1, keepdims=True)
    sd = x.std(axis=1)
    scale = np.maximum(np.abs(x).max(axis=1), np.finfo(float).tiny)
    kept = np.flatnonzero(sd > 1e-12 * scale)
    z = (x[kept] - mu[kept]) / sd[kept, None]
    return (z, kept) if return_kept else z


def window_correlation(r, start, width, return_kept=False):
    """Correlation matrix ``C = X~ X~^T / width`` of one window.

    Assets with zero in-window variance are dropped from this window
    (with a warning).  The result has an exact unit diagonal and entries
    clipped to [-1, 1].

    Raises
    ------
    WindowError
        Fewer than one asset survives, or the window is out of range.
    """
    if width < 2 or start < 0 or start + width > r.t:
        raise WindowError(f"window [{start}, {start + width}) is not inside a panel of length {r.t}")
    z, kept = standardize(r.returns[:, start:start + width], return_kept=True)
    if kept.size == 0:
        raise WindowError(f"all assets are degenerate in window [{start}, {start + width})")
    if kept.size < r.n:
        dropped = sorted(set(range(r.n)) - set(kept.tolist()))
        warnings.warn(
            f"window [{start}, {start + width}): dropping zero-variance assets "
            + ", ".join(r.asset_ids[i] for i in dropped),
            UserWarning,
            stacklevel=2,
        )
    c = np.clip(z @ z.T / width, -1.0, 1.0)
    np.fill_diagonal(c, 1.0)
    c = as_symmetric(c)
    return (c, kept) if return_kept else c


def rolling_windows(t_total, spec):
    """``(start, stop)`` pairs for starts 0, step, 2*step, ...

    There are ``floor((T - width) / step) + 1`` windows.
    """
    if spec.width > t_total:
        raise ValidationError(f"window width {spec.width} exceeds the series length T={t_total}")
    count = (t_total - spec.width) // spec.step + 1
    return [(k * spec.step, k * spec.step + spec.width) for k in range(count)]


@dataclass(eq=False)
class RollingSeries:
    columns: tuple
    window_starts: np.ndarray
    window_end_dates: np.ndarray
    records: list
    failures: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def column(self, name):
        return np.array([rec[name] for rec in self.records], dtype=float)

    def to_frame(self):
        df = pd.DataFrame.from_records(self.records, columns=list(self.columns))
        df.insert(0, "window_end", pd.to_datetime(self.window_end_dates).strftime("%Y-%m-%d"))
        df.insert(1, "window_start", self.window_starts)
        return df

    def to_csv(self, path_or_buf):
        return self.to_frame().to_csv(path_or_buf, index=False, float_format="%.17g")

    def to_json_obj(self):
        def clean(v):
            return None if isinstance(v, float) and not math.isfinite(v) else v

        frame = self.to_frame()
        return {
            "columns": ["window_end", "window_start", *self.columns],
            "records": [{k: clean(v) for k, v in row.items()} for row in frame.to_dict(orient="records")],
            "failures": [{"window": i, "window_end": str(d), "error": msg} for i, d, msg in self.failures],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=2)


def _columns(cfg, top_k):
    cols = ["n_assets", "kappa_weighted", "kappa_binary", "ratio", "ratio_approx", "ratio_approx_relerr"]
    cols += [f"amri_h{h}_p{p}" for h, p in cfg.amri]
    cols += [f"crf_m{m}" for m in cfg.crf]
    cols += ["avg_corr"]
    cols += [f"lambda_sum_{k}" for k in range(1, top_k + 1)]
    return tuple(cols)


def window_record(c, cfg, threshold=0.25, top_k=3):
    """Every indicator for one correlation matrix, as an ordered dict.

    Indicators that are undefined for this window (AMRI on a rank-deficient
    matrix, ``h`` or ``m`` larger than the surviving asset count) are NaN.
    """
    g = from_correlation(c)
    lam = g.spectrum.eigenvalues
    approx, relerr = ratio_gap_approx(g, return_error=True)
    rec = {
        "n_assets": g.n,
        "kappa_weighted": global_balance(g),
        "kappa_binary": global_balance(binarize(g, threshold)),
        "ratio": condition_ratio(g),
        "ratio_approx": approx,
        "ratio_approx_relerr": relerr,
    }
    for h, p in cfg.amri:
        try:
            rec[f"amri_h{h}_p{p}"] = amri(lam, h, p)
        except (DegenerateRankError, ValidationError):
            rec[f"amri_h{h}_p{p}"] = math.nan
    for m in cfg.crf:
        rec[f"crf_m{m}"] = crf(lam, m) if m <= g.n else math.nan
    rec["avg_corr"] = average_correlation(c) if g.n >= 2 else math.nan
    partial = np.cumsum(lam)
    for k in range(1, top_k + 1):
        rec[f"lambda_sum_{k}"] = float(partial[k - 1]) if k <= g.n else math.nan
    return rec


def _parallel_allowed():
    return os.environ.get("NO_PARALLEL", "") not in ("1", "true", "yes")


def rolling_indicators(r, spec, cfg=None, threshold=0.25, top_k=3, n_jobs=None):
    """Indicator series over rolling windows of a return panel.

    Windows are labelled by their last date.  A window that fails keeps
    its row (all NaN) and is listed in ``failures``; the series is never
    aborted.  ``n_jobs > 1`` evaluates windows on a thread pool unless
    ``NO_PARALLEL=1`` is set; output order is always by window index.
    """
    cfg = IndicatorConfig() if cfg is None else cfg
    windows = rolling_windows(r.t, spec)
    cols = _columns(cfg, top_k)

    def run(window):
        start, stop = window
        try:
            c = window_correlation(r, start, stop - start)
            return window_record(c, cfg, threshold, top_k), None
        except SignBalanceError as exc:
            return dict.fromkeys(cols, math.nan), f"{type(exc).__name__}: {exc}"

    if n_jobs and n_jobs > 1 and _parallel_allowed() and len(windows) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(run, windows))
    else:
        results = [run(w) for w in windows]

    ends = np.array([r.dates[stop - 1] for _, stop in windows], dtype="datetime64[D]")
    failures = [(i, ends[i], msg) for i, (_, msg) in enumerate(results) if msg is not None]
    return RollingSeries(
        columns=cols,
        window_starts=np.array([s for s, _ in windows]),
        window_end_dates=ends,
        records=[rec for rec, _ in results],
        failures=failures,
    )
