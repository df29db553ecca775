"""Balance-conditional return distributions."""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from ..risk import empirical_var
from .events import cross_sectional_mean, sliding_mean

__all__ = [
    "BIN_PRESETS",
    "BinStats",
    "BinSummary",
    "parse_bins",
    "silverman_bandwidth",
    "gaussian_kde",
    "conditional_bins",
    "align_kappa_returns",
]

BIN_PRESETS = {
    "equal5": (0.0, 0.2, 0.4, 0.6, 0.8, 1.0),
    "paper5": (0.0, 0.5, 0.8, 0.9, 0.99, 1.0),
}
KDE_GRID = 512
BANDWIDTH_FLOOR = 1e-6


def parse_bins(spec):
    """Resolve ``equal5``, ``paper5`` or ``custom:<e0>,<e1>,...``."""
    if spec in BIN_PRESETS:
        return BIN_PRESETS[spec]
    if spec.startswith("custom:"):
        try:
            edges = tuple(float(v) for v in spec[len("custom:"):].split(","))
        except ValueError:
            raise ValidationError(f"bad custom bin edges {spec!r}") from None
        _check_edges(edges)
        return edges
    raise ValidationError(f"unknown bin preset {spec!r}; use equal5, paper5 or custom:<edges>")


def _check_edges(edges):
    e = np.asarray(edges, dtype=float)
    if e.size < 2 or np.any(np.diff(e) <= 0):
        raise ValidationError(f"bin edges must be strictly increasing, got {list(edges)}")
    if e[0] < 0.0 or e[-1] < 1.0:
        raise ValidationError(f"bin edges must span (0, 1], got {list(edges)}")
    return e


def silverman_bandwidth(x):
    """``0.9 min(sigma, IQR/1.34) n^(-1/5)``, floored at 1e-6.

    When one of sigma or IQR is zero the other one is used.
    """
    x = np.asarray(x, dtype=float)
    sigma = x.std(ddof=1)
    q75, q25 = np.quantile(x, [0.75, 0.25])
    spread = [v for v in (sigma, (q75 - q25) / 1.34) if v > 0]
    h = 0.9 * min(spread) * x.size ** (-0.2) if spread else 0.0
    return max(h, BANDWIDTH_FLOOR)


def gaussian_kde(sample, bandwidth=None, grid_size=KDE_GRID):
    """Gaussian kernel density on a fixed grid over ``[min - 3h, max + 3h]``.

    Returns ``(grid, densities)``.
    """
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise ValidationError("kernel density needs at least 2 observations")
    h = silverman_bandwidth(x) if bandwidth is None else max(float(bandwidth), BANDWIDTH_FLOOR)
    grid = np.linspace(x.min() - 3 * h, x.max() + 3 * h, grid_size)
    u = (grid[:, None] - x[None, :]) / h
    dens = np.exp(-0.5 * u**2).sum(axis=1) / (x.size * h * math.sqrt(2 * math.pi))
    return grid, dens


@dataclass(frozen=True, eq=False)
class BinStats:
    lower: float
    upper: float
    count: int
    mean: float
    std: float
    var_p05: float
    kde_grid: np.ndarray = None
    kde_values: np.ndarray = None

    def to_dict(self):
        def f(v):
            return None if v is None or not math.isfinite(v) else float(v)

        return {"lower": self.lower, "upper": self.upper, "count": self.count,
                "mean": f(self.mean), "std": f(self.std), "var_p05": f(self.var_p05)}


@dataclass(frozen=True, eq=False)
class BinSummary:
    edges: tuple
    bins: tuple

    @property
    def counts(self):
        return np.array([b.count for b in self.bins])

    def to_dict(self):
        return {"edges": list(self.edges), "bins": [b.to_dict() for b in self.bins]}


def conditional_bins(kappa, returns, edges, var_p=0.05, grid_size=KDE_GRID):
    """Group return observations by the bin ``(e_k, e_{k+1}]`` of their kappa.

    Per bin: count, mean, sample standard deviation (ddof=1), VaR at
    `var_p` and a Gaussian KDE.  Empty bins get count 0 and NaN
    statistics; single-observation bins get NaN std and no KDE.
    """
    k = np.asarray(kappa, dtype=float).ravel()
    x = np.asarray(returns, dtype=float).ravel()
    if k.shape != x.shape:
        raise ValidationError(f"kappa and returns are misaligned: {k.shape} vs {x.shape}")
    e = _check_edges(edges)
    # kappa of a balanced window can round to 1 + ulp
    k = np.where((k > e[-1]) & (k <= e[-1] + 1e-12), e[-1], k)
    # right-closed bins (e_k, e_{k+1}]
    idx = np.searchsorted(e, k, side="left") - 1
    out = []
    for b in range(e.size - 1):
        sel = x[idx == b]
        n = int(sel.size)
        grid = dens = None
        if n >= 2:
            grid, dens = gaussian_kde(sel, grid_size=grid_size)
        out.append(BinStats(
            lower=float(e[b]),
            upper=float(e[b + 1]),
            count=n,
            mean=float(sel.mean()) if n else math.nan,
            std=float(sel.std(ddof=1)) if n >= 2 else math.nan,
            var_p05=empirical_var(sel, var_p) if n else math.nan,
            kde_grid=grid,
            kde_values=dens,
        ))
    return BinSummary(tuple(float(v) for v in e), tuple(out))


def align_kappa_returns(series_kappa, window_stops, r, width=20):
    """Pair each rolling window's kappa with contemporaneous sliding-mean returns.

    Window ``k`` receives the ``width``-day sliding means whose last day
    falls in ``(last day of window k-1, last day of window k]``; the first
    window takes every sliding mean ending inside it.  Each sliding mean is
    used at most once.  `window_stops` are the exclusive stop indices of
    the windows and must be increasing; windows with a NaN kappa are
    skipped.

    Returns ``(kappa_values, mean_returns)`` as aligned 1-d arrays.
    """
    kap = np.asarray(series_kappa, dtype=float)
    stops = np.asarray(window_stops, dtype=int)
    if kap.shape != stops.shape:
        raise ValidationError("one kappa value per window is required")
    s = sliding_mean(cross_sectional_mean(r), width)
    end_day = np.arange(s.size) + width - 1
    pairs_k, pairs_x = [], []
    prev_last = -1
    for kv, stop in zip(kap, stops):
        last = stop - 1
        sel = (end_day > prev_last) & (end_day <= last)
        prev_last = last
        if not math.isfinite(kv):
            continue
        pairs_k.append(np.full(int(sel.sum()), kv))
        pairs_x.append(s[sel])
    if not pairs_k:
        return np.empty(0), np.empty(0)
    return np.concatenate(pairs_k), np.concatenate(pairs_x)
