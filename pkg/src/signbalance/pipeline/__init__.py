"""Data ingestion, rolling networks, events, binning and random experiments."""

from .bins import (
    BIN_PRESETS,
    BinStats,
    BinSummary,
    align_kappa_returns,
    conditional_bins,
    gaussian_kde,
    parse_bins,
    silverman_bandwidth,
)
from .data import PricePanel, ReturnPanel, load_price_panel, load_return_panel, log_returns
from .events import Event, EventList, cross_sectional_mean, detect_events, sliding_mean
from .experiments import appendix_experiment, bessel_constants, catalan, spectral_sums
from .generators import random_correlation, task_rng, wishart_panel_correlation
from .rolling import (
    RollingSeries,
    WindowSpec,
    rolling_indicators,
    rolling_windows,
    standardize,
    window_correlation,
    window_record,
)

__all__ = [
    "BIN_PRESETS", "BinStats", "BinSummary", "align_kappa_returns", "conditional_bins",
    "gaussian_kde", "parse_bins", "silverman_bandwidth",
    "PricePanel", "ReturnPanel", "load_price_panel", "load_return_panel", "log_returns",
    "Event", "EventList", "cross_sectional_mean", "detect_events", "sliding_mean",
    "appendix_experiment", "bessel_constants", "catalan", "spectral_sums",
    "random_correlation", "task_rng", "wishart_panel_correlation",
    "RollingSeries", "WindowSpec", "rolling_indicators", "rolling_windows", "standardize",
    "window_correlation", "window_record",
]
