"""Systemic-event detection on the cross-sectional mean return."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError

__all__ = ["Event", "EventList", "cross_sectional_mean", "sliding_mean", "detect_events"]


@dataclass(frozen=True)
class Event:
    start_date: np.datetime64
    end_date: np.datetime64
    min_mean_return: float
    threshold_used: float

    def to_dict(self):
        return {
            "start_date": str(self.start_date),
            "end_date": str(self.end_date),
            "min_mean_return": self.min_mean_return,
            "threshold": self.threshold_used,
        }


@dataclass(frozen=True)
class EventList:
    events: tuple

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def to_list(self):
        return [e.to_dict() for e in self.events]


def cross_sectional_mean(r):
    """Mean return over all assets, one value per day."""
    return r.returns.mean(axis=0)


def sliding_mean(x, width):
    """Step-1 moving average; entry ``k`` averages ``x[k:k+width]``."""
    x = np.asarray(x, dtype=float)
    if not 1 <= width <= x.size:
        raise ValidationError(f"sliding width {width} must lie in [1, {x.size}]")
    return np.lib.stride_tricks.sliding_window_view(x, width).mean(axis=1)


def _runs(mask):
    # maximal [start, stop) runs of True
    padded = np.concatenate(([False], mask, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(int)))
    return list(zip(edges[::2], edges[1::2]))


def detect_events(r, tau, width=20, mode="sliding"):
    """Flag periods where the market-wide mean return stays below `tau`.

    Parameters
    ----------
    r : ReturnPanel
    tau : float
    width : int
        Length of the sliding window (``mode="sliding"``) or the minimum
        run length (``mode="daily"``) in days.
    mode : {"sliding", "daily"}
        ``"sliding"``: the ``width``-day sliding mean of the cross-sectional
        mean return is below ``tau``; an event spans from the first day of
        the first flagged window to the last day of the last flagged
        window, and events whose spans touch or overlap are merged.
        ``"daily"``: the cross-sectional mean itself is below ``tau`` on at
        least ``width`` consecutive days.
    """
    if not 1 <= width <= r.t:
        raise ValidationError(f"event window {width} must lie in [1, T={r.t}]")
    m = cross_sectional_mean(r)
    if mode == "sliding":
        s = sliding_mean(m, width)
        spans = [(a, b - 1 + width - 1, s[a:b].min()) for a, b in _runs(s < tau)]
    elif mode == "daily":
        spans = [(a, b - 1, m[a:b].min()) for a, b in _runs(m < tau) if b - a >= width]
    else:
        raise ValidationError(f"unknown event mode {mode!r}")

    merged = []
    for first, last, low in spans:
        if merged and first <= merged[-1][1] + 1:
            p_first, p_last, p_low = merged[-1]
            merged[-1] = (p_first, max(p_last, last), min(p_low, low))
        else:
            merged.append((first, last, low))
    return EventList(tuple(
        Event(r.dates[a], r.dates[b], float(low), float(tau)) for a, b, low in merged
    ))
