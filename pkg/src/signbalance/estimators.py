"""scikit-learn style wrappers.

Return inputs follow the scikit-learn layout: rows are days, columns are
assets (``T x N``).  A DataFrame with a DatetimeIndex keeps its dates and
column names.
"""

import numpy as np
import pandas as pd
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .balance import DEFAULT_TOL, balance_report
from .conditioning import conditioning_report
from .exceptions import ValidationError
from .pipeline.data import ReturnPanel
from .pipeline.events import detect_events
from .pipeline.rolling import WindowSpec, rolling_indicators, window_correlation
from .risk import IndicatorConfig
from .sgraph import binarize, from_correlation

__all__ = ["check_returns", "check_correlation", "SignedBalance", "RollingIndicators",
           "SystemicEventDetector"]


def check_returns(X, min_samples=2, min_features=2):
    """Validate a ``T x N`` return matrix and wrap it as a ReturnPanel."""
    dates = ids = None
    if isinstance(X, pd.DataFrame):
        if isinstance(X.index, pd.DatetimeIndex):
            dates = X.index.to_numpy().astype("datetime64[D]")
        ids = [str(c) for c in X.columns]
    a = check_array(X, dtype=np.float64, ensure_min_samples=min_samples,
                    ensure_min_features=min_features)
    return ReturnPanel.from_array(a.T, dates=dates, asset_ids=ids)


def check_correlation(X):
    """Validate a square correlation matrix."""
    a = check_array(X, dtype=np.float64, ensure_min_samples=2, ensure_min_features=2)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"correlation matrix must be square, got shape {a.shape}")
    return a


class SignedBalance(BaseEstimator):
    """Balance and conditioning indices of one signed correlation network.

    Parameters
    ----------
    metric : {"returns", "precomputed"}
        ``"returns"``: `X` is a ``T x N`` return matrix and its correlation
        matrix is built with population standardization.  ``"precomputed"``:
        `X` is the ``N x N`` correlation matrix itself.
    threshold : float or None
        If set, the network is binarized at this threshold before analysis.
    tol : float
        Tolerance of the balance classification.

    Attributes
    ----------
    correlation_ : ndarray of shape (n_features, n_features)
    network_ : SignedNetwork
    kappa_ : float
    local_kappa_ : ndarray of shape (n_features,)
    classification_ : str
    conditioning_ : ConditioningReport
    ratio_ : float
    eigenvalues_ : ndarray of shape (n_features,)
    """

    def __init__(self, metric="returns", threshold=None, tol=DEFAULT_TOL):
        self.metric = metric
        self.threshold = threshold
        self.tol = tol

    def fit(self, X, y=None):
        if self.metric == "precomputed":
            c = check_correlation(X)
        elif self.metric == "returns":
            panel = check_returns(X)
            c = np.array(window_correlation(panel, 0, panel.t))
        else:
            raise ValidationError(f"unknown metric {self.metric!r}")
        g = from_correlation(c)
        if self.threshold is not None:
            g = binarize(g, self.threshold)
        report = balance_report(g, self.tol)
        self.correlation_ = c
        self.network_ = g
        self.kappa_ = report.kappa
        self.local_kappa_ = report.local
        self.classification_ = report.classification
        self.conditioning_ = conditioning_report(g)
        self.ratio_ = self.conditioning_.ratio
        self.eigenvalues_ = np.array(g.spectrum.eigenvalues)
        self.n_features_in_ = c.shape[0]
        return self


class RollingIndicators(TransformerMixin, BaseEstimator):
    """Rolling-window indicator series as a DataFrame, one row per window.

    Stateless: `fit` only validates the parameters.  `transform` takes a
    ``T x N`` return matrix.
    """

    def __init__(self, width=400, step=30, amri=((1, 3),), crf=(1,), var_p=0.05,
                 threshold=0.25, top_k=3, n_jobs=None):
        self.width = width
        self.step = step
        self.amri = amri
        self.crf = crf
        self.var_p = var_p
        self.threshold = threshold
        self.top_k = top_k
        self.n_jobs = n_jobs

    def _config(self):
        return WindowSpec(self.width, self.step), IndicatorConfig(self.amri, self.crf, self.var_p)

    def fit(self, X=None, y=None):
        self._config()
        self.fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "fitted_")
        spec, cfg = self._config()
        self.series_ = rolling_indicators(check_returns(X), spec, cfg, self.threshold,
                                          self.top_k, self.n_jobs)
        return self.series_.to_frame()


class SystemicEventDetector(BaseEstimator):
    """Periods where the cross-sectional mean return stays below `tau`.

    `fit` stores the detected events in ``events_``; `predict` returns a
    boolean mask with one entry per day, True inside an event.
    """

    def __init__(self, tau=-0.01, width=20, mode="sliding"):
        self.tau = tau
        self.width = width
        self.mode = mode

    def fit(self, X, y=None):
        panel = check_returns(X, min_samples=1)
        self.events_ = detect_events(panel, self.tau, self.width, self.mode)
        self.dates_ = panel.dates
        return self

    def predict(self, X):
        check_is_fitted(self, "events_")
        panel = check_returns(X, min_samples=1)
        events = detect_events(panel, self.tau, self.width, self.mode)
        mask = np.zeros(panel.t, dtype=bool)
        for e in events:
            mask |= (panel.dates >= e.start_date) & (panel.dates <= e.end_date)
        return mask

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)
