"""Eigenvalue-based systemic-risk indicators for correlation matrices."""

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateRankError, ValidationError

__all__ = [
    "IndicatorConfig",
    "amri",
    "crf",
    "empirical_var",
    "average_correlation",
    "mp_upper_bound",
    "principal_variance_check",
]

RANK_FLOOR = 1e-14


@dataclass(frozen=True)
class IndicatorConfig:
    """Indicator parameters.

    amri : sequence of (h, p)
        Number of smallest eigenvalues and power-mean exponent.
    crf : sequence of int
        Number of leading principal components.
    var_p : float
        Tail probability for the empirical VaR.
    """

    amri: tuple = ((1, 3),)
    crf: tuple = (1,)
    var_p: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "amri", tuple((int(h), int(p)) for h, p in self.amri))
        object.__setattr__(self, "crf", tuple(int(m) for m in self.crf))
        for h, p in self.amri:
            if h < 1 or p < 1:
                raise ValidationError(f"AMRI needs h >= 1 and p >= 1, got h={h}, p={p}")
        for m in self.crf:
            if m < 1:
                raise ValidationError(f"CRF needs m >= 1, got {m}")
        if not 0.0 < self.var_p < 1.0:
            raise ValidationError(f"var_p must lie in (0, 1), got {self.var_p}")

    def validate(self, n):
        """Check the parameters against a matrix dimension `n`."""
        for h, _ in self.amri:
            if h > n:
                raise ValidationError(f"AMRI h={h} exceeds the number of assets N={n}")
        for m in self.crf:
            if m > n:
                raise ValidationError(f"CRF m={m} exceeds the number of assets N={n}")
        return self


def _descending(eigs):
    lam = np.asarray(eigs, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise ValidationError("expected a non-empty 1-d eigenvalue vector")
    if np.any(np.diff(lam) > 1e-12 * max(1.0, abs(lam[0]))):
        raise ValidationError("eigenvalues must be sorted in descending order")
    return lam


def amri(eigs, h, p):
    """Arithmetic Market Rank Indicator.

    ``lam_1 / ((1/h) sum_{i > N-h} lam_i^p)^(1/p)``; ``h = 1`` gives the
    2-norm condition number ``lam_1 / lam_N``.

    Raises
    ------
    DegenerateRankError
        One of the `h` smallest eigenvalues is at most 1e-14 (the
        correlation matrix is rank deficient, e.g. window shorter than N).
    """
    lam = _descending(eigs)
    n = lam.size
    if not 1 <= h <= n:
        raise ValidationError(f"h must lie in [1, {n}], got {h}")
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    tail = lam[n - h:]
    if np.any(tail <= RANK_FLOOR):
        raise DegenerateRankError(
            f"smallest eigenvalue {tail.min():.3e} <= {RANK_FLOOR:g}: AMRI needs a full-rank correlation matrix"
        )
    if h == 1:
        return float(lam[0] / tail[0])
    return float(lam[0] / np.mean(tail**p) ** (1.0 / p))


def crf(eigs, m):
    """Cumulative Risk Fraction ``(1/N) sum_{i<=m} lam_i`` (absorption ratio)."""
    lam = _descending(eigs)
    n = lam.size
    if not 1 <= m <= n:
        raise ValidationError(f"m must lie in [1, {n}], got {m}")
    if abs(lam.sum() - n) > 1e-6:
        warnings.warn(
            f"eigenvalues sum to {lam.sum():.9g}, not N={n}; input is not a correlation spectrum",
            RuntimeWarning,
            stacklevel=2,
        )
    return float(lam[:m].sum() / n)


def empirical_var(sample, p=0.05):
    """Empirical Value at Risk as a positive loss: ``-quantile(sample, p)``.

    The quantile interpolates linearly between order statistics.
    """
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise ValidationError("empirical VaR of an empty sample")
    if not 0.0 < p < 1.0:
        raise ValidationError(f"p must lie in (0, 1), got {p}")
    return float(-np.quantile(x, p, method="linear"))


def average_correlation(c):
    c = np.asarray(c, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 2:
        raise ValidationError(f"average correlation needs an N x N matrix with N >= 2, got {c.shape}")
    return float(c[np.triu_indices(c.shape[0], k=1)].mean())


def mp_upper_bound(n, t):
    """Upper edge ``(1 + sqrt(n/t))^2`` of the Marchenko-Pastur law."""
    if n < 1 or t < 1:
        raise ValidationError(f"n and t must be >= 1, got n={n}, t={t}")
    return (1.0 + np.sqrt(n / t)) ** 2


def principal_variance_check(xtilde, decomp, tol=1e-8):
    """Variance of each principal portfolio ``phi_i^T X~``.

    `xtilde` is an N x T panel whose rows have zero mean and unit
    population variance; the returned variances equal the eigenvalues of
    ``C = X~ X~^T / T``.
    """
    x = np.asarray(xtilde, dtype=float)
    q = decomp.eigenvectors
    if x.ndim != 2 or x.shape[0] != q.shape[0]:
        raise ValidationError(f"panel has shape {x.shape}, decomposition has dimension {q.shape[0]}")
    mu, var = x.mean(axis=1), x.var(axis=1)
    if np.max(np.abs(mu)) > tol or np.max(np.abs(var - 1.0)) > tol:
        raise ValidationError("rows of the panel are not standardized (mean 0, population variance 1)")
    return (q.T @ x).var(axis=1)
