"""Seeded random correlation matrices."""

import numpy as np

from ..exceptions import ValidationError
from .data import ReturnPanel
from .rolling import window_correlation

__all__ = ["task_rng", "random_correlation", "wishart_panel_correlation"]


def task_rng(seed, *index):
    """Generator for task ``index`` under base `seed`; independent of execution order."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(i) for i in index)]))


def _onion(n, rng, eta=1.0):
    beta = eta + (n - 2) / 2.0
    r12 = 2.0 * rng.beta(beta, beta) - 1.0
    c = np.array([[1.0, r12], [r12, 1.0]])
    for k in range(2, n):
        beta -= 0.5
        y = rng.beta(k / 2.0, beta)
        u = rng.standard_normal(k)
        u /= np.linalg.norm(u)
        z = np.linalg.cholesky(c) @ (np.sqrt(y) * u)
        c = np.block([[c, z[:, None]], [z[None, :], np.ones((1, 1))]])
    return c


def random_correlation(n, seed=None, rng=None):
    """Random n x n correlation matrix, uniform over the correlation set.

    Uses the onion construction (LKJ density with eta = 1).  Pass either
    an integer `seed` or a numpy `rng`.
    """
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    rng = np.random.default_rng(seed) if rng is None else rng
    c = _onion(n, rng)
    c = 0.5 * (c + c.T)
    np.fill_diagonal(c, 1.0)
    return c


def wishart_panel_correlation(n, t, seed=None, rng=None):
    """Correlation matrix of an n x t panel of iid standard normals."""
    if not t >= n >= 2:
        raise ValidationError(f"need t >= n >= 2, got n={n}, t={t}")
    rng = np.random.default_rng(seed) if rng is None else rng
    panel = ReturnPanel.from_array(rng.standard_normal((n, t)))
    return np.array(window_correlation(panel, 0, t))
