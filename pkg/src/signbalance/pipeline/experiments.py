"""Random-matrix experiments: ratio/balance correlation and spectral sums."""

import math

import numpy as np
from scipy.special import iv

from ..balance import global_balance
from ..conditioning import condition_ratio
from ..exceptions import ValidationError
from ..sgraph import from_correlation
from .generators import random_correlation, task_rng, wishart_panel_correlation

__all__ = [
    "catalan",
    "bessel_constants",
    "appendix_experiment",
    "spectral_sums",
]


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


def bessel_constants():
    """Limits of ``(1/N) sum exp(-lam)`` and ``(1/N) sum exp(lam)`` for N/T -> 1.

    ``(I0(2) + I1(2)) / e^2`` and ``I2(2) e^2``.
    """
    return float((iv(0, 2) + iv(1, 2)) / math.e**2), float(iv(2, 2) * math.e**2)


def appendix_experiment(sizes=(5, 10, 20, 50), reps=100, seed=0):
    """Pearson correlation between ``R(A)`` and ``kappa(G)`` per matrix size.

    For each size, `reps` random correlation matrices are drawn; draw
    ``(i, j)`` uses its own generator derived from ``(seed, i, j)``.
    Returns a list of dicts with keys ``n``, ``reps``, ``pearson``,
    ``kappa_mean`` and ``ratio_mean``.
    """
    if reps < 30:
        raise ValidationError(f"reps must be >= 30, got {reps}")
    rows = []
    for i, n in enumerate(sizes):
        kap, rat = np.empty(reps), np.empty(reps)
        for j in range(reps):
            g = from_correlation(random_correlation(n, rng=task_rng(seed, i, j)))
            kap[j], rat[j] = global_balance(g), condition_ratio(g)
        rows.append({
            "n": int(n),
            "reps": int(reps),
            "pearson": float(np.corrcoef(rat, kap)[0, 1]),
            "kappa_mean": float(kap.mean()),
            "ratio_mean": float(rat.mean()),
        })
    return rows


def spectral_sums(n=500, t=500, seed=0, max_moment=4):
    """Normalised spectral sums of an iid-normal correlation matrix.

    Returns ``mean_exp_neg`` and ``mean_exp_pos`` (``(1/N) sum exp(-+lam)``)
    and ``moments[k-1] = (1/N) sum lam^k`` for ``k = 1..max_moment``.
    """
    lam = np.linalg.eigvalsh(wishart_panel_correlation(n, t, seed=seed))
    return {
        "n": n,
        "t": t,
        "mean_exp_neg": float(np.mean(np.exp(-lam))),
        "mean_exp_pos": float(np.mean(np.exp(lam))),
        "moments": [float(np.mean(lam**k)) for k in range(1, max_moment + 1)],
    }
