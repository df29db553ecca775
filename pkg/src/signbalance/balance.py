"""Local, edge and global structural-balance indices.

All indices compare walk weights in ``G`` against its unsigned
counterpart ``|G|`` through the matrix exponential::

    kappa_i   = [e^A]_ii / [e^|A|]_ii
    kappa_ij  = [e^A]_ij / [e^|A|]_ij
    kappa(G)  = tr e^A / tr e^|A| = sum exp(lam) / sum exp(lam_bar)
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .linalg import mat_func
from .sgraph import negate

__all__ = [
    "BalanceReport",
    "BALANCED",
    "ANTIBALANCED",
    "STRICTLY_UNBALANCED",
    "local_balance",
    "edge_balance",
    "global_balance",
    "is_balanced",
    "classify",
    "balance_report",
]

BALANCED = "balanced"
ANTIBALANCED = "antibalanced"
STRICTLY_UNBALANCED = "strictly_unbalanced"
DEFAULT_TOL = 1e-9
EDGE_GUARD = 1e-14


@dataclass(frozen=True, eq=False)
class BalanceReport:
    kappa: float
    local: np.ndarray
    classification: str
    edge: np.ndarray = None


def _shift(g):
    # common exponent shift; cancels in every ratio and keeps exp() finite
    return max(g.spectrum.eigenvalues[0], g.unsigned_spectrum.eigenvalues[0])


def local_balance(g):
    """Per-node balance ``kappa_i`` in (0, 1]."""
    m = _shift(g)
    d, u = g.spectrum, g.unsigned_spectrum
    num = (d.eigenvectors**2) @ np.exp(d.eigenvalues - m)
    den = (u.eigenvectors**2) @ np.exp(u.eigenvalues - m)
    return num / den


def edge_balance(g):
    """Signed-communicability ratio ``kappa_ij``.

    Entries whose unsigned communicability is below 1e-14 in magnitude
    are undefined and returned as NaN.  The diagonal equals
    `local_balance`.
    """
    num = mat_func(g.spectrum, "exp")
    den = mat_func(g.unsigned_spectrum, "exp")
    out = np.full(num.shape, np.nan)
    ok = np.abs(den) >= EDGE_GUARD
    out[ok] = num[ok] / den[ok]
    return out


def global_balance(g):
    """``kappa(G) = tr e^A / tr e^|A|``, evaluated in log space."""
    return float(np.exp(logsumexp(g.spectrum.eigenvalues) - logsumexp(g.unsigned_spectrum.eigenvalues)))


def is_balanced(g, tol=DEFAULT_TOL):
    """Acharya's criterion: ``A`` and ``|A|`` share their spectrum.

    The spectral test decides; ``|kappa(G) - 1| <= tol`` is evaluated
    alongside and a RuntimeWarning is emitted if the two disagree.
    """
    lam, lam_bar = g.spectrum.eigenvalues, g.unsigned_spectrum.eigenvalues
    spectral = bool(np.max(np.abs(lam - lam_bar)) <= tol)
    via_kappa = abs(global_balance(g) - 1.0) <= tol
    if spectral != via_kappa:
        warnings.warn(
            f"balance tests disagree at tol={tol:g}: spectra {'match' if spectral else 'differ'}, "
            f"kappa={global_balance(g):.17g}",
            RuntimeWarning,
            stacklevel=2,
        )
    return spectral


def classify(g, tol=DEFAULT_TOL):
    if is_balanced(g, tol):
        return BALANCED
    if is_balanced(negate(g), tol):
        return ANTIBALANCED
    return STRICTLY_UNBALANCED


def balance_report(g, tol=DEFAULT_TOL, with_edges=False):
    return BalanceReport(
        kappa=global_balance(g),
        local=local_balance(g),
        classification=classify(g, tol),
        edge=edge_balance(g) if with_edges else None,
    )
