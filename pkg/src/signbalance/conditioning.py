"""Trace-norm condition numbers of ``e^A`` and their signed/unsigned ratio.

``K(e^-A) = (sum exp(-lam)) (sum exp(lam))`` is the Schatten-1 condition
number of the steady-state system ``x_inf = e^A x0``.  The ratio
``R(A) = K(e^-A) / K(e^-|A|)`` is computed three independent ways
(direct, through balance indices, through pairwise eigenvalue gaps) and a
large-spectral-gap approximation ``exp(lam_1 - lam_bar_1)`` is provided.

Walk weights follow the printed convention ``W(+/-) = tr(f(|A|) +/- f(A))``
with ``f = cosh`` (even) or ``sinh`` (odd).  These are twice the totals of
positive/negative closed-walk weights; the factor cancels in the dominance
comparison and in ``R``.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .balance import STRICTLY_UNBALANCED, classify, global_balance
from .exceptions import RangeError
from .sgraph import SignedNetwork, negate, unsigned_counterpart

__all__ = [
    "WalkWeights",
    "ConditioningReport",
    "EVEN_DOMINANT",
    "ODD_DOMINANT",
    "NEITHER",
    "condition_number_trace",
    "condition_ratio",
    "ratio_via_balances",
    "ratio_via_cosh",
    "ratio_gap_approx",
    "walk_weights",
    "dominance",
    "conditioning_report",
    "ratio_conjecture_search",
]

EVEN_DOMINANT = "even_dominant"
ODD_DOMINANT = "odd_dominant"
NEITHER = "neither"
WALK_TOL = 1e-12


@dataclass(frozen=True)
class WalkWeights:
    w_even_pos: float
    w_even_neg: float
    w_odd_pos: float
    w_odd_neg: float

    @property
    def even_product(self):
        return self.w_even_pos * self.w_even_neg

    @property
    def odd_product(self):
        return self.w_odd_pos * self.w_odd_neg


@dataclass(frozen=True)
class ConditioningReport:
    cond_signed: float
    cond_unsigned: float
    ratio: float
    ratio_via_balances: float
    ratio_via_cosh: float
    ratio_gap_approx: float
    gap_relative_error: float
    walks: WalkWeights
    dominance: str


def _cond(lam):
    with np.errstate(over="ignore"):
        k = np.sum(np.exp(-lam)) * np.sum(np.exp(lam))
    if not np.isfinite(k):
        worst = lam[np.argmax(np.abs(lam))]
        raise RangeError(f"condition number overflows at eigenvalue {worst!r}", eigenvalue=float(worst))
    return float(k)


def _log_cond(lam):
    return logsumexp(lam) + logsumexp(-lam)


def condition_number_trace(g, unsigned=False):
    """``(sum exp(-lam)) (sum exp(lam))`` over the spectrum of ``A`` (or ``|A|``).

    Raises `RangeError` when the sums overflow (``|lam|`` beyond ~700).
    """
    d = g.unsigned_spectrum if unsigned else g.spectrum
    return _cond(d.eigenvalues)


def condition_ratio(g):
    """``R(A) = K(e^-A) / K(e^-|A|)``; log-space, so it never overflows."""
    return float(np.exp(_log_cond(g.spectrum.eigenvalues) - _log_cond(g.unsigned_spectrum.eigenvalues)))


def ratio_via_balances(g):
    """``kappa(G) kappa(-G) / kappa(-|G|)``."""
    return global_balance(g) * global_balance(negate(g)) / global_balance(negate(unsigned_counterpart(g)))


def _pair_cosh_sum(lam):
    i, j = np.triu_indices(lam.shape[0], k=1)
    with np.errstate(over="ignore"):
        s = np.sum(np.cosh(lam[i] - lam[j]))
    if not np.isfinite(s):
        raise RangeError("pairwise cosh sum overflowed; eigenvalue spread too large")
    return s


def ratio_via_cosh(g):
    """``R`` written through pairwise eigenvalue gaps.

    ``(1 + 2/N sum_{j<i} cosh(lam_i - lam_j)) / (same for lam_bar)``.
    """
    n = g.n
    num = 1.0 + 2.0 / n * _pair_cosh_sum(g.spectrum.eigenvalues)
    den = 1.0 + 2.0 / n * _pair_cosh_sum(g.unsigned_spectrum.eigenvalues)
    return float(num / den)


def ratio_gap_approx(g, return_error=False):
    """Large-gap approximation ``exp(lam_1 - lam_bar_1)`` of `condition_ratio`.

    With ``return_error=True`` also returns the relative error against the
    exact ratio.
    """
    approx = float(np.exp(g.spectrum.eigenvalues[0] - g.unsigned_spectrum.eigenvalues[0]))
    if not return_error:
        return approx
    exact = condition_ratio(g)
    return approx, abs(approx - exact) / exact


def walk_weights(g, tol=WALK_TOL):
    lam, lam_bar = g.spectrum.eigenvalues, g.unsigned_spectrum.eigenvalues
    with np.errstate(over="ignore"):
        ch, ch_bar = np.sum(np.cosh(lam)), np.sum(np.cosh(lam_bar))
        sh, sh_bar = np.sum(np.sinh(lam)), np.sum(np.sinh(lam_bar))
    if not np.all(np.isfinite([ch, ch_bar, sh, sh_bar])):
        raise RangeError("walk weights overflowed")
    scale = max(1.0, ch_bar)
    vals = [ch_bar + ch, ch_bar - ch, sh_bar + sh, sh_bar - sh]
    # rounding residue of exact cancellations (balanced/antibalanced) -> 0
    vals = [0.0 if abs(v) <= tol * scale else float(v) for v in vals]
    return WalkWeights(*vals)


def dominance(g, tol=WALK_TOL):
    """Even/odd dominance from ``W+even W-even`` vs ``W+odd W-odd``.

    Ties within ``tol`` relative to ``(W+even)^2`` give ``"neither"``.
    """
    return _dominance(walk_weights(g, tol), tol)


def _dominance(w, tol):
    diff = w.even_product - w.odd_product
    if abs(diff) <= tol * max(1.0, w.w_even_pos**2):
        return NEITHER
    return EVEN_DOMINANT if diff > 0 else ODD_DOMINANT


def conditioning_report(g, tol=WALK_TOL):
    ratio = condition_ratio(g)
    approx = ratio_gap_approx(g)
    walks = walk_weights(g, tol)
    return ConditioningReport(
        cond_signed=condition_number_trace(g),
        cond_unsigned=condition_number_trace(g, unsigned=True),
        ratio=ratio,
        ratio_via_balances=ratio_via_balances(g),
        ratio_via_cosh=ratio_via_cosh(g),
        ratio_gap_approx=approx,
        gap_relative_error=abs(approx - ratio) / ratio,
        walks=walks,
        dominance=_dominance(walks, tol),
    )


def ratio_conjecture_search(n_max=6, tol=1e-9):
    """Look for strictly unbalanced complete signed graphs with ``R = 1``.

    Enumerates every +-1 sign pattern of ``K_n`` for ``3 <= n <= n_max``.
    Returns ``(counts, counterexamples)``: `counts` maps ``n`` to the number
    of strictly unbalanced graphs checked, `counterexamples` lists the
    weight matrices with ``|R - 1| <= tol``.  This is an empirical search;
    no other routine relies on its outcome.
    """
    counts, found = {}, []
    for n in range(3, n_max + 1):
        iu = np.triu_indices(n, k=1)
        checked = 0
        for signs in itertools.product((1.0, -1.0), repeat=len(iu[0])):
            w = np.zeros((n, n))
            w[iu] = signs
            g = SignedNetwork(w + w.T)
            if classify(g, tol) != STRICTLY_UNBALANCED:
                continue
            checked += 1
            if abs(condition_ratio(g) - 1.0) <= tol:
                found.append(g.weights)
        counts[n] = checked
    return counts, found
