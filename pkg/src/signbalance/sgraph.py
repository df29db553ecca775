"""Signed-network value type and its sign transformations.

Nodes are indexed from 0.  A network wraps a read-only symmetric weight
matrix; diagonal entries are self-loops (the unit diagonal of a
correlation matrix is kept as is).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import ValidationError
from .linalg import as_symmetric, eig_sym

__all__ = [
    "SignedNetwork",
    "from_weights",
    "from_correlation",
    "abs_network",
    "unsigned_counterpart",
    "negate",
    "binarize",
    "shift_diagonal",
    "switch",
]

WEIGHTED = "weighted"
BINARY = "binary"
CORRELATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SignedNetwork:
    weights: np.ndarray
    kind: str = WEIGHTED

    def __post_init__(self):
        w = as_symmetric(self.weights)
        if self.kind not in (WEIGHTED, BINARY):
            raise ValidationError(f"kind must be 'weighted' or 'binary', got {self.kind!r}")
        if self.kind == BINARY and not np.all(np.isin(w, (-1.0, 0.0, 1.0))):
            raise ValidationError("binary network entries must lie in {-1, 0, +1}")
        object.__setattr__(self, "weights", w)

    @property
    def n(self):
        return self.weights.shape[0]

    @cached_property
    def spectrum(self):
        """Eigendecomposition of the signed weight matrix (computed once)."""
        return eig_sym(self.weights)

    @cached_property
    def unsigned_spectrum(self):
        """Eigendecomposition of the unsigned counterpart (see `unsigned_counterpart`)."""
        return eig_sym(_unsigned_weights(self.weights))

    def __repr__(self):
        return f"SignedNetwork(n={self.n}, kind={self.kind!r})"


def from_weights(w, kind=WEIGHTED):
    return SignedNetwork(np.asarray(w, dtype=float), kind)


def from_correlation(c, tol=CORRELATION_TOL):
    """Wrap a correlation matrix as a weighted signed network.

    Raises
    ------
    ValidationError
        If an entry exceeds 1 in magnitude or the diagonal is not 1,
        both up to `tol`.  The message names the offending entry.
    """
    a = as_symmetric(c)
    off = np.abs(a) > 1.0 + tol
    if off.any():
        i, j = np.argwhere(off)[0]
        raise ValidationError(f"correlation entry ({i}, {j}) = {a[i, j]!r} exceeds 1 in magnitude")
    dev = np.abs(np.diag(a) - 1.0) > tol
    if dev.any():
        i = int(np.argmax(dev))
        raise ValidationError(f"correlation diagonal entry ({i}, {i}) = {a[i, i]!r} is not 1")
    return SignedNetwork(a, WEIGHTED)


def abs_network(g):
    """Entrywise absolute value of the weight matrix."""
    return SignedNetwork(np.abs(g.weights), g.kind)


def _unsigned_weights(w):
    u = np.abs(w)
    np.fill_diagonal(u, np.diag(w))
    return u


def unsigned_counterpart(g):
    """The unsigned network ``|G|`` used by every balance formula.

    Edge signs are dropped but self-loops keep their value, so that a
    uniform diagonal ``chi * I`` factors out of ``e^A`` and ``e^|A|``
    alike for any real ``chi``.  For a nonnegative diagonal (correlation
    matrices, zero-diagonal graphs) this coincides with `abs_network`.
    """
    return SignedNetwork(_unsigned_weights(g.weights), g.kind)


def negate(g):
    """Flip the sign of every entry, diagonal included."""
    return SignedNetwork(-g.weights, g.kind)


def binarize(g, threshold=0.25):
    """Threshold a weighted network into a {-1, 0, +1} network.

    Off-diagonal ``c >= threshold`` maps to +1, ``c <= -threshold`` to -1,
    anything in between to 0; the diagonal is set to 0.
    """
    if not 0.0 < threshold < 1.0:
        raise ValidationError(f"threshold must lie in (0, 1), got {threshold!r}")
    w = g.weights
    b = np.where(w >= threshold, 1.0, np.where(w <= -threshold, -1.0, 0.0))
    np.fill_diagonal(b, 0.0)
    return SignedNetwork(b, BINARY)


def shift_diagonal(g, chi):
    """Subtract ``chi`` from every diagonal entry."""
    w = np.array(g.weights)
    w[np.diag_indices_from(w)] -= chi
    return SignedNetwork(w, g.kind)


def switch(g, subset):
    """Conjugate by ``sigma = diag(+-1)``, with -1 on the nodes in `subset`."""
    idx = np.asarray(sorted(set(int(i) for i in subset)), dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= g.n):
        raise ValidationError(f"switching set {sorted(idx.tolist())} out of range for n={g.n}")
    sigma = np.ones(g.n)
    sigma[idx] = -1.0
    return SignedNetwork(sigma[:, None] * g.weights * sigma[None, :], g.kind)
