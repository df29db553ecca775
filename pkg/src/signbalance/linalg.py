"""Symmetric eigendecomposition and spectral matrix functions.

Every matrix in this package is a dense real symmetric matrix, so all
matrix functions go through one eigendecomposition ``M = Q diag(lam) Q^T``
instead of scaling-and-squaring.  Arrays handed out by this module are
read-only.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, RangeError, ValidationError

__all__ = [
    "SpectralDecomposition",
    "as_symmetric",
    "eig_sym",
    "mat_func",
    "trace_func",
    "SPECTRAL_FUNCTIONS",
]

SPECTRAL_FUNCTIONS = {
    "exp": np.exp,
    "cosh": np.cosh,
    "sinh": np.sinh,
    "neg-exp": lambda x: np.exp(-x),
}


def _frozen(a):
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


def as_symmetric(m):
    """Return ``(m + m.T) / 2`` as a read-only float array.

    Parameters
    ----------
    m : array_like of shape (n, n)

    Raises
    ------
    ValidationError
        If `m` is not square, is empty, or holds NaN/Inf.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise ValidationError(f"non-finite entry at ({i}, {j}): {a[i, j]}")
    return _frozen(0.5 * (a + a.T))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues sorted descending.

    ``eigenvectors[:, k]`` is the unit eigenvector of ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


def _fix_signs(q, atol=1e-12):
    # first entry with |q_ik| > atol made positive, column by column
    idx = np.argmax(np.abs(q) > atol, axis=0)
    signs = np.sign(q[idx, np.arange(q.shape[1])])
    signs[signs == 0] = 1.0
    return q * signs


def eig_sym(m):
    """Eigendecomposition of a symmetric matrix.

    Eigenvalues come out in descending order.  Each eigenvector is
    normalised so that its first nonzero component is positive, which
    makes the output deterministic for simple eigenvalues.

    Raises
    ------
    ValidationError
        Non-finite or non-square input.
    NumericalError
        LAPACK failed to converge; ``.dimension`` carries ``n``.
    """
    a = as_symmetric(m)
    try:
        lam, q = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigendecomposition of {a.shape[0]}x{a.shape[0]} matrix failed: {exc}",
            dimension=a.shape[0],
        ) from exc
    order = np.argsort(-lam, kind="stable")
    return SpectralDecomposition(_frozen(lam[order]), _frozen(_fix_signs(q[:, order])))


def _apply(f, lam):
    if isinstance(f, str):
        try:
            f = SPECTRAL_FUNCTIONS[f]
        except KeyError:
            raise ValidationError(
                f"unknown spectral function {f!r}; choose from {sorted(SPECTRAL_FUNCTIONS)}"
            ) from None
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(f(lam), dtype=float)
    bad = ~np.isfinite(vals)
    if bad.any():
        k = int(np.argmax(bad))
        raise RangeError(
            f"spectral function overflowed at eigenvalue {lam[k]!r}", eigenvalue=float(lam[k])
        )
    return vals


def mat_func(d, f):
    """``Q diag(f(lam)) Q^T`` for ``f`` in ``SPECTRAL_FUNCTIONS`` (or a ufunc)."""
    q = d.eigenvectors
    vals = _apply(f, d.eigenvalues)
    return as_symmetric((q * vals) @ q.T)


def diag_func(d, f):
    """Diagonal of ``mat_func(d, f)`` without forming the full matrix."""
    return (d.eigenvectors**2) @ _apply(f, d.eigenvalues)


def trace_func(d, f):
    """``sum_k f(lam_k)``, the trace of ``mat_func(d, f)``."""
    return float(np.sum(_apply(f, d.eigenvalues)))
