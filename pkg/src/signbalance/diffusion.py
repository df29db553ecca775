"""Non-conservative information diffusion on a signed network.

A node forwards only what it received in the previous step, damped by
``alpha(t)``::

    dx(t+1) = alpha(t) A dx(t),   dx(0) = x0,   x(t) = x(t-1) + dx(t)

With ``alpha(k) = 1/(k+1)`` the state is the truncated exponential series
``x(t) = sum_{tau<=t} A^tau / tau! x0`` and converges to ``e^A x0``.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DivergenceError, ValidationError
from .linalg import mat_func

__all__ = [
    "DiffusionRun",
    "factorial_schedule",
    "simulate",
    "asymptotic_state",
    "perturbation_response",
]

DIVERGENCE_BOUND = 1e12


def factorial_schedule(k):
    return 1.0 / (k + 1)


@dataclass(frozen=True, eq=False)
class DiffusionRun:
    steady_state: np.ndarray
    converged: bool
    residual: float
    steps: int
    trajectory: np.ndarray = None


def _check_vector(g, x0):
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (g.n,):
        raise ValidationError(f"initial state has shape {x0.shape}, expected ({g.n},)")
    return x0


def simulate(g, x0, schedule=factorial_schedule, t_max=60, tol=1e-12, store_trajectory=False,
             process="incremental"):
    """Run the diffusion for `t_max` steps.

    Parameters
    ----------
    g : SignedNetwork
    x0 : array_like of shape (n,)
    schedule : callable, optional
        ``k -> alpha(k)`` with ``0 < alpha(k) <= 1``.  Ignored for
        ``process="broadcast"``.
    t_max : int
    tol : float
        The run is flagged converged when the last increment has max-norm
        at most `tol`.
    store_trajectory : bool
        Keep every state ``x(0), ..., x(t_max)`` as rows of ``trajectory``.
    process : {"incremental", "broadcast"}
        ``"broadcast"`` is the full-replication variant
        ``x(t) = (I + A) x(t-1)``, kept for testing.

    Raises
    ------
    DivergenceError
        The state max-norm exceeded 1e12; ``.last_finite_t`` is the last
        step below the bound.
    """
    x0 = _check_vector(g, x0)
    if t_max < 1:
        raise ValidationError(f"t_max must be >= 1, got {t_max}")
    if process not in ("incremental", "broadcast"):
        raise ValidationError(f"unknown process {process!r}")
    a = g.weights
    x = x0.copy()
    dx = x0.copy()
    traj = [x0.copy()] if store_trajectory else None
    for t in range(t_max):
        if process == "broadcast":
            dx = a @ x
        else:
            alpha = schedule(t)
            if not 0.0 < alpha <= 1.0:
                raise ValidationError(f"schedule gave alpha({t}) = {alpha!r}, outside (0, 1]")
            dx = alpha * (a @ dx)
        x = x + dx
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > DIVERGENCE_BOUND:
            raise DivergenceError(f"state norm exceeded {DIVERGENCE_BOUND:g} at t={t + 1}", last_finite_t=t)
        if store_trajectory:
            traj.append(x.copy())
    gap = x - asymptotic_state(g, x0)
    return DiffusionRun(
        steady_state=x,
        converged=bool(np.max(np.abs(dx)) <= tol),
        residual=float(np.max(np.abs(gap))),
        steps=t_max,
        trajectory=np.array(traj) if store_trajectory else None,
    )


def asymptotic_state(g, x0):
    """``x_inf = e^A x0``."""
    return mat_func(g.spectrum, "exp") @ _check_vector(g, x0)


def perturbation_response(g, x0, node, epsilon):
    """Effect of perturbing ``x0`` by ``epsilon * e_node``.

    Returns ``(epsilon * [e^A]_{:, node}, epsilon * [e^A]_{node, node})``,
    the shift of the whole steady state and the self-amplification at
    `node`.  The response is exactly linear in `epsilon` and does not
    depend on `x0` beyond its shape.
    """
    _check_vector(g, x0)
    if not 0 <= node < g.n:
        raise ValidationError(f"node {node} out of range for n={g.n}")
    col = mat_func(g.spectrum, "exp")[:, node]
    return epsilon * col, float(epsilon * col[node])
