"""Reference networks with published values and their comparison tolerances."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "WORKED_CORRELATION",
    "WORKED_EXPECTED",
    "K4_BALANCED",
    "K4_F",
    "K4_NEGATIVE",
    "TOY_EXPECTED",
    "TOY_TOL",
    "TOY_NETWORKS",
    "WORKED_EPSILON",
    "WORKED_NODE",
    "FixtureCheck",
    "worked_checks",
    "toy_checks",
]

WORKED_CORRELATION = np.array([
    [1.0, 0.76442737, 0.33531137, 0.2356325],
    [0.76442737, 1.0, 0.05137479, -0.3490933],
    [0.33531137, 0.05137479, 1.0, 0.7348348],
    [0.2356325, -0.3490933, 0.7348348, 1.0],
])

# (value, tolerance)
WORKED_EXPECTED = {
    "kappa": (0.9616991, 1e-6),
    "local_kappa": ((0.9596102, 0.9519667, 0.9832867, 0.9526123), 1e-6),
    "eigenvalues": ((1.95627077, 1.70464321, 0.31667046, 0.02241557), 1e-7),
    "unsigned_eigenvalues": ((2.23949471, 1.27400244, 0.43924268, 0.04726018), 1e-7),
    "cond_signed": (30.37852, 1e-4),
    "cond_unsigned": (30.88739, 1e-4),
    "ratio": (0.9835251, 1e-6),
    "self_amplification_signed": (7.640996, 1e-5),
    "self_amplification_unsigned": (7.962604, 1e-5),
}
WORKED_EPSILON = 2.0
WORKED_NODE = 0


def _k4(negative_edges):
    a = np.ones((4, 4)) - np.eye(4)
    for i, j in negative_edges:
        a[i, j] = a[j, i] = -1.0
    return a


# node 2 opposes the other three: a balanced bipartition
K4_BALANCED = _k4([(0, 2), (1, 2), (2, 3)])
# two negative edges sharing node 2
K4_F = _k4([(1, 2), (2, 3)])
K4_NEGATIVE = -(np.ones((4, 4)) - np.eye(4))

TOY_TOL = 5e-4

# each entry: (network, quantity, argument, expected)
TOY_EXPECTED = (
    ("b", "state", (1, 1, 1, 1), (10.227, 10.227, -9.491, 10.227)),
    ("b", "state", (2, 1, 1, 1), (15.524, 15.156, -14.420, 15.156)),
    ("f", "kappa", None, 0.592),
    ("f", "local_kappa", None, (0.508, 0.677, 0.508, 0.677)),
    ("f", "state", (1, 1, 1, 1), (6.855, 6.800, -1.418, 6.800)),
    ("k", "kappa", None, 0.387),
    ("k", "state", (1.2, 1, 1, 1), (0.460, -0.084, -0.084, -0.084)),
    ("k", "state", (1.4, 0.7, 1, 0.7), (1.271, -0.632, 0.183, -0.632)),
)

TOY_NETWORKS = {"b": K4_BALANCED, "f": K4_F, "k": K4_NEGATIVE}


@dataclass(frozen=True)
class FixtureCheck:
    label: str
    expected: tuple
    computed: tuple
    tol: float

    @property
    def max_error(self):
        return float(np.max(np.abs(np.subtract(self.computed, self.expected))))

    @property
    def passed(self):
        return self.max_error <= self.tol


def _tuple(v):
    return tuple(float(x) for x in np.atleast_1d(v))


def worked_checks():
    """Compare the worked 4x4 correlation example against its reference values."""
    from .balance import global_balance, local_balance
    from .conditioning import condition_number_trace, condition_ratio
    from .diffusion import perturbation_response
    from .sgraph import from_correlation, unsigned_counterpart

    g = from_correlation(WORKED_CORRELATION)
    gu = unsigned_counterpart(g)
    x0 = np.zeros(g.n)
    computed = {
        "kappa": global_balance(g),
        "local_kappa": local_balance(g),
        "eigenvalues": g.spectrum.eigenvalues,
        "unsigned_eigenvalues": g.unsigned_spectrum.eigenvalues,
        "cond_signed": condition_number_trace(g),
        "cond_unsigned": condition_number_trace(g, unsigned=True),
        "ratio": condition_ratio(g),
        "self_amplification_signed":
            perturbation_response(g, x0, WORKED_NODE, WORKED_EPSILON)[1],
        "self_amplification_unsigned":
            perturbation_response(gu, x0, WORKED_NODE, WORKED_EPSILON)[1],
    }
    return [FixtureCheck(f"worked:{k}", _tuple(v), _tuple(computed[k]), tol)
            for k, (v, tol) in WORKED_EXPECTED.items()]


def toy_checks():
    """Compare the three 4-node toy networks against their reference values."""
    from .balance import global_balance, local_balance
    from .diffusion import asymptotic_state
    from .sgraph import from_weights

    out = []
    for name, quantity, arg, expected in TOY_EXPECTED:
        g = from_weights(TOY_NETWORKS[name])
        if quantity == "state":
            value = asymptotic_state(g, arg)
            label = f"toy:{name}:state{list(arg)}"
        elif quantity == "kappa":
            value, label = global_balance(g), f"toy:{name}:kappa"
        else:
            value, label = local_balance(g), f"toy:{name}:local_kappa"
        out.append(FixtureCheck(label, _tuple(expected), _tuple(value), TOY_TOL))
    return out
