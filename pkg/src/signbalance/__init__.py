"""Structural balance, trace-norm conditioning and eigenvalue risk indicators
for signed correlation networks."""

from .balance import (
    ANTIBALANCED,
    BALANCED,
    STRICTLY_UNBALANCED,
    BalanceReport,
    balance_report,
    classify,
    edge_balance,
    global_balance,
    is_balanced,
    local_balance,
)
from .conditioning import (
    ConditioningReport,
    WalkWeights,
    condition_number_trace,
    condition_ratio,
    conditioning_report,
    dominance,
    ratio_gap_approx,
    ratio_via_balances,
    ratio_via_cosh,
    walk_weights,
)
from .diffusion import DiffusionRun, asymptotic_state, perturbation_response, simulate
from .estimators import RollingIndicators, SignedBalance, SystemicEventDetector
from .exceptions import (
    DegenerateRankError,
    DivergenceError,
    NumericalError,
    RangeError,
    SignBalanceError,
    ValidationError,
    WindowError,
)
from .linalg import SpectralDecomposition, eig_sym, mat_func, trace_func
from .risk import IndicatorConfig, amri, average_correlation, crf, empirical_var, mp_upper_bound
from .sgraph import (
    SignedNetwork,
    abs_network,
    binarize,
    from_correlation,
    from_weights,
    negate,
    shift_diagonal,
    switch,
    unsigned_counterpart,
)

__version__ = "0.1.0"
