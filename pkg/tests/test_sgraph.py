import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_weights
from signbalance.balance import BALANCED, classify
from signbalance.exceptions import ValidationError
from signbalance.fixtures import K4_BALANCED, WORKED_CORRELATION
from signbalance.sgraph import (
    BINARY,
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

K4_POS = np.ones((4, 4)) - np.eye(4)
seeds = st.integers(0, 2**32 - 1)


def test_identity_correlation():
    g = from_correlation(np.eye(2))
    assert g.n == 2 and g.kind == "weighted"


@pytest.mark.parametrize("bad, where", [
    ([[1.0, 1.5], [1.5, 1.0]], "(0, 1)"),
    ([[1.0, 0.2], [0.2, 0.9]], "(1, 1)"),
])
def test_correlation_bounds_name_entry(bad, where):
    with pytest.raises(ValidationError, match=rf"\{where[:-1]}\)"):
        from_correlation(bad)


def test_correlation_tolerance():
    c = np.array([[1.0 + 5e-13, 1.0 + 5e-13], [1.0 + 5e-13, 1.0]])
    from_correlation(c)


def test_binary_kind_validated():
    with pytest.raises(ValidationError):
        SignedNetwork(np.array([[0.0, 0.5], [0.5, 0.0]]), BINARY)
    with pytest.raises(ValidationError):
        SignedNetwork(np.zeros((2, 2)), "fuzzy")


def test_worked_abs_eigenvalues():
    g = abs_network(from_correlation(WORKED_CORRELATION))
    np.testing.assert_allclose(g.spectrum.eigenvalues,
                               [2.23949471, 1.27400244, 0.43924268, 0.04726018], atol=1e-7)


def test_abs_of_positive_is_unchanged():
    np.testing.assert_array_equal(abs_network(from_weights(K4_POS)).weights, K4_POS)


def test_unsigned_counterpart_keeps_diagonal():
    w = np.array([[-0.5, -0.3], [-0.3, 2.0]])
    np.testing.assert_array_equal(unsigned_counterpart(from_weights(w)).weights, [[-0.5, 0.3], [0.3, 2.0]])
    np.testing.assert_array_equal(abs_network(from_weights(w)).weights, [[0.5, 0.3], [0.3, 2.0]])


def test_negate():
    np.testing.assert_array_equal(negate(from_weights(K4_POS)).weights, -K4_POS)
    np.testing.assert_array_equal(negate(from_weights(np.zeros((3, 3)))).weights, np.zeros((3, 3)))
    w = random_weights(np.random.default_rng(0), 5, diag=True)
    np.testing.assert_array_equal(negate(negate(from_weights(w))).weights, w)


def test_binarize_rule():
    c = np.array([[1.0, 0.3, -0.3], [0.3, 1.0, 0.1], [-0.3, 0.1, 1.0]])
    b = binarize(from_correlation(c), 0.25)
    np.testing.assert_array_equal(b.weights, [[0, 1, -1], [1, 0, 0], [-1, 0, 0]])
    assert b.kind == BINARY


def test_binarize_tie_and_empty():
    c = np.array([[1.0, 0.25, -0.25], [0.25, 1.0, 0.1], [-0.25, 0.1, 1.0]])
    np.testing.assert_array_equal(binarize(from_correlation(c)).weights[0], [0, 1, -1])
    small = np.array([[1.0, 0.1], [0.1, 1.0]])
    np.testing.assert_array_equal(binarize(from_correlation(small)).weights, np.zeros((2, 2)))


@pytest.mark.parametrize("theta", [0.0, 1.0, -0.2, 1.5])
def test_binarize_threshold_range(theta):
    with pytest.raises(ValidationError):
        binarize(from_correlation(np.eye(2)), theta)


def test_shift_diagonal():
    g = from_correlation(WORKED_CORRELATION)
    h = shift_diagonal(g, 1.0)
    np.testing.assert_array_equal(np.diag(h.weights), np.zeros(4))
    np.testing.assert_array_equal(shift_diagonal(g, 0.0).weights, g.weights)
    np.testing.assert_allclose(shift_diagonal(h, -1.0).weights, g.weights, atol=0)


def test_switch_examples():
    g = from_weights(K4_POS)
    np.testing.assert_array_equal(switch(g, []).weights, K4_POS)
    b = switch(g, [2])
    np.testing.assert_array_equal(b.weights, K4_BALANCED)
    assert classify(b) == BALANCED


def test_switch_out_of_range():
    with pytest.raises(ValidationError):
        switch(from_weights(K4_POS), [4])
    with pytest.raises(ValidationError):
        switch(from_weights(K4_POS), [-1])


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(2, 15), st.floats(0.05, 0.95))
def test_binarize_properties(seed, n, theta):
    rng = np.random.default_rng(seed)
    w = random_weights(rng, n)
    np.fill_diagonal(w, 1.0)
    b = binarize(from_correlation(w), theta).weights
    assert set(np.unique(b)) <= {-1.0, 0.0, 1.0}
    np.testing.assert_array_equal(b, b.T)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(2, 15), st.floats(-3, 3))
def test_structural_properties(seed, n, chi):
    rng = np.random.default_rng(seed)
    g = from_weights(random_weights(rng, n, diag=True))
    np.testing.assert_array_equal(abs_network(negate(g)).weights, abs_network(g).weights)
    s = np.flatnonzero(rng.random(n) < 0.5)
    np.testing.assert_array_equal(abs_network(switch(g, s)).weights, abs_network(g).weights)
    np.testing.assert_array_equal(switch(switch(g, s), s).weights, g.weights)
    h = shift_diagonal(g, chi)
    off = ~np.eye(n, dtype=bool)
    np.testing.assert_array_equal(h.weights[off], g.weights[off])
