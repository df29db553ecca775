import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import series_expm
from signbalance.exceptions import RangeError, ValidationError
from signbalance.fixtures import K4_NEGATIVE, WORKED_CORRELATION
from signbalance.linalg import as_symmetric, diag_func, eig_sym, mat_func, trace_func


def sym_matrices(max_n=12, scale=1.0):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.floats(-scale, scale, allow_nan=False), min_size=n * n, max_size=n * n)
        .map(lambda v: np.array(v).reshape(n, n))
        .map(lambda m: (m + m.T) / 2)
    )


def test_exchange_matrix():
    d = eig_sym([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(d.eigenvalues, [1.0, -1.0], atol=1e-15)


def test_identity_reconstructs_exactly():
    d = eig_sym(np.eye(5))
    np.testing.assert_array_equal(d.eigenvalues, np.ones(5))
    np.testing.assert_allclose(d.reconstruct(), np.eye(5), atol=1e-15)


def test_worked_eigenvalues():
    d = eig_sym(WORKED_CORRELATION)
    np.testing.assert_allclose(d.eigenvalues, [1.95627077, 1.70464321, 0.31667046, 0.02241557], atol=1e-7)


def test_symmetrizes_and_freezes():
    m = np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]])
    s = as_symmetric(m)
    assert s[0, 1] == s[1, 0]
    with pytest.raises(ValueError):
        s[0, 0] = 3.0


@pytest.mark.parametrize("bad", [[[1.0, np.nan], [np.nan, 1.0]], [[np.inf]], np.ones((2, 3)), np.ones(3)])
def test_rejects_bad_input(bad):
    with pytest.raises(ValidationError):
        eig_sym(bad)


def test_descending_and_sign_convention():
    rng = np.random.default_rng(0)
    m = rng.normal(size=(8, 8))
    d = eig_sym(m + m.T)
    assert np.all(np.diff(d.eigenvalues) <= 0)
    for col in d.eigenvectors.T:
        first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        assert first > 0


def test_deterministic():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(6, 6))
    a, b = eig_sym(m + m.T), eig_sym(m + m.T)
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


def test_exp_of_zero_and_diagonal():
    np.testing.assert_allclose(mat_func(eig_sym(np.zeros((3, 3))), "exp"), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(mat_func(eig_sym(np.diag([1.0, 2.0])), "exp"),
                               np.diag([math.e, math.e**2]), rtol=1e-14)


def test_negative_k4_exp_against_series():
    d = eig_sym(K4_NEGATIVE)
    e = mat_func(d, "exp")
    np.testing.assert_allclose(e, series_expm(K4_NEGATIVE), atol=1e-12)
    # closed form from eigenvalues {-3, 1, 1, 1}
    assert e[0, 0] == pytest.approx((math.exp(-3) + 3 * math.e) / 4, abs=1e-12)
    assert e[0, 0] == pytest.approx(2.051, abs=5e-4)
    assert trace_func(d, "exp") == pytest.approx(math.exp(-3) + 3 * math.e, rel=1e-12)


def test_trace_of_zero_is_n():
    assert trace_func(eig_sym(np.zeros((7, 7))), "exp") == pytest.approx(7.0)


def test_worked_trace_matches_eigenvalue_sum():
    lam = np.array([1.95627077, 1.70464321, 0.31667046, 0.02241557])
    assert trace_func(eig_sym(WORKED_CORRELATION), "exp") == pytest.approx(np.exp(lam).sum(), rel=1e-7)


def test_neg_exp_is_inverse_of_exp():
    d = eig_sym(WORKED_CORRELATION)
    np.testing.assert_allclose(mat_func(d, "exp") @ mat_func(d, "neg-exp"), np.eye(4), atol=1e-12)


def test_diag_func_matches_matrix_diagonal():
    d = eig_sym(WORKED_CORRELATION)
    np.testing.assert_allclose(diag_func(d, "cosh"), np.diag(mat_func(d, "cosh")), rtol=1e-13)


def test_overflow_reports_eigenvalue():
    with pytest.raises(RangeError) as info:
        mat_func(eig_sym(np.diag([800.0, 0.0])), "exp")
    assert info.value.eigenvalue == pytest.approx(800.0)


def test_unknown_function():
    with pytest.raises(ValidationError):
        mat_func(eig_sym(np.eye(2)), "log")


@settings(max_examples=60, deadline=None)
@given(sym_matrices(max_n=50))
def test_reconstruction_and_orthonormality(m):
    d = eig_sym(m)
    assert np.max(np.abs(d.reconstruct() - m)) <= 1e-9
    assert np.max(np.abs(d.eigenvectors.T @ d.eigenvectors - np.eye(d.n))) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(sym_matrices(max_n=10))
def test_function_identities(m):
    d = eig_sym(m)
    e = mat_func(d, "exp")
    np.testing.assert_allclose(e, mat_func(d, "cosh") + mat_func(d, "sinh"), atol=1e-10)
    tr = trace_func(d, "exp")
    assert abs(np.trace(e) - tr) <= 1e-10 * abs(tr)


@settings(max_examples=60, deadline=None)
@given(sym_matrices(max_n=10, scale=5.0), st.floats(0.01, 5.0))
def test_exp_matches_series(m, radius):
    rho = np.max(np.abs(np.linalg.eigvalsh(m)))
    if rho > 0:
        m = m * radius / rho
    e = mat_func(eig_sym(m), "exp")
    assert np.max(np.abs(e - series_expm(m))) <= 1e-9
