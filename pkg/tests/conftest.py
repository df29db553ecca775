import math

import numpy as np
import pytest

from signbalance.pipeline.data import ReturnPanel

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion and echo it."""

    def _report(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return passed

    return _report


def series_expm(m, terms=60):
    """Truncated power series sum_{k<=terms} M^k / k!."""
    m = np.asarray(m, dtype=float)
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms + 1):
        term = term @ m / k
        out = out + term
    return out


def random_weights(rng, n, diag=False, density=1.0):
    """Symmetric weights with entries U[-1, 1]; optional random diagonal."""
    w = rng.uniform(-1.0, 1.0, (n, n))
    if density < 1.0:
        w *= rng.random((n, n)) < density
    w = np.triu(w, 1)
    w = w + w.T
    if diag:
        np.fill_diagonal(w, rng.uniform(-1.0, 1.0, n))
    return w


def balanced_weights(rng, n, diag=False):
    """Balanced network: |W| conjugated by a random +-1 switching."""
    w = np.abs(random_weights(rng, n, diag=False))
    if diag:
        np.fill_diagonal(w, rng.uniform(-1.0, 1.0, n))
    s = rng.choice([-1.0, 1.0], n)
    return s[:, None] * w * s[None, :]


def planted_panel(t=400, n=30, crashes=(), drift=0.0005, noise=0.01, seed=0):
    """Return panel whose cross-sectional mean is `drift` except on planted days.

    `crashes` is a sequence of ``(start, length, level)``.  Idiosyncratic
    noise is demeaned across assets so it never moves the market mean.
    """
    rng = np.random.default_rng(seed)
    m = np.full(t, drift)
    for start, length, level in crashes:
        m[start:start + length] = level
    e = rng.normal(0.0, noise, (n, t))
    e -= e.mean(axis=0, keepdims=True)
    return ReturnPanel.from_array(m[None, :] + e)


def brute_force_events(market_mean, tau, width):
    """Event (first day, last day) pairs by explicit loops over windows."""
    t = len(market_mean)
    flagged = []
    for s in range(t - width + 1):
        if math.fsum(market_mean[s:s + width]) / width < tau:
            flagged.append(s)
    spans = []
    for s in flagged:
        a, b = s, s + width - 1
        if spans and a <= spans[-1][1] + 1:
            spans[-1] = (spans[-1][0], max(spans[-1][1], b))
        else:
            spans.append((a, b))
    return spans
