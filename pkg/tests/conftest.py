import math

import numpy as np
import pytest

from cyclewalk.canonicalizer import CanonicalParams
from cyclewalk.phase_ring import TWO_PI, alpha_upper_bound
from cyclewalk.walk_core import LocalFrame, random_gauge


def random_canonical_params(n, rng, r_low=0.05, r_high=0.95):
    """Uniform draw from the canonical ranges, with r bounded away from 0 and 1."""
    r = rng.uniform(r_low, r_high, n)
    theta = rng.uniform(0.0, TWO_PI, n)
    theta[0] = 0.0
    theta[1] = rng.uniform(0.0, TWO_PI / n)
    alpha = rng.uniform(0.0, alpha_upper_bound(n))
    return CanonicalParams(n=n, r=r, theta=theta, alpha=alpha)


def hadamard_frame():
    return LocalFrame(r=1 / math.sqrt(2), a=0.0, b=0.0, c=0.0, d=math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def gauge_factory():
    def make(n, seed):
        return random_gauge(n, np.random.default_rng(seed))
    return make


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
