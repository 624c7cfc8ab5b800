import numpy as np
import pytest

from hanner.integrate import gauss_jacobi_rule

_RULES = {}


@pytest.fixture
def rule_for():
    """Cached quadrature rules keyed by (m, d)."""

    def get(m, d):
        key = (m, d)
        if key not in _RULES:
            _RULES[key] = gauss_jacobi_rule(m, d)
        return _RULES[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
