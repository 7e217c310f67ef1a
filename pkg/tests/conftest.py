"""
Shared fixtures: the reference parameter sets used across the test modules.
"""
import numpy as np
import pytest
from discretization.grid import build_grid
from discretization.problem import DelayProblem, NeutralFamily, ParabolicFamily, WaveFamily


@pytest.fixture
def case1_family():
    return ParabolicFamily(a1=1.0, a2=2.3, nu=1.0)


@pytest.fixture
def case2_family():
    return ParabolicFamily(a1=0.0, a2=0.028, nu=1.0)


@pytest.fixture
def wave_family():
    return WaveFamily(c=1.0, lam=0.5)


@pytest.fixture
def neutral_family():
    return NeutralFamily(mu=1.0, c=0.1, r=0.05, d=0.1 * 0.05 / 2)


@pytest.fixture
def case1_problem(case1_family):
    """Error equation on (0, 6), T=6, tau=1.5."""
    return DelayProblem.error_equation(case1_family, tau=1.5, domain=(0.0, 6.0), T=6.0)


@pytest.fixture
def case1_grid():
    return build_grid((0.0, 6.0), 61, 0.1, 6.0, 1.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def case2_problem(case2_family):
    """Error equation on (0, 6), T=6, tau=3."""
    return DelayProblem.error_equation(case2_family, tau=3.0, domain=(0.0, 6.0), T=6.0)


@pytest.fixture
def wave_problem(wave_family):
    return DelayProblem.error_equation(wave_family, tau=3.0, domain=(0.0, 6.0), T=6.0)


@pytest.fixture
def neutral_problem(neutral_family):
    return DelayProblem.error_equation(neutral_family, tau=1.0, domain=(0.0, 6.0), T=5.0)
