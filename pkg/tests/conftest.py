"""Pytest configuration and shared fixtures.

This module provides reusable fixtures for testing the endpoint classifier,
including configuration objects, seeded random generators, and common
potentials.

Example:
    >>> def test_something(inverse_square, criteria_config):
    ...     verdict = classify_at_zero(inverse_square, 0, settings=criteria_config)
    ...     assert verdict.kind.is_limit_point
"""

import logging
import random
from fractions import Fraction
from typing import Any

import pytest
from omegaconf import DictConfig, OmegaConf

from endpoint_classifier.algebra import LogPoly, x_power
from endpoint_classifier.core.schemas import CriteriaSettings, HardySettings, WeylSettings
from endpoint_classifier.potentials import SymbolicPotential, parse
from endpoint_classifier.utils.logging import reset_metrics

# ============================================================================
# Configuration Fixtures
# ============================================================================


@pytest.fixture
def test_config() -> DictConfig:
    """Provide a complete test configuration.

    Returns:
        Configuration with every section the library reads, at quick settings.
    """
    return OmegaConf.create(
        {
            "criteria": {
                "window": [1e-12, 1e-3],
                "grid_points": 128,
                "max_N": 4,
                "eps_ladder": ["1/2", "1/4", "1/8"],
                "rel_tol": 1e-9,
                "auto_shrink": False,
                "shrink_rounds": 3,
                "shrink_factor": 1e-3,
            },
            "weyl": {"t_max": 60.0, "rho_max": 0.9, "m": 6},
            "hardy": {"n_grid": 400},
            "multidim": {"ell_max": 3},
            "sweep": {
                "alpha_range": [-1.0, 3.0],
                "c_range": [-1.0, 2.0],
                "points": 5,
                "n_values": [2, 3],
                "ell_values": [0, 1],
                "workers": 2,
            },
            "logging": {
                "level": "ERROR",  # Quiet during tests
                "console": False,
            },
            "output": {"format": "text"},
        }
    )


@pytest.fixture
def criteria_config() -> CriteriaSettings:
    """Provide analytic criteria settings with a coarser grid."""
    return CriteriaSettings(grid_points=128)


@pytest.fixture
def weyl_config() -> WeylSettings:
    """Provide the default Weyl probe settings."""
    return WeylSettings()


@pytest.fixture
def hardy_config() -> HardySettings:
    """Provide Hardy settings with a small grid."""
    return HardySettings(n_grid=400)


# ============================================================================
# Randomness
# ============================================================================


@pytest.fixture
def rng() -> random.Random:
    """Provide a seeded random generator."""
    return random.Random(20240517)


# ============================================================================
# Potential Fixtures
# ============================================================================


@pytest.fixture
def inverse_square() -> SymbolicPotential:
    """``3/4 x^-2``: limit point at 0 for alpha = 0."""
    return SymbolicPotential(x_power(-2, Fraction(3, 4)))


@pytest.fixture
def zero_potential() -> SymbolicPotential:
    """``q = 0``: limit circle at 0 for alpha = 0."""
    return SymbolicPotential(LogPoly.zero())


@pytest.fixture
def log_refined_lc() -> LogPoly:
    """Limit-circle potential one log level below the threshold (alpha = 0)."""
    return parse("3/4 * x^-2 - x^-2 * ln1(x)^-1 - 1/4 * x^-2 * ln1(x)^-1")


@pytest.fixture
def sample_rows() -> list[dict[str, Any]]:
    """Provide a small report table."""
    return [
        {"n": 2, "ell": 0, "alpha_star": "1"},
        {"n": 3, "ell": 0, "alpha_star": "1/2"},
    ]


# ============================================================================
# Cleanup
# ============================================================================


@pytest.fixture(autouse=True)
def clean_metrics():
    """Reset the process-wide metrics store around each test."""
    reset_metrics()
    yield
    reset_metrics()


@pytest.fixture
def restore_root_logger():
    """Restore the root logger handlers and level after a test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
