"""Unit tests for the discrete Hardy-inequality checks."""

import math
from fractions import Fraction

import numpy as np
import pytest

from endpoint_classifier.algebra import LogPoly, log_partial_products_sum, x_power
from endpoint_classifier.numerics import (
    assemble,
    form_value,
    hardy_check,
    hardy_potential,
    hardy_refined_check,
    hardy_sweep,
    min_rayleigh,
    sturm_count,
)
from endpoint_classifier.numerics.hardy import geometric_nodes
from endpoint_classifier.utils.exceptions import ParameterError

# ============================================================================
# Assembly
# ============================================================================


class TestAssemble:
    """Test suite for the tridiagonal pencil."""

    def test_dirichlet_laplacian(self, hardy_config):
        """Test that V = 0 on (0, 1) gives the first Dirichlet eigenvalue pi^2."""
        form = assemble(0, LogPoly.zero(), 1.0, n_grid=2000, settings=hardy_config)
        assert form.size == 1998
        assert min_rayleigh(form, hardy_config) == pytest.approx(math.pi**2, rel=0.02)

    def test_sturm_count_brackets_first_eigenvalue(self, hardy_config):
        """Test eigenvalue counts below, between and above pi^2 and 4 pi^2."""
        form = assemble(0, LogPoly.zero(), 1.0, n_grid=400, settings=hardy_config)
        assert sturm_count(form, -1.0) == 0
        assert sturm_count(form, 5.0) == 0
        assert sturm_count(form, 20.0) == 1
        assert sturm_count(form, 60.0) == 2

    def test_energy_matches_elementwise_form(self, hardy_config):
        """Test that the assembled matrices reproduce the element-by-element form."""
        V = hardy_potential(0, 1, "squared")
        form = assemble(0, V, 1.0, gamma=math.e, n_grid=200, settings=hardy_config)
        f = np.random.default_rng(7).standard_normal(form.size)
        assert form.energy(f) == pytest.approx(form_value(form, f), rel=1e-9)

    def test_mass_of_constant(self, hardy_config):
        """Test the consistent mass of the interior hat sum."""
        form = assemble(1, LogPoly.zero(), 1.0, n_grid=100, settings=hardy_config)
        h = np.diff(form.nodes)
        # 1 inside, linear to 0 on the two end elements
        expected = (form.nodes[-2] - form.nodes[1]) + (h[0] + h[-1]) / 3.0
        assert form.mass(np.ones(form.size)) == pytest.approx(expected, rel=1e-10)

    def test_wrong_vector_length(self, hardy_config):
        """Test that energy and mass check the vector length."""
        form = assemble(0, LogPoly.zero(), 1.0, n_grid=100, settings=hardy_config)
        with pytest.raises(ParameterError):
            form.energy(np.ones(3))

    def test_geometric_nodes(self):
        """Test the node range and the rho check."""
        nodes = geometric_nodes(2.0, 101, 1e-4)
        assert nodes[0] == pytest.approx(2e-4)
        assert nodes[-1] == pytest.approx(2.0)
        assert np.allclose(nodes[1:] / nodes[:-1], nodes[1] / nodes[0])
        with pytest.raises(ParameterError):
            geometric_nodes(0.0, 101)

    def test_small_grid_refused(self):
        """Test that fewer than 100 nodes are refused."""
        with pytest.raises(ParameterError):
            assemble(0, LogPoly.zero(), 1.0, n_grid=50)

    @pytest.mark.parametrize("gamma", [None, 1.0, 2.0])
    def test_log_shift_constraint(self, gamma):
        """Test that depth-one potentials need gamma >= e rho."""
        with pytest.raises(ParameterError):
            assemble(0, hardy_potential(0, 1), 1.0, gamma=gamma, n_grid=100)


# ============================================================================
# Hardy Potentials
# ============================================================================


class TestHardyPotential:
    """Test suite for hardy_potential."""

    def test_power_form(self):
        """Test -(1-alpha)^2/4 x^(alpha-2)."""
        assert hardy_potential(0, form="power") == x_power(-2, Fraction(-1, 4))
        assert hardy_potential(3, form="power") == x_power(1, -1)

    def test_power_form_with_delta(self):
        """Test that delta lowers the coefficient."""
        assert hardy_potential(0, form="power", delta="1/2") == x_power(-2, Fraction(-3, 4))

    def test_squared_form(self):
        """Test the squared log-refined potential."""
        expected = x_power(-2, Fraction(-1, 4)) + x_power(
            -2, Fraction(-1, 4)
        ) * log_partial_products_sum(2, -2)
        assert hardy_potential(0, 2, "squared") == expected

    def test_first_power_form(self):
        """Test the first-power log-refined potential at alpha = 0."""
        expected = x_power(-2, Fraction(3, 4)) + x_power(-2, -1) * log_partial_products_sum(1, -1)
        assert hardy_potential(0, 1, "first-power") == expected

    @pytest.mark.parametrize(
        "N,form", [(1, "power"), (0, "squared"), (4, "squared"), (1, "cubic")]
    )
    def test_invalid(self, N, form):
        """Test depth and form validation."""
        with pytest.raises(ParameterError):
            hardy_potential(0, N, form)


# ============================================================================
# Checks
# ============================================================================


class TestHardyCheck:
    """Test suite for hardy_check and its variants."""

    @pytest.mark.parametrize("alpha", [0, "1/2", 3])
    def test_power_form_holds(self, alpha, hardy_config):
        """Test the weighted Hardy inequality with the sharp constant."""
        result = hardy_check(alpha, 0, 1.0, form="power", settings=hardy_config)
        assert result.passed
        assert result.min_quotient >= 0.0
        assert result.n_grid == 400

    def test_power_form_fails_above_sharp_constant(self, hardy_config):
        """Test that raising the constant by 1/2 gives a negative quotient."""
        result = hardy_check(0, 0, 1.0, form="power", delta="1/2", settings=hardy_config)
        assert not result.passed
        assert result.min_quotient < 0.0

    @pytest.mark.parametrize("N", [1, 2])
    def test_refined_form_holds(self, N, hardy_config):
        """Test the log-refined inequality with gamma = e_N rho."""
        gamma = math.e if N == 1 else math.exp(math.e)
        assert hardy_refined_check(0, N, 1.0, gamma, settings=hardy_config)

    def test_result_report_uses_pass_alias(self, hardy_config):
        """Test that reports name the flag 'pass'."""
        report = hardy_check(0, 0, 1.0, form="power", settings=hardy_config).to_report()
        assert "pass" in report
        assert "passed" not in report

    def test_sweep(self, hardy_config):
        """Test that a sweep runs once per grid size."""
        results = hardy_sweep(0, 0, 1.0, None, [100, 200], form="power", settings=hardy_config)
        assert [r.n_grid for r in results] == [100, 200]
        assert all(r.passed for r in results)
