"""Unit tests for reference solutions and their verification."""

import math
from fractions import Fraction

import numpy as np
import pytest

from endpoint_classifier.algebra import LogPoly, apply_tau, log_product, x_power
from endpoint_classifier.core.schemas import L2Judgement
from endpoint_classifier.criteria import q_alpha_0_beta, q_alpha_N
from endpoint_classifier.solutions import (
    PolySolution,
    ReductionOfOrder,
    bessel_coupling,
    bessel_solution,
    bessel_solution_fn,
    euler_residuals,
    euler_solutions,
    gamma_exponents,
    l2_dichotomy,
    residual_numeric,
    solution_table,
    verify_residuals,
    y_N,
    y_N_eps,
    y_tilde,
    zero_energy_solutions,
)
from endpoint_classifier.utils.exceptions import DomainError, ParameterError

# ============================================================================
# Log-Power Solutions
# ============================================================================


class TestLogPowerSolutions:
    """Test suite for y_N, y_N_eps and exact residual checks."""

    def test_y_0(self):
        """Test that y_0 is x^{-1/2}."""
        assert y_N(0) == x_power(Fraction(-1, 2))

    def test_y_N_shape(self):
        """Test the log factors of y_2."""
        assert y_N(2) == x_power(Fraction(-1, 2)) * log_product(2, Fraction(-1, 2))

    def test_y_N_eps_deepest_exponent(self):
        """Test that eps lowers only the deepest log exponent."""
        (term,) = y_N_eps(2, Fraction(1, 2)).terms
        assert term.exponent(1) == Fraction(-1, 2)
        assert term.exponent(2) == Fraction(-3, 4)

    @pytest.mark.parametrize("N", [-1, 5])
    def test_y_N_depth_range(self, N):
        """Test the depth range of y_N."""
        with pytest.raises(ParameterError):
            y_N(N)

    def test_y_N_eps_rejects_negative_eps(self):
        """Test that eps must be nonnegative."""
        with pytest.raises(ParameterError):
            y_N_eps(1, Fraction(-1, 2))

    @pytest.mark.parametrize("alpha", [0, 1, -1, "1/3"])
    def test_log_power_family_is_exact(self, alpha):
        """Test that every log-power residual vanishes."""
        checks = verify_residuals("log-power", alpha, 4)
        assert [c.N for c in checks] == [0, 1, 2, 3, 4]
        assert all(c.zero for c in checks)

    @pytest.mark.parametrize("eps", ["1/2", "1/10", "3/2"])
    def test_log_power_eps_family_is_exact(self, eps):
        """Test that every eps-shifted residual vanishes."""
        checks = verify_residuals("log-power-eps", 0, 4, eps=eps)
        assert [c.N for c in checks] == [1, 2, 3, 4]
        assert all(c.zero for c in checks)
        assert checks[0].eps == str(Fraction(eps))

    def test_mismatched_pair_leaves_terms(self):
        """Test that pairing y_1 with the depth-two potential leaves a residual."""
        residual = apply_tau(0, q_alpha_N(0, 2), y_N(1))
        assert not residual.is_zero()

    @pytest.mark.parametrize(
        "family,max_N,eps",
        [("log-power", 5, None), ("log-power-eps", 2, None), ("euler", 2, None)],
    )
    def test_invalid_requests(self, family, max_N, eps):
        """Test unknown families, missing eps and depths above four."""
        with pytest.raises(ParameterError):
            verify_residuals(family, 0, max_N, eps=eps)


# ============================================================================
# Euler Exponents
# ============================================================================


class TestEulerExponents:
    """Test suite for the Euler comparison equation."""

    def test_rational_exponents(self):
        """Test exponents 0 and 1 for alpha = 0, beta = 3/4."""
        pair = gamma_exponents(0, Fraction(3, 4))
        assert pair.exact == (Fraction(0), Fraction(1))
        assert pair.is_real
        assert not pair.degenerate

    def test_exponents_sum_to_one_minus_alpha(self):
        """Test the sum of the indicial roots."""
        pair = gamma_exponents(Fraction(1, 2), Fraction(1, 2))
        assert pair.exact == (Fraction(0), Fraction(1, 2))
        assert (pair.gamma1 + pair.gamma2).real == pytest.approx(0.5)

    def test_degenerate_root(self):
        """Test the double root at beta = (2 - alpha)^2 / 4."""
        pair = gamma_exponents(0, 1)
        assert pair.degenerate
        assert pair.exact == (Fraction(1, 2), Fraction(1, 2))

    def test_complex_exponents(self):
        """Test conjugate exponents beyond the double root."""
        pair = gamma_exponents(0, 2)
        assert not pair.is_real
        assert pair.exact is None
        assert pair.gamma1 == pytest.approx(complex(0.5, -1.0))
        assert pair.gamma2 == pytest.approx(complex(0.5, 1.0))

    def test_irrational_exponents(self):
        """Test a real but irrational pair."""
        pair = gamma_exponents(0, Fraction(1, 2))
        assert pair.is_real
        assert pair.exact is None
        assert pair.gamma2.real == pytest.approx(0.5 + math.sqrt(2) / 2)

    @pytest.mark.parametrize("alpha,beta", [(0, "3/4"), ("1/2", "1/2"), (0, 1), (-1, 2)])
    def test_solutions_are_exact(self, alpha, beta):
        """Test that both exact Euler solutions have zero residual."""
        r1, r2 = euler_residuals(alpha, beta)
        assert r1.is_zero()
        assert r2.is_zero()

    def test_degenerate_second_solution_has_log(self):
        """Test the logarithmic second solution in the degenerate case."""
        _, y2 = euler_solutions(0, 1)
        assert y2 == LogPoly.monomial(1, Fraction(1, 2), {1: 1})

    def test_power_solution_matches_exponent(self):
        """Test apply_tau on x^gamma directly."""
        beta = Fraction(3, 4)
        for gamma in gamma_exponents(0, beta).exact:
            assert apply_tau(0, q_alpha_0_beta(0, beta), x_power(gamma)).is_zero()

    def test_irrational_solutions_refused(self):
        """Test that exact solutions need rational exponents."""
        with pytest.raises(ParameterError):
            euler_solutions(0, 2)

    @pytest.mark.parametrize("alpha,beta", [(2, 1), (0, 0), (0, -1)])
    def test_invalid_parameters(self, alpha, beta):
        """Test the preconditions on alpha and beta."""
        with pytest.raises(ParameterError):
            gamma_exponents(alpha, beta)


# ============================================================================
# Numerical Solutions
# ============================================================================


class TestReductionOfOrder:
    """Test suite for second solutions by quadrature."""

    def test_closed_form(self):
        """Test against x^{-1/2} (c^2 - x^2) / 2 for y = x^{-1/2}, alpha = 0."""
        second = ReductionOfOrder(0, y_N(0), anchor=1.0)
        x = 0.5
        assert second(x) == pytest.approx(x**-0.5 * (1 - x * x) / 2, rel=1e-9)

    def test_function_form(self):
        """Test that y_tilde evaluates the upper-orientation second solution."""
        assert y_tilde(0, y_N(0), 2.0, 1.0) == pytest.approx(1.5, rel=1e-9)

    @pytest.mark.parametrize("orientation,sign", [("upper", -1.0), ("lower", 1.0)])
    def test_wronskian(self, orientation, sign):
        """Test that the weighted Wronskian is -1 (upper) or +1 (lower)."""
        second = ReductionOfOrder(0, y_N(1), anchor=0.1, orientation=orientation)
        assert second.wronskian(1e-3) == pytest.approx(sign, rel=1e-8)

    def test_solves_equation(self):
        """Test that the second solution has a small finite-difference residual."""
        q = q_alpha_N(0, 1)
        second = ReductionOfOrder(0, y_N(1), anchor=0.1)
        x = 1e-3
        residual = residual_numeric(0, q.evaluate, second, x, 1e-3 * x)
        assert abs(residual) < 1e-3 * abs(q.evaluate(x) * second(x))

    def test_description(self):
        """Test the provenance text."""
        second = ReductionOfOrder(0, y_N(0), anchor=1.0)
        assert "reduction of order" in second.description
        assert "upper" in second.description

    def test_unknown_orientation(self):
        """Test that orientations other than upper and lower are refused."""
        with pytest.raises(ParameterError):
            ReductionOfOrder(0, y_N(0), anchor=1.0, orientation="sideways")

    def test_nonpositive_point(self):
        """Test that the integral is refused at x <= 0."""
        with pytest.raises(DomainError):
            ReductionOfOrder(0, y_N(0), anchor=1.0).integral(0.0)


class TestBesselSolutions:
    """Test suite for Bessel-type solutions of tau_{beta,gamma}."""

    def test_coupling(self):
        """Test the coupling for a few (beta, gamma)."""
        assert bessel_coupling(0, 0.5) == pytest.approx(0.0)
        assert bessel_coupling(1, 1.0) == pytest.approx(0.25)
        assert bessel_coupling(0, 0.0) == pytest.approx(-0.25)

    def test_free_case_is_sine(self):
        """Test that beta = 0, gamma = 1/2, z = 1 reduces to a scaled sine."""
        y = bessel_solution(0, 0.5, 1.0, 1, 1.0)
        assert y.real == pytest.approx(math.sqrt(2 / math.pi) * math.sin(1.0), rel=1e-12)
        assert abs(y.imag) < 1e-14

    @pytest.mark.parametrize("beta,gamma,j", [(1, 1.0, 2), (0, 0.5, 2), (1, 1.5, 1)])
    def test_solves_equation(self, beta, gamma, j):
        """Test that (tau - z) y has a small finite-difference residual."""
        z = 1j
        coupling = bessel_coupling(beta, gamma)

        def shifted(x: float) -> complex:
            return coupling * x ** (beta - 2) - z

        y = bessel_solution_fn(beta, gamma, z, j)
        x = 0.1
        residual = residual_numeric(float(beta), shifted, y, x, 1e-3 * x)
        assert abs(residual) < 1e-3 * (abs(coupling * x ** (beta - 2)) + 1) * abs(y(x))

    @pytest.mark.parametrize(
        "args", [(2, 0.5, 1j, 1, 0.1), (0, -1.0, 1j, 1, 0.1), (0, 0.5, 1j, 3, 0.1)]
    )
    def test_invalid_parameters(self, args):
        """Test beta = 2, negative gamma and j outside {1, 2}."""
        with pytest.raises(ParameterError):
            bessel_solution(*args)

    def test_nonpositive_x(self):
        """Test that x must be positive."""
        with pytest.raises(DomainError):
            bessel_solution(0, 0.5, 1j, 1, 0.0)


class TestZeroEnergySolutions:
    """Test suite for principal and nonprincipal shapes."""

    def test_power_shapes(self):
        """Test gamma > 0 shapes."""
        principal, nonprincipal = zero_energy_solutions(0, 0.5, [0.25])
        assert principal[0] == pytest.approx(0.25)
        assert nonprincipal[0] == pytest.approx(1.0)

    def test_logarithmic_shape(self):
        """Test the gamma = 0 nonprincipal shape."""
        _, nonprincipal = zero_energy_solutions(0, 0.0, [0.25])
        assert nonprincipal[0] == pytest.approx(0.5 * math.log(4.0))

    def test_beta_two(self):
        """Test the beta = 2 nonprincipal shape."""
        _, nonprincipal = zero_energy_solutions(2, 0.5, [0.25])
        assert nonprincipal[0] == pytest.approx(2.0 * math.log(4.0))

    def test_domain(self):
        """Test that points must lie in (0, 1)."""
        with pytest.raises(DomainError):
            zero_energy_solutions(0, 0.5, [0.5, 1.0])


# ============================================================================
# Residual Tables
# ============================================================================


class TestResiduals:
    """Test suite for finite-difference residuals."""

    def test_exact_solution_has_small_residual(self):
        """Test the residual of y_1 against q_{0,1}."""
        q = q_alpha_N(0, 1)
        y = PolySolution(y_N(1))
        x = 1e-3
        residual = residual_numeric(0, q.evaluate, y, x, 1e-3 * x)
        assert abs(residual) < 1e-5 * abs(q.evaluate(x) * y(x))

    def test_wrong_potential_has_large_residual(self):
        """Test that an unrelated potential leaves an O(1) residual."""
        q = q_alpha_N(0, 1)
        y = PolySolution(y_N(0))
        x = 1e-3
        residual = residual_numeric(0, q.evaluate, y, x, 1e-3 * x)
        assert abs(residual) > 1e-2 * abs(q.evaluate(x) * y(x))

    def test_stencil_must_stay_positive(self):
        """Test that the stencil may not reach x <= 0."""
        with pytest.raises(DomainError):
            residual_numeric(0, lambda x: 0.0, PolySolution(y_N(0)), 1e-3, 5e-4)

    def test_table_rows(self):
        """Test the rows of a solution table."""
        q = q_alpha_N(0, 2)
        xs = [1e-3, 1e-4, 1e-5]
        rows = solution_table(0, q.evaluate, PolySolution(y_N(2)), xs)
        assert [row[0] for row in rows] == xs
        for x, y, residual in rows:
            assert y == pytest.approx(y_N(2).evaluate(x))
            assert abs(residual) < 1e-5 * abs(q.evaluate(x) * y)


# ============================================================================
# Square Integrability
# ============================================================================


class TestL2Dichotomy:
    """Test suite for square integrability in iterated-log coordinates."""

    @pytest.mark.parametrize("N", [0, 1, 2, 3])
    def test_log_power_solutions_not_l2(self, N):
        """Test that every y_N just fails to be square integrable."""
        result = l2_dichotomy(y_N(N))
        assert result.judgement is L2Judgement.NOT_L2
        assert result.growth >= 1e4

    @pytest.mark.parametrize("N", [1, 2])
    def test_eps_solutions_l2(self, N):
        """Test that the extra log power makes y_{N,eps} square integrable."""
        result = l2_dichotomy(y_N_eps(N, Fraction(1, 2)))
        assert result.judgement is L2Judgement.L2
        assert all(r < 0.95 for r in result.ratios[-3:])

    def test_bounded_function_l2(self):
        """Test that the constant 1 is square integrable at 0."""
        result = l2_dichotomy(LogPoly.constant(1))
        assert result.judgement is L2Judgement.L2

    def test_depth_recorded(self):
        """Test the coordinate depth."""
        assert l2_dichotomy(y_N(2)).depth == 2
        assert l2_dichotomy(y_N(0)).depth == 1

    def test_single_monomial_required(self):
        """Test that sums are refused."""
        with pytest.raises(ParameterError):
            l2_dichotomy(y_N(0) + y_N(1))

    def test_masses_are_logs(self):
        """Test that window masses are natural logs of the mass in each window."""
        result = l2_dichotomy(y_N(1), windows=4)
        assert np.exp(result.log_masses) == pytest.approx([1.0, 2.0, 4.0, 8.0], rel=1e-8)
