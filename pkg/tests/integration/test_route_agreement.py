"""Integration tests for agreement between the analytic and numerical routes.

The exact Euler classification, the dominance criteria and the radial-channel
tables are each checked against the Weyl probes on the same problem.
"""

from fractions import Fraction

import pytest

from endpoint_classifier.core.schemas import Classification, Endpoint, agree
from endpoint_classifier.criteria import classify_at_zero, classify_euler, threshold_lp
from endpoint_classifier.multidim import channel, channel_problem, classify_channel
from endpoint_classifier.numerics import SLProblem, classify_endpoint, euler_problem
from endpoint_classifier.potentials import SymbolicPotential, parse

# Nonoscillatory Euler cases: c = (3/4 - alpha/2) +- 1/4 on either side of the threshold,
# then cases farther from it. Both indicial roots are real throughout.
EULER_CASES = [
    (-1, 1),
    (-1, Fraction(3, 2)),
    (0, Fraction(1, 2)),
    (0, 1),
    (1, 0),
    (1, Fraction(1, 2)),
    (0, 0),
    (0, 2),
    (Fraction(1, 2), 0),
    (Fraction(1, 2), Fraction(1, 4)),
    (Fraction(1, 2), 2),
    (2, 1),
]


# ============================================================================
# Euler Potentials
# ============================================================================


@pytest.mark.integration
@pytest.mark.slow
class TestEulerAgreement:
    """Integration tests for exact Euler verdicts against Weyl probes."""

    @pytest.mark.parametrize("alpha,c", EULER_CASES)
    def test_probes_reproduce_exact_class(self, alpha, c, weyl_config):
        """Test that the probes decide the same coarse class as the indicial roots."""
        exact = classify_euler(alpha, c)
        numeric = classify_endpoint(euler_problem(alpha, c), Endpoint.ZERO, weyl_config)

        assert numeric.kind is exact.kind.coarse()
        assert len(numeric.probes) == 2
        assert numeric.deepest_x <= 1e-12

    def test_case_table_covers_both_classes(self):
        """Test that the case table exercises limit point and limit circle."""
        kinds = {classify_euler(alpha, c).kind.coarse() for alpha, c in EULER_CASES}
        assert kinds == {Classification.LIMIT_POINT, Classification.LIMIT_CIRCLE}


# ============================================================================
# Dominance Criteria
# ============================================================================


@pytest.mark.integration
@pytest.mark.slow
class TestCriteriaAgreement:
    """Integration tests for the dominance criteria against Weyl probes."""

    @pytest.mark.parametrize(
        "alpha,text",
        [
            (0, "0"),
            (0, "3/4 * x^-2"),
            (0, "2 * x^-2 + x^-1"),
            ("1/2", "-x^-1"),
            (1, "x^-1"),
        ],
    )
    def test_power_potentials(self, alpha, text, criteria_config, weyl_config):
        """Test that symbolic power potentials get compatible verdicts."""
        source = SymbolicPotential(parse(text))
        analytic = classify_at_zero(source, alpha, settings=criteria_config)
        numeric = classify_endpoint(SLProblem.from_potential(alpha, source), settings=weyl_config)

        assert analytic.kind is not Classification.INCONCLUSIVE
        assert agree(analytic.kind, numeric.kind)

    def test_log_refined_limit_circle(self, log_refined_lc, criteria_config, weyl_config):
        """Test that a log-refined limit-circle potential is never called limit point."""
        source = SymbolicPotential(log_refined_lc)
        analytic = classify_at_zero(source, 0, settings=criteria_config)
        numeric = classify_endpoint(SLProblem.from_potential(0, source), settings=weyl_config)

        assert analytic.kind is Classification.LIMIT_CIRCLE
        assert numeric.kind is not Classification.LIMIT_POINT

    def test_log_refined_limit_point(self, criteria_config, weyl_config):
        """Test that the depth-one limit-point threshold is never called limit circle."""
        source = SymbolicPotential(threshold_lp(0, 1, Fraction(1, 10)))
        analytic = classify_at_zero(source, 0, settings=criteria_config)
        numeric = classify_endpoint(SLProblem.from_potential(0, source), settings=weyl_config)

        assert analytic.kind.is_limit_point
        assert numeric.kind is not Classification.LIMIT_CIRCLE


# ============================================================================
# Radial Channels
# ============================================================================


@pytest.mark.integration
@pytest.mark.slow
class TestChannelAgreement:
    """Integration tests for channel tables against Weyl probes."""

    @pytest.mark.parametrize(
        "n,ell,alpha",
        [(3, 0, 0), (2, 0, 0), (3, 1, 0), (5, 0, 0), (2, 0, 1), (3, 0, "-1")],
    )
    def test_channel_class(self, n, ell, alpha, weyl_config):
        """Test that the exact channel class matches the probes on the radial problem."""
        ch = channel(n, ell, alpha)
        expected = classify_channel(ch).class_at_zero
        numeric = classify_endpoint(channel_problem(ch), Endpoint.ZERO, weyl_config)

        assert numeric.kind is expected.coarse()
