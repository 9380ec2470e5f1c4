"""Unit tests for the exact log-power algebra."""

import math
from fractions import Fraction

import pytest

from endpoint_classifier.algebra import (
    LogMonomial,
    LogPoly,
    algebra_properties,
    apply_tau,
    derivative_identities,
    log_partial_products_sum,
    log_product,
    random_logpoly,
    rearrangement_identity,
    x_power,
)
from endpoint_classifier.algebra.iterlog import ln_k
from endpoint_classifier.potentials import parse
from endpoint_classifier.utils.exceptions import DomainError, ParameterError

HALF = Fraction(1, 2)

# ============================================================================
# Construction Tests
# ============================================================================


class TestCanonicalForm:
    """Test suite for LogPoly normalisation."""

    def test_like_terms_combine(self):
        """Test terms of the same shape are summed."""
        a = LogPoly.monomial(Fraction(3, 4), -2) + LogPoly.monomial(Fraction(1, 4), -2)

        assert a == x_power(-2)
        assert len(a) == 1

    def test_cancellation_gives_zero(self):
        """Test p - p is the empty polynomial."""
        p = LogPoly.monomial(2, -1, {1: -1, 2: HALF})

        assert (p - p).is_zero()
        assert (p - p).render() == "0"

    def test_zero_exponents_dropped(self):
        """Test ln_k^0 factors vanish from the key."""
        m = LogMonomial.of(1, 0, {1: 0, 2: 1})

        assert m.logexps == ((2, Fraction(1)),)
        assert m.depth == 2

    def test_equality_and_hash(self):
        """Test equal polynomials hash equally regardless of term order."""
        a = x_power(-2) + LogPoly.monomial(1, 0, {1: 1})
        b = LogPoly.monomial(1, 0, {1: 1}) + x_power(-2)

        assert a == b
        assert hash(a) == hash(b)

    def test_integer_coercion(self):
        """Test ints combine with polynomials."""
        assert LogPoly.zero() + 3 == LogPoly.constant(3)
        assert 2 * x_power(1) == LogPoly.monomial(2, 1)

    def test_negative_power_rejected(self):
        """Test negative integer powers raise ParameterError."""
        with pytest.raises(ParameterError):
            x_power(1) ** -1


# ============================================================================
# Differentiation Tests
# ============================================================================


class TestDifferentiation:
    """Test suite for exact derivatives."""

    def test_power_rule(self):
        """Test (x^p)' = p x^(p-1)."""
        assert x_power(Fraction(5, 2)).differentiate() == x_power(Fraction(3, 2), Fraction(5, 2))

    def test_ln1_derivative(self):
        """Test ln_1' = -x^-1."""
        assert LogPoly.monomial(1, 0, {1: 1}).differentiate() == x_power(-1, -1)

    def test_ln2_derivative(self):
        """Test ln_2' = -x^-1 ln_1^-1."""
        expected = LogPoly.monomial(-1, -1, {1: -1})

        assert LogPoly.monomial(1, 0, {2: 1}).differentiate() == expected

    def test_constant_derivative(self):
        """Test constants differentiate to zero."""
        assert LogPoly.constant(7).differentiate().is_zero()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_derivative_identities(self, n):
        """Test the iterated-log derivative identities at each depth."""
        results = derivative_identities(n)

        assert all(results.values()), results

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_rearrangement_identity(self, n):
        """Test the double-sum rearrangement holds exactly."""
        assert rearrangement_identity(n)

    def test_identity_depth_validation(self):
        """Test depth 0 is rejected."""
        with pytest.raises(ParameterError):
            derivative_identities(0)


# ============================================================================
# Operator Tests
# ============================================================================


class TestApplyTau:
    """Test suite for the differential expression on LogPolys."""

    @pytest.mark.parametrize(
        "alpha", [Fraction(-3), Fraction(-1), Fraction(0), HALF, Fraction(1), Fraction(3, 2)]
    )
    def test_power_solution(self, alpha):
        """Test x^((1-alpha)/2) solves the borderline Euler equation."""
        y = x_power((1 - alpha) / 2)
        q = x_power(alpha - 2, (1 - alpha) ** 2 / -4)

        assert apply_tau(alpha, q, y).is_zero()

    def test_nonzero_residual(self):
        """Test a wrong potential leaves a residual."""
        y = x_power(-HALF)
        residual = apply_tau(0, x_power(-2), y)

        assert not residual.is_zero()
        assert residual == x_power(Fraction(-5, 2), Fraction(1, 4))


# ============================================================================
# Builders and Evaluation Tests
# ============================================================================


class TestBuilders:
    """Test suite for product and partial-sum builders."""

    def test_log_product(self):
        """Test prod_{k<=3} ln_k^-1."""
        p = log_product(3, -1)

        assert p == LogPoly.monomial(1, 0, {1: -1, 2: -1, 3: -1})

    def test_empty_product(self):
        """Test the empty product is one."""
        assert log_product(0, -1) == LogPoly.constant(1)

    def test_partial_products_sum(self):
        """Test sum_j prod_{l<=j} ln_l^-1 for n = 2."""
        expected = LogPoly.monomial(1, 0, {1: -1}) + LogPoly.monomial(1, 0, {1: -1, 2: -1})

        assert log_partial_products_sum(2, -1) == expected

    def test_partial_sum_with_start(self):
        """Test a partial sum starting at depth 2."""
        expected = LogPoly.monomial(1, 0, {2: 1}) + LogPoly.monomial(1, 0, {2: 1, 3: 1})

        assert log_partial_products_sum(3, 1, start=2) == expected


class TestEvaluation:
    """Test suite for numeric evaluation."""

    def test_evaluate_near_zero(self):
        """Test evaluation against iterated logs."""
        p = LogPoly.monomial(2, -1, {1: 1, 2: -1})
        x = 1e-5

        assert p.evaluate(x) == pytest.approx(2 / x * ln_k(1, x) / ln_k(2, x))

    def test_evaluate_outside_domain(self):
        """Test x above the positivity bound raises."""
        p = LogPoly.monomial(1, 0, {2: 1})

        with pytest.raises(DomainError):
            p.evaluate(0.5)

    def test_shifted_logs(self):
        """Test ln_1(x/gamma) with gamma = e."""
        p = LogPoly.monomial(1, 0, {1: 1})

        assert p.evaluate(1e-3, log_shift=math.e) == pytest.approx(math.log(math.e / 1e-3))

    def test_evaluate_at_infinity(self):
        """Test depth-1 factors read as ln(x) near infinity."""
        p = LogPoly.monomial(1, -2, {1: 2})

        assert p.evaluate_at_infinity(100.0) == pytest.approx(math.log(100.0) ** 2 / 1e4)

    def test_evaluate_array(self):
        """Test the vectorised evaluation agrees with scalars."""
        p = parse("3/4 * x^-2 - x^-2 * ln1(x)^-1")
        xs = [1e-9, 1e-6, 1e-3]

        values = p.evaluate_array(xs)

        for x, v in zip(xs, values, strict=True):
            assert v == pytest.approx(p.evaluate(x))


# ============================================================================
# Randomized Property Tests
# ============================================================================


class TestRandomized:
    """Test suite for randomized algebraic properties."""

    def test_product_rule_and_linearity(self, rng):
        """Test differentiation properties on 200 random pairs."""
        for _ in range(200):
            a = random_logpoly(rng, max_depth=3)
            b = random_logpoly(rng, max_depth=3)

            assert all(algebra_properties(a, b).values())

    def test_render_parse_round_trip(self, rng):
        """Test rendered text re-parses to the same polynomial."""
        for _ in range(300):
            p = random_logpoly(rng, max_depth=4)

            assert parse(p.render()) == p

    def test_random_depth_validation(self, rng):
        """Test random polynomials are capped at depth 4."""
        with pytest.raises(ParameterError):
            random_logpoly(rng, max_depth=5)
