"""Unit tests for the potential grammar.

Tests cover accepted forms, canonicalization, error offsets and depth limits.
"""

from fractions import Fraction

import pytest

from endpoint_classifier.algebra import LogPoly, log_product, x_power
from endpoint_classifier.algebra.symalg import LogMonomial
from endpoint_classifier.potentials import parse
from endpoint_classifier.utils.exceptions import DepthError, InputError, PotentialSyntaxError

# ============================================================================
# Accepted Forms
# ============================================================================


class TestParseAccepted:
    """Test suite for well-formed potential text."""

    def test_zero(self):
        """Test that the literal 0 parses to the zero polynomial."""
        assert parse("0").is_zero()

    def test_inverse_square(self):
        """Test a single rational coefficient times a power of x."""
        assert parse("3/4 * x^-2") == x_power(-2, Fraction(3, 4))

    def test_bare_factor_has_unit_coefficient(self):
        """Test that a term may start with a factor instead of a number."""
        assert parse("x^-2") == x_power(-2)
        assert parse("x") == x_power(1)

    def test_leading_minus(self):
        """Test a negated first term."""
        assert parse("-x^-2") == x_power(-2, -1)
        assert parse("- 3/4 * x^-2") == x_power(-2, Fraction(-3, 4))

    def test_log_factors(self):
        """Test iterated logarithm factors with and without exponents."""
        expected = x_power(-2) * log_product(2, -2)
        assert parse("x^-2 * ln1(x)^-2 * ln2(x)^-2") == expected
        assert parse("ln1(x)") == log_product(1, 1)

    def test_decimal_coefficients(self):
        """Test that decimals are read as exact rationals."""
        assert parse("0.25 * x^-2") == x_power(-2, Fraction(1, 4))

    def test_rational_exponents(self):
        """Test fractional and negative fractional exponents."""
        poly = parse("x^-3/2 * ln1(x)^1/2")
        (term,) = poly.terms
        assert term.xpow == Fraction(-3, 2)
        assert term.logexps == ((1, Fraction(1, 2)),)

    def test_whitespace_insignificant(self):
        """Test that spacing does not change the result."""
        assert parse("3/4*x^-2+x^-2*ln1(x)^-2") == parse("3/4 * x^-2 + x^-2 * ln1(x)^-2")
        assert parse("  3 / 4 * x ^ -2  ") == x_power(-2, Fraction(3, 4))

    def test_like_terms_combine(self):
        """Test that repeated shapes merge and cancelling terms vanish."""
        assert parse("1/4 * x^-2 + 1/2 * x^-2") == x_power(-2, Fraction(3, 4))
        assert parse("x^-2 - x^-2").is_zero()

    def test_repeated_factors_multiply(self):
        """Test that repeated factors in one term add their exponents."""
        assert parse("x^-1 * x^-1 * ln1(x) * ln1(x)") == x_power(-2) * log_product(1, 2)

    def test_subtraction_with_negative_literal(self):
        """Test the rendering style "a + -b" for negative coefficients."""
        assert parse("1 + -1/4 * x^-2") == LogPoly.constant(1) + x_power(-2, Fraction(-1, 4))


# ============================================================================
# Rendering Round Trip
# ============================================================================


class TestRenderRoundTrip:
    """Test suite for render-then-parse stability."""

    @pytest.mark.parametrize(
        "text",
        [
            "3/4 * x^-2",
            "3/4 * x^-2 - x^-2 * ln1(x)^-1 - 1/4 * x^-2 * ln1(x)^-1",
            "-2 + x^1/2 * ln3(x)^-5/2",
            "x^-2 * ln1(x)^-2 * ln2(x)^-2 * ln3(x)^-2 * ln4(x)^-2",
        ],
    )
    def test_render_parses_back(self, text):
        """Test that canonical text parses back to an equal polynomial."""
        poly = parse(text)
        assert parse(poly.render()) == poly

    def test_monomial_render_form(self):
        """Test the canonical monomial text."""
        term = LogMonomial.of(Fraction(-1, 4), -2, {1: -1})
        assert term.render() == "-1/4 * x^-2 * ln1(x)^-1"


# ============================================================================
# Errors
# ============================================================================


class TestParseErrors:
    """Test suite for rejected potential text."""

    @pytest.mark.parametrize("text", ["", "3/4 *", "y^2", "x^", "ln(x)", "3/4 x^-2", "x^-2 +"])
    def test_syntax_error(self, text):
        """Test that malformed text raises a syntax error with an offset."""
        with pytest.raises(PotentialSyntaxError) as exc_info:
            parse(text)

        error = exc_info.value
        assert 0 <= error.offset <= len(text)
        assert error.details["offset"] == error.offset
        assert isinstance(error.expected, list)

    def test_syntax_error_is_input_error(self):
        """Test the exception hierarchy for syntax errors."""
        with pytest.raises(InputError):
            parse("q(x)")

    def test_error_offset_points_past_valid_prefix(self):
        """Test that the reported offset does not precede the valid prefix."""
        text = "3/4 * x^-2 + * x"
        with pytest.raises(PotentialSyntaxError) as exc_info:
            parse(text)
        assert exc_info.value.offset >= len("3/4 * x^-2")

    @pytest.mark.parametrize("depth", [0, 5, 9])
    def test_log_depth_out_of_range(self, depth):
        """Test that ln0 and logs deeper than four are rejected."""
        with pytest.raises(DepthError) as exc_info:
            parse(f"x^-2 * ln{depth}(x)^-2")
        assert exc_info.value.details["depth"] == depth
