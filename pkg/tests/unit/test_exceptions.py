"""Unit tests for the exception hierarchy."""

import pytest

from endpoint_classifier.utils.exceptions import (
    ClassifierError,
    CoefficientError,
    ConfigurationError,
    ConvergenceError,
    DepthError,
    DomainError,
    FitError,
    FormatError,
    InputError,
    MonotonicityError,
    NumericalError,
    ParameterError,
    PotentialSyntaxError,
    QuadratureError,
    StepFailureError,
    TowerOverflowError,
    format_error_for_logging,
    get_error_context,
    is_recoverable_error,
)


class TestHierarchy:
    """Test suite for exception classes and their details."""

    @pytest.mark.parametrize(
        "error,base",
        [
            (PotentialSyntaxError("bad", offset=3), InputError),
            (DepthError(5), InputError),
            (FormatError("bad file", source="q.csv"), InputError),
            (MonotonicityError(2, 1.0, 0.5), InputError),
            (StepFailureError("step"), NumericalError),
            (QuadratureError("quad"), NumericalError),
            (ConvergenceError("bisect", iterations=200), NumericalError),
            (FitError(0.1, 1e-4), NumericalError),
            (ParameterError("bad", parameter="alpha"), ClassifierError),
        ],
    )
    def test_bases(self, error, base):
        """Test that each error sits under its family."""
        assert isinstance(error, base)
        assert isinstance(error, ClassifierError)

    def test_syntax_error_details(self):
        """Test offset and sorted expected tokens."""
        error = PotentialSyntaxError("unexpected", offset=4, expected=["x", "(", "x"], text="3 * ")
        assert error.offset == 4
        assert error.expected == ["(", "x"]
        assert error.details["text"] == "3 * "

    def test_depth_error_message(self):
        """Test the depth message."""
        assert "depth 5" in str(DepthError(5))
        assert DepthError(5).details == {"depth": 5, "max_depth": 4}

    def test_tower_overflow_is_overflow(self):
        """Test that the tower error is also an OverflowError."""
        with pytest.raises(OverflowError):
            raise TowerOverflowError(6)

    def test_coefficient_error(self):
        """Test the coefficient message and details."""
        error = CoefficientError("p", 0.25, -0.25)
        assert error.details["coefficient"] == "p"
        assert "must be positive" in error.message

    def test_str_includes_details_and_context(self):
        """Test the string form."""
        error = DomainError("outside", value=2.0, bound=1.0, context={"op": "evaluate"})
        text = str(error)
        assert text.startswith("outside")
        assert "Details: value=2.0, bound=1.0" in text
        assert "Context: op=evaluate" in text

    def test_configuration_key(self):
        """Test that the configuration key is recorded."""
        error = ConfigurationError("missing", config_key="weyl.t_max")
        assert error.details["config_key"] == "weyl.t_max"


class TestHelpers:
    """Test suite for error helper functions."""

    def test_recoverable(self):
        """Test which errors are recoverable."""
        assert is_recoverable_error(StepFailureError("step"))
        assert is_recoverable_error(ConvergenceError("bisect"))
        assert not is_recoverable_error(FitError(1.0, 1e-4))
        assert not is_recoverable_error(ValueError("plain"))

    def test_context_of_plain_exception(self):
        """Test context extraction for non-library errors."""
        context = get_error_context(KeyError("k"))
        assert context["error_type"] == "KeyError"
        assert context["details"] == {}

    def test_to_dict(self):
        """Test the dictionary form."""
        data = ParameterError("bad alpha", parameter="alpha").to_dict()
        assert data["error_type"] == "ParameterError"
        assert data["details"] == {"parameter": "alpha"}
        assert data["recoverable"] is False

    def test_format_for_logging(self):
        """Test the log line."""
        line = format_error_for_logging(QuadratureError("missed", estimate=1.0, error=0.5))
        assert line.startswith("[QuadratureError] missed")
        assert "(estimate=1.0, error=0.5)" in line
        assert line.endswith("[RECOVERABLE]")
