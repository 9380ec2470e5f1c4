"""Custom exception classes for the endpoint classifier.

This module defines a hierarchy of custom exceptions for better error handling
and debugging throughout the library and the command-line front end.

Example:
    >>> from endpoint_classifier.utils.exceptions import DomainError
    >>> raise DomainError("x outside the positivity domain", value=2.0, bound=1.0)
"""

from typing import Any


class ClassifierError(Exception):
    """Base exception for all endpoint classifier errors.

    All custom exceptions should inherit from this class.

    Attributes:
        message: Error message.
        details: Additional error details.
        recoverable: Whether the error is recoverable.
        context: Context information when error occurred.
    """

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
        recoverable: bool = False,
        context: dict[str, Any] | None = None,
    ):
        """Initialize exception.

        Args:
            message: Human-readable error message.
            details: Additional error details.
            recoverable: Whether the operation can be retried with other inputs.
            context: Context when error occurred.
        """
        self.message = message
        self.details = details or {}
        self.recoverable = recoverable
        self.context = context or {}

        super().__init__(self.message)

    def __str__(self) -> str:
        """String representation of the error."""
        parts = [self.message]

        if self.details:
            details_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            parts.append(f"Details: {details_str}")

        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            parts.append(f"Context: {context_str}")

        return " | ".join(parts)

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary.

        Returns:
            Dictionary representation of the exception.
        """
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "details": self.details,
            "recoverable": self.recoverable,
            "context": self.context,
        }


# Configuration Errors


class ConfigurationError(ClassifierError):
    """Raised when configuration is invalid or missing."""

    def __init__(self, message: str, config_key: str | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if config_key:
            details["config_key"] = config_key
        super().__init__(message, details=details, recoverable=False, **kwargs)


# Input Errors


class InputError(ClassifierError):
    """Base class for malformed user input (potential text, sample files)."""

    pass


class PotentialSyntaxError(InputError):
    """Raised when potential text does not conform to the grammar."""

    def __init__(
        self,
        message: str,
        offset: int,
        expected: list[str] | None = None,
        text: str | None = None,
        **kwargs: Any,
    ):
        details = kwargs.pop("details", {})
        details["offset"] = offset
        details["expected"] = sorted(set(expected or []))
        if text is not None:
            details["text"] = text
        self.offset = offset
        self.expected = details["expected"]
        super().__init__(message, details=details, recoverable=False, **kwargs)


class DepthError(InputError):
    """Raised when an iterated logarithm deeper than the supported cap appears."""

    def __init__(self, depth: int, max_depth: int = 4, **kwargs: Any):
        message = f"Iterated logarithm depth {depth} exceeds the supported maximum {max_depth}"
        details = {"depth": depth, "max_depth": max_depth}
        super().__init__(message, details=details, recoverable=False, **kwargs)


class FormatError(InputError):
    """Raised when a sampled-potential file cannot be read as two numeric columns."""

    def __init__(self, message: str, source: str | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if source:
            details["source"] = source
        super().__init__(message, details=details, recoverable=False, **kwargs)


class MonotonicityError(InputError):
    """Raised when sampled abscissae are not strictly increasing."""

    def __init__(self, index: int, previous: float, current: float, **kwargs: Any):
        message = (
            f"Sample abscissae must be strictly increasing (row {index}: {current} <= {previous})"
        )
        details = {"index": index, "previous": previous, "current": current}
        super().__init__(message, details=details, recoverable=False, **kwargs)


# Parameter Errors


class ParameterError(ClassifierError):
    """Raised when an operation is called with parameters outside its preconditions."""

    def __init__(self, message: str, parameter: str | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if parameter:
            details["parameter"] = parameter
        super().__init__(message, details=details, recoverable=False, **kwargs)


class DomainError(ClassifierError):
    """Raised when a function is evaluated outside its domain of definition."""

    def __init__(
        self,
        message: str,
        value: Any = None,
        bound: Any = None,
        **kwargs: Any,
    ):
        details = kwargs.pop("details", {})
        if value is not None:
            details["value"] = value
        if bound is not None:
            details["bound"] = bound
        super().__init__(message, details=details, recoverable=False, **kwargs)


class PreconditionError(ClassifierError):
    """Raised when a mathematical precondition of an operation does not hold."""

    def __init__(self, message: str, condition: str | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if condition:
            details["condition"] = condition
        super().__init__(message, details=details, recoverable=False, **kwargs)


class CoefficientError(ClassifierError):
    """Raised when p or r is not strictly positive at a sample point."""

    def __init__(self, coefficient: str, x: float, value: float, **kwargs: Any):
        message = f"Coefficient {coefficient} must be positive, got {value} at x={x}"
        details = {"coefficient": coefficient, "x": x, "value": value}
        super().__init__(message, details=details, recoverable=False, **kwargs)


class TowerOverflowError(ClassifierError, OverflowError):
    """Raised when a tower constant beyond double range is requested."""

    def __init__(self, j: int, max_j: int = 5, **kwargs: Any):
        message = f"Tower constant e_{j} is beyond double range (max index {max_j})"
        details = {"j": j, "max_j": max_j}
        super().__init__(message, details=details, recoverable=False, **kwargs)


# Numerical Errors


class NumericalError(ClassifierError):
    """Base class for failures of numerical procedures."""

    pass


class StepFailureError(NumericalError):
    """Raised when the ODE integrator cannot attain the requested tolerance."""

    def __init__(self, message: str, x: float | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if x is not None:
            details["x"] = x
        super().__init__(message, details=details, recoverable=True, **kwargs)


class QuadratureError(NumericalError):
    """Raised when adaptive quadrature misses its tolerance."""

    def __init__(
        self, message: str, estimate: float | None = None, error: float | None = None, **kwargs: Any
    ):
        details = kwargs.pop("details", {})
        if estimate is not None:
            details["estimate"] = estimate
        if error is not None:
            details["error"] = error
        super().__init__(message, details=details, recoverable=True, **kwargs)


class ConvergenceError(NumericalError):
    """Raised when an iterative solver exhausts its iteration budget."""

    def __init__(self, message: str, iterations: int | None = None, **kwargs: Any):
        details = kwargs.pop("details", {})
        if iterations is not None:
            details["iterations"] = iterations
        super().__init__(message, details=details, recoverable=True, **kwargs)


class FitError(NumericalError):
    """Raised when a least-squares fit leaves too large a residual."""

    def __init__(self, residual: float, tolerance: float, **kwargs: Any):
        message = f"Fit residual {residual:.3e} exceeds relative tolerance {tolerance:.1e}"
        details = {"residual": residual, "tolerance": tolerance}
        super().__init__(message, details=details, recoverable=False, **kwargs)


# Utility functions


def is_recoverable_error(error: Exception) -> bool:
    """Check if an error is recoverable.

    Args:
        error: Exception to check.

    Returns:
        True if error is recoverable, False otherwise.

    Example:
        >>> is_recoverable_error(StepFailureError("step size underflow"))
        True
    """
    if isinstance(error, ClassifierError):
        return error.recoverable
    return False


def get_error_context(error: Exception) -> dict[str, Any]:
    """Extract context information from an error.

    Args:
        error: Exception to extract context from.

    Returns:
        Dictionary with error context.
    """
    if isinstance(error, ClassifierError):
        return error.to_dict()

    return {
        "error_type": error.__class__.__name__,
        "message": str(error),
        "details": {},
        "recoverable": False,
        "context": {},
    }


def format_error_for_logging(error: Exception) -> str:
    """Format error for logging.

    Args:
        error: Exception to format.

    Returns:
        Formatted error string.
    """
    context = get_error_context(error)

    parts = [f"[{context['error_type']}]", context["message"]]

    if context["details"]:
        details_str = ", ".join(f"{k}={v}" for k, v in context["details"].items())
        parts.append(f"({details_str})")

    if context["recoverable"]:
        parts.append("[RECOVERABLE]")

    return " ".join(parts)
