"""Type definitions, protocols, and validation for the endpoint classifier.

This package provides:
- Protocol definitions for potentials and solution evaluators
- Type aliases for coefficient functions and windows
- Coercion of user parameters into exact rationals and validated windows

Example:
    >>> from endpoint_classifier.type_utils import as_rational, validate_window
    >>> as_rational("-1/2")
    Fraction(-1, 2)
"""

# Protocols
from .protocols import (
    CoefficientFn,
    FloatArray,
    PotentialSource,
    ReportDict,
    SolutionFn,
    Window,
    ensure_protocol,
    implements_protocol,
)

# Validation
from .validation import (
    RationalLike,
    as_rational,
    parse_window,
    validate_positive_number,
    validate_range,
    validate_settings,
    validate_window,
)

__all__ = [
    # Protocols
    "PotentialSource",
    "SolutionFn",
    "implements_protocol",
    "ensure_protocol",
    # Type aliases
    "CoefficientFn",
    "FloatArray",
    "ReportDict",
    "Window",
    "RationalLike",
    # Validation
    "as_rational",
    "parse_window",
    "validate_positive_number",
    "validate_range",
    "validate_settings",
    "validate_window",
]
