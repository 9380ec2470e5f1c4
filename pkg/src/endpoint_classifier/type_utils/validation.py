"""Runtime validation utilities for numeric parameters.

This module coerces user-facing parameters (rationals, windows, grid sizes) into
the exact or floating types the algorithms expect and raises the library's own
exceptions when a precondition is violated.

Example:
    >>> from endpoint_classifier.type_utils.validation import as_rational
    >>> as_rational("3/4")
    Fraction(3, 4)
    >>> as_rational(0.1)
    Fraction(1, 10)
"""

import math
from fractions import Fraction
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError

from ..utils.exceptions import DomainError, ParameterError

RationalLike = Fraction | int | str | float

M = TypeVar("M", bound=BaseModel)


def as_rational(value: RationalLike, param_name: str = "value") -> Fraction:
    """Convert a value to an exact rational.

    Strings accept ``a``, ``a/b`` and decimal literals. Floats are converted
    through their shortest decimal representation, so ``0.1`` becomes ``1/10``
    rather than the nearest binary fraction.

    Args:
        value: Rational, integer, string or float.
        param_name: Parameter name for error messages.

    Returns:
        The value as a reduced :class:`fractions.Fraction`.

    Raises:
        ParameterError: If the value cannot be read as a finite rational.
    """
    if isinstance(value, bool):
        raise ParameterError(f"{param_name} must be numeric, got bool", parameter=param_name)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterError(
                f"{param_name} must be finite, got {value}", parameter=param_name
            )
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParameterError(
                f"{param_name} is not a rational literal: {value!r}", parameter=param_name
            ) from e
    raise ParameterError(
        f"{param_name} must be rational, got {type(value).__name__}", parameter=param_name
    )


def validate_positive_number(value: int | float | Fraction, param_name: str = "value") -> bool:
    """Validate that a number is strictly positive.

    Raises:
        ParameterError: If the number is not positive.
    """
    if not value > 0:
        raise ParameterError(f"{param_name} must be positive, got {value}", parameter=param_name)
    return True


def validate_range(
    value: int | float | Fraction,
    min_val: int | float | Fraction | None = None,
    max_val: int | float | Fraction | None = None,
    param_name: str = "value",
    inclusive: bool = True,
) -> bool:
    """Validate that a number lies within a range.

    Args:
        value: Number to validate.
        min_val: Lower end of the range.
        max_val: Upper end of the range.
        param_name: Parameter name for error messages.
        inclusive: Whether the ends belong to the range.

    Returns:
        True if valid.

    Raises:
        ParameterError: If the number is out of range.
    """
    if min_val is not None and (value < min_val if inclusive else value <= min_val):
        op = ">=" if inclusive else ">"
        raise ParameterError(
            f"{param_name} must be {op} {min_val}, got {value}", parameter=param_name
        )

    if max_val is not None and (value > max_val if inclusive else value >= max_val):
        op = "<=" if inclusive else "<"
        raise ParameterError(
            f"{param_name} must be {op} {max_val}, got {value}", parameter=param_name
        )

    return True


def validate_window(
    window: tuple[float, float],
    upper_bound: float | None = None,
    param_name: str = "window",
) -> tuple[float, float]:
    """Validate a sampling window ``(x_lo, x_hi)``.

    Args:
        window: Pair of floats.
        upper_bound: Exclusive upper limit for ``x_hi`` (for example a positivity bound).
        param_name: Parameter name for error messages.

    Returns:
        The window as a float pair.

    Raises:
        DomainError: If ``x_lo <= 0``, ``x_lo >= x_hi`` or ``x_hi`` reaches the bound.
    """
    if len(window) != 2:
        raise DomainError(f"{param_name} must have two ends, got {window!r}")
    x_lo, x_hi = float(window[0]), float(window[1])
    if not (math.isfinite(x_lo) and math.isfinite(x_hi)):
        raise DomainError(f"{param_name} ends must be finite", value=window)
    if not x_lo > 0.0:
        raise DomainError(f"{param_name} must start above 0", value=x_lo, bound=0.0)
    if not x_lo < x_hi:
        raise DomainError(f"{param_name} must satisfy x_lo < x_hi", value=(x_lo, x_hi))
    if upper_bound is not None and not x_hi < upper_bound:
        raise DomainError(
            f"{param_name} must lie below {upper_bound!r}", value=x_hi, bound=upper_bound
        )
    return x_lo, x_hi


def parse_window(text: str, param_name: str = "window") -> tuple[float, float]:
    """Parse ``"a,b"`` into a validated window.

    Raises:
        ParameterError: If the text is not two comma-separated numbers.
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParameterError(
            f"{param_name} must look like 'a,b', got {text!r}", parameter=param_name
        )
    try:
        return validate_window((float(parts[0]), float(parts[1])), param_name=param_name)
    except ValueError as e:
        raise ParameterError(
            f"{param_name} ends must be numbers: {text!r}", parameter=param_name
        ) from e


def validate_settings(data: dict[str, Any] | BaseModel | None, model_class: type[M]) -> M:
    """Validate a configuration mapping against a settings model.

    Args:
        data: Mapping, an existing model instance, or None for the defaults.
        model_class: Pydantic settings class.

    Returns:
        Validated model instance.

    Raises:
        ParameterError: If validation fails.
    """
    if isinstance(data, model_class):
        return data
    if isinstance(data, BaseModel):
        data = data.model_dump()
    try:
        return model_class(**(data or {}))
    except ValidationError as e:
        raise ParameterError(f"Validation error for {model_class.__name__}: {e}") from e
