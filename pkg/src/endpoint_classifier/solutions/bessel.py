"""Bessel functions of the first and second kind by ascending series.

Only the bounded argument range needed near the origin is supported:
``0 < |u| <= 30`` and order ``0 <= nu <= 50``. The series are summed in
:mod:`mpmath` arithmetic with enough guard digits to absorb the cancellation
between terms, which grow like ``exp(|u|)`` times the result; the values are
returned as Python floats or complex numbers.

Example:
    >>> import math
    >>> u = 1.0
    >>> abs(bessel_j(0.5, u) - math.sqrt(2 / (math.pi * u)) * math.sin(u)) < 1e-14
    True
"""

import logging
import math
from collections.abc import Callable
from typing import Any

import mpmath

from ..utils.exceptions import ConvergenceError, DomainError, ParameterError

logger = logging.getLogger(__name__)

MAX_ARGUMENT = 30.0
MAX_ORDER = 50.0
MAX_TERMS = 500
GUARD_DIGITS = 20

Number = float | complex


def _check_domain(nu: float, u: Number, max_order: float = MAX_ORDER) -> None:
    if not 0.0 <= nu <= max_order:
        raise DomainError(f"Bessel order must lie in [0, {max_order}], got {nu}", value=nu)
    if not isinstance(u, complex) and not u > 0:
        raise DomainError(f"Real Bessel arguments must be positive, got {u}", value=u, bound=0.0)
    if not 0.0 < abs(u) <= MAX_ARGUMENT:
        raise DomainError(
            f"Bessel argument must satisfy 0 < |u| <= {MAX_ARGUMENT}, got {u}",
            value=abs(u),
            bound=MAX_ARGUMENT,
        )


def _is_integer(nu: float) -> bool:
    return float(nu).is_integer()


def _working_digits(u: Number) -> int:
    """Decimal digits that survive the cancellation of terms of size ``exp(|u|)``."""
    return GUARD_DIGITS + math.ceil(abs(u) / math.log(10))


def _to_mp(u: Number) -> Any:
    return mpmath.mpc(u) if isinstance(u, complex) else mpmath.mpf(u)


def _from_mp(value: Any, like: Number) -> Number:
    return complex(value) if isinstance(like, complex) else float(mpmath.re(value))


def _ascending_series(nu: float, x: Any) -> Any:
    """``sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))`` at the current precision.

    ``-nu`` must not be a positive integer.
    """
    half = x / 2
    term = half**nu * mpmath.rgamma(nu + 1)
    square = -(half**2)
    total = term
    largest = abs(term)
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps)
    for k in range(1, MAX_TERMS):
        term = term * square / (k * (k + nu))
        total += term
        largest = max(largest, abs(term))
        if term == 0 or (k > abs(x) and abs(term) <= tol * largest):
            return total
    raise ConvergenceError(f"Bessel series for nu={nu}, u={x} did not converge", MAX_TERMS)


def bessel_j(nu: float, u: Number) -> Number:
    """Bessel function of the first kind ``J_nu(u)``.

    Negative non-integer orders are accepted for use in the second solution.

    Raises:
        DomainError: Outside ``0 < |u| <= 30``, ``|nu| <= 51``.
    """
    if nu < 0:
        if _is_integer(nu):
            n = int(-nu)
            return (-1) ** n * bessel_j(float(n), u)
        _check_domain(-nu, u, MAX_ORDER + 1)
    else:
        _check_domain(nu, u, MAX_ORDER + 1)
    with mpmath.workdps(_working_digits(u)):
        return _from_mp(_ascending_series(float(nu), _to_mp(u)), u)


def _y_integer(n: int, x: Any) -> Any:
    """Logarithmic series for ``Y_n`` at integer order, at the current precision."""
    half = x / 2
    lead = 2 / mpmath.pi * _ascending_series(float(n), x) * mpmath.log(half)

    finite = mpmath.fsum(
        mpmath.factorial(n - k - 1) / mpmath.factorial(k) * half ** (2 * k - n) for k in range(n)
    )

    square = -(half**2)
    term = half**n / mpmath.factorial(n)
    tail = mpmath.mpf(0)
    largest = abs(term)
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps)
    for k in range(MAX_TERMS):
        if k:
            term = term * square / (k * (n + k))
        largest = max(largest, abs(term))
        tail += term * (mpmath.digamma(k + 1) + mpmath.digamma(n + k + 1))
        if k > abs(x) and abs(term) <= tol * largest:
            break
    else:
        raise ConvergenceError(f"Y_{n} series did not converge for u={x}", MAX_TERMS)

    return lead - finite / mpmath.pi - tail / mpmath.pi


def bessel_y(nu: float, u: Number) -> Number:
    """Bessel function of the second kind ``Y_nu(u)``.

    Non-integer orders use ``(J_nu cos(nu pi) - J_{-nu}) / sin(nu pi)``; integer
    orders use the logarithmic series with digamma coefficients.
    """
    _check_domain(nu, u, MAX_ORDER + 1)
    with mpmath.workdps(_working_digits(u)):
        x = _to_mp(u)
        if _is_integer(nu):
            return _from_mp(_y_integer(int(nu), x), u)
        nu = float(nu)
        value = (
            _ascending_series(nu, x) * mpmath.cospi(nu) - _ascending_series(-nu, x)
        ) / mpmath.sinpi(nu)
        return _from_mp(value, u)


def _kind(kind: str) -> Callable[[float, Number], Number]:
    match kind.upper():
        case "J":
            return bessel_j
        case "Y":
            return bessel_y
        case _:
            raise ParameterError(f"Unknown Bessel kind {kind!r}", parameter="kind")


def bessel(nu: float, kind: str, u: Number) -> Number:
    """Evaluate ``J_nu(u)`` (``kind="J"``) or ``Y_nu(u)`` (``kind="Y"``).

    Args:
        nu: Order in ``[0, 50]``.
        kind: ``"J"`` or ``"Y"``.
        u: Argument with ``0 < |u| <= 30``.

    Raises:
        DomainError: Outside the supported domain.
        ParameterError: If ``kind`` is unknown.
    """
    _check_domain(nu, u)
    return _kind(kind)(nu, u)


def bessel_derivative(nu: float, kind: str, u: Number) -> Number:
    """Derivative in ``u`` via ``C_nu' = (nu/u) C_nu - C_{nu+1}``."""
    _check_domain(nu, u)
    f = _kind(kind)
    return (nu / u) * f(nu, u) - f(nu + 1.0, u)
