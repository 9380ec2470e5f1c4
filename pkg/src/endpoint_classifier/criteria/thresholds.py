"""Threshold and comparison potentials for ``tau_alpha = -(d/dx) x^alpha (d/dx) + q``.

All builders return exact :class:`LogPoly` values. With ``S_N = sum_{j<=N} prod_{l<=j} ln_l^{-1}``
and ``P_N = prod_{k<=N} ln_k^{-1}``:

* ``threshold_lp``: ``(3/4 - a/2) x^{a-2} - (2-a)/2 x^{a-2} S_N + (3/4 + eps) x^{a-2} ln_1^{-2}``
* ``threshold_lc``: ``(3/4 - a/2) x^{a-2} - (2-a)/2 x^{a-2} S_N - eps (2-a)/2 x^{a-2} P_N``
* ``q_alpha_N``: the potential annihilating ``x^{-1/2} prod ln_k^{-1/2}``
* ``q_alpha_N_eps``: the potential annihilating ``x^{-1/2} prod ln_k^{-1/2} ln_N^{-eps/2}``

Example:
    >>> threshold_lp(0, 1, Fraction(1, 4)).render()
    '3/4 * x^-2 + 1 * x^-2 * ln1(x)^-2 + -1 * x^-2 * ln1(x)^-1'
"""

import logging
from fractions import Fraction

from ..algebra.iterlog import MAX_DEPTH
from ..algebra.symalg import LogPoly, log_partial_products_sum, log_product, x_power
from ..type_utils.validation import RationalLike, as_rational
from ..utils.exceptions import ParameterError

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
THREE_QUARTERS = Fraction(3, 4)


def _check_depth(N: int, minimum: int = 0) -> None:
    if not isinstance(N, int) or isinstance(N, bool) or N < minimum or N > MAX_DEPTH:
        raise ParameterError(
            f"N must be an integer in [{minimum}, {MAX_DEPTH}], got {N!r}", parameter="N"
        )


def _below_two(alpha: Fraction, what: str) -> None:
    if alpha >= 2:
        raise ParameterError(f"{what} requires alpha < 2, got {alpha}", parameter="alpha")


def leading_coefficient(alpha: RationalLike) -> Fraction:
    """``3/4 - alpha/2``, the borderline Euler coupling."""
    return THREE_QUARTERS - as_rational(alpha, "alpha") / 2


def euler_potential(alpha: RationalLike, c: RationalLike) -> LogPoly:
    """``c * x^(alpha-2)``."""
    a = as_rational(alpha, "alpha")
    return x_power(a - 2, as_rational(c, "c"))


def _log_sum_part(a: Fraction, N: int) -> LogPoly:
    # -(1/2)(2 - alpha) x^(alpha-2) sum_j prod_{l<=j} ln_l^-1
    return x_power(a - 2, -HALF * (2 - a)) * log_partial_products_sum(N, -1)


def threshold_lp(alpha: RationalLike, N: int, eps: RationalLike) -> LogPoly:
    """Limit-point threshold: ``q`` above it near 0 gives nonoscillatory limit point.

    Args:
        alpha: Power of the leading coefficient.
        N: Log depth, ``0 <= N <= 4``; ``N >= 1`` requires ``alpha < 2``.
        eps: Positive rational (unused for ``N = 0``).

    Raises:
        ParameterError: On violated preconditions.
    """
    a = as_rational(alpha, "alpha")
    e = as_rational(eps, "eps")
    _check_depth(N)
    if e <= 0:
        raise ParameterError(f"eps must be positive, got {e}", parameter="eps")
    lead = x_power(a - 2, leading_coefficient(a))
    if N == 0:
        return lead
    _below_two(a, "threshold_lp with N >= 1")
    return lead + _log_sum_part(a, N) + x_power(a - 2, THREE_QUARTERS + e) * log_product(1, -2)


def threshold_lc(alpha: RationalLike, N: int, eps: RationalLike) -> LogPoly:
    """Limit-circle threshold: ``q`` below it near 0 gives limit circle.

    Raises:
        ParameterError: Unless ``alpha < 2``, ``0 < eps < 1`` and ``0 <= N <= 4``.
    """
    a = as_rational(alpha, "alpha")
    e = as_rational(eps, "eps")
    _check_depth(N)
    _below_two(a, "threshold_lc")
    if not 0 < e < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {e}", parameter="eps")
    if N == 0:
        return x_power(a - 2, leading_coefficient(a) - e)
    return (
        x_power(a - 2, leading_coefficient(a))
        + _log_sum_part(a, N)
        + x_power(a - 2, -e * HALF * (2 - a)) * log_product(N, -1)
    )


def q_alpha_N(alpha: RationalLike, N: int) -> LogPoly:  # noqa: N802
    """Comparison potential for which ``x^{-1/2} prod_{k<=N} ln_k^{-1/2}`` is a solution.

    Raises:
        ParameterError: Unless ``alpha < 2`` and ``1 <= N``. Depths above 4 are
            allowed here for exact algebra only.
    """
    a = as_rational(alpha, "alpha")
    if not isinstance(N, int) or N < 1:
        raise ParameterError(f"N must be a positive integer, got {N!r}", parameter="N")
    _below_two(a, "q_alpha_N")
    base = x_power(a - 2)
    result = x_power(a - 2, leading_coefficient(a)) + _log_sum_part(a, N)
    result = result + THREE_QUARTERS * base * log_partial_products_sum(N, -2)
    for j in range(1, N):
        result = result + base * log_product(j, -2) * log_partial_products_sum(N, -1, start=j + 1)
    return result


def q_alpha_N_eps(alpha: RationalLike, N: int, eps: RationalLike) -> LogPoly:  # noqa: N802
    """Comparison potential for which ``y_N * ln_N^{-eps/2}`` is a solution.

    Raises:
        ParameterError: Unless ``alpha < 2``, ``N >= 1`` and ``eps > 0``.
    """
    a = as_rational(alpha, "alpha")
    e = as_rational(eps, "eps")
    if e <= 0:
        raise ParameterError(f"eps must be positive, got {e}", parameter="eps")
    result = q_alpha_N(a, N)
    base = x_power(a - 2)
    product = log_product(N, -1)
    return (
        result
        - e * HALF * (2 - a) * base * product
        + e * e / 4 * base * log_product(N, -2)
        + e * base * product * log_partial_products_sum(N, -1)
    )


def q_alpha_0_beta(alpha: RationalLike, beta: RationalLike) -> LogPoly:
    """Euler comparison potential ``(3/4 - alpha/2 - beta) x^(alpha-2)``.

    Raises:
        ParameterError: Unless ``alpha < 2`` and ``beta > 0``.
    """
    a = as_rational(alpha, "alpha")
    b = as_rational(beta, "beta")
    _below_two(a, "q_alpha_0_beta")
    if b <= 0:
        raise ParameterError(f"beta must be positive, got {b}", parameter="beta")
    return x_power(a - 2, leading_coefficient(a) - b)
