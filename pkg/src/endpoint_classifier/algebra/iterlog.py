"""Iterated logarithms near 0 and near infinity, and the tower constants.

Near the origin ``ln_1(x) = ln(1/x)`` and ``ln_{k+1}(x) = ln(ln_k(x))``; near
infinity ``Ln_1(x) = ln(x)`` and ``Ln_{k+1}(x) = ln(Ln_k(x))``. The tower
``e_0 = 0, e_{j+1} = exp(e_j)`` delimits where each stage is positive:
``ln_k(x) > 0`` iff ``x < exp(-e_{k-1})`` and ``Ln_k(x) > 0`` iff ``x > e_k``.

Example:
    >>> round(ln_k(2, math.exp(-math.e)), 12)
    1.0
    >>> positivity_bound(2) == 1.0 / math.e
    True
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..utils.exceptions import DomainError, ParameterError, TowerOverflowError

logger = logging.getLogger(__name__)

MAX_TOWER_INDEX = 5
MAX_DEPTH = 4


def _check_depth(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ParameterError(f"Log depth must be a positive integer, got {k!r}", parameter="k")


def tower(j: int) -> float:
    """Return the tower constant ``e_j``.

    ``e_5`` exceeds the double range and is returned as ``inf``.

    Args:
        j: Nonnegative tower index, at most 5.

    Returns:
        The tower constant as a float.

    Raises:
        ParameterError: If ``j`` is negative.
        TowerOverflowError: If ``j > 5``.
    """
    if j < 0:
        raise ParameterError(f"Tower index must be nonnegative, got {j}", parameter="j")
    if j > MAX_TOWER_INDEX:
        raise TowerOverflowError(j, max_j=MAX_TOWER_INDEX)

    value = 0.0
    for _ in range(j):
        try:
            value = math.exp(value)
        except OverflowError:
            return math.inf
    return value


def positivity_bound(n: int) -> float:
    """Return ``exp(-e_{n-1})``, the bound below which ``ln_1, ..., ln_n`` are positive.

    Computed as ``1 / exp(e_{n-1})`` so that it matches the tower exactly.

    Args:
        n: Deepest log depth, ``1 <= n <= 5``.

    Returns:
        The positivity bound.
    """
    _check_depth(n)
    if n > MAX_TOWER_INDEX:
        raise TowerOverflowError(n - 1, max_j=MAX_TOWER_INDEX - 1)
    try:
        return 1.0 / math.exp(tower(n - 1))
    except OverflowError:
        # exp(-e_4) underflows: no double lies inside the domain
        return 0.0


def ln_k(k: int, x: float) -> float:
    """Evaluate the iterated logarithm ``ln_k`` near the origin.

    Args:
        k: Log depth (``k >= 1``).
        x: Point with ``0 < x < exp(-e_{k-2})`` (``x < 1`` for ``k = 1``).

    Returns:
        ``ln_k(x)``; positive iff ``x < exp(-e_{k-1})``.

    Raises:
        DomainError: If ``x`` is outside the definedness region.
    """
    _check_depth(k)
    if not x > 0.0:
        raise DomainError(f"ln_{k} requires x > 0", value=x, bound=0.0)
    if not x < 1.0:
        raise DomainError(f"ln_{k} requires x < 1", value=x, bound=1.0)

    # ln(1/x) as -ln(x) so that tiny x never overflows 1/x
    value = -math.log(x)
    for stage in range(2, k + 1):
        if value <= 0.0:
            raise DomainError(
                f"ln_{k} undefined: ln_{stage - 1}(x) = {value} is not positive",
                value=x,
                bound=positivity_bound(stage - 1) if stage - 1 <= MAX_TOWER_INDEX else None,
            )
        value = math.log(value)
    return value


def Ln_k(k: int, x: float) -> float:  # noqa: N802
    """Evaluate the iterated logarithm ``Ln_k`` near infinity.

    Args:
        k: Log depth (``k >= 1``).
        x: Point with ``x > e_{k-1}`` so that every inner stage is positive.

    Returns:
        ``Ln_k(x)``.

    Raises:
        DomainError: If an inner stage is not positive.
    """
    _check_depth(k)
    if not x > 0.0:
        raise DomainError(f"Ln_{k} requires x > 0", value=x, bound=0.0)

    value = math.log(x)
    for stage in range(2, k + 1):
        if value <= 0.0:
            raise DomainError(
                f"Ln_{k} undefined: Ln_{stage - 1}(x) = {value} is not positive",
                value=x,
                bound=tower(stage - 1),
            )
        value = math.log(value)
    return value


def ln_k_array(k: int, x: ArrayLike) -> NDArray[np.float64]:
    """Vectorised :func:`ln_k` over an array of points.

    Raises:
        DomainError: If any point is outside the definedness region.
    """
    _check_depth(k)
    xs = np.asarray(x, dtype=np.float64)
    if xs.size and (np.any(xs <= 0.0) or np.any(xs >= 1.0)):
        raise DomainError(f"ln_{k} requires 0 < x < 1 at every point", value=float(xs.max()))

    values = -np.log(xs)
    for stage in range(2, k + 1):
        if np.any(values <= 0.0):
            raise DomainError(
                f"ln_{k} undefined: ln_{stage - 1} not positive on all points",
                value=float(xs.max()),
                bound=positivity_bound(stage - 1),
            )
        values = np.log(values)
    return values


def Ln_k_array(k: int, x: ArrayLike) -> NDArray[np.float64]:  # noqa: N802
    """Vectorised :func:`Ln_k` over an array of points."""
    _check_depth(k)
    xs = np.asarray(x, dtype=np.float64)
    if xs.size and np.any(xs <= 0.0):
        raise DomainError(f"Ln_{k} requires x > 0 at every point", value=float(xs.min()))

    values = np.log(xs)
    for stage in range(2, k + 1):
        if np.any(values <= 0.0):
            raise DomainError(
                f"Ln_{k} undefined: Ln_{stage - 1} not positive on all points",
                value=float(xs.min()),
                bound=tower(stage - 1),
            )
        values = np.log(values)
    return values
