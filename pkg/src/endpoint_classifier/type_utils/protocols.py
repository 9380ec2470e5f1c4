"""Type protocols and interfaces for the endpoint classifier.

This module defines Protocol-based interfaces (structural typing) so that the
criteria, numerics and multidim packages can accept any potential or solution
object that looks right, without importing concrete implementations.

Why Protocols?
--------------
Potentials arrive either as exact log-power polynomials or as sampled tables,
and reference solutions come from closed forms, quadrature or Bessel series.
Protocols let the numerical routes treat them uniformly and let unit tests
inject plain lambdas or mocks.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any, Protocol, TypeAlias, runtime_checkable

import numpy as np
from numpy.typing import ArrayLike, NDArray

# ---------------------------------------------------------------------------
# Common type aliases
# ---------------------------------------------------------------------------

CoefficientFn: TypeAlias = Callable[[float], float]
"""Real coefficient function such as ``p``, ``q`` or ``r`` on the open interval."""

Window: TypeAlias = tuple[float, float]
"""Sampling window ``(x_lo, x_hi)`` with ``0 < x_lo < x_hi``."""

ReportDict: TypeAlias = dict[str, Any]
"""JSON-ready report payload."""

FloatArray: TypeAlias = NDArray[np.float64]


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------


@runtime_checkable
class PotentialSource(Protocol):
    """Anything that evaluates a real potential ``q`` on a region near the origin.

    Implemented by the symbolic and sampled sources in ``potentials.sources``.
    """

    @property
    def kind(self) -> str:
        """``"symbolic"`` or ``"sampled"``."""
        raise NotImplementedError("PotentialSource.kind must be implemented")

    @property
    def hull(self) -> Window:
        """Open interval on which the source may be evaluated."""
        raise NotImplementedError("PotentialSource.hull must be implemented")

    def __call__(self, x: float) -> float:
        """Scalar evaluation."""
        raise NotImplementedError("PotentialSource.__call__() must be implemented")

    def evaluate_array(self, x: ArrayLike) -> FloatArray:
        """Vectorised evaluation."""
        raise NotImplementedError("PotentialSource.evaluate_array() must be implemented")

    def describe(self) -> str:
        """Short human-readable description for reports."""
        raise NotImplementedError("PotentialSource.describe() must be implemented")


# ---------------------------------------------------------------------------
# Solutions
# ---------------------------------------------------------------------------


@runtime_checkable
class SolutionFn(Protocol):
    """A solution evaluator tagged with its provenance."""

    @property
    def description(self) -> str:
        raise NotImplementedError("SolutionFn.description must be implemented")

    def __call__(self, x: float) -> float | complex:
        raise NotImplementedError("SolutionFn.__call__() must be implemented")


# ---------------------------------------------------------------------------
# Helper functions
# ---------------------------------------------------------------------------


def implements_protocol(obj: Any, protocol: type[Any]) -> bool:
    """Check if an object implements a protocol.

    Example:
        >>> implements_protocol(SymbolicPotential(x_power(-2)), PotentialSource)
        True
    """
    return isinstance(obj, protocol)


def ensure_protocol(obj: Any, protocol: type[Any], name: str) -> None:
    """Ensure an object implements a protocol.

    Raises:
        TypeError: If object doesn't implement protocol.
    """
    if not isinstance(obj, protocol):
        raise TypeError(f"{name} must implement {protocol.__name__} protocol")
