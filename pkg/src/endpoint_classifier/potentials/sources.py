"""Potential sources: exact symbolic polynomials and sampled tables.

Symbolic sources wrap a :class:`LogPoly` and can be compared exactly against
threshold polynomials. Sampled sources hold a strictly increasing table of
``(x, q(x))`` pairs and are only evaluated by linear interpolation inside the
sample hull; extrapolation is refused.
"""

import logging
import math
from pathlib import Path
from typing import IO

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..algebra.iterlog import MAX_DEPTH, positivity_bound
from ..algebra.symalg import LogPoly
from ..utils.exceptions import DepthError, DomainError, FormatError, MonotonicityError
from .dsl import parse

logger = logging.getLogger(__name__)

MIN_SAMPLES = 8


class SymbolicPotential:
    """Potential given by an exact log-power polynomial.

    Attributes:
        poly: The canonical polynomial.
    """

    kind = "symbolic"

    def __init__(self, poly: LogPoly):
        if poly.depth > MAX_DEPTH:
            raise DepthError(poly.depth, max_depth=MAX_DEPTH)
        self.poly = poly

    @classmethod
    def from_text(cls, text: str) -> "SymbolicPotential":
        return cls(parse(text))

    @property
    def hull(self) -> tuple[float, float]:
        upper = positivity_bound(self.poly.depth) if self.poly.depth else math.inf
        return (0.0, upper)

    def __call__(self, x: float) -> float:
        return self.poly.evaluate(x)

    def evaluate_array(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.poly.evaluate_array(x)

    def describe(self) -> str:
        return self.poly.render()

    def __repr__(self) -> str:
        return f"SymbolicPotential({self.poly.render()!r})"


class SampledPotential:
    """Potential known only at sample points, interpolated linearly.

    Args:
        xs: Strictly increasing positive abscissae (at least 8).
        qs: Potential values at ``xs``.
        source: Optional provenance (file name) for reports.

    Raises:
        FormatError: If the table is too short, ragged, or contains non-finite
            values or nonpositive abscissae.
        MonotonicityError: If the abscissae are not strictly increasing.
    """

    kind = "sampled"

    def __init__(self, xs: ArrayLike, qs: ArrayLike, source: str | None = None):
        x_arr = np.asarray(xs, dtype=np.float64)
        q_arr = np.asarray(qs, dtype=np.float64)
        if x_arr.ndim != 1 or x_arr.shape != q_arr.shape:
            raise FormatError("Sample columns must be one-dimensional and equally long", source)
        if x_arr.size < MIN_SAMPLES:
            raise FormatError(
                f"Sampled potentials need at least {MIN_SAMPLES} points, got {x_arr.size}", source
            )
        if not (np.all(np.isfinite(x_arr)) and np.all(np.isfinite(q_arr))):
            raise FormatError("Sample values must be finite", source)
        if x_arr[0] <= 0.0:
            raise FormatError(f"Sample abscissae must be positive, got {x_arr[0]}", source)

        steps = np.diff(x_arr)
        bad = np.flatnonzero(steps <= 0.0)
        if bad.size:
            i = int(bad[0]) + 1
            raise MonotonicityError(i, float(x_arr[i - 1]), float(x_arr[i]))

        self.xs = x_arr
        self.qs = q_arr
        self.source = source

    @property
    def hull(self) -> tuple[float, float]:
        return (float(self.xs[0]), float(self.xs[-1]))

    def __len__(self) -> int:
        return int(self.xs.size)

    def contains(self, x: ArrayLike) -> NDArray[np.bool_]:
        """Mask of points inside the closed sample hull."""
        pts = np.asarray(x, dtype=np.float64)
        return (pts >= self.xs[0]) & (pts <= self.xs[-1])

    def evaluate_array(self, x: ArrayLike) -> NDArray[np.float64]:
        pts = np.asarray(x, dtype=np.float64)
        if pts.size and not np.all(self.contains(pts)):
            raise DomainError(
                "Sampled potential cannot be extrapolated outside its hull",
                value=(float(pts.min()), float(pts.max())),
                bound=self.hull,
            )
        return np.interp(pts, self.xs, self.qs)

    def __call__(self, x: float) -> float:
        return float(self.evaluate_array(np.array([x]))[0])

    def describe(self) -> str:
        origin = f" from {self.source}" if self.source else ""
        return f"sampled({self.xs.size} points{origin})"

    def __repr__(self) -> str:
        return f"SampledPotential({self.describe()!r})"


def sample(poly: LogPoly, xs: ArrayLike) -> SampledPotential:
    """Tabulate a symbolic polynomial on the given abscissae."""
    x_arr = np.asarray(xs, dtype=np.float64)
    return SampledPotential(x_arr, poly.evaluate_array(x_arr), source="sampled polynomial")


def load_samples(source: str | Path | IO[str]) -> SampledPotential:
    """Load a two-column ``x,q`` CSV table.

    Lines starting with ``#`` are comments.

    Args:
        source: File path or open text stream.

    Returns:
        A validated sampled potential.

    Raises:
        FormatError: If the file is not two numeric columns.
        MonotonicityError: If the abscissae are not strictly increasing.
    """
    name = str(source) if isinstance(source, str | Path) else getattr(source, "name", None)
    try:
        table = np.loadtxt(source, delimiter=",", comments="#", ndmin=2, dtype=np.float64)
    except (ValueError, IndexError) as e:
        raise FormatError(f"Cannot read sample table: {e}", name) from e
    except OSError as e:
        raise FormatError(f"Cannot open sample table: {e}", name) from e

    if table.ndim != 2 or table.shape[1] != 2:
        raise FormatError(f"Expected two columns (x, q), got shape {table.shape}", name)

    logger.info(f"Loaded {table.shape[0]} potential samples", extra={"source": name})
    return SampledPotential(table[:, 0], table[:, 1], source=name)


def potential_from_text(text: str) -> SymbolicPotential:
    return SymbolicPotential.from_text(text)
