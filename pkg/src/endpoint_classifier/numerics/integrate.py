"""Integration of ``(tau - z) u = 0`` toward a singular endpoint.

The quasi-derivative system ``u' = v/p``, ``v' = (q - z r) u`` is integrated in
a logarithmic coordinate: ``x = a + (c - a) exp(-t)`` toward the left endpoint
and ``x = c exp(t)`` toward infinity. Each unit of ``t`` of length ``ln 2`` is a
dyadic window ``[c 2^-(k+1), c 2^-k]`` (or ``[c 2^k, c 2^(k+1)]``); the state is
renormalized between windows and the scale is kept in ``log_scale`` so that
growing solutions never overflow. Within a window ``v`` is replaced by
``sigma v`` with ``sigma = d/p`` at the window start, which keeps both
components of comparable size even when ``p`` degenerates.
"""

import cmath
import itertools
import logging
import math
import sys
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from ..algebra.iterlog import positivity_bound
from ..algebra.symalg import LogPoly, x_power
from ..core.schemas import Endpoint, WeylSettings
from ..potentials.sources import SampledPotential, SymbolicPotential
from ..type_utils.protocols import CoefficientFn, PotentialSource
from ..type_utils.validation import RationalLike, as_rational, validate_settings
from ..utils.exceptions import (
    CoefficientError,
    DomainError,
    NumericalError,
    ParameterError,
    StepFailureError,
)
from ..utils.logging import log_execution

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
MAX_LOG_MAGNITUDE = math.log(sys.float_info.max)
REGULAR = "regular"
SINGULAR = "singular"


@dataclass
class SLProblem:
    """Sturm-Liouville expression ``(1/r) [-(p u')' + q u]`` on ``(a, b)``.

    Attributes:
        p: Leading coefficient, positive on the interval.
        q: Potential.
        r: Weight, positive on the interval.
        interval: ``(a, b)``; ``b`` may be ``inf``.
        left: ``"regular"`` or ``"singular"`` marker for ``a``.
        right: Marker for ``b``.
        description: Provenance for reports.
        hull: Sub-interval on which ``q`` may be evaluated (sampled potentials).
    """

    p: CoefficientFn
    q: CoefficientFn
    r: CoefficientFn
    interval: tuple[float, float] = (0.0, 1.0)
    left: str = SINGULAR
    right: str = REGULAR
    description: str = ""
    hull: tuple[float, float] | None = None
    log_depth: int = 0

    def __post_init__(self) -> None:
        a, b = self.interval
        if not a < b:
            raise ParameterError(f"Interval must satisfy a < b, got {self.interval}")
        for marker in (self.left, self.right):
            if marker not in (REGULAR, SINGULAR):
                raise ParameterError(f"Endpoint marker must be regular or singular, got {marker!r}")

    @classmethod
    def from_potential(
        cls,
        alpha: RationalLike,
        source: PotentialSource | LogPoly,
        interval: tuple[float, float] = (0.0, 1.0),
        right: str = REGULAR,
    ) -> "SLProblem":
        """``-(x^alpha u')' + q u`` with weight 1.

        On an unbounded interval the log factors of a symbolic potential are
        read as ``Ln_k(x)``; the left end is then treated as regular and must
        exceed ``e_N`` for a depth-``N`` potential.
        """
        a = float(as_rational(alpha, "alpha"))
        if isinstance(source, LogPoly):
            source = SymbolicPotential(source)
        depth = source.poly.depth if isinstance(source, SymbolicPotential) else 0
        hull = source.hull if isinstance(source, SampledPotential) else None
        q: CoefficientFn = source
        left = SINGULAR
        if math.isinf(interval[1]):
            right, left = SINGULAR, REGULAR if interval[0] > 0.0 else SINGULAR
            if isinstance(source, SymbolicPotential) and depth:
                q = source.poly.evaluate_at_infinity
        return cls(
            p=lambda x: x**a,
            q=q,
            r=lambda x: 1.0,
            interval=interval,
            left=left,
            right=right,
            description=f"alpha={as_rational(alpha, 'alpha')}, q={source.describe()}",
            hull=hull,
            log_depth=depth,
        )

    def default_anchor(self, endpoint: Endpoint) -> float:
        """Interior starting point for probes toward ``endpoint``."""
        a, b = self.interval
        if endpoint is Endpoint.INFINITY:
            return max(1.0, 2.0 * a) if self.hull is None else 0.5 * (self.hull[0] + self.hull[1])
        if self.hull is not None:
            return 0.5 * self.hull[1] + 0.5 * max(self.hull[0], a)
        if self.log_depth:
            return positivity_bound(self.log_depth) * 1e-2
        return min(1.0, 0.5 * (a + b)) if math.isfinite(b) else 1.0

    def check_coefficients(self, x: float) -> None:
        """Raise :class:`CoefficientError` if ``p`` or ``r`` is not positive at ``x``."""
        for name, fn in (("p", self.p), ("r", self.r)):
            value = fn(x)
            if not value > 0.0:
                raise CoefficientError(name, x, value)


@dataclass
class Checkpoint:
    """State at a window boundary; the true state is ``(u, u_quasi) * exp(log_scale)``."""

    x: float
    u: complex
    u_quasi: complex
    log_scale: float


@dataclass
class Trajectory:
    """Checkpointed solution integrated toward an endpoint.

    Attributes:
        endpoint: Endpoint approached.
        z: Spectral parameter.
        anchor: Starting point.
        checkpoints: States at the window boundaries, monotone toward the endpoint.
        log_window_masses: ``log int |u|^2 r dx`` per dyadic window.
        window_zero_counts: Sign changes of ``Re u`` per window, when recorded.
        dense_x: Dense output abscissae, when recorded.
        dense_log_abs_u: ``log |u|`` (true scale) at ``dense_x``.
        dense_sign: Sign of ``Re u`` at ``dense_x``.
        rhs_evaluations: Right-hand-side evaluations used.
    """

    endpoint: Endpoint
    z: complex
    anchor: float
    checkpoints: list[Checkpoint] = field(default_factory=list)
    log_window_masses: list[float] = field(default_factory=list)
    window_zero_counts: list[int] = field(default_factory=list)
    dense_x: list[float] = field(default_factory=list)
    dense_log_abs_u: list[float] = field(default_factory=list)
    dense_sign: list[float] = field(default_factory=list)
    rhs_evaluations: int = 0

    @property
    def deepest_x(self) -> float:
        return self.checkpoints[-1].x

    @property
    def window_masses(self) -> list[float]:
        return [math.exp(m) for m in self.log_window_masses]

    def true_state(self, index: int) -> tuple[complex, complex]:
        """Unscaled ``(u, u_quasi)`` at a checkpoint (may overflow to inf)."""
        cp = self.checkpoints[index]
        try:
            scale = math.exp(cp.log_scale)
        except OverflowError:
            scale = math.inf
        return cp.u * scale, cp.u_quasi * scale


class _Coordinates:
    """Map between ``t`` and ``x`` for one endpoint."""

    def __init__(self, problem: SLProblem, endpoint: Endpoint, anchor: float):
        self.a = problem.interval[0]
        self.anchor = anchor
        self.endpoint = endpoint
        if endpoint is Endpoint.ZERO:
            if not self.a < anchor:
                raise DomainError("Anchor must lie right of the left endpoint", value=anchor)
            self.direction = -1.0
        else:
            if not anchor > 0.0:
                raise DomainError("Anchor must be positive toward infinity", value=anchor)
            self.direction = 1.0

    def x(self, t: float) -> float:
        if self.endpoint is Endpoint.ZERO:
            return self.a + (self.anchor - self.a) * math.exp(-t)
        return self.anchor * math.exp(t)

    def distance(self, x: float) -> float:
        """``|dx/dt|``."""
        return x - self.a if self.endpoint is Endpoint.ZERO else x

    def t_of(self, x: float) -> float:
        if self.endpoint is Endpoint.ZERO:
            return math.log((self.anchor - self.a) / (x - self.a))
        return math.log(x / self.anchor)


def _window_rhs(
    problem: SLProblem, coords: _Coordinates, z: complex, sigma: float
) -> Callable[[float, NDArray[np.complex128]], NDArray[np.complex128]]:
    sign = coords.direction

    def rhs(t: float, state: NDArray[np.complex128]) -> NDArray[np.complex128]:
        x = coords.x(t)
        d = coords.distance(x)
        u, w = state[0], state[1]
        du = sign * d * w / (problem.p(x) * sigma)
        dw = sign * sigma * d * (problem.q(x) - z * problem.r(x)) * u
        dm = abs(u) ** 2 * problem.r(x) * d
        return np.array([du, dw, dm], dtype=np.complex128)

    return rhs


def _count_sign_changes(values: NDArray[np.float64], previous: float) -> tuple[int, float]:
    signs = np.sign(values[values != 0.0])
    if previous:
        signs = np.concatenate(([np.sign(previous)], signs))
    changes = int(np.count_nonzero(np.diff(signs) != 0)) if signs.size > 1 else 0
    last = float(signs[-1]) if signs.size else previous
    return changes, last


def integrate_toward_endpoint(
    problem: SLProblem,
    z: complex,
    anchor: float,
    initial: tuple[complex, complex],
    target_x: float | None = None,
    endpoint: Endpoint = Endpoint.ZERO,
    settings: WeylSettings | dict[str, Any] | None = None,
    dense: bool = False,
) -> Trajectory:
    """Integrate a solution from ``anchor`` toward ``endpoint`` window by window.

    Args:
        problem: The Sturm-Liouville problem.
        z: Spectral parameter.
        anchor: Interior starting point ``c``.
        initial: ``(u(c), u_quasi(c))``.
        target_x: Point to stop at exactly (the last window may be shorter than
            a dyadic one). Defaults to ``t_max`` whole windows from the settings,
            cut at the edge of a sampled hull.
        endpoint: Endpoint approached.
        settings: Integrator settings.
        dense: Record ``u`` on ``samples_per_window`` points per window and the
            sign changes of ``Re u`` in each window.

    Returns:
        The checkpointed trajectory.

    Raises:
        DomainError: If ``target_x`` is not between the anchor and the endpoint.
        StepFailureError: If the integrator cannot meet its tolerance.
        CoefficientError: If ``p`` or ``r`` is not positive at a window boundary.
    """
    cfg = validate_settings(settings, WeylSettings)
    coords = _Coordinates(problem, endpoint, anchor)
    if target_x is None:
        t_total = cfg.t_max
        if problem.hull is not None:
            edge = problem.hull[0] if endpoint is Endpoint.ZERO else problem.hull[1]
            t_total = min(t_total, coords.t_of(edge))
        bounds = [k * LN2 for k in range(max(1, int(math.floor(t_total / LN2 + 1e-9))) + 1)]
    else:
        on_side = coords.a < target_x < anchor if endpoint is Endpoint.ZERO else target_x > anchor
        if not on_side:
            raise DomainError(
                f"target_x={target_x} is not between the anchor {anchor} and the endpoint",
                value=target_x,
                bound=anchor,
            )
        t_total = coords.t_of(target_x)
        n_windows = int(math.ceil(t_total / LN2 - 1e-9))
        bounds = [min(k * LN2, t_total) for k in range(n_windows + 1)]

    u0, v0 = complex(initial[0]), complex(initial[1])
    if u0 == 0 and v0 == 0:
        raise ParameterError("Initial data must not vanish identically", parameter="initial")
    problem.check_coefficients(anchor)

    trajectory = Trajectory(endpoint=endpoint, z=complex(z), anchor=anchor)
    trajectory.checkpoints.append(Checkpoint(anchor, u0, v0, 0.0))

    u, v, log_scale = u0, v0, 0.0
    last_sign = 0.0
    with log_execution(logger, "integrate_toward_endpoint") as metrics:
        for k, (t0, t1) in enumerate(itertools.pairwise(bounds)):
            x0 = coords.x(t0)
            problem.check_coefficients(x0)
            sigma = coords.distance(x0) / problem.p(x0)

            # state is O(1) at every window start; atol is absolute
            norm = max(abs(u), abs(sigma * v))
            u, v = u / norm, v / norm
            log_scale += math.log(norm)

            t_eval = np.linspace(t0, t1, cfg.samples_per_window) if dense else None
            sol = integrate.solve_ivp(
                _window_rhs(problem, coords, complex(z), sigma),
                (t0, t1),
                np.array([u, sigma * v, 0.0], dtype=np.complex128),
                method=cfg.method,
                rtol=cfg.rtol,
                atol=cfg.atol,
                t_eval=t_eval,
            )
            trajectory.rhs_evaluations += int(sol.nfev)
            if not sol.success:
                raise StepFailureError(f"Integrator failed in window {k}: {sol.message}", x=x0)

            end = sol.y[:, -1]
            u, v = complex(end[0]), complex(end[1]) / sigma
            mass = float(end[2].real)
            trajectory.checkpoints.append(Checkpoint(coords.x(t1), u, v, log_scale))
            trajectory.log_window_masses.append(
                2 * log_scale + math.log(mass) if mass > 0.0 else -math.inf
            )
            if dense:
                changes, last_sign = _count_sign_changes(sol.y[0].real, last_sign)
                trajectory.window_zero_counts.append(changes)
                trajectory.dense_x.extend(coords.x(t) for t in sol.t)
                with np.errstate(divide="ignore"):
                    trajectory.dense_log_abs_u.extend(np.log(np.abs(sol.y[0])) + log_scale)
                trajectory.dense_sign.extend(np.sign(sol.y[0].real))

        metrics.windows = len(bounds) - 1
        metrics.rhs_evaluations = trajectory.rhs_evaluations
        metrics.metadata.update({"endpoint": endpoint.value, "deepest_x": trajectory.deepest_x})

    return trajectory


def wronskian(
    first: Trajectory, second: Trajectory, log_form: bool = False
) -> list[complex]:
    """``u1 v2 - v1 u2`` at the shared checkpoints, in true (unscaled) units.

    Equals ``p (u1 u2' - u1' u2)`` and is constant along exact solutions of the
    same equation. With ``log_form=True`` each entry is the complex logarithm of
    the value instead (``-inf`` where the value is zero), which stays finite when
    the accumulated scales exceed double range. In the default form a value
    whose magnitude would overflow raises ``NumericalError``.
    """
    if len(first.checkpoints) != len(second.checkpoints):
        raise ParameterError("Trajectories must share their checkpoints")
    values: list[complex] = []
    for c1, c2 in zip(first.checkpoints, second.checkpoints, strict=True):
        scale = c1.log_scale + c2.log_scale
        scaled = complex(c1.u * c2.u_quasi - c1.u_quasi * c2.u)
        if scaled == 0:
            values.append(complex(-math.inf, 0.0) if log_form else 0j)
            continue
        log_w = cmath.log(scaled) + scale
        if log_form:
            values.append(log_w)
        elif log_w.real > MAX_LOG_MAGNITUDE:
            raise NumericalError(
                "Wronskian overflows double precision; use log_form=True",
                details={"x": c1.x, "log_abs": log_w.real},
            )
        else:
            values.append(cmath.exp(log_w))
    return values


def euler_problem(alpha: RationalLike, c: RationalLike) -> SLProblem:
    """``-(x^alpha u')' + c x^(alpha-2) u`` on ``(0, 1)``."""
    a = as_rational(alpha, "alpha")
    return SLProblem.from_potential(a, x_power(a - 2, as_rational(c, "c")))
