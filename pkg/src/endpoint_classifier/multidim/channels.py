"""Radial channels of ``-div |x|^alpha grad + q(|x|)`` on a ball in ``R^n``.

Separating variables in spherical harmonics of degree ``l`` leaves, after the
unitary substitution ``u = r^((n-1)/2) f``, the radial expression
``-(r^alpha u')' + [coupling] r^(alpha-2) u`` with
``coupling = (n-1)(n-3+2 alpha)/4 + l(l+n-2)``. Writing the coupling in the
Bessel form ``((2-alpha)^2 gamma^2 - (1-alpha)^2)/4`` gives the index
``gamma_alpha`` that decides the class at the origin; equivalently the channel
is limit point at 0 iff ``alpha >= 2 - n/2 - (2/n) l(l+n-2)``.

Example:
    >>> ch = channel(3, 0, 0)
    >>> ch.coupling, ch.alpha_star
    (Fraction(0, 1), Fraction(1, 2))
    >>> classify_channel(ch).class_at_zero.value
    'LimitCircle'
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..algebra.symalg import LogPoly, x_power
from ..core.schemas import (
    BoundaryValues,
    ChannelVerdict,
    Classification,
    CriteriaSettings,
    CriterionVerdict,
    MultidimSettings,
    SelfAdjointnessReport,
)
from ..criteria.classify import classify_at_zero
from ..numerics.integrate import SLProblem
from ..potentials.sources import SampledPotential, SymbolicPotential
from ..solutions.refsol import zero_energy_solutions
from ..type_utils.protocols import PotentialSource, Window
from ..type_utils.validation import RationalLike, as_rational, validate_settings
from ..utils.exceptions import FitError, ParameterError, PreconditionError

logger = logging.getLogger(__name__)

Samples = tuple[ArrayLike, ArrayLike]


@dataclass(frozen=True)
class RadialChannel:
    """One angular channel ``(n, l, alpha)`` with its exact derived constants."""

    n: int
    ell: int
    alpha: Fraction

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ParameterError(f"Dimension n must be at least 2, got {self.n}", parameter="n")
        if self.ell < 0:
            raise ParameterError(f"Degree l must be nonnegative, got {self.ell}", parameter="ell")

    @property
    def angular_eigenvalue(self) -> int:
        return self.ell * (self.ell + self.n - 2)

    @property
    def coupling(self) -> Fraction:
        """``(n-1)(n-3+2 alpha)/4 + l(l+n-2)``."""
        return (self.n - 1) * (self.n - 3 + 2 * self.alpha) / 4 + self.angular_eigenvalue

    @property
    def degenerate(self) -> bool:
        """``alpha = 2``, where ``gamma_alpha`` is undefined."""
        return self.alpha == 2

    @property
    def gamma_squared(self) -> Fraction | None:
        """``[(2-alpha-n)^2 + 4 l(l+n-2)] / (2-alpha)^2``, exact."""
        if self.degenerate:
            return None
        top = (2 - self.alpha - self.n) ** 2 + 4 * self.angular_eigenvalue
        return top / (2 - self.alpha) ** 2

    @property
    def gamma_alpha(self) -> float | None:
        g2 = self.gamma_squared
        return None if g2 is None else math.sqrt(g2)

    @property
    def alpha_star(self) -> Fraction:
        """``2 - n/2 - (2/n) l(l+n-2)``."""
        return 2 - Fraction(self.n, 2) - Fraction(2 * self.angular_eigenvalue, self.n)

    def to_row(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "ell": self.ell,
            "alpha": str(self.alpha),
            "coupling": str(self.coupling),
            "gamma_alpha": self.gamma_alpha,
            "alpha_star": str(self.alpha_star),
            "class_at_zero": classify_channel(self).class_at_zero.value,
        }


def channel(n: int, ell: int, alpha: RationalLike) -> RadialChannel:
    return RadialChannel(n=n, ell=ell, alpha=as_rational(alpha, "alpha"))


def classify_channel(ch: RadialChannel) -> ChannelVerdict:
    """Limit point at 0 iff ``alpha >= alpha_star``; always limit circle at ``R``."""
    lp = ch.alpha >= ch.alpha_star
    return ChannelVerdict(
        n=ch.n,
        ell=ch.ell,
        alpha=str(ch.alpha),
        class_at_zero=Classification.LIMIT_POINT if lp else Classification.LIMIT_CIRCLE,
    )


def classify_channel_by_gamma(ch: RadialChannel) -> Classification:
    """Class at 0 read from the ``gamma_alpha`` table instead of ``alpha_star``.

    ``alpha >= 2`` is limit point; for ``alpha < 2`` the channel is limit point
    iff ``gamma_alpha >= 1``. Compared exactly through ``gamma_alpha^2``.
    """
    g2 = ch.gamma_squared
    if g2 is None or ch.alpha > 2 or g2 >= 1:
        return Classification.LIMIT_POINT
    return Classification.LIMIT_CIRCLE


def effective_potential(ch: RadialChannel) -> LogPoly:
    """``coupling * x^(alpha-2)``."""
    return x_power(ch.alpha - 2, ch.coupling)


def criterion_threshold(n: int, ell: int, alpha: RationalLike) -> Fraction:
    """``-{n(n-4+2 alpha)/4 + l(l+n-2)}``: ``q >= threshold x^(alpha-2)`` gives limit point."""
    a = as_rational(alpha, "alpha")
    return -(n * (n - 4 + 2 * a) / 4 + ell * (ell + n - 2))


def threshold_identity(n: int, alpha: RationalLike) -> bool:
    """``-n(n-4+2 alpha)/4 == (3-2 alpha)/4 - (n-1)(n-3+2 alpha)/4`` in exact arithmetic."""
    a = as_rational(alpha, "alpha")
    return -n * (n - 4 + 2 * a) / 4 == (3 - 2 * a) / 4 - (n - 1) * (n - 3 + 2 * a) / 4


def _shifted(ch: RadialChannel, q: PotentialSource | LogPoly) -> PotentialSource:
    base = effective_potential(ch)
    if isinstance(q, LogPoly):
        return SymbolicPotential(base + q)
    if isinstance(q, SymbolicPotential):
        return SymbolicPotential(base + q.poly)
    if isinstance(q, SampledPotential):
        shifted = q.qs + base.evaluate_array(q.xs)
        return SampledPotential(q.xs, shifted, source=q.source)
    raise ParameterError(f"Unsupported potential source {type(q).__name__}", parameter="q")


def channel_criterion(
    ch: RadialChannel,
    q: PotentialSource | LogPoly,
    window: Window | None = None,
    settings: CriteriaSettings | dict[str, Any] | None = None,
    *,
    N: int | None = None,
    eps: RationalLike | None = None,
) -> CriterionVerdict:
    """Classify the channel ``(n, l, alpha)`` with potential ``q`` at the origin.

    The radial expression carries ``effective_potential(ch) + q``; the
    analytic criteria are applied to that sum, which is equivalent to
    comparing ``q`` against :func:`criterion_threshold`.

    ``N`` caps the log depth of the search and ``eps`` replaces the epsilon
    ladder with that single value; both default to the settings.

    Raises:
        ParameterError: If ``N`` is outside ``0..4`` or ``eps`` is not positive.
    """
    cfg = validate_settings(settings, CriteriaSettings)
    if N is not None:
        if not 0 <= N <= 4:
            raise ParameterError(f"N must be in 0..4, got {N}", parameter="N")
        cfg = cfg.model_copy(update={"max_N": N})
    if eps is not None:
        e = as_rational(eps, "eps")
        if e <= 0:
            raise ParameterError(f"eps must be positive, got {e}", parameter="eps")
        cfg = cfg.model_copy(update={"eps_ladder": [str(e)]})
    total = _shifted(ch, q)
    verdict = classify_at_zero(total, ch.alpha, window=window, settings=cfg)
    details = {**verdict.details, "n": ch.n, "ell": ch.ell, "coupling": str(ch.coupling)}
    return verdict.model_copy(update={"details": details})


def selfadjointness_report(
    n: int,
    alpha: RationalLike,
    q: PotentialSource | LogPoly,
    window: Window | None = None,
    settings: MultidimSettings | dict[str, Any] | None = None,
    criteria_settings: CriteriaSettings | dict[str, Any] | None = None,
) -> SelfAdjointnessReport:
    """Certify essential self-adjointness from the ``l = 0`` channel.

    ``l = 0`` has the smallest coupling, so a limit point verdict there
    extends to every channel. Verdicts for ``l = 0..ell_max`` are attached.
    """
    cfg = validate_settings(settings, MultidimSettings)
    a = as_rational(alpha, "alpha")
    verdicts = {
        ell: channel_criterion(channel(n, ell, a), q, window, criteria_settings)
        for ell in range(cfg.ell_max + 1)
    }
    certified = verdicts[0].kind.is_limit_point
    description = q.render() if isinstance(q, LogPoly) else q.describe()
    logger.info(
        f"Self-adjointness n={n} alpha={a}: {'certified' if certified else 'not certified'}",
        extra={"potential": description, "l0": verdicts[0].kind.value},
    )
    return SelfAdjointnessReport(
        n=n, alpha=str(a), potential=description, certified=certified, channels=verdicts
    )


def _sample(
    g: Callable[[NDArray[np.float64]], ArrayLike] | Samples, window: Window, points: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if callable(g):
        xs = np.geomspace(window[0], window[1], points)
        return xs, np.asarray(g(xs), dtype=np.float64)
    xs = np.asarray(g[0], dtype=np.float64)
    gs = np.asarray(g[1], dtype=np.float64)
    mask = (xs >= window[0]) & (xs <= window[1])
    if np.count_nonzero(mask) < 4:
        raise ParameterError(f"Fewer than 4 samples inside the fit window {window}", "samples")
    return xs[mask], gs[mask]


def _fit_window(
    ch: RadialChannel, xs: NDArray[np.float64], gs: NDArray[np.float64]
) -> tuple[float, float, float]:
    principal, nonprincipal = zero_energy_solutions(ch.alpha, ch.gamma_alpha or 0.0, xs)
    weight = 1.0 / np.abs(nonprincipal)
    second = principal * weight
    col_scale = float(np.max(np.abs(second))) or 1.0
    design = np.column_stack([nonprincipal * weight, second / col_scale])
    target = gs * weight
    coeffs, *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.linalg.norm(design @ coeffs - target) / max(np.linalg.norm(target), 1e-300))
    return float(coeffs[0]), float(coeffs[1] / col_scale), residual


def boundary_value_fit(
    g: Callable[[NDArray[np.float64]], ArrayLike] | Samples,
    ch: RadialChannel,
    x0: float | None = None,
    settings: MultidimSettings | dict[str, Any] | None = None,
) -> BoundaryValues:
    """Generalized boundary values ``(g~(0), g~'(0))`` by least squares near 0.

    Fits ``g ~ A u^_0 + B u_0`` against the nonprincipal and principal
    zero-energy solutions of the channel on ``[x0/100, x0]``; rows are scaled
    by ``1/|u^_0|``. A second fit on ``[x0/1000, x0/10]`` measures the
    sensitivity of ``A``.

    Args:
        g: Callable on numpy arrays, or ``(xs, gs)`` samples.
        ch: A channel in the limit circle case at 0.
        x0: Outer end of the fit window; defaults to the configured ``x0``.

    Raises:
        PreconditionError: If the channel is limit point at 0.
        FitError: If the relative residual exceeds ``fit_tol``.
    """
    cfg = validate_settings(settings, MultidimSettings)
    if classify_channel(ch).class_at_zero is not Classification.LIMIT_CIRCLE:
        raise PreconditionError(
            f"Boundary values need a limit circle channel, got {ch}", "limit circle at 0"
        )
    outer = cfg.x0 if x0 is None else x0
    if not 0.0 < outer < 1.0:
        raise ParameterError(f"x0 must lie in (0, 1), got {outer}", parameter="x0")

    windows = [(outer / 100.0, outer), (outer / 1000.0, outer / 10.0)]
    fits = [_fit_window(ch, *_sample(g, w, cfg.fit_points)) for w in windows]
    a, b, residual = fits[0]
    if residual > cfg.fit_tol:
        raise FitError(residual, cfg.fit_tol)
    sensitivity = abs(fits[1][0] - a) / max(abs(a), 1e-300)
    return BoundaryValues(
        g_tilde0=a,
        g_tilde_prime0=b,
        residual=residual,
        logarithmic=ch.gamma_squared == 0,
        windows=windows,
        sensitivity=sensitivity,
    )


def channel_problem(
    ch: RadialChannel, q: PotentialSource | LogPoly | None = None, R: float = 1.0
) -> SLProblem:
    """Radial Sturm-Liouville problem of the channel on ``(0, R)``, regular at ``R``."""
    source = SymbolicPotential(effective_potential(ch)) if q is None else _shifted(ch, q)
    return SLProblem.from_potential(ch.alpha, source, interval=(0.0, R))


def channel_table(
    n: int, alpha: RationalLike, settings: MultidimSettings | dict[str, Any] | None = None
) -> list[dict[str, Any]]:
    """Table rows (coupling, gamma_alpha, alpha_star, class at 0) for ``l = 0..ell_max``."""
    cfg = validate_settings(settings, MultidimSettings)
    a = as_rational(alpha, "alpha")
    return [channel(n, ell, a).to_row() for ell in range(cfg.ell_max + 1)]
