"""Discrete checks of power-weighted and log-refined Hardy inequalities.

The quadratic form ``int x^alpha |f'|^2 + int V |f|^2`` is restricted to
piecewise-linear hat functions on a geometric grid of ``[rho * x_min_ratio, rho]``
that vanish at both ends. This subspace is conforming, so a nonnegative
discrete minimum certifies the inequality on it and a negative minimum is a
counterexample. The minimum Rayleigh quotient is the smallest eigenvalue of the
tridiagonal pencil ``(A, M)``, found by bisection on Sturm counts: the number of
negative pivots in the ``LDL^T`` factorisation of ``A - lambda M`` equals the
number of eigenvalues below ``lambda``.

Example:
    >>> form = assemble(0, LogPoly.zero(), 1.0, n_grid=2000)
    >>> abs(min_rayleigh(form) - math.pi**2) / math.pi**2 < 0.02
    True
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from numpy.polynomial import legendre
from numpy.typing import ArrayLike, NDArray

from ..algebra.iterlog import tower
from ..algebra.symalg import LogPoly, log_partial_products_sum, x_power
from ..core.schemas import HardyResult, HardySettings
from ..type_utils.validation import RationalLike, as_rational, validate_settings
from ..utils.exceptions import ConvergenceError, ParameterError
from ..utils.logging import log_execution

logger = logging.getLogger(__name__)

MIN_GRID = 100
MAX_REFINED_DEPTH = 3
FORMS = ("power", "squared", "first-power")
PIVOT_FLOOR = 1e-300


@dataclass
class DiscreteForm:
    """Assembled tridiagonal pencil over the interior hat functions.

    Attributes:
        alpha: Weight exponent.
        potential: The potential ``V``.
        rho: Right end of the interval.
        gamma: Log shift ``gamma`` in ``ln_k(x/gamma)``, if ``V`` has logs.
        nodes: Grid including both (constrained) end nodes.
        a_diag, a_off: Diagonal and off-diagonal of stiffness plus potential.
        m_diag, m_off: Diagonal and off-diagonal of the consistent mass matrix.
        quadrature_order: Gauss-Legendre points per element for ``V``.
    """

    alpha: float
    potential: LogPoly
    rho: float
    gamma: float | None
    nodes: NDArray[np.float64]
    a_diag: NDArray[np.float64]
    a_off: NDArray[np.float64]
    m_diag: NDArray[np.float64]
    m_off: NDArray[np.float64]
    quadrature_order: int = 3

    @property
    def size(self) -> int:
        return int(self.a_diag.size)

    def energy(self, coeffs: ArrayLike) -> float:
        """``f^T A f`` for interior nodal values ``coeffs``."""
        f = self._check(coeffs)
        return float(self.a_diag @ f**2 + 2.0 * self.a_off @ (f[:-1] * f[1:]))

    def mass(self, coeffs: ArrayLike) -> float:
        """``f^T M f``."""
        f = self._check(coeffs)
        return float(self.m_diag @ f**2 + 2.0 * self.m_off @ (f[:-1] * f[1:]))

    def _check(self, coeffs: ArrayLike) -> NDArray[np.float64]:
        f = np.asarray(coeffs, dtype=np.float64)
        if f.shape != (self.size,):
            raise ParameterError(
                f"Expected {self.size} interior values, got shape {f.shape}", parameter="coeffs"
            )
        return f


def geometric_nodes(rho: float, n_grid: int, x_min_ratio: float = 1e-6) -> NDArray[np.float64]:
    """``n_grid`` nodes from ``rho * x_min_ratio`` to ``rho``, equally spaced in ``log x``."""
    if not rho > 0.0:
        raise ParameterError(f"rho must be positive, got {rho}", parameter="rho")
    return np.geomspace(rho * x_min_ratio, rho, n_grid)


def _weight_integrals(alpha: float, x0: NDArray[np.float64], x1: NDArray[np.float64]) -> Any:
    log_ratio = np.log(x1 / x0)
    if alpha == -1.0:
        return log_ratio
    k = alpha + 1.0
    return x0**k * np.expm1(k * log_ratio) / k


def _gauss_points(
    x0: NDArray[np.float64], h: NDArray[np.float64], order: int
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    xi, w = legendre.leggauss(order)
    points = x0[:, None] + 0.5 * h[:, None] * (1.0 + xi[None, :])
    left = 0.5 * (1.0 - xi)
    return points, w, left


def _potential_blocks(
    potential: LogPoly,
    x0: NDArray[np.float64],
    h: NDArray[np.float64],
    gamma: float,
    order: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Element integrals of ``V phi_L^2``, ``V phi_R^2`` and ``V phi_L phi_R``."""
    points, w, left = _gauss_points(x0, h, order)
    values = potential.evaluate_array(points.ravel(), log_shift=gamma).reshape(points.shape)
    right = 1.0 - left
    jac = 0.5 * h
    ll = (values * (w * left * left)[None, :]).sum(axis=1) * jac
    rr = (values * (w * right * right)[None, :]).sum(axis=1) * jac
    lr = (values * (w * left * right)[None, :]).sum(axis=1) * jac
    return ll, rr, lr


def _check_gamma(potential: LogPoly, rho: float, gamma: float | None) -> float:
    depth = potential.depth
    if not depth:
        return 1.0 if gamma is None else gamma
    if depth > MAX_REFINED_DEPTH:
        raise ParameterError(
            f"Log depth {depth} exceeds {MAX_REFINED_DEPTH} for Hardy forms", parameter="N"
        )
    bound = tower(depth) * rho
    if gamma is None or gamma < bound * (1.0 - 1e-12):
        raise ParameterError(
            f"Shifted logs of depth {depth} need gamma >= e_{depth} * rho = {bound}, got {gamma}",
            parameter="gamma",
        )
    return gamma


def assemble(
    alpha: RationalLike,
    V: LogPoly,
    rho: float,
    gamma: float | None = None,
    n_grid: int = 2000,
    settings: HardySettings | dict[str, Any] | None = None,
) -> DiscreteForm:
    """Assemble the discrete form of ``-(x^alpha f')' + V f`` on ``(0, rho)``.

    Args:
        alpha: Weight exponent.
        V: Potential; log factors are read as ``ln_k(x/gamma)``.
        rho: Right end of the interval.
        gamma: Log shift; required (and at least ``e_N rho``) when ``V`` has depth ``N``.
        n_grid: Number of grid nodes including both ends (at least 100).
        settings: Grid start ratio and quadrature order.

    Raises:
        ParameterError: If ``n_grid < 100`` or the ``gamma`` constraint fails.
    """
    cfg = validate_settings(settings, HardySettings)
    if n_grid < MIN_GRID:
        raise ParameterError(f"n_grid must be at least {MIN_GRID}, got {n_grid}", "n_grid")
    shift = _check_gamma(V, rho, gamma)
    a = float(as_rational(alpha, "alpha"))

    nodes = geometric_nodes(rho, n_grid, cfg.x_min_ratio)
    x0, x1 = nodes[:-1], nodes[1:]
    h = x1 - x0

    stiff = _weight_integrals(a, x0, x1) / h**2
    ll, rr, lr = _potential_blocks(V, x0, h, shift, cfg.quadrature_order)

    a_full = np.zeros(n_grid)
    m_full = np.zeros(n_grid)
    a_full[:-1] += stiff + ll
    a_full[1:] += stiff + rr
    m_full[:-1] += h / 3.0
    m_full[1:] += h / 3.0
    a_off_full = -stiff + lr
    m_off_full = h / 6.0

    return DiscreteForm(
        alpha=a,
        potential=V,
        rho=rho,
        gamma=gamma,
        nodes=nodes,
        a_diag=a_full[1:-1],
        a_off=a_off_full[1:-1],
        m_diag=m_full[1:-1],
        m_off=m_off_full[1:-1],
        quadrature_order=cfg.quadrature_order,
    )


def form_value(form: DiscreteForm, coeffs: ArrayLike) -> float:
    """Evaluate the quadratic form element by element for interior nodal values.

    Independent of the assembled arrays: ``f'`` is constant on each element, so
    the weighted kinetic part is exact, and ``V |f|^2`` uses the same Gauss rule.
    """
    f_int = form._check(coeffs)
    f = np.concatenate(([0.0], f_int, [0.0]))
    x0, x1 = form.nodes[:-1], form.nodes[1:]
    h = x1 - x0
    slope = np.diff(f) / h
    kinetic = _weight_integrals(form.alpha, x0, x1) * slope**2

    points, w, _ = _gauss_points(x0, h, form.quadrature_order)
    shift = 1.0 if form.gamma is None else form.gamma
    values = form.potential.evaluate_array(points.ravel(), log_shift=shift).reshape(points.shape)
    f_at = f[:-1, None] + slope[:, None] * (points - x0[:, None])
    potential = (values * f_at**2 * w[None, :]).sum(axis=1) * 0.5 * h
    return float(math.fsum(kinetic) + math.fsum(potential))


def sturm_count(form: DiscreteForm, lam: float) -> int:
    """Number of generalized eigenvalues of ``(A, M)`` below ``lam``."""
    d = form.a_diag - lam * form.m_diag
    e = form.a_off - lam * form.m_off
    negatives = 0
    pivot = d[0]
    for i in range(form.size):
        if i:
            pivot = d[i] - e[i - 1] ** 2 / pivot
        if pivot == 0.0:
            pivot = PIVOT_FLOOR
        if pivot < 0.0:
            negatives += 1
    return negatives


def min_rayleigh(
    form: DiscreteForm, settings: HardySettings | dict[str, Any] | None = None
) -> float:
    """Smallest generalized eigenvalue of the pencil, i.e. the minimum Rayleigh quotient.

    Raises:
        ConvergenceError: If no bracket is found or bisection does not reach
            the relative tolerance within ``max_iter`` steps.
    """
    cfg = validate_settings(settings, HardySettings)
    with log_execution(logger, "min_rayleigh") as metrics:
        lo, hi = -1.0, 1.0
        for _ in range(cfg.max_iter):
            metrics.sturm_counts += 1
            if sturm_count(form, lo) == 0:
                break
            lo *= 4.0
        else:
            raise ConvergenceError("No lower bound for the smallest eigenvalue", cfg.max_iter)
        for _ in range(cfg.max_iter):
            metrics.sturm_counts += 1
            if sturm_count(form, hi) >= 1:
                break
            hi *= 4.0
        else:
            raise ConvergenceError("No upper bound for the smallest eigenvalue", cfg.max_iter)

        for iteration in range(cfg.max_iter):
            if hi - lo <= cfg.rtol * max(abs(lo), abs(hi)) or hi - lo <= 1e-14:
                metrics.metadata.update({"iterations": iteration, "size": form.size})
                return 0.5 * (lo + hi)
            mid = 0.5 * (lo + hi)
            metrics.sturm_counts += 1
            if sturm_count(form, mid) >= 1:
                hi = mid
            else:
                lo = mid
    raise ConvergenceError(f"Bisection did not converge: [{lo}, {hi}]", cfg.max_iter)


def hardy_potential(
    alpha: RationalLike, N: int = 0, form: str = "squared", delta: RationalLike = 0
) -> LogPoly:
    """Potential of a Hardy-type form, minus ``delta x^(alpha-2)``.

    * ``power``: ``-(1-alpha)^2/4 x^(alpha-2)``
    * ``squared``: the power term minus ``1/4 x^(alpha-2) sum_j prod_{l<=j} ln_l^-2``
    * ``first-power``: ``(3/4 - alpha/2) x^(alpha-2) + (alpha-2)/2 x^(alpha-2) sum_j prod ln_l^-1``
    """
    a = as_rational(alpha, "alpha")
    if form not in FORMS:
        raise ParameterError(f"Unknown Hardy form {form!r}; expected one of {FORMS}", "form")
    if form == "power":
        if N:
            raise ParameterError("The power form has no log refinement", parameter="N")
    elif not 1 <= N <= MAX_REFINED_DEPTH:
        raise ParameterError(
            f"N must lie in [1, {MAX_REFINED_DEPTH}] for the {form} form, got {N}", "N"
        )

    shift = -as_rational(delta, "delta")
    match form:
        case "power":
            return x_power(a - 2, -((1 - a) ** 2) / 4 + shift)
        case "squared":
            base = x_power(a - 2, -((1 - a) ** 2) / 4 + shift)
            return base + x_power(a - 2, Fraction(-1, 4)) * log_partial_products_sum(N, -2)
        case _:
            base = x_power(a - 2, Fraction(3, 4) - a / 2 + shift)
            return base + x_power(a - 2, (a - 2) / 2) * log_partial_products_sum(N, -1)


def hardy_check(
    alpha: RationalLike,
    N: int,
    rho: float,
    gamma: float | None = None,
    n_grid: int | None = None,
    form: str = "squared",
    delta: RationalLike = 0,
    settings: HardySettings | dict[str, Any] | None = None,
) -> HardyResult:
    """Assemble a Hardy-type form and test nonnegativity of its minimum quotient."""
    cfg = validate_settings(settings, HardySettings)
    grid = n_grid if n_grid is not None else cfg.n_grid
    V = hardy_potential(alpha, N, form, delta)
    discrete = assemble(alpha, V, rho, gamma, grid, cfg)
    quotient = min_rayleigh(discrete, cfg)
    passed = quotient >= -cfg.pass_tol
    logger.info(
        f"Hardy {form} form alpha={alpha} N={N}: min quotient {quotient:.6g}",
        extra={"rho": rho, "gamma": gamma, "n_grid": grid, "pass": passed},
    )
    return HardyResult(
        alpha=float(as_rational(alpha, "alpha")),
        N=N,
        rho=rho,
        gamma=gamma,
        n_grid=grid,
        form=form,
        min_quotient=quotient,
        passed=passed,
    )


def hardy_refined_check(
    alpha: RationalLike,
    N: int,
    rho: float,
    gamma: float,
    n_grid: int | None = None,
    form: str = "squared",
    settings: HardySettings | dict[str, Any] | None = None,
) -> bool:
    """Whether the log-refined form has minimum quotient at least ``-pass_tol``.

    Raises:
        ParameterError: If ``N > 3`` or ``gamma < e_N rho``.
    """
    return hardy_check(alpha, N, rho, gamma, n_grid, form, settings=settings).passed


def hardy_sweep(
    alpha: RationalLike,
    N: int,
    rho: float,
    gamma: float | None,
    grids: Sequence[int],
    form: str = "squared",
    delta: RationalLike = 0,
    settings: HardySettings | dict[str, Any] | None = None,
) -> list[HardyResult]:
    """Run :func:`hardy_check` over a sequence of grid sizes."""
    return [hardy_check(alpha, N, rho, gamma, n, form, delta, settings) for n in grids]
