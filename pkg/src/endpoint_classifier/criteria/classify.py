"""Analytic limit point / limit circle criteria applied by dominance checks.

"Sufficiently small x" is operationalized as a sampling window: a criterion
holds when the potential dominates (or is dominated by) the threshold at every
point of a geometric grid over the window. Verdicts therefore carry the window
they were decided on, and the check is pointwise dominance on the sampled grid.
"""

import logging
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from ..algebra.iterlog import Ln_k_array, positivity_bound, tower
from ..algebra.symalg import LogPoly
from ..core.schemas import (
    Classification,
    CriteriaSettings,
    CriterionVerdict,
    Endpoint,
    Method,
)
from ..potentials.sources import SampledPotential, SymbolicPotential
from ..type_utils.protocols import PotentialSource, Window
from ..type_utils.validation import (
    RationalLike,
    as_rational,
    validate_settings,
    validate_window,
)
from ..utils.exceptions import DomainError, ParameterError
from ..utils.logging import log_execution
from .thresholds import leading_coefficient, q_alpha_N, threshold_lc, threshold_lp

logger = logging.getLogger(__name__)


def geometric_grid(window: Window, points: int) -> NDArray[np.float64]:
    """Geometric grid over ``window`` including both ends."""
    return np.geomspace(window[0], window[1], points)


def _slack(
    q: PotentialSource, threshold: LogPoly, grid: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return ``q - threshold`` and a positive scale at each grid point.

    Symbolic potentials are differenced exactly before evaluation, so equal
    polynomials give a slack of exactly zero.
    """
    thr = threshold.evaluate_array(grid)
    if isinstance(q, SymbolicPotential):
        diff = (q.poly - threshold).evaluate_array(grid)
        values = q.evaluate_array(grid)
    else:
        values = q.evaluate_array(grid)
        diff = values - thr
    scale = np.abs(values) + np.abs(thr)
    return diff, scale


def dominance_margin(
    q: PotentialSource,
    threshold: LogPoly,
    grid: NDArray[np.float64],
    above: bool,
    rel_tol: float = 1e-9,
) -> float | None:
    """Check ``q >= threshold`` (``above``) or ``q <= threshold`` on the grid.

    Args:
        q: Potential source.
        threshold: Threshold polynomial.
        grid: Evaluation points.
        above: Direction of the inequality.
        rel_tol: Relative tolerance absorbing rounding of sampled data. Symbolic
            sources are differenced exactly and always use 0.

    Returns:
        The minimum relative slack clipped at 0 when the inequality holds at
        every point, otherwise None.
    """
    diff, scale = _slack(q, threshold, grid)
    if not above:
        diff = -diff
    if not np.all(np.isfinite(diff)):
        return None
    tolerance = 0.0 if isinstance(q, SymbolicPotential) else rel_tol
    if np.any(diff < -tolerance * scale):
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        relative = np.where(scale > 0, diff / scale, 0.0)
    return max(0.0, float(relative.min()))


def _restrict_to_hull(q: PotentialSource, grid: NDArray[np.float64]) -> NDArray[np.float64]:
    if isinstance(q, SampledPotential):
        inside = grid[q.contains(grid)]
        if inside.size < 2:
            raise DomainError(
                "Window does not overlap the sample hull", value=(grid[0], grid[-1]), bound=q.hull
            )
        return inside
    return grid


def _search(
    q: PotentialSource, alpha: Fraction, window: Window, settings: CriteriaSettings
) -> CriterionVerdict:
    grid = _restrict_to_hull(q, geometric_grid(window, settings.grid_points))
    x_hi = float(grid[-1])
    window = (float(grid[0]), x_hi)

    for N in range(settings.max_N + 1):
        if N >= 1 and alpha >= 2:
            break
        if N >= 1 and not x_hi < positivity_bound(N):
            logger.debug(f"Skipping N={N}: window leaves the positivity domain")
            continue

        lp_ladder = settings.ladder[:1] if N == 0 else settings.ladder
        for eps in lp_ladder:
            margin = dominance_margin(
                q, threshold_lp(alpha, N, eps), grid, above=True, rel_tol=settings.rel_tol
            )
            if margin is not None:
                return CriterionVerdict(
                    kind=Classification.LIMIT_POINT_NONOSCILLATORY,
                    N=N,
                    eps=None if N == 0 else eps,
                    margin=margin,
                    window=window,
                    nonoscillatory=True,
                )

        if alpha >= 2:
            continue
        for eps in settings.ladder:
            if not eps < 1:
                continue
            margin = dominance_margin(
                q, threshold_lc(alpha, N, eps), grid, above=False, rel_tol=settings.rel_tol
            )
            if margin is not None:
                return CriterionVerdict(
                    kind=Classification.LIMIT_CIRCLE, N=N, eps=eps, margin=margin, window=window
                )

    return CriterionVerdict(kind=Classification.INCONCLUSIVE, margin=0.0, window=window)


def classify_at_zero(
    q: PotentialSource,
    alpha: RationalLike,
    window: Window | None = None,
    grid_points: int | None = None,
    settings: CriteriaSettings | dict[str, object] | None = None,
) -> CriterionVerdict:
    """Classify ``tau_alpha`` at 0 by the limit point and limit circle criteria.

    Searches ``N = 0..max_N`` and the epsilon ladder; for each ``N`` the limit
    point threshold is tried before the limit circle one and the first
    epsilon that yields dominance wins.

    Args:
        q: Symbolic or sampled potential.
        alpha: Power of the leading coefficient.
        window: Sampling window; defaults to the settings window.
        grid_points: Number of geometric grid points (at least 64).
        settings: Criteria settings (model or mapping).

    Returns:
        The verdict with the witnessing ``(N, eps)`` and minimum margin.

    Raises:
        DomainError: If the window is invalid or misses the sample hull.
    """
    cfg = validate_settings(settings, CriteriaSettings)
    if grid_points is not None:
        cfg = cfg.model_copy(update={"grid_points": grid_points})
    if cfg.grid_points < 64:
        raise ParameterError(f"grid_points must be >= 64, got {cfg.grid_points}")
    a = as_rational(alpha, "alpha")
    win = validate_window(window or cfg.window, upper_bound=1.0)

    with log_execution(logger, "classify_at_zero") as metrics:
        verdict = _search(q, a, win, cfg)
        rounds = 0
        while (
            verdict.kind is Classification.INCONCLUSIVE
            and cfg.auto_shrink
            and rounds < cfg.shrink_rounds
        ):
            x_hi = win[1] * cfg.shrink_factor
            if not win[0] < x_hi:
                break
            win = (win[0], x_hi)
            rounds += 1
            logger.info(f"Shrinking window to {win} (round {rounds})")
            verdict = _search(q, a, win, cfg)
        if rounds:
            verdict = verdict.model_copy(update={"details": {"shrink_rounds": rounds}})
        metrics.metadata.update({"kind": verdict.kind.value, "N": verdict.N})

    return verdict.model_copy(
        update={"details": {**verdict.details, "alpha": str(a), "potential": q.describe()}}
    )


def classify_euler(alpha: RationalLike, c: RationalLike) -> CriterionVerdict:
    """Exact classification of ``q = c * x^(alpha-2)`` at 0.

    Limit point (and nonoscillatory limit point when the indicial roots are
    real) iff ``alpha >= 2`` or ``c >= 3/4 - alpha/2``; limit circle otherwise.
    The ``nonoscillatory`` flag is ``c >= -(1-alpha)^2/4``.
    """
    a = as_rational(alpha, "alpha")
    coupling = as_rational(c, "c")
    borderline = leading_coefficient(a)
    nonoscillatory = coupling >= -((1 - a) ** 2) / 4

    if a >= 2 or coupling >= borderline:
        kind = (
            Classification.LIMIT_POINT_NONOSCILLATORY
            if nonoscillatory
            else Classification.LIMIT_POINT
        )
    else:
        kind = Classification.LIMIT_CIRCLE

    denominator = abs(coupling) + abs(borderline)
    margin = float(abs(coupling - borderline) / denominator) if denominator else 0.0
    return CriterionVerdict(
        kind=kind,
        N=0,
        margin=margin,
        method=Method.EULER,
        nonoscillatory=nonoscillatory,
        details={"alpha": str(a), "c": str(coupling), "borderline": str(borderline)},
    )


def limit_point_at_infinity(
    q: PotentialSource,
    alpha: RationalLike,
    N: int,
    C: float,  # noqa: N803
    window: Window,
    grid_points: int = 256,
) -> CriterionVerdict:
    """Limit point at infinity when ``q >= -C x^(2-alpha) prod_{k<=N} Ln_k(x)^2``.

    Symbolic potentials are evaluated with depth-k log factors read as
    ``Ln_k(x)``.

    Raises:
        ParameterError: If ``alpha > 2``, ``N < 1`` or ``C <= 0``.
        DomainError: If the window does not start above ``e_N``.
    """
    a = as_rational(alpha, "alpha")
    if a > 2:
        raise ParameterError(f"alpha must be <= 2 at infinity, got {a}", parameter="alpha")
    if not isinstance(N, int) or N < 1:
        raise ParameterError(f"N must be a positive integer, got {N!r}", parameter="N")
    if not C > 0:
        raise ParameterError(f"C must be positive, got {C}", parameter="C")
    lo, hi = float(window[0]), float(window[1])
    if not lo > tower(N):
        raise DomainError(f"Window must start above e_{N}", value=lo, bound=tower(N))
    if not lo < hi:
        raise DomainError("Window must satisfy R < x_hi", value=(lo, hi))

    grid = np.geomspace(lo, hi, grid_points)
    with np.errstate(over="ignore"):
        bound = -C * np.power(grid, float(2 - a))
        for k in range(1, N + 1):
            bound = bound * Ln_k_array(k, grid) ** 2
    if isinstance(q, SymbolicPotential):
        values = np.array([q.poly.evaluate_at_infinity(float(x)) for x in grid])
    else:
        values = q.evaluate_array(_restrict_to_hull(q, grid))
        bound = bound[q.contains(grid)]

    diff = values - bound
    scale = np.abs(values) + np.abs(bound)
    holds = bool(np.all(np.isfinite(diff)) and np.all(diff >= -1e-9 * scale))
    if holds:
        relative = np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), 0.0)
        margin = max(0.0, float(relative.min()))
        kind = Classification.LIMIT_POINT
    else:
        margin = 0.0
        kind = Classification.INCONCLUSIVE
    return CriterionVerdict(
        kind=kind,
        endpoint=Endpoint.INFINITY,
        N=N,
        margin=margin,
        window=(lo, hi),
        details={"alpha": str(a), "C": C, "potential": q.describe()},
    )


def dominance_chain(
    alpha: RationalLike,
    N: int,
    eps: RationalLike,
    eps_prime: RationalLike,
    window: Window,
    grid_points: int = 256,
) -> bool:
    """Check ``threshold_lc(eps) <= q_alpha_N <= threshold_lp(eps')`` on a window.

    How small ``x`` must be for the upper inequality depends on ``(alpha, N, eps')``;
    the chain is verified numerically on the given grid rather than assumed.
    """
    a = as_rational(alpha, "alpha")
    win = validate_window(window, upper_bound=positivity_bound(N))
    grid = geometric_grid(win, grid_points)
    middle = q_alpha_N(a, N)
    lower = (middle - threshold_lc(a, N, eps)).evaluate_array(grid)
    upper = (threshold_lp(a, N, eps_prime) - middle).evaluate_array(grid)
    return bool(np.all(lower >= 0.0) and np.all(upper >= 0.0))


def compare_potentials(
    q1: PotentialSource, q2: PotentialSource, grid: NDArray[np.float64]
) -> tuple[bool, bool]:
    """Return ``(q2 >= q1, q2 <= q1)`` on the grid."""
    if isinstance(q1, SymbolicPotential) and isinstance(q2, SymbolicPotential):
        diff = (q2.poly - q1.poly).evaluate_array(grid)
    else:
        diff = q2.evaluate_array(grid) - q1.evaluate_array(grid)
    return bool(np.all(diff >= 0.0)), bool(np.all(diff <= 0.0))


def transfer_by_comparison(
    reference: CriterionVerdict,
    q_reference: PotentialSource,
    q_new: PotentialSource,
    grid_points: int = 256,
) -> CriterionVerdict:
    """Carry a verdict over to a comparable potential.

    A nonoscillatory limit point verdict transfers to any potential above the
    reference on the window; a nonoscillatory limit circle verdict transfers to
    any potential below it.
    """
    if reference.window is None:
        raise ParameterError("Reference verdict has no window to compare on")
    grid = _restrict_to_hull(q_new, geometric_grid(reference.window, grid_points))
    above, below = compare_potentials(q_reference, q_new, grid)

    kind = Classification.INCONCLUSIVE
    if reference.kind is Classification.LIMIT_POINT_NONOSCILLATORY and above:
        kind = Classification.LIMIT_POINT_NONOSCILLATORY
    elif reference.kind is Classification.LIMIT_CIRCLE and below:
        kind = Classification.LIMIT_CIRCLE
    return CriterionVerdict(
        kind=kind,
        endpoint=reference.endpoint,
        N=reference.N,
        eps=reference.eps,
        margin=0.0,
        window=reference.window,
        method=Method.COMPARISON,
        details={"reference": q_reference.describe(), "potential": q_new.describe()},
    )
