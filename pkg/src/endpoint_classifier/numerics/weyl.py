"""Numerical Weyl alternative, zero counting and Sturm comparison.

Two solutions of ``(tau - z) u = 0`` with independent data at an interior
anchor are integrated toward the endpoint; the per-window masses decide
square-integrability. All thresholds are heuristics taken from
:class:`~endpoint_classifier.core.schemas.WeylSettings` and every decision
carries its evidence, so that Inconclusive is an ordinary outcome.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.special import logsumexp

from ..core.schemas import (
    Classification,
    Endpoint,
    L2Judgement,
    OscillationVerdict,
    SolutionProbe,
    WeylReport,
    WeylSettings,
)
from ..type_utils.validation import validate_settings, validate_window
from ..utils.exceptions import ParameterError, PreconditionError
from ..utils.logging import get_logger, log_execution
from .integrate import REGULAR, SLProblem, integrate_toward_endpoint

logger = logging.getLogger(__name__)

PROBE_DATA: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
STURM_TOL = 1e-8


@dataclass(frozen=True)
class MassJudgement:
    """Outcome of :func:`judge_l2` together with its evidence."""

    judgement: L2Judgement
    ratios: list[float]
    growth: float
    tail_bound: float | None


def judge_l2(
    log_masses: list[float], settings: WeylSettings | dict[str, Any] | None = None
) -> MassJudgement:
    """Judge square-integrability from per-window log masses.

    A solution is judged L2 when the last ``m`` ratios ``I_(k+1)/I_k`` are at
    most ``rho_max`` and the geometric tail bound ``I_last rho/(1-rho)`` is
    below ``tail_tol`` times the accumulated mass. It is judged not L2 when the
    partial sums grew by at least ``growth`` or the last ``m`` ratios all stay
    at or above ``1 - persist_tol``.
    """
    cfg = validate_settings(settings, WeylSettings)
    logs = np.asarray(log_masses, dtype=np.float64)
    if logs.size < 2 or not np.all(np.isfinite(logs)):
        return MassJudgement(L2Judgement.INCONCLUSIVE, [], 1.0, None)

    ratios = np.exp(np.diff(logs))
    log_total = float(logsumexp(logs))
    growth = math.exp(min(log_total - float(logs[0]), 700.0))
    if ratios.size < cfg.m:
        return MassJudgement(L2Judgement.INCONCLUSIVE, ratios.tolist(), growth, None)

    last = ratios[-cfg.m :]
    tail_bound: float | None = None
    if np.all(last <= cfg.rho_max):
        rho = float(last.max())
        tail_bound = math.exp(float(logs[-1]) - log_total) * rho / (1.0 - rho)
        if tail_bound < cfg.tail_tol:
            return MassJudgement(L2Judgement.L2, ratios.tolist(), growth, tail_bound)

    if growth >= cfg.growth or np.all(last >= 1.0 - cfg.persist_tol):
        return MassJudgement(L2Judgement.NOT_L2, ratios.tolist(), growth, tail_bound)
    return MassJudgement(L2Judgement.INCONCLUSIVE, ratios.tolist(), growth, tail_bound)


def _endpoint_marker(problem: SLProblem, endpoint: Endpoint) -> str:
    if endpoint is Endpoint.ZERO:
        return problem.left
    if not math.isinf(problem.interval[1]):
        raise ParameterError(
            "Probes toward infinity need an unbounded interval", parameter="endpoint"
        )
    return problem.right


def classify_endpoint(
    problem: SLProblem,
    endpoint: Endpoint = Endpoint.ZERO,
    settings: WeylSettings | dict[str, Any] | None = None,
) -> WeylReport:
    """Classify an endpoint by testing both probe solutions for square-integrability.

    Args:
        problem: The Sturm-Liouville problem.
        endpoint: Endpoint to classify.
        settings: Probe settings (``z``, anchor, heuristics).

    Returns:
        LimitCircle if both probes are judged L2, LimitPoint if one is judged
        not L2, otherwise Inconclusive. Regular endpoints are limit circle.
    """
    cfg = validate_settings(settings, WeylSettings)
    z = complex(cfg.z_real, cfg.z_imag)

    if _endpoint_marker(problem, endpoint) == REGULAR:
        return WeylReport(
            kind=Classification.LIMIT_CIRCLE,
            endpoint=endpoint,
            z_real=z.real,
            z_imag=z.imag,
            regular=True,
        )

    anchor = cfg.anchor if cfg.anchor is not None else problem.default_anchor(endpoint)
    probes: list[SolutionProbe] = []
    deepest = anchor
    with log_execution(logger, "classify_endpoint") as metrics:
        for initial in PROBE_DATA:
            trajectory = integrate_toward_endpoint(
                problem, z, anchor, initial, endpoint=endpoint, settings=cfg
            )
            mass = judge_l2(trajectory.log_window_masses, cfg)
            probes.append(
                SolutionProbe(
                    initial=initial,
                    judgement=mass.judgement,
                    log_masses=trajectory.log_window_masses,
                    ratios=mass.ratios,
                    growth=mass.growth,
                    tail_bound=mass.tail_bound,
                )
            )
            deepest = trajectory.deepest_x
            metrics.rhs_evaluations += trajectory.rhs_evaluations
            metrics.windows += len(trajectory.log_window_masses)

        judgements = [p.judgement for p in probes]
        if L2Judgement.NOT_L2 in judgements:
            kind = Classification.LIMIT_POINT
        elif all(j is L2Judgement.L2 for j in judgements):
            kind = Classification.LIMIT_CIRCLE
        else:
            kind = Classification.INCONCLUSIVE
        metrics.metadata.update({"kind": kind.value, "problem": problem.description})

    get_logger(__name__, endpoint=endpoint, z=z).info(
        f"Weyl classification at {endpoint.value}: {kind.value}",
        extra={"judgements": judgements, "deepest_x": deepest},
    )
    return WeylReport(
        kind=kind,
        endpoint=endpoint,
        z_real=z.real,
        z_imag=z.imag,
        anchor=anchor,
        deepest_x=deepest,
        probes=probes,
    )


def count_zeros(
    problem: SLProblem,
    lam: float,
    initial: tuple[float, float],
    window: tuple[float, float],
    endpoint: Endpoint = Endpoint.ZERO,
    settings: WeylSettings | dict[str, Any] | None = None,
) -> tuple[int, OscillationVerdict]:
    """Count sign changes of a real solution on a window adjacent to the endpoint.

    The solution starts at the inner end of ``window`` (``x_hi`` toward zero,
    ``x_lo`` toward infinity). The count is judged stable when no sign change
    occurs in the last ``max(m, n/2)`` of the ``n`` windows.

    Returns:
        ``(count, verdict)``.
    """
    cfg = validate_settings(settings, WeylSettings)
    lo, hi = validate_window(window, param_name="window")
    anchor, target = (hi, lo) if endpoint is Endpoint.ZERO else (lo, hi)

    trajectory = integrate_toward_endpoint(
        problem,
        complex(lam),
        anchor,
        initial,
        target_x=target,
        endpoint=endpoint,
        settings=cfg,
        dense=True,
    )
    counts = trajectory.window_zero_counts
    quiet = min(len(counts), max(cfg.m, len(counts) // 2))
    total = sum(counts)
    stable = sum(counts[-quiet:]) == 0
    verdict = (
        OscillationVerdict.NONOSCILLATORY if stable else OscillationVerdict.OSCILLATION_SUSPECTED
    )
    logger.debug(f"Counted {total} sign changes on {window}", extra={"per_window": counts})
    return total, verdict


def _dense_pair(
    first: SLProblem,
    second: SLProblem,
    x0: float,
    initial: tuple[float, float],
    target: float,
    endpoint: Endpoint,
    lam: float,
    cfg: WeylSettings,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    runs = [
        integrate_toward_endpoint(
            problem,
            complex(lam),
            x0,
            initial,
            target_x=target,
            endpoint=endpoint,
            settings=cfg,
            dense=True,
        )
        for problem in (first, second)
    ]
    xs = np.asarray(runs[0].dense_x)
    return (
        xs,
        np.asarray(runs[0].dense_log_abs_u),
        np.asarray(runs[1].dense_log_abs_u),
        np.asarray(runs[0].dense_sign),
    )


def sturm_compare(
    first: SLProblem,
    second: SLProblem,
    x0: float,
    initial: tuple[float, float],
    window: tuple[float, float],
    lam: float = 0.0,
    settings: WeylSettings | dict[str, Any] | None = None,
) -> bool:
    """Check ``|u_2| >= |u_1|`` on ``window`` for solutions matched at ``x0``.

    Both solutions of ``tau_j u = lam u`` share the data ``initial`` at ``x0``;
    ``second`` must carry the larger potential.

    Returns:
        True iff ``|u_2| >= |u_1| (1 - 1e-8)`` at every dense output point.

    Raises:
        PreconditionError: If ``q_2 < q_1`` somewhere on the output grid or if
            ``u_1`` vanishes in the window away from ``x0``.
    """
    cfg = validate_settings(settings, WeylSettings)
    lo, hi = validate_window(window, param_name="window")
    if not lo < x0 < hi:
        raise ParameterError(f"x0={x0} must lie inside the window {window}", parameter="x0")

    pieces = [
        _dense_pair(first, second, x0, initial, lo, Endpoint.ZERO, lam, cfg),
        _dense_pair(first, second, x0, initial, hi, Endpoint.INFINITY, lam, cfg),
    ]

    xs = np.concatenate([p[0] for p in pieces])
    log_u1 = np.concatenate([p[1] for p in pieces])
    log_u2 = np.concatenate([p[2] for p in pieces])
    signs = [p[3] for p in pieces]

    q_gap = np.array([second.q(x) - first.q(x) for x in xs])
    if np.any(q_gap < -STURM_TOL * (1.0 + np.abs([first.q(x) for x in xs]))):
        raise PreconditionError("Comparison requires q_2 >= q_1 on the window", "q2 >= q1")

    interior = np.abs(xs - x0) > 1e-12 * x0
    if any(np.any(np.diff(s[s != 0]) != 0) for s in signs) or np.any(
        np.isneginf(log_u1[interior])
    ):
        raise PreconditionError("u_1 vanishes inside the window", "u_1 nonvanishing away from x0")

    holds = bool(np.all(log_u2 >= log_u1 + math.log1p(-STURM_TOL)))
    logger.debug(f"Sturm comparison on {window}: {holds}")
    return holds


def deficiency_indices(class_a: Classification, class_b: Classification) -> int:
    """Number of limit circle endpoints: 0, 1 or 2.

    Raises:
        ParameterError: If either class is Inconclusive.
    """
    count = 0
    for cls in (class_a, class_b):
        if cls is Classification.INCONCLUSIVE:
            raise ParameterError("Deficiency indices need both endpoint classes")
        count += cls is Classification.LIMIT_CIRCLE
    return count


@dataclass(frozen=True)
class ProblemClassification:
    """Endpoint reports of a problem and the resulting deficiency index.

    ``right`` is None when the right endpoint is regular (limit circle).
    """

    left: WeylReport
    right: WeylReport | None
    deficiency: int | None

    @property
    def essentially_self_adjoint(self) -> bool | None:
        return None if self.deficiency is None else self.deficiency == 0

    def to_report(self) -> dict[str, Any]:
        return {
            "left": self.left.to_report(),
            "right": None if self.right is None else self.right.to_report(),
            "deficiency_index": self.deficiency,
            "essentially_self_adjoint": self.essentially_self_adjoint,
        }


def classify_problem(
    problem: SLProblem, settings: WeylSettings | dict[str, Any] | None = None
) -> ProblemClassification:
    """Classify both endpoints of ``problem`` and derive ``n_+ = n_-``."""
    unbounded = math.isinf(problem.interval[1])
    if problem.right != REGULAR and not unbounded:
        raise ParameterError(
            "Only a regular right endpoint or infinity can be probed", parameter="right"
        )
    left = classify_endpoint(problem, Endpoint.ZERO, settings)
    right = classify_endpoint(problem, Endpoint.INFINITY, settings) if unbounded else None
    right_kind = Classification.LIMIT_CIRCLE if right is None else right.kind

    deficiency: int | None = None
    if Classification.INCONCLUSIVE not in (left.kind, right_kind):
        deficiency = deficiency_indices(left.kind, right_kind)
    return ProblemClassification(left=left, right=right, deficiency=deficiency)
