"""Threshold potentials and the analytic limit point / limit circle criteria."""

from .classify import (
    classify_at_zero,
    classify_euler,
    compare_potentials,
    dominance_chain,
    dominance_margin,
    geometric_grid,
    limit_point_at_infinity,
    transfer_by_comparison,
)
from .thresholds import (
    euler_potential,
    leading_coefficient,
    q_alpha_0_beta,
    q_alpha_N,
    q_alpha_N_eps,
    threshold_lc,
    threshold_lp,
)

__all__ = [
    "classify_at_zero",
    "classify_euler",
    "compare_potentials",
    "dominance_chain",
    "dominance_margin",
    "euler_potential",
    "geometric_grid",
    "leading_coefficient",
    "limit_point_at_infinity",
    "q_alpha_0_beta",
    "q_alpha_N",
    "q_alpha_N_eps",
    "threshold_lc",
    "threshold_lp",
    "transfer_by_comparison",
]
