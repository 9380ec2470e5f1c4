"""Numerical routes: Weyl-alternative probes, oscillation counts and Hardy forms."""

from .hardy import (
    DiscreteForm,
    assemble,
    form_value,
    hardy_check,
    hardy_potential,
    hardy_refined_check,
    hardy_sweep,
    min_rayleigh,
    sturm_count,
)
from .integrate import (
    Checkpoint,
    SLProblem,
    Trajectory,
    euler_problem,
    integrate_toward_endpoint,
    wronskian,
)
from .weyl import (
    MassJudgement,
    ProblemClassification,
    classify_endpoint,
    classify_problem,
    count_zeros,
    deficiency_indices,
    judge_l2,
    sturm_compare,
)

__all__ = [
    "Checkpoint",
    "DiscreteForm",
    "MassJudgement",
    "ProblemClassification",
    "SLProblem",
    "Trajectory",
    "assemble",
    "classify_endpoint",
    "classify_problem",
    "count_zeros",
    "deficiency_indices",
    "euler_problem",
    "form_value",
    "hardy_check",
    "hardy_potential",
    "hardy_refined_check",
    "hardy_sweep",
    "integrate_toward_endpoint",
    "judge_l2",
    "min_rayleigh",
    "sturm_compare",
    "sturm_count",
    "wronskian",
]
