"""Reference solutions: log-power, Euler, reduction of order and Bessel types."""

from .bessel import bessel, bessel_derivative, bessel_j, bessel_y
from .refsol import (
    CallableSolution,
    DichotomyResult,
    ExponentPair,
    PolySolution,
    ReductionOfOrder,
    ResidualCheck,
    bessel_coupling,
    bessel_solution,
    bessel_solution_fn,
    euler_residuals,
    euler_solutions,
    gamma_exponents,
    l2_dichotomy,
    residual_numeric,
    solution_table,
    verify_residuals,
    y_N,
    y_N_eps,
    y_tilde,
    zero_energy_solutions,
)

__all__ = [
    "CallableSolution",
    "DichotomyResult",
    "ExponentPair",
    "PolySolution",
    "ReductionOfOrder",
    "ResidualCheck",
    "bessel",
    "bessel_coupling",
    "bessel_derivative",
    "bessel_j",
    "bessel_solution",
    "bessel_solution_fn",
    "bessel_y",
    "euler_residuals",
    "euler_solutions",
    "gamma_exponents",
    "l2_dichotomy",
    "residual_numeric",
    "solution_table",
    "verify_residuals",
    "y_N",
    "y_N_eps",
    "y_tilde",
    "zero_energy_solutions",
]
