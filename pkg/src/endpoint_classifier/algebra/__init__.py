"""Iterated logarithms and the exact log-power algebra."""

from .iterlog import Ln_k, Ln_k_array, ln_k, ln_k_array, positivity_bound, tower
from .symalg import (
    LogMonomial,
    LogPoly,
    add,
    algebra_properties,
    apply_tau,
    derivative_identities,
    differentiate,
    evaluate,
    is_zero,
    log_partial_products_sum,
    log_product,
    mul,
    random_logpoly,
    rearrangement_identity,
    render,
    x_power,
)

__all__ = [
    "LogMonomial",
    "LogPoly",
    "Ln_k",
    "Ln_k_array",
    "add",
    "algebra_properties",
    "apply_tau",
    "derivative_identities",
    "differentiate",
    "evaluate",
    "is_zero",
    "ln_k",
    "ln_k_array",
    "log_partial_products_sum",
    "log_product",
    "mul",
    "positivity_bound",
    "random_logpoly",
    "rearrangement_identity",
    "render",
    "tower",
    "x_power",
]
