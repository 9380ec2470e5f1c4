"""Radial channels of the power-weighted Laplacian on a ball."""

from .channels import (
    RadialChannel,
    boundary_value_fit,
    channel,
    channel_criterion,
    channel_problem,
    channel_table,
    classify_channel,
    classify_channel_by_gamma,
    criterion_threshold,
    effective_potential,
    selfadjointness_report,
    threshold_identity,
)

__all__ = [
    "RadialChannel",
    "boundary_value_fit",
    "channel",
    "channel_criterion",
    "channel_problem",
    "channel_table",
    "classify_channel",
    "classify_channel_by_gamma",
    "criterion_threshold",
    "effective_potential",
    "selfadjointness_report",
    "threshold_identity",
]
