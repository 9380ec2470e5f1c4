"""Potential expressions: the text grammar and symbolic or sampled sources."""

from .dsl import parse
from .sources import (
    SampledPotential,
    SymbolicPotential,
    load_samples,
    potential_from_text,
    sample,
)

__all__ = [
    "SampledPotential",
    "SymbolicPotential",
    "load_samples",
    "parse",
    "potential_from_text",
    "sample",
]
