"""Limit point / limit circle classification of power-weighted Sturm-Liouville operators."""

__version__ = "0.1.0"
