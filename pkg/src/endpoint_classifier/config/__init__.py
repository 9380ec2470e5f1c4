"""Configuration management for the endpoint classifier.

This module provides Hydra-based configuration management with YAML files
for the analytic criteria, the numerical probes, and experiment presets.

Example:
    >>> from endpoint_classifier.config import load_config, weyl_settings
    >>> cfg = load_config("experiment/quick_test")
    >>> weyl_settings(cfg).t_max
    30.0
"""

from .config import (
    ConfigPaths,
    criteria_settings,
    get_criteria_config,
    get_hardy_config,
    get_logging_config,
    get_multidim_config,
    get_output_config,
    get_sweep_config,
    get_weyl_config,
    hardy_settings,
    load_config,
    load_config_from_file,
    load_env_file,
    merge_configs,
    multidim_settings,
    save_config,
    to_container,
    validate_config,
    weyl_settings,
)

__all__ = [
    # Core loading functions
    "load_config",
    "load_config_from_file",
    "save_config",
    "merge_configs",
    "to_container",
    # Component-specific extractors
    "get_criteria_config",
    "get_weyl_config",
    "get_hardy_config",
    "get_multidim_config",
    "get_sweep_config",
    "get_logging_config",
    "get_output_config",
    # Validated settings
    "criteria_settings",
    "weyl_settings",
    "hardy_settings",
    "multidim_settings",
    # Validation and utilities
    "validate_config",
    "load_env_file",
    # Classes
    "ConfigPaths",
]
