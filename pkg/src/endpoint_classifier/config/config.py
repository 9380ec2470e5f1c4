"""Configuration management using Hydra.

This module provides utilities for loading, validating, and accessing
configuration settings throughout the library and the command-line front end.
Section accessors return plain dictionaries; the ``*_settings`` helpers turn
them into the validated pydantic settings models the library functions take.

Example:
    >>> from endpoint_classifier.config import load_config, get_weyl_config
    >>> cfg = load_config()
    >>> weyl_config = get_weyl_config(cfg)
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, cast

from hydra import compose, initialize_config_dir
from hydra.core.global_hydra import GlobalHydra
from omegaconf import DictConfig, OmegaConf
from pydantic import ValidationError

from ..core.schemas import CriteriaSettings, HardySettings, MultidimSettings, WeylSettings
from ..utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "ENDPOINT_CLASSIFIER_"
REQUIRED_SECTIONS = ("criteria", "weyl", "hardy", "multidim", "sweep", "logging", "output")


@dataclass
class ConfigPaths:
    """Configuration file paths."""

    root: Path
    config_dir: Path
    default: Path
    criteria_dir: Path
    weyl_dir: Path
    hardy_dir: Path
    experiment_dir: Path

    @classmethod
    def from_package(cls) -> "ConfigPaths":
        """Create ConfigPaths from package structure.

        Returns:
            ConfigPaths instance with standard paths.
        """
        config_dir = Path(__file__).parent.resolve()

        # config -> endpoint_classifier -> src -> project root
        root = config_dir.parent.parent.parent

        logger.debug(f"Resolved config directory: {config_dir}")

        return cls(
            root=root,
            config_dir=config_dir,
            default=config_dir / "default.yaml",
            criteria_dir=config_dir / "criteria",
            weyl_dir=config_dir / "weyl",
            hardy_dir=config_dir / "hardy",
            experiment_dir=config_dir / "experiment",
        )

    def validate(self) -> bool:
        """Validate that config directories exist.

        Returns:
            True if all paths exist, False otherwise.
        """
        paths_to_check = [
            self.config_dir,
            self.default,
            self.criteria_dir,
            self.weyl_dir,
            self.hardy_dir,
        ]

        for path in paths_to_check:
            if not path.exists():
                logger.warning(f"Config path does not exist: {path}")
                return False

        return True


def load_config(
    config_name: str = "default",
    overrides: list[str] | None = None,
    config_path: str | None = None,
) -> DictConfig:
    """Load configuration using Hydra.

    Args:
        config_name: Name of the config file (without .yaml), e.g. ``"experiment/precise"``.
        overrides: Hydra override strings (e.g., ``["weyl.rho_max=0.8", "hardy.n_grid=500"]``).
        config_path: Optional custom config directory path.

    Returns:
        DictConfig object with loaded configuration.

    Raises:
        ConfigurationError: If the directory or file is missing or composition fails.

    Example:
        >>> cfg = load_config(overrides=["weyl.t_max=30"])
    """
    logger.info(f"Loading configuration: {config_name}")

    GlobalHydra.instance().clear()

    if config_path is None:
        config_path = str(Path(__file__).parent.resolve())
    else:
        config_path = str(Path(config_path).resolve())

    if not Path(config_path).exists():
        raise ConfigurationError(
            "Config directory does not exist", details={"config_path": config_path}
        )

    config_file = Path(config_path) / f"{config_name}.yaml"
    if not config_file.exists():
        raise ConfigurationError(
            "Config file does not exist", details={"config_file": str(config_file)}
        )

    try:
        initialize_config_dir(config_dir=config_path, version_base=None)
        cfg = compose(config_name=config_name, overrides=overrides or [])
    except Exception as e:
        logger.error(f"Failed to load configuration: {str(e)}", exc_info=True)
        raise ConfigurationError(
            f"Configuration loading failed: {str(e)}",
            details={"config_name": config_name, "overrides": overrides or []},
        ) from e
    finally:
        GlobalHydra.instance().clear()

    logger.info("Configuration loaded successfully")
    logger.debug(f"Config keys: {list(cfg.keys())}")
    return cfg


def load_config_from_file(file_path: str | Path) -> DictConfig:
    """Load configuration from a specific YAML or JSON file.

    JSON reports written by the command-line front end embed their configuration
    under ``"config"``; such reports are accepted as well.

    Args:
        file_path: Path to the configuration file or report.

    Returns:
        DictConfig object with loaded configuration.

    Raises:
        ConfigurationError: If the file cannot be read or holds no mapping.
    """
    logger.info(f"Loading configuration from file: {file_path}")

    try:
        loaded = OmegaConf.load(file_path)
    except Exception as e:
        logger.error(f"Failed to load config from file: {str(e)}")
        raise ConfigurationError(
            f"Cannot read configuration: {str(e)}", details={"file": str(file_path)}
        ) from e

    if not isinstance(loaded, DictConfig):
        raise ConfigurationError(
            "Configuration file must hold a mapping", details={"file": str(file_path)}
        )
    if "config" in loaded and isinstance(loaded.config, DictConfig):
        loaded = loaded.config
    return cast(DictConfig, loaded)


def save_config(cfg: DictConfig, output_path: str | Path) -> None:
    """Save configuration to YAML file."""
    logger.info(f"Saving configuration to: {output_path}")
    Path(output_path).parent.mkdir(parents=True, exist_ok=True)
    OmegaConf.save(cfg, output_path)


def merge_configs(base_cfg: DictConfig, override_cfg: DictConfig) -> DictConfig:
    """Merge two configurations with override taking precedence."""
    logger.debug("Merging configurations")
    return cast(DictConfig, OmegaConf.merge(base_cfg, override_cfg))


def to_container(cfg: DictConfig) -> dict[str, Any]:
    """Resolve a configuration into plain nested dictionaries."""
    return cast(dict[str, Any], OmegaConf.to_container(cfg, resolve=True))


# Configuration accessors for specific components


def _section(cfg: DictConfig, name: str) -> dict[str, Any]:
    if name not in cfg:
        raise ConfigurationError(f"Missing required config section: {name}")
    return cast(dict[str, Any], OmegaConf.to_container(cfg[name], resolve=True))


def get_criteria_config(cfg: DictConfig) -> dict[str, Any]:
    """Extract the analytic dominance search configuration.

    Example:
        >>> get_criteria_config(cfg)["max_N"]
        4
    """
    return _section(cfg, "criteria")


def get_weyl_config(cfg: DictConfig) -> dict[str, Any]:
    """Extract the Weyl probe configuration."""
    return _section(cfg, "weyl")


def get_hardy_config(cfg: DictConfig) -> dict[str, Any]:
    """Extract the Hardy check configuration."""
    return _section(cfg, "hardy")


def get_multidim_config(cfg: DictConfig) -> dict[str, Any]:
    return _section(cfg, "multidim")


def get_sweep_config(cfg: DictConfig) -> dict[str, Any]:
    """Extract the sweep ranges and worker count."""
    return _section(cfg, "sweep")


def get_logging_config(cfg: DictConfig) -> dict[str, Any]:
    """Extract logging configuration.

    Example:
        >>> log_cfg = get_logging_config(cfg)
        >>> log_cfg["level"]
        'WARNING'
    """
    return _section(cfg, "logging")


def get_output_config(cfg: DictConfig) -> dict[str, Any]:
    return _section(cfg, "output")


def _settings(cfg: DictConfig, name: str, model: type[Any]) -> Any:
    try:
        return model.model_validate(_section(cfg, name))
    except ValidationError as e:
        raise ConfigurationError(
            f"Invalid {name} configuration",
            details={"errors": e.error_count()},
            context={"validation": str(e)},
        ) from e


def criteria_settings(cfg: DictConfig) -> CriteriaSettings:
    return cast(CriteriaSettings, _settings(cfg, "criteria", CriteriaSettings))


def weyl_settings(cfg: DictConfig) -> WeylSettings:
    return cast(WeylSettings, _settings(cfg, "weyl", WeylSettings))


def hardy_settings(cfg: DictConfig) -> HardySettings:
    return cast(HardySettings, _settings(cfg, "hardy", HardySettings))


def multidim_settings(cfg: DictConfig) -> MultidimSettings:
    return cast(MultidimSettings, _settings(cfg, "multidim", MultidimSettings))


# Validation functions


def validate_config(cfg: DictConfig) -> bool:
    """Validate configuration completeness and correctness.

    Every settings section is validated against its pydantic model; the sweep
    section must describe nonempty ranges.

    Args:
        cfg: Configuration to validate.

    Returns:
        True if valid, False otherwise.
    """
    logger.info("Validating configuration")

    for section in REQUIRED_SECTIONS:
        if section not in cfg:
            logger.error(f"Missing required config section: {section}")
            return False

    try:
        criteria_settings(cfg)
        weyl_settings(cfg)
        hardy_settings(cfg)
        multidim_settings(cfg)
    except ConfigurationError as e:
        logger.error(f"Configuration validation failed: {e}")
        return False

    sweep = get_sweep_config(cfg)
    for key in ("alpha_range", "c_range"):
        lo, hi = sweep[key]
        if not lo <= hi:
            logger.error(f"sweep.{key} must satisfy lo <= hi, got {sweep[key]}")
            return False
    if sweep["points"] < 1 or sweep["workers"] < 1:
        logger.error("sweep.points and sweep.workers must be at least 1")
        return False

    logger.info("Configuration validation passed")
    return True


# Environment variable helpers


def load_env_file(env_file: str = ".env") -> list[str]:
    """Load environment variables from .env file and collect config overrides.

    Variables named ``ENDPOINT_CLASSIFIER_<SECTION>__<KEY>`` become Hydra overrides
    ``section.key=value``; e.g. ``ENDPOINT_CLASSIFIER_WEYL__T_MAX=30`` yields
    ``weyl.t_max=30``.

    Args:
        env_file: Path to .env file.

    Returns:
        Override strings gathered from the environment, sorted.
    """
    try:
        from dotenv import load_dotenv

        if Path(env_file).exists():
            load_dotenv(env_file)
            logger.info(f"Loaded environment variables from {env_file}")
    except ImportError:
        logger.warning("python-dotenv not installed, skipping .env file loading")

    overrides = []
    for name, value in os.environ.items():
        if not name.startswith(ENV_PREFIX) or "__" not in name:
            continue
        path = name[len(ENV_PREFIX) :].lower().replace("__", ".")
        overrides.append(f"{path}={value}")
    return sorted(overrides)
