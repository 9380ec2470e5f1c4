"""Unit tests for configuration loading.

Tests Hydra composition, section accessors, settings validation and
environment overrides.
"""

import json

import pytest
from omegaconf import OmegaConf

from endpoint_classifier.config import (
    ConfigPaths,
    criteria_settings,
    get_logging_config,
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
from endpoint_classifier.utils.exceptions import ConfigurationError

# ============================================================================
# Loading
# ============================================================================


class TestLoadConfig:
    """Test suite for Hydra composition."""

    def test_paths(self):
        """Test that the packaged config tree is complete."""
        paths = ConfigPaths.from_package()
        assert paths.validate()
        assert paths.default.name == "default.yaml"

    def test_default(self):
        """Test the composed default configuration."""
        cfg = load_config()
        assert validate_config(cfg)
        assert cfg.criteria.grid_points == 256
        assert cfg.weyl.method == "DOP853"
        assert cfg.weyl.anchor is None
        assert cfg.hardy.n_grid == 2000
        assert cfg.multidim.ell_max == 8
        assert cfg.logging.level == "WARNING"

    def test_overrides(self):
        """Test Hydra overrides."""
        cfg = load_config(overrides=["weyl.rho_max=0.8", "hardy.n_grid=500"])
        assert cfg.weyl.rho_max == 0.8
        assert hardy_settings(cfg).n_grid == 500

    def test_experiment_preset(self):
        """Test the quick preset on top of the defaults."""
        cfg = load_config("experiment/quick_test")
        assert cfg.weyl.t_max == 30.0
        assert cfg.criteria.max_N == 2
        assert cfg.criteria.window == [1.0e-12, 1.0e-3]
        assert cfg.sweep.workers == 2

    def test_missing_file(self):
        """Test that an unknown config name raises ConfigurationError."""
        with pytest.raises(ConfigurationError) as exc_info:
            load_config("nonexistent")
        assert "config_file" in exc_info.value.details

    def test_missing_directory(self, tmp_path):
        """Test that an unknown directory raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            load_config(config_path=str(tmp_path / "nowhere"))

    def test_bad_override(self):
        """Test that an override of an unknown key fails composition."""
        with pytest.raises(ConfigurationError):
            load_config(overrides=["weyl.no_such_key=1"])


class TestFiles:
    """Test suite for file-based configuration."""

    def test_save_and_load(self, test_config, tmp_path):
        """Test that a saved configuration loads back unchanged."""
        path = tmp_path / "cfg" / "run.yaml"
        save_config(test_config, path)
        assert to_container(load_config_from_file(path)) == to_container(test_config)

    def test_report_with_embedded_config(self, tmp_path):
        """Test that a JSON report is unwrapped to its config."""
        path = tmp_path / "report.json"
        path.write_text(json.dumps({"run": {"command": "classify"}, "config": {"weyl": {"m": 4}}}))
        assert to_container(load_config_from_file(path)) == {"weyl": {"m": 4}}

    def test_unreadable(self, tmp_path):
        """Test missing files and non-mapping contents."""
        with pytest.raises(ConfigurationError):
            load_config_from_file(tmp_path / "missing.yaml")
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            load_config_from_file(path)

    def test_merge(self, test_config):
        """Test that the override side wins."""
        merged = merge_configs(test_config, OmegaConf.create({"weyl": {"m": 3}}))
        assert merged.weyl.m == 3
        assert merged.weyl.rho_max == 0.9


# ============================================================================
# Sections and Settings
# ============================================================================


class TestSections:
    """Test suite for section accessors and settings helpers."""

    def test_accessors(self, test_config):
        """Test that sections come back as plain dictionaries."""
        assert get_weyl_config(test_config) == {"t_max": 60.0, "rho_max": 0.9, "m": 6}
        assert get_logging_config(test_config)["level"] == "ERROR"
        assert isinstance(get_sweep_config(test_config)["alpha_range"], list)

    def test_missing_section(self):
        """Test that a missing section raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            get_weyl_config(OmegaConf.create({}))

    def test_settings(self, test_config):
        """Test validated settings from each section."""
        assert criteria_settings(test_config).grid_points == 128
        assert weyl_settings(test_config).m == 6
        assert hardy_settings(test_config).n_grid == 400
        assert multidim_settings(test_config).ell_max == 3

    def test_invalid_settings(self, test_config):
        """Test that a bad value raises ConfigurationError with a count."""
        test_config.weyl.rho_max = 1.5
        with pytest.raises(ConfigurationError) as exc_info:
            weyl_settings(test_config)
        assert exc_info.value.details["errors"] == 1


class TestValidateConfig:
    """Test suite for validate_config."""

    def test_valid(self, test_config):
        """Test the fixture configuration."""
        assert validate_config(test_config)

    def test_missing_section(self, test_config):
        """Test a configuration without an output section."""
        del test_config["output"]
        assert not validate_config(test_config)

    @pytest.mark.parametrize(
        "key,value",
        [
            ("sweep.alpha_range", [3.0, -1.0]),
            ("sweep.points", 0),
            ("sweep.workers", 0),
            ("criteria.grid_points", 8),
            ("hardy.n_grid", 1),
        ],
    )
    def test_invalid(self, test_config, key, value):
        """Test rejected values."""
        OmegaConf.update(test_config, key, value)
        assert not validate_config(test_config)


# ============================================================================
# Environment
# ============================================================================


class TestEnvironment:
    """Test suite for environment overrides."""

    def test_prefixed_variables(self, monkeypatch, tmp_path):
        """Test that prefixed variables become sorted overrides."""
        monkeypatch.setenv("ENDPOINT_CLASSIFIER_WEYL__T_MAX", "30")
        monkeypatch.setenv("ENDPOINT_CLASSIFIER_HARDY__N_GRID", "500")
        monkeypatch.setenv("ENDPOINT_CLASSIFIER_IGNORED", "1")
        overrides = load_env_file(str(tmp_path / "missing.env"))
        assert overrides == ["hardy.n_grid=500", "weyl.t_max=30"]

    def test_env_file(self, monkeypatch, tmp_path):
        """Test that a .env file is read."""
        monkeypatch.delenv("ENDPOINT_CLASSIFIER_SWEEP__POINTS", raising=False)
        env_file = tmp_path / ".env"
        env_file.write_text("ENDPOINT_CLASSIFIER_SWEEP__POINTS=7\n")
        try:
            assert "sweep.points=7" in load_env_file(str(env_file))
        finally:
            monkeypatch.delenv("ENDPOINT_CLASSIFIER_SWEEP__POINTS", raising=False)

    def test_overrides_compose(self, monkeypatch, tmp_path):
        """Test that environment overrides feed load_config."""
        monkeypatch.setenv("ENDPOINT_CLASSIFIER_WEYL__M", "4")
        overrides = [o for o in load_env_file(str(tmp_path / "none")) if o.startswith("weyl.")]
        assert load_config(overrides=overrides).weyl.m == 4
