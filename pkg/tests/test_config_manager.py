import unittest
from unittest.mock import patch
from pathlib import Path

import pytest
import yaml

from src.configuration_managing.config_manager import ConfigManager


class TestConfigManagerInit(unittest.TestCase):

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    @patch('src.configuration_managing.config_manager.ConfigManager._load_configs')
    def test_default_config_files(self, mock_load_configs, mock_get_logger):
        # Default configuration files are loaded when none are specified
        config_manager = ConfigManager()
        self.assertEqual(config_manager._config_files, ["project_structure_config.yaml", "app_config.yaml"])
        mock_load_configs.assert_called_once_with(["project_structure_config.yaml", "app_config.yaml"])

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    @patch('src.configuration_managing.config_manager.ConfigManager._load_configs')
    def test_custom_config_files(self, mock_load_configs, mock_get_logger):
        config_manager = ConfigManager(["custom_config.yaml"], "./custom_config")
        self.assertEqual(config_manager._config_files, ["custom_config.yaml"])
        mock_load_configs.assert_called_once_with(["custom_config.yaml"])

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    @patch('src.configuration_managing.config_manager.ConfigManager._load_configs')
    def test_base_path(self, mock_load_configs, mock_get_logger):
        config_manager = ConfigManager(base_path="./custom_config")
        self.assertEqual(config_manager.base_path, Path("./custom_config"))

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    @patch('src.configuration_managing.config_manager.ConfigManager._load_configs')
    def test_logger(self, mock_load_configs, mock_get_logger):
        ConfigManager()
        mock_get_logger.assert_called_once_with('ConfigManager')

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    @patch('src.configuration_managing.config_manager.ConfigManager._load_configs')
    def test_config_dict(self, mock_load_configs, mock_get_logger):
        config_manager = ConfigManager()
        self.assertEqual(config_manager.config, {})

    @patch('src.configuration_managing.config_manager.logging.getLogger')
    def test_missing_file_is_skipped(self, mock_get_logger):
        config_manager = ConfigManager(["absent.yaml"], "./no_such_dir")
        self.assertEqual(config_manager.config, {})
        mock_get_logger.return_value.warning.assert_called_once_with("Config file absent.yaml not found. Skipping.")


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "first.yaml").write_text(yaml.safe_dump({
        "limits": {"closure_cap": 10, "ambient_cap": 20},
        "logging": {"console_level": "INFO"},
    }))
    (tmp_path / "second.yaml").write_text(yaml.safe_dump({
        "limits": {"closure_cap": 99},
        "registry": {"path": "x.yaml"},
    }))
    return tmp_path


class TestConfigManagerLoading:
    def test_later_files_override_sections(self, config_dir):
        config_manager = ConfigManager(["first.yaml", "second.yaml"], str(config_dir))
        assert config_manager.get("limits.closure_cap") == 99
        # sections are replaced, not merged
        assert config_manager.get("limits.ambient_cap") is None
        assert config_manager.get("logging.console_level") == "INFO"

    def test_get_defaults(self, config_dir):
        config_manager = ConfigManager(["first.yaml"], str(config_dir))
        assert config_manager.get("limits.missing", 7) == 7
        assert config_manager.get("limits.closure_cap.deeper", "d") == "d"
        assert config_manager.get("", "empty") == "empty"

    def test_section(self, config_dir):
        config_manager = ConfigManager(["first.yaml"], str(config_dir))
        assert config_manager.section("limits") == {"closure_cap": 10, "ambient_cap": 20}
        assert config_manager.section("enumeration") == {}

    def test_section_must_be_mapping(self, tmp_path):
        (tmp_path / "bad.yaml").write_text("limits: 5\n")
        with pytest.raises(ValueError):
            ConfigManager(["bad.yaml"], str(tmp_path)).section("limits")

    def test_top_level_must_be_mapping(self, tmp_path):
        (tmp_path / "list.yaml").write_text("- 1\n- 2\n")
        with pytest.raises(ValueError):
            ConfigManager(["list.yaml"], str(tmp_path))

    def test_yaml_syntax_error(self, tmp_path):
        (tmp_path / "broken.yaml").write_text("limits: [1, 2\n")
        with pytest.raises(yaml.YAMLError):
            ConfigManager(["broken.yaml"], str(tmp_path))

    def test_empty_file(self, tmp_path):
        (tmp_path / "empty.yaml").write_text("")
        assert ConfigManager(["empty.yaml"], str(tmp_path)).config == {}

    def test_validate_missing_sections(self, config_dir):
        with pytest.raises(ValueError, match="function_field"):
            ConfigManager(["first.yaml", "second.yaml"], str(config_dir)).validate_config()

    def test_validate_shipped_configuration(self):
        config_dir = Path(__file__).resolve().parent.parent / "config"
        config_manager = ConfigManager(base_path=str(config_dir))
        config_manager.validate_config()
        assert "project_structure" in config_manager.config
