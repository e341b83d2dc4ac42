import yaml
import logging
from typing import Dict, Any, List, Optional
from pathlib import Path


class ConfigManager:
    """Centralized configuration manager for the toolkit's YAML settings."""

    DEFAULT_CONFIG_FILES = ["project_structure_config.yaml", "app_config.yaml"]
    REQUIRED_SECTIONS = ["logging", "limits", "function_field", "enumeration", "registry"]

    def __init__(self, config_files: Optional[List[str]] = None, base_path: str = "./config") -> None:
        """
        Initializes the configuration manager by loading YAML files.

        Args:
            config_files (list[str]): List of configuration file names.
            base_path (str): The directory where configuration files are stored.

        Files are merged in order, later files overriding top-level sections of
        earlier ones. Missing files are skipped with a warning so the library
        defaults apply.
        """
        self._logger = logging.getLogger(self.__class__.__name__)
        self.base_path = Path(base_path)
        self.config: Dict[str, Any] = {}

        if config_files is None:
            config_files = list(self.DEFAULT_CONFIG_FILES)

        self._config_files = config_files
        self._load_configs(config_files)

    def _load_yaml_file(self, file_path: Path) -> Dict[str, Any]:
        """
        Loads a single YAML file.

        Args:
            file_path (Path): The path to the YAML file to load.

        Returns:
            Dict[str, Any]: The loaded YAML configuration, empty for an empty file.

        Raises:
            yaml.YAMLError: If the YAML file has a syntax error.
            ValueError: If the top level of the file is not a mapping.
        """
        with open(file_path, "r") as file:
            try:
                loaded = yaml.safe_load(file) or {}
            except yaml.YAMLError as e:
                self._logger.error(f"Error parsing YAML file {file_path}: {e}")
                raise
        if not isinstance(loaded, dict):
            self._logger.error(f"Configuration file {file_path} does not hold a mapping")
            raise ValueError(f"Configuration file {file_path} must contain a mapping at the top level")
        return loaded

    def _load_configs(self, config_files: Optional[List[str]] = None) -> None:
        """
        Loads the YAML configuration files and merges them into ``self.config``.

        Args:
            config_files (list[str]): File names relative to ``base_path``; defaults to
                the list given at initialization.
        """
        if config_files is None:
            config_files = self._config_files

        for file in config_files:
            file_path = self.base_path / file
            if file_path.exists():
                self.config.update(self._load_yaml_file(file_path))
                self._logger.info(f"Loaded config file: {file}")
            else:
                self._logger.warning(f"Config file {file} not found. Skipping.")

    def get(self, key: str, default=None) -> Any:
        """Retrieves a configuration value, using dot notation for nested keys.

        Args:
            key (str): The key, e.g. ``"limits.closure_cap"``.
            default (Any): Returned when any part of the key is missing.

        Returns:
            Any: The configuration value or ``default``.
        """
        if not key:
            return default
        value: Any = self.config
        for part in key.split("."):
            if not isinstance(value, dict) or part not in value or value[part] is None:
                return default
            value = value[part]
        return value

    def section(self, name: str) -> Dict[str, Any]:
        """A top-level section as a dictionary, empty when absent."""
        value = self.config.get(name) or {}
        if not isinstance(value, dict):
            raise ValueError(f"Configuration section {name!r} must be a mapping")
        return value

    def validate_config(self) -> None:
        """
        Validate that the essential sections are present.

        Raises:
            ValueError: If any of the required sections is missing.
        """
        try:
            for key in self.REQUIRED_SECTIONS:
                if self.get(key) is None:
                    raise ValueError(f"Missing required configuration: {key}")
            self._logger.info("Configuration validation successful.")
        except ValueError as e:
            self._logger.error(e)
            raise
