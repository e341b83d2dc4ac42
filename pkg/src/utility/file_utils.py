import io
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd
import yaml


class FileUtils:
    """Utility class for handling file-related operations."""

    def __init__(self, logger=None):
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def load_yaml_file(self, file_path: Union[str, Path]) -> Dict[str, Any]:
        """
        Loads a YAML file and returns its contents as a dictionary.

        Args:
            file_path (str): The path to the YAML file.

        Returns:
            dict: The contents of the YAML file, empty if the file is empty.

        Raises:
            FileNotFoundError: If the file does not exist.
            yaml.YAMLError: If the file is not valid YAML.
        """
        try:
            with open(file_path, "r") as file:
                return yaml.safe_load(file) or {}
        except (OSError, yaml.YAMLError) as e:
            self._logger.error(f"Error loading YAML file {file_path}: {e}")
            raise

    @staticmethod
    def ensure_directory_exists(path: Union[str, Path]) -> None:
        """Ensure that the directory for a given path exists."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)

    @staticmethod
    def save_csv(df: pd.DataFrame, path: Union[str, Path], header_line: Optional[str] = None) -> None:
        """Save DataFrame as a CSV file, optionally preceded by a comment header line."""
        FileUtils.ensure_directory_exists(path)
        with open(path, "w", newline="") as handle:
            if header_line:
                handle.write(header_line.rstrip("\n") + "\n")
            df.to_csv(handle, index=False)

    @staticmethod
    def read_csv(path: Union[str, Path], header_line: Optional[str] = None) -> pd.DataFrame:
        """
        Read a CSV file written by ``save_csv``.

        Raises:
            ValueError: If ``header_line`` is given and the file does not start with it.
        """
        with open(path, "r") as handle:
            text = handle.read()
        if header_line:
            first, _, rest = text.partition("\n")
            if first.strip() != header_line.strip():
                raise ValueError(f"Unexpected header in {path}: {first!r}")
            text = rest
        return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)

    @staticmethod
    def create_directories_from_yaml(structure: Dict[str, Any], base_path: str = ".") -> None:
        """
        Create the directory tree described by a nested mapping.

        Args:
            structure (dict): Nested mapping of folder names, e.g. ``{"reports": {"census": None}}``.
            base_path (str): The base directory where the structure will be created.
        """

        def _create_dirs(node, current_path):
            if isinstance(node, dict):
                for key, value in node.items():
                    new_path = os.path.join(current_path, key)
                    os.makedirs(new_path, exist_ok=True)
                    _create_dirs(value, new_path)

        _create_dirs(structure, base_path)
