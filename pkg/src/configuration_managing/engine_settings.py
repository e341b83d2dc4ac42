import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from src.exact_arithmetic.errors import GaloisToolkitError
from src.torsion_lattice.lattice_class import LatticeClass

SweepItem = Tuple[str, int]


class InvalidSeedError(GaloisToolkitError, ValueError):
    """Exception raised when the seed environment variable is not a non-negative integer."""
    pass


@dataclass
class EngineSettings:
    """Limits, seeds and paths shared by every command."""
    closure_cap: int = 10 ** 6
    ambient_cap: int = 2000
    iso_bound: int = 2000
    iso_search_bound: int = 2000
    aut_order_cap: int = 24
    seed: int = 20240611
    seed_env_var: str = "GALOIS_TOOLKIT_SEED"
    degree_samples: int = 3
    specializations: List[Tuple[int, int]] = field(default_factory=lambda: [(2, 3), (-2, 5), (3, 2)])
    enumeration_sweep: List[SweepItem] = field(
        default_factory=lambda: [("generic", 4), ("square", 4), ("hex", 3)])
    extended_sweep: List[SweepItem] = field(default_factory=lambda: [("hex", 7)])
    registry_path: str = "config/cover_registry.yaml"
    census_dir: str = "reports/census"
    show_progress: bool = False
    logger: Optional[logging.Logger] = None

    def __post_init__(self):
        """Validate configuration after initialization."""
        for name in ("closure_cap", "ambient_cap", "iso_bound", "iso_search_bound", "aut_order_cap"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer, got {getattr(self, name)!r}")
        if self.degree_samples < 1:
            raise ValueError(f"degree_samples must be at least 1, got {self.degree_samples}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")

        self.specializations = [tuple(int(v) for v in pair) for pair in self.specializations]
        if any(len(pair) != 2 for pair in self.specializations):
            raise ValueError("Each specialization must be a (b, a) pair")

        self.enumeration_sweep = self._normalise_sweep(self.enumeration_sweep)
        self.extended_sweep = self._normalise_sweep(self.extended_sweep)
        self.logger = self.logger or logging.getLogger(self.__class__.__name__)

    @staticmethod
    def _normalise_sweep(items) -> List[SweepItem]:
        sweep = []
        for item in items:
            lattice, n = (item["lattice"], item["max_n"]) if isinstance(item, Mapping) else item
            lattice = LatticeClass.from_name(str(lattice)).value
            if int(n) < 1:
                raise ValueError(f"Sweep bound must be positive, got {n}")
            sweep.append((lattice, int(n)))
        return sweep

    @classmethod
    def from_config(cls, config: Mapping[str, Any]) -> "EngineSettings":
        """
        Build settings from the merged YAML configuration.

        Reads the ``limits``, ``function_field``, ``enumeration`` and ``registry``
        sections; absent keys keep their defaults and unknown keys are ignored.
        """
        limits = config.get("limits") or {}
        function_field = config.get("function_field") or {}
        enumeration = config.get("enumeration") or {}
        registry = config.get("registry") or {}
        values: Dict[str, Any] = {
            "closure_cap": limits.get("closure_cap"),
            "ambient_cap": limits.get("ambient_cap"),
            "iso_bound": limits.get("iso_bound"),
            "iso_search_bound": limits.get("iso_search_bound"),
            "aut_order_cap": limits.get("aut_order_cap"),
            "seed": function_field.get("seed"),
            "seed_env_var": function_field.get("seed_env_var"),
            "degree_samples": function_field.get("degree_samples"),
            "specializations": function_field.get("specializations"),
            "enumeration_sweep": enumeration.get("sweep"),
            "extended_sweep": enumeration.get("extended_sweep"),
            "census_dir": enumeration.get("census_dir"),
            "show_progress": enumeration.get("show_progress"),
            "registry_path": registry.get("path"),
        }
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in values.items() if k in known and v is not None})

    def resolve_seed(self, flag: Optional[int] = None, environ: Optional[Mapping[str, str]] = None) -> int:
        """
        The seed for randomized degree checks: flag, then environment, then configuration.

        Raises:
            InvalidSeedError: If the environment variable is set but not a non-negative integer.
        """
        if flag is not None:
            return int(flag)
        environ = os.environ if environ is None else environ
        raw = environ.get(self.seed_env_var)
        if raw not in (None, ""):
            try:
                value = int(raw)
            except ValueError as e:
                raise InvalidSeedError(f"{self.seed_env_var}={raw!r} is not an integer seed") from e
            if value < 0:
                raise InvalidSeedError(f"{self.seed_env_var} must be non-negative, got {value}")
            self.logger.debug(f"Seed {value} taken from {self.seed_env_var}")
            return value
        return self.seed

    @property
    def census_path(self) -> Path:
        return Path(self.census_dir)
