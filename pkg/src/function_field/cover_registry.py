import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.cli.label_parser import parse_group_label
from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.aut_map import AutMap
from src.function_field.cover_verifier import CoverSpec
from src.function_field.curve_model import CoefficientField, CurveModel
from src.function_field.expression_parser import parse_constant, parse_ff, parse_relation
from src.function_field.ff_elem import FunctionField
from src.group_managing.group_label import GroupLabel
from src.utility.file_utils import FileUtils

DEFAULT_REGISTRY_PATH = Path("config") / "cover_registry.yaml"


class RegistryError(GaloisToolkitError):
    """Exception raised for malformed registry entries."""
    pass


@dataclass
class RegistryEntry:
    """One Galois-cover example: curve, generating maps, s, t and the relation between them."""
    example_id: int
    group: GroupLabel
    field_tag: str
    curve: Dict[str, Any]
    generators: List[Dict[str, str]]
    s: str
    t: str
    relation: str
    degree: int
    parameters: List[str] = field(default_factory=list)
    specializations: List[Tuple[Fraction, ...]] = field(default_factory=list)
    galois_points: List[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "RegistryEntry":
        required = ("id", "group", "field", "curve", "generators", "s", "t", "relation", "degree")
        missing = [key for key in required if key not in raw]
        if missing:
            raise RegistryError(f"Registry entry {raw.get('id', '?')} is missing {missing}")
        parameters = list(raw.get("parameters", []))
        specializations = [tuple(Fraction(str(v)) for v in values) for values in raw.get("specializations", [])]
        for values in specializations:
            if len(values) != len(parameters):
                raise RegistryError(f"Entry {raw['id']}: specialization {values} does not match {parameters}")
        entry = cls(
            example_id=int(raw["id"]),
            group=parse_group_label(str(raw["group"])),
            field_tag=str(raw["field"]),
            curve=dict(raw["curve"]),
            generators=[dict(g) for g in raw["generators"]],
            s=str(raw["s"]),
            t=str(raw["t"]),
            relation=str(raw["relation"]),
            degree=int(raw["degree"]),
            parameters=parameters,
            specializations=specializations,
            galois_points=[str(p) for p in raw.get("galois_points", [])],
        )
        if entry.degree != entry.group.order:
            raise RegistryError(f"Entry {entry.example_id}: degree {entry.degree} differs from |{entry.group}|")
        return entry

    @property
    def coefficient_field(self) -> CoefficientField:
        return CoefficientField.from_tag(self.field_tag)

    def parameter_sets(self, override: Optional[Sequence[Sequence[Any]]] = None) -> List[Dict[str, Fraction]]:
        """Parameter assignments to verify; a single empty one when the entry has no parameters."""
        if not self.parameters:
            return [{}]
        values = override if override is not None else self.specializations
        return [dict(zip(self.parameters, (Fraction(str(v)) for v in vals))) for vals in values]

    def build_curve(self, params: Dict[str, Fraction]) -> CurveModel:
        form = self.curve.get("form", "weierstrass")
        if form == "weierstrass":
            return CurveModel.short_weierstrass(parse_constant(self.curve.get("p", 0), params),
                                                parse_constant(self.curve.get("q", 0), params), self.coefficient_field)
        if form == "legendre":
            return CurveModel.legendre(parse_constant(self.curve["b"], params), self.coefficient_field)
        raise RegistryError(f"Entry {self.example_id}: unknown curve form {form!r}")

    def cover_spec(self, params: Optional[Dict[str, Fraction]] = None) -> CoverSpec:
        """Build the cover specification for one parameter assignment."""
        params = params or {}
        ff = FunctionField(self.build_curve(params))
        generators = [
            AutMap(parse_ff(g["x"], ff, params), parse_ff(g["y"], ff, params), g.get("name", ""))
            for g in self.generators
        ]
        return CoverSpec(
            ff=ff,
            generators=generators,
            s=parse_ff(self.s, ff, params),
            t=parse_ff(self.t, ff, params),
            relation=parse_relation(self.relation, ff, params),
            expected_group=self.group,
            name=f"example {self.example_id}",
            params=dict(params),
        )


class CoverRegistry:
    """Loads the Galois-cover registry from YAML."""

    def __init__(self, path: Union[str, Path] = DEFAULT_REGISTRY_PATH, file_utils: Optional[FileUtils] = None):
        self.path = Path(path)
        self._file_utils = file_utils or FileUtils()
        self._logger = logging.getLogger(self.__class__.__name__)
        self._entries: Optional[Dict[int, RegistryEntry]] = None

    @property
    def entries(self) -> Dict[int, RegistryEntry]:
        if self._entries is None:
            raw = self._file_utils.load_yaml_file(self.path)
            try:
                items = raw["examples"]
            except (KeyError, TypeError) as e:
                raise RegistryError(f"{self.path} has no 'examples' list") from e
            self._entries = {}
            for item in items:
                entry = RegistryEntry.from_dict(item)
                self._entries[entry.example_id] = entry
            self._logger.info(f"Loaded {len(self._entries)} registry entries from {self.path}")
        return self._entries

    def get(self, example_id: int) -> RegistryEntry:
        try:
            return self.entries[int(example_id)]
        except KeyError as e:
            raise RegistryError(f"No registry entry for example {example_id}; "
                                f"known: {sorted(self.entries)}") from e

    def ids(self) -> List[int]:
        return sorted(self.entries)
