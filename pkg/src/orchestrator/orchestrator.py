import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.cli.label_parser import parse_group_label, print_label
from src.cli.reports import StructuredReport
from src.configuration_managing.config_manager import ConfigManager
from src.configuration_managing.engine_settings import EngineSettings
from src.enumerator.census import read_snapshot, snapshot_census, write_snapshot
from src.enumerator.subgroup_enumerator import EnumerationResult, SubgroupEnumerator
from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.cover_verifier import CoverVerifier, find_galois_points
from src.function_field.curve_model import CoefficientField, CurveModel
from src.function_field.expression_parser import parse_constant, parse_ff, parse_field_constant
from src.function_field.ff_elem import FunctionField
from src.function_field.map_degree import map_degree
from src.function_field.cover_registry import CoverRegistry, RegistryEntry
from src.group_managing.affine_aut import AffineAut
from src.group_managing.classifier import SubgroupClassifier
from src.group_managing.finite_subgroup import closure
from src.logging_configuration.logging_config import setup_logging
from src.realizability.admissibility import AdmissibilityOracle
from src.realizability.reproductions import order_1300_reproduction, rank_two_action_reproduction
from src.realizability.witness_builder import WitnessBuilder
from src.torsion_lattice.lattice_class import LatticeClass
from src.utility.file_utils import FileUtils

GeneratorTriple = Tuple[int, Fraction, Fraction]

ACTION_CHECK_ID = 8
ORDER_1300_MULTIPLIERS = (1, 2)


class Orchestrator:
    """Wires configuration, logging and the library modules into the toolkit's commands."""

    DEFAULT_CONFIG_FILES = ["project_structure_config.yaml", "app_config.yaml"]

    def __init__(self, config_dir: str = "./config", log_file: Optional[str] = None,
                 console_level: Optional[str] = None, create_folders: bool = True):
        """
        Load configuration and set up logging.

        Args:
            config_dir: Directory holding the YAML configuration files.
            log_file: Overrides ``logging.log_file_path``/``log_file_name``.
            console_level: Overrides ``logging.console_level``.
            create_folders: Create the ``project_structure`` folders (logs, reports).
        """
        self._config_manager = ConfigManager(self.DEFAULT_CONFIG_FILES, config_dir)
        self._config = self._config_manager.config
        self._setup_logging(log_file, console_level)
        self._logger = logging.getLogger(self.__class__.__name__)
        try:
            self._config_manager.validate_config()
        except ValueError as e:
            self._logger.warning(f"{e}; defaults apply")
        self._settings = EngineSettings.from_config(self._config)
        if create_folders:
            FileUtils.create_directories_from_yaml(self._config.get("project_structure") or {})
        self._registry: Optional[CoverRegistry] = None
        self._logger.info(f"Orchestrator initialized from {config_dir}")

    def _setup_logging(self, log_file: Optional[str], console_level: Optional[str]) -> None:
        logging_section = self._config_manager.section("logging")
        if log_file is None:
            directory = logging_section.get("log_file_path", "./logs")
            log_file = str(Path(directory) / logging_section.get("log_file_name", "application.log"))
        setup_logging(
            log_file,
            max_bytes=int(logging_section.get("max_bytes", 5 * 1024 * 1024)),
            backup_count=int(logging_section.get("backup_count", 3)),
            console_level=console_level or logging_section.get("console_level", "WARNING"),
        )

    @property
    def config(self) -> Dict[str, Any]:
        return self._config

    @property
    def settings(self) -> EngineSettings:
        return self._settings

    @property
    def registry(self) -> CoverRegistry:
        if self._registry is None:
            self._registry = CoverRegistry(self._settings.registry_path)
        return self._registry

    def resolve_seed(self, flag: Optional[int] = None) -> int:
        return self._settings.resolve_seed(flag)

    def classify_generators(self, lattice: LatticeClass, generators: Sequence[GeneratorTriple],
                            cap: Optional[int] = None) -> StructuredReport:
        """Close the generators (j, u, v) on the lattice and name the group."""
        gens = [AffineAut.of(lattice, j, u, v) for j, u, v in generators]
        group = closure(gens, cap=cap or self._settings.closure_cap, lattice=lattice)
        label = SubgroupClassifier().classify(group)
        payload = {
            "lattice": lattice.value,
            "label": print_label(label),
            "order": group.order,
            "torsion_factors": list(group.torsion_part.invariant_factors),
            "rotation_order": group.unit_part_order,
        }
        if getattr(label, "h", None) is not None:
            payload["h"] = label.h
        return StructuredReport.verdict("classify", True, payload)

    def realize_label(self, text: str, cap: Optional[int] = None) -> StructuredReport:
        """Build a witness for the label and confirm it by closing and classifying it."""
        label = parse_group_label(text)
        witness = WitnessBuilder().realize(label)
        group = witness.group(cap or self._settings.closure_cap)
        observed = SubgroupClassifier().classify(group)
        payload = {
            "label": print_label(label),
            "witness": witness.to_dict(),
            "closure_order": group.order,
            "classified_as": print_label(observed),
        }
        return StructuredReport.verdict("realize", observed == label and group.order == label.order, payload)

    def galois_check(self, text: str) -> StructuredReport:
        report = AdmissibilityOracle().galois_admissible(parse_group_label(text))
        return StructuredReport.verdict("galois-check", report.galois_realizable, report.to_dict())

    def enumerate(self, lattice: LatticeClass, n: int, snapshot: Optional[str] = None,
                  cap: Optional[int] = None) -> StructuredReport:
        """Enumerate the subgroups of E[N] x| mu_l and print the label census."""
        result = self._enumerator(cap).enumerate_subgroups(lattice, n)
        payload = {
            "lattice": lattice.value,
            "N": n,
            "subgroups": len(result.subgroups) + len(result.failures),
            "classification_failures": len(result.failures),
            "census": {str(k): int(v) for k, v in result.label_census.items()},
        }
        if snapshot is not None:
            payload["snapshot"] = str(write_snapshot(result, self._snapshot_path(snapshot, lattice, n)))
        return StructuredReport.verdict("enumerate", not result.failures, payload)

    def census_check(self, sweep: Optional[Sequence[Tuple[str, int]]] = None, extended: bool = False,
                     compare: Optional[str] = None, cap: Optional[int] = None) -> StructuredReport:
        """
        Enumerate every level N up to each sweep bound and check the census.

        Args:
            sweep: (lattice, max N) pairs; defaults to ``enumeration.sweep``.
            extended: Also run ``enumeration.extended_sweep``.
            compare: A snapshot file whose label counts must match the run at its level.
        """
        sweep = list(sweep or self._settings.enumeration_sweep)
        if extended:
            sweep += self._settings.extended_sweep
        enumerator = self._enumerator(cap)
        runs: List[Dict[str, Any]] = []
        results: Dict[Tuple[str, int], EnumerationResult] = {}
        passed = True
        max_order = 0
        for lattice_name, max_n in sweep:
            lattice = LatticeClass.from_name(lattice_name)
            for n in range(1, max_n + 1):
                result = enumerator.enumerate_subgroups(lattice, n)
                results[(lattice.value, n)] = result
                report = enumerator.census_check(result)
                passed = passed and report.passed
                max_order = max(max_order, report.max_galois_abelian_order)
                runs.append({"lattice": lattice.value, "N": n, **report.to_dict()})

        payload: Dict[str, Any] = {"runs": runs, "max_galois_abelian_order": max_order}
        if compare is not None:
            matches = self._compare_snapshot(compare, results, enumerator)
            payload["snapshot_matches"] = matches
            passed = passed and matches
        return StructuredReport.verdict("census-check", passed, payload)

    def _compare_snapshot(self, path: str, results: Dict[Tuple[str, int], EnumerationResult],
                          enumerator: SubgroupEnumerator) -> bool:
        frame = read_snapshot(path)
        lattice, n = str(frame["lattice"].iloc[0]), int(frame["N"].iloc[0])
        result = results.get((lattice, n)) or enumerator.enumerate_subgroups(LatticeClass.from_name(lattice), n)
        matches = snapshot_census(frame).to_dict() == result.label_census.to_dict()
        if not matches:
            self._logger.warning(f"Census of {lattice} N={n} differs from snapshot {path}")
        return matches

    def _enumerator(self, cap: Optional[int]) -> SubgroupEnumerator:
        return SubgroupEnumerator(ambient_cap=cap or self._settings.ambient_cap,
                                  show_progress=self._settings.show_progress)

    def _snapshot_path(self, snapshot: str, lattice: LatticeClass, n: int) -> Path:
        if snapshot:
            return Path(snapshot)
        return self._settings.census_path / f"{lattice.value}_N{n}.csv"

    def verify_registry(self, example_id: Optional[int] = None, seed: Optional[int] = None) -> StructuredReport:
        """
        Verify registry entries, the rank-two action check and the order 1300 m^2 constructions.

        With an example id only that entry runs. A failing or erroring entry does not
        stop the remaining ones.
        """
        seed = self.resolve_seed(seed)
        results: List[Dict[str, Any]] = []
        if example_id is None:
            ids = [ACTION_CHECK_ID] + self.registry.ids() + ["order_1300"]
        else:
            ids = [int(example_id)]
        for item in ids:
            try:
                if item == ACTION_CHECK_ID:
                    results.append(rank_two_action_reproduction().to_dict())
                elif item == "order_1300":
                    for m in ORDER_1300_MULTIPLIERS:
                        results += [check.to_dict() for check in order_1300_reproduction(m, self._settings.closure_cap)]
                else:
                    results += self.verify_entry(self.registry.get(item), seed)
            except GaloisToolkitError as e:
                if example_id is not None:
                    raise
                self._logger.error(f"Verification of {item} raised {e}")
                results.append({"name": f"example {item}", "passed": False, "error": str(e)})
        passed = all(r["passed"] for r in results)
        return StructuredReport.verdict("verify-paper", passed, {"seed": seed, "results": results})

    def verify_entry(self, entry: RegistryEntry, seed: int) -> List[Dict[str, Any]]:
        """Verify one registry entry at each of its parameter specializations."""
        verifier = CoverVerifier(aut_order_cap=self._settings.aut_order_cap,
                                 degree_samples=self._settings.degree_samples,
                                 seed=seed, iso_bound=self._settings.iso_bound,
                                 iso_search_bound=self._settings.iso_search_bound)
        override = self._settings.specializations if entry.parameters == ["b", "a"] else None
        records = []
        for params in entry.parameter_sets(override):
            spec = entry.cover_spec(params)
            record = verifier.verify(spec).to_dict()
            if entry.galois_points:
                points = [parse_field_constant(c, spec.ff, params) for c in entry.galois_points]
                record["galois_points"] = [p.to_dict() for p in find_galois_points(
                    spec.ff, points, seed=seed, degree_samples=self._settings.degree_samples)]
            records.append(record)
        return records

    def degree(self, expression: str, example_id: Optional[int] = None, field_tag: str = "Q",
               p: str = "0", q: str = "1", seed: Optional[int] = None) -> StructuredReport:
        """
        Degree of a function on a curve: the curve of a registry entry, or y^2 = x^3 + p x + q.
        """
        seed = self.resolve_seed(seed)
        params: Dict[str, Fraction] = {}
        if example_id is not None:
            entry = self.registry.get(example_id)
            params = entry.parameter_sets()[0]
            curve = entry.build_curve(params)
        else:
            curve = CurveModel.short_weierstrass(parse_constant(p), parse_constant(q),
                                                 CoefficientField.from_tag(field_tag))
        ff = FunctionField(curve)
        s = parse_ff(expression, ff, params)
        value = map_degree(s, self._settings.degree_samples, rng=random.Random(seed))
        payload = {"curve": str(curve), "function": str(s), "degree": value, "seed": seed}
        return StructuredReport.verdict("degree", True, payload)
