import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from src.exact_arithmetic.errors import GaloisToolkitError
from src.group_managing.affine_aut import AffineAut
from src.group_managing.classifier import SubgroupClassifier
from src.group_managing.finite_subgroup import FiniteSubgroup
from src.group_managing.group_label import Abelian, Exc1, Exc2, GroupLabel
from src.group_managing.iso_check import ClassificationFailureError
from src.realizability.admissibility import ROTATION_ABELIAN_LABELS, AdmissibilityOracle
from src.realizability.number_theory import exists_h
from src.torsion_lattice.lattice_class import LatticeClass, unit_power_matrix
from src.torsion_lattice.torsion_point import TorsionPoint

DEFAULT_AMBIENT_CAP = 2000


class AmbientCapExceededError(GaloisToolkitError):
    """Exception raised when E[N] x| mu_l has more elements than the configured cap."""
    pass


class AmbientGroup:
    """
    E[N] x| mu_l with elements coded as integers j*N^2 + a*N + b,
    standing for z -> e^j z + (a + b*zeta)/N.
    """

    def __init__(self, lattice: LatticeClass, n: int):
        self.lattice = lattice
        self.n = n
        self.unit_order = lattice.unit_order
        self.size = n * n * self.unit_order
        self._matrices = [unit_power_matrix(lattice, j) for j in range(self.unit_order)]

    def encode(self, j: int, a: int, b: int) -> int:
        n = self.n
        return (j % self.unit_order) * n * n + (a % n) * n + (b % n)

    def decode(self, code: int) -> Tuple[int, int, int]:
        n2 = self.n * self.n
        j, rest = divmod(code, n2)
        a, b = divmod(rest, self.n)
        return j, a, b

    def mul(self, x: int, y: int) -> int:
        j1, a1, b1 = self.decode(x)
        j2, a2, b2 = self.decode(y)
        a2r, b2r = self._matrices[j1].mat_vec((a2, b2))
        return self.encode(j1 + j2, a1 + a2r, b1 + b2r)

    def to_affine(self, code: int) -> AffineAut:
        j, a, b = self.decode(code)
        return AffineAut(self.lattice, j, TorsionPoint(self.lattice, Fraction(a, self.n), Fraction(b, self.n)))

    def closure(self, seed: FrozenSet[int], gens: Sequence[int]) -> FrozenSet[int]:
        """Close a subgroup's element set together with extra generators."""
        elements = set(seed) | {0}
        frontier = list(elements)
        all_gens = list(gens)
        while frontier:
            next_frontier = []
            for x in frontier:
                for g in all_gens:
                    y = self.mul(x, g)
                    if y not in elements:
                        elements.add(y)
                        next_frontier.append(y)
            frontier = next_frontier
        return frozenset(elements)


@dataclass
class EnumerationResult:
    """Every subgroup of E[N] x| mu_l, with the label of each."""
    lattice: LatticeClass
    n: int
    subgroups: List[FiniteSubgroup]
    labels: List[GroupLabel]
    failures: List[Tuple[FiniteSubgroup, str]] = field(default_factory=list)

    @property
    def label_census(self) -> pd.Series:
        from src.cli.label_parser import print_label

        counts = Counter(print_label(label) for label in self.labels)
        return pd.Series(counts, name="count").sort_index()

    def records(self) -> pd.DataFrame:
        from src.cli.label_parser import print_label

        rows = []
        for group, label in zip(self.subgroups, self.labels):
            rows.append({
                "lattice": self.lattice.value,
                "N": self.n,
                "order": group.order,
                "label": print_label(label),
                "generators": " ".join(f"{g.j}:{g.beta.u}:{g.beta.v}" for g in group.generators),
            })
        return pd.DataFrame(rows, columns=["lattice", "N", "order", "label", "generators"])


@dataclass
class CensusReport:
    """Result of checking an enumeration against the subgroup classification."""
    passed: bool
    failures: List[Tuple[FiniteSubgroup, str]]
    census: pd.Series
    galois_abelian_labels: List[GroupLabel]
    max_galois_abelian_order: int

    def to_dict(self) -> dict:
        from src.cli.label_parser import print_label

        return {
            "passed": self.passed,
            "failures": [{"order": group.order, "reason": reason} for group, reason in self.failures],
            "census": {str(k): int(v) for k, v in self.census.items()},
            "galois_abelian_labels": [print_label(label) for label in self.galois_abelian_labels],
            "max_galois_abelian_order": self.max_galois_abelian_order,
        }


class SubgroupEnumerator:
    """Exhaustive subgroup enumeration of E[N] x| mu_l by iterated closure extension."""

    def __init__(self, ambient_cap: int = DEFAULT_AMBIENT_CAP, show_progress: bool = False,
                 classifier: Optional[SubgroupClassifier] = None):
        self.ambient_cap = ambient_cap
        self.show_progress = show_progress
        self._classifier = classifier or SubgroupClassifier()
        self._logger = logging.getLogger(self.__class__.__name__)

    def enumerate_subgroups(self, lattice: LatticeClass, n: int) -> EnumerationResult:
        """
        Enumerate every subgroup of E[N] x| mu_l.

        Starting from the trivial group, each known subgroup is extended by one
        ambient element and closed, until no new element set appears.

        Args:
            lattice: Lattice class selecting mu_l.
            n: Torsion level N.

        Returns:
            EnumerationResult: Subgroups in discovery order with their labels.

        Raises:
            AmbientCapExceededError: If N^2 * |mu_l| exceeds the ambient cap.
        """
        if n < 1:
            raise ValueError(f"Torsion level must be positive, got {n}")
        ambient = AmbientGroup(lattice, n)
        if ambient.size > self.ambient_cap:
            self._logger.error(f"Ambient group of order {ambient.size} exceeds cap {self.ambient_cap}")
            raise AmbientCapExceededError(
                f"E[{n}] x| mu_{lattice.unit_order} has {ambient.size} elements, cap is {self.ambient_cap}")

        self._logger.info(f"Enumerating subgroups of E[{n}] x| mu_{lattice.unit_order} ({ambient.size} elements)")
        trivial = frozenset({0})
        known: Dict[FrozenSet[int], Tuple[int, ...]] = {trivial: ()}
        queue: List[FrozenSet[int]] = [trivial]
        progress = tqdm(total=None, desc=f"Subgroups of {lattice.value} N={n}", unit="subgroup",
                        disable=not self.show_progress)
        position = 0
        while position < len(queue):
            current = queue[position]
            position += 1
            progress.update(1)
            for g in range(ambient.size):
                if g in current:
                    continue
                extended = ambient.closure(current, list(known[current]) + [g])
                if extended not in known:
                    known[extended] = known[current] + (g,)
                    queue.append(extended)
        progress.close()

        subgroups: List[FiniteSubgroup] = []
        labels: List[GroupLabel] = []
        failures: List[Tuple[FiniteSubgroup, str]] = []
        for element_set in queue:
            group = FiniteSubgroup(lattice, (ambient.to_affine(c) for c in element_set),
                                   [ambient.to_affine(c) for c in known[element_set]])
            try:
                labels.append(self._classifier.classify(group))
                subgroups.append(group)
            except ClassificationFailureError as e:
                failures.append((group, str(e)))
        self._logger.info(f"Found {len(queue)} subgroups of E[{n}] x| mu_{lattice.unit_order}")
        return EnumerationResult(lattice, n, subgroups, labels, failures)

    def census_check(self, result: EnumerationResult) -> CensusReport:
        """
        Check an enumeration against the classification of finite subgroups.

        Every subgroup must classify; abelian groups with a nontrivial rotation part
        must be on the rotation list; exceptional labels must admit an action exponent.
        """
        failures = list(result.failures)
        oracle = AdmissibilityOracle()
        galois_abelian: List[GroupLabel] = []
        for group, label in zip(result.subgroups, result.labels):
            l_prime = group.unit_part_order
            if isinstance(label, Abelian):
                if l_prime > 1 and label not in ROTATION_ABELIAN_LABELS:
                    failures.append((group, f"abelian {label} with rotation order {l_prime} is not on the rotation list"))
                if oracle.galois_admissible(label).galois_realizable and label not in galois_abelian:
                    galois_abelian.append(label)
            elif isinstance(label, (Exc1, Exc2)) and exists_h(label.k, label.l) is None:
                failures.append((group, f"{label} admits no action exponent"))
        max_order = max((label.order for label in galois_abelian), default=0)
        passed = not failures
        if passed:
            self._logger.info(f"Census check passed for {result.lattice.value} N={result.n}")
        else:
            self._logger.warning(f"Census check found {len(failures)} violations")
        return CensusReport(passed, failures, result.label_census, galois_abelian, max_order)


def enumerate_subgroups(lattice: LatticeClass, n: int, ambient_cap: int = DEFAULT_AMBIENT_CAP) -> EnumerationResult:
    return SubgroupEnumerator(ambient_cap).enumerate_subgroups(lattice, n)


def census_check(result: EnumerationResult) -> CensusReport:
    return SubgroupEnumerator().census_check(result)
