import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

from sympy import Poly, Symbol

from src.function_field.aut_map import (
    DEFAULT_AUT_ORDER_CAP,
    AutMap,
    AutOrderCapExceededError,
    aut_order,
    candidate_automorphisms,
    closure_of_maps,
    fixed_by,
    is_invariant,
)
from src.function_field.expression_parser import evaluate_relation
from src.function_field.ff_elem import FFElem, FunctionField
from src.function_field.map_degree import DEFAULT_DEGREE_SAMPLES, DegreeDegeneracyError, map_degree
from src.group_managing.group_label import GroupLabel
from src.group_managing.iso_check import (
    DEFAULT_ISO_BOUND,
    DEFAULT_ISO_SEARCH_BOUND,
    ClassificationFailureError,
    IsoBoundExceededError,
    identify_label,
)

CLAUSES = ("automorphisms", "group", "invariance", "degree", "relation", "orbit")


@dataclass
class CoverSpec:
    """A claimed Galois cover: curve, generating maps, invariant s, generator t and relation F(s, t)."""
    ff: FunctionField
    generators: List[AutMap]
    s: FFElem
    t: FFElem
    relation: Poly
    expected_group: GroupLabel
    name: str = ""
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CoverCertificate:
    """Per-clause outcome of a cover verification."""
    name: str
    expected_group: GroupLabel
    clauses: List[ClauseResult] = field(default_factory=list)
    group_order: Optional[int] = None
    degree: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return len(self.clauses) == len(CLAUSES) and all(c.passed for c in self.clauses)

    @property
    def failed_clauses(self) -> List[str]:
        return [c.name for c in self.clauses if not c.passed]

    def clause(self, name: str) -> ClauseResult:
        return next(c for c in self.clauses if c.name == name)

    def to_dict(self) -> dict:
        from src.cli.label_parser import print_label

        return {
            "name": self.name,
            "expected_group": print_label(self.expected_group),
            "params": {k: str(v) for k, v in self.params.items()},
            "passed": self.passed,
            "group_order": self.group_order,
            "degree": self.degree,
            "clauses": [{"clause": c.name, "passed": c.passed, "detail": c.detail} for c in self.clauses],
        }


@dataclass(frozen=True)
class GaloisPointReport:
    """Outcome of projecting from a point (0, c) off the curve."""
    c: str
    degree: int
    stabilizer_order: int
    automorphism: Optional[str]
    automorphism_order: Optional[int]

    @property
    def is_galois(self) -> bool:
        return self.stabilizer_order == self.degree

    def to_dict(self) -> dict:
        return {
            "point": f"(0, {self.c})",
            "degree": self.degree,
            "stabilizer_order": self.stabilizer_order,
            "automorphism": self.automorphism,
            "automorphism_order": self.automorphism_order,
            "is_galois": self.is_galois,
        }


def verify_relation(relation: Poly, s: FFElem, t: FFElem) -> bool:
    """True iff F(s, t) vanishes in the function field."""
    return evaluate_relation(relation, s, t).is_zero()


class CoverVerifier:
    """Checks the computational certificate of a Galois cover clause by clause."""

    def __init__(self, aut_order_cap: int = DEFAULT_AUT_ORDER_CAP, degree_samples: int = DEFAULT_DEGREE_SAMPLES,
                 seed: int = 0, iso_bound: int = DEFAULT_ISO_BOUND,
                 iso_search_bound: int = DEFAULT_ISO_SEARCH_BOUND):
        self.aut_order_cap = aut_order_cap
        self.degree_samples = degree_samples
        self.seed = seed
        self.iso_bound = iso_bound
        self.iso_search_bound = iso_search_bound
        self._logger = logging.getLogger(self.__class__.__name__)

    def verify(self, spec: CoverSpec) -> CoverCertificate:
        """
        Verify a cover specification.

        Clauses: generators are automorphisms of finite order; their closure has the
        expected label; s is invariant under the whole group; s has degree |G|;
        F(s, t) = 0 with deg_t F = |G|; the orbit of t has |G| distinct members.

        Returns:
            CoverCertificate: One ClauseResult per clause, failures carrying a witness.
        """
        n = spec.expected_group.order
        certificate = CoverCertificate(spec.name, spec.expected_group, params=dict(spec.params))
        self._logger.info(f"Verifying cover {spec.name or spec.s} with expected group of order {n}")

        certificate.clauses.append(self._check_automorphisms(spec))

        elements: Sequence[AutMap] = ()
        try:
            group = closure_of_maps(spec.generators, cap=max(4 * n, 64))
            elements = [group.value(i) for i in range(group.order)]
            certificate.group_order = group.order
            label = identify_label(group, bound=self.iso_bound, search_bound=self.iso_search_bound)
            if group.order == n and label == spec.expected_group:
                certificate.clauses.append(ClauseResult("group", True, f"closure of order {group.order} is {label}"))
            else:
                certificate.clauses.append(ClauseResult(
                    "group", False, f"closure of order {group.order} is {label}, expected {spec.expected_group}"))
        except (AutOrderCapExceededError, ClassificationFailureError, IsoBoundExceededError) as e:
            certificate.clauses.append(ClauseResult("group", False, str(e)))

        moved = next((g for g in elements if not is_invariant(spec.s, g)), None)
        if not elements:
            certificate.clauses.append(ClauseResult("invariance", False, "group closure unavailable"))
        elif moved is None:
            certificate.clauses.append(ClauseResult("invariance", True, f"s fixed by all {len(elements)} elements"))
        else:
            certificate.clauses.append(ClauseResult("invariance", False, f"{moved} moves s to {moved(spec.s)}"))

        try:
            degree = map_degree(spec.s, self.degree_samples, rng=random.Random(self.seed))
            certificate.degree = degree
            certificate.clauses.append(ClauseResult("degree", degree == n, f"deg s = {degree}, |G| = {n}"))
        except (DegreeDegeneracyError, ValueError) as e:
            certificate.clauses.append(ClauseResult("degree", False, str(e)))

        relation_holds = verify_relation(spec.relation, spec.s, spec.t)
        t_degree = spec.relation.degree(Symbol("t"))
        certificate.clauses.append(ClauseResult(
            "relation", relation_holds and t_degree == n,
            f"F(s, t) {'vanishes' if relation_holds else 'does not vanish'}, deg_t F = {t_degree}"))

        certificate.clauses.append(self._check_orbit(spec, elements))

        if certificate.passed:
            self._logger.info(f"Cover {spec.name} verified")
        else:
            self._logger.warning(f"Cover {spec.name} failed clauses {certificate.failed_clauses}")
        return certificate

    def _check_automorphisms(self, spec: CoverSpec) -> ClauseResult:
        orders = []
        for g in spec.generators:
            if not g.lands_on_curve():
                return ClauseResult("automorphisms", False, f"{g} does not land on the curve")
            try:
                orders.append(aut_order(g, self.aut_order_cap))
            except AutOrderCapExceededError as e:
                return ClauseResult("automorphisms", False, str(e))
        return ClauseResult("automorphisms", True, f"generator orders {orders}")

    @staticmethod
    def _check_orbit(spec: CoverSpec, elements: Sequence[AutMap]) -> ClauseResult:
        if not elements:
            return ClauseResult("orbit", False, "group closure unavailable")
        images = [g(spec.t) for g in elements]
        for (i, a), (j, b) in combinations(enumerate(images), 2):
            if a == b:
                return ClauseResult("orbit", False, f"{elements[i]} and {elements[j]} agree on t")
        return ClauseResult("orbit", True, f"{len(images)} distinct conjugates of t")


def verify_galois_cover(spec: CoverSpec, **settings) -> CoverCertificate:
    return CoverVerifier(**settings).verify(spec)


def find_stabilizing_automorphism(ff: FunctionField, s: FFElem,
                                  candidates: Optional[Iterable[AutMap]] = None) -> Optional[AutMap]:
    """
    Some non-identity candidate fixing s, or None.

    Candidates default to the translations by box torsion points composed with rotations.
    """
    if candidates is None:
        candidates = candidate_automorphisms(ff)
    return fixed_by(s, candidates)


def find_galois_points(ff: FunctionField, values: Iterable[Any], seed: int = 0,
                       degree_samples: int = DEFAULT_DEGREE_SAMPLES) -> List[GaloisPointReport]:
    """
    Test points (0, c) for being Galois points through the projection (y - c)/x.

    The point is Galois when the candidates fixing the projection form a group
    as large as the projection's degree.
    """
    logger = logging.getLogger(__name__)
    candidates = candidate_automorphisms(ff)
    reports = []
    for value in values:
        c = ff.curve.field.convert(value)
        s = (ff.y - ff.constant(c)) / ff.x
        stabilizer = [m for m in candidates if is_invariant(s, m)]
        degree = map_degree(s, degree_samples, rng=random.Random(seed))
        found = next((m for m in stabilizer if not m.is_identity()), None)
        reports.append(GaloisPointReport(
            c=str(ff.curve.field.to_sympy(c)),
            degree=degree,
            stabilizer_order=len(stabilizer),
            automorphism=str(found) if found else None,
            automorphism_order=aut_order(found) if found else None,
        ))
        logger.info(f"Point (0, {reports[-1].c}): degree {degree}, stabilizer of order {len(stabilizer)}")
    return reports
