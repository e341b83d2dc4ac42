import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional

from sympy.core.intfunc import igcdex

from src.exact_arithmetic.errors import GaloisToolkitError
from src.exact_arithmetic.quadratic_field import QuadElem
from src.group_managing.affine_aut import AffineAut
from src.group_managing.finite_subgroup import FiniteSubgroup, closure
from src.group_managing.group_label import Abelian, Bidihedral, Dihedral, Exc1, Exc2, GroupLabel
from src.realizability.admissibility import AdmissibilityOracle
from src.realizability.number_theory import check_condition_e, epsilon, exists_h, nonabelian_h, norm_form_rep
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint
from src.torsion_lattice.torsion_subgroup import DEFAULT_CLOSURE_CAP


class NotRealizableError(GaloisToolkitError):
    """Exception raised when a label is not realizable; ``condition`` names the failed requirement."""

    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class ScaleData:
    """Scale data of an exceptional witness: (beta, beta') = lam * (1, e_l) * (p r; q s)."""
    a: int
    b: int
    d: int
    h: int
    p: int
    q: int
    r: int
    s: int
    lam: QuadElem
    beta: QuadElem
    beta_prime: QuadElem
    condition_e: bool

    def to_dict(self) -> dict:
        return {
            "a": self.a, "b": self.b, "d": self.d, "h": self.h,
            "p": self.p, "q": self.q, "r": self.r, "s": self.s,
            "lambda": str(self.lam), "beta": str(self.beta), "beta_prime": str(self.beta_prime),
            "condition_e": self.condition_e,
        }


@dataclass(frozen=True)
class Witness:
    """Lattice and generators realizing a label."""
    lattice: LatticeClass
    generators: List[AffineAut] = field(default_factory=list)
    scale_data: Optional[ScaleData] = None

    def group(self, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteSubgroup:
        return closure(self.generators, cap=cap, lattice=self.lattice)

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice.value,
            "generators": [{"j": g.j, "u": str(g.beta.u), "v": str(g.beta.v)} for g in self.generators],
            "scale_data": self.scale_data.to_dict() if self.scale_data else None,
        }


def exceptional_scale_data(m: int, k: int, l: int, d: int = 1, h: Optional[int] = None) -> ScaleData:
    """
    Explicit basis-change data for an exceptional group with torsion Z_m + Z_mk.

    With k = a^2 - eps*ab + b^2 (a, b coprime), p = a - eps*b, q = -b and
    (r, s) chosen by the extended gcd so that ps - qr = 1; lam = d(a + b e_l)/(mk).

    Raises:
        NotRealizableError: If k has no coprime norm-form representation or no h exists.
        ValueError: If d is not coprime to mk.
    """
    if gcd(d, m * k) != 1:
        raise ValueError(f"d = {d} must be coprime to mk = {m * k}")
    pair = norm_form_rep(k, l)
    h = exists_h(k, l) if h is None else h
    if pair is None or h is None:
        raise NotRealizableError(f"k = {k} is not admissible for l = {l}", "norm_form_rep")
    a, b = pair
    eps = epsilon(l)
    x, y, _ = (int(v) for v in igcdex(a, b))
    p, q = a - eps * b, -b
    s, r = x, y + eps * x
    lam = QuadElem.of(a, b, l) * Fraction(d, m * k)
    zeta = QuadElem.zeta(l)
    beta = lam * (zeta * q + p)
    beta_prime = lam * (zeta * s + r)
    condition = check_condition_e(a, b, p, q, r, s, m, k, l)
    return ScaleData(a, b, d, h, p, q, r, s, lam, beta, beta_prime, condition)


class WitnessBuilder:
    """Constructs explicit generator sets for admissible labels."""

    def __init__(self, oracle: Optional[AdmissibilityOracle] = None):
        self._oracle = oracle or AdmissibilityOracle()
        self._logger = logging.getLogger(self.__class__.__name__)

    def realize(self, label: GroupLabel) -> Witness:
        """
        Build a witness whose closure classifies to the label.

        Raises:
            NotRealizableError: If the label is not subgroup-admissible.
        """
        report = self._oracle.subgroup_admissible(label)
        if not report.subgroup_realizable:
            self._logger.error(f"{label} is not realizable: {report.failure_reason}")
            raise NotRealizableError(f"{label} is not realizable: {report.failure_reason}",
                                     report.failure_reason)
        if isinstance(label, Abelian):
            witness = self._abelian(label)
        elif isinstance(label, Dihedral):
            witness = Witness(LatticeClass.GENERIC, [
                AffineAut.rotation(LatticeClass.GENERIC, 1),
                AffineAut.of(LatticeClass.GENERIC, 0, Fraction(1, label.n)),
            ])
        elif isinstance(label, Bidihedral):
            witness = Witness(LatticeClass.GENERIC, [
                AffineAut.rotation(LatticeClass.GENERIC, 1),
                AffineAut.of(LatticeClass.GENERIC, 0, 0, Fraction(1, label.m)),
                AffineAut.of(LatticeClass.GENERIC, 0, Fraction(1, label.n)),
            ])
        elif isinstance(label, Exc1):
            witness = self._exceptional(1, label.k, label.l, nonabelian_h(label.k, label.l))
        else:
            witness = self._exceptional(label.m, label.k, label.l, exists_h(label.k, label.l))
        self._logger.info(f"Realized {label} on the {witness.lattice.value} lattice "
                          f"with {len(witness.generators)} generators")
        return witness

    @staticmethod
    def _abelian(label: Abelian) -> Witness:
        generic, square, hexagonal = LatticeClass.GENERIC, LatticeClass.SQUARE, LatticeClass.HEXAGONAL
        rotation_witnesses = {
            (2,): Witness(generic, [AffineAut.rotation(generic, 1)]),
            (2, 2): Witness(generic, [AffineAut.rotation(generic, 1), AffineAut.of(generic, 0, Fraction(1, 2))]),
            (2, 2, 2): Witness(generic, [AffineAut.rotation(generic, 1),
                                         AffineAut.of(generic, 0, Fraction(1, 2)),
                                         AffineAut.of(generic, 0, 0, Fraction(1, 2))]),
            (3,): Witness(hexagonal, [AffineAut.rotation(hexagonal, 2)]),
            (3, 3): Witness(hexagonal, [
                AffineAut.rotation(hexagonal, 2),
                AffineAut.translation(TorsionPoint.from_quad(hexagonal, QuadElem.of(1, 2, 3), 3)),
            ]),
            (4,): Witness(square, [AffineAut.rotation(square, 1)]),
            (2, 4): Witness(square, [
                AffineAut.rotation(square, 1),
                AffineAut.translation(TorsionPoint.from_quad(square, QuadElem.of(1, 1, 4), 2)),
            ]),
            (6,): Witness(hexagonal, [AffineAut.rotation(hexagonal, 1)]),
        }
        if label.factors in rotation_witnesses:
            return rotation_witnesses[label.factors]
        generators = []
        if label.d1 > 1:
            generators.append(AffineAut.of(generic, 0, 0, Fraction(1, label.d1)))
        if label.d2 > 1:
            generators.append(AffineAut.of(generic, 0, Fraction(1, label.d2)))
        return Witness(generic, generators)

    @staticmethod
    def _exceptional(m: int, k: int, l: int, h: int) -> Witness:
        """Rotation e_l, the full m-torsion and beta_1 = ((h + eps) + e_l)/(mk)."""
        lattice = LatticeClass.SQUARE if l == 4 else LatticeClass.HEXAGONAL
        eps = epsilon(l)
        generators = [AffineAut.rotation(lattice, lattice.unit_order // l)]
        if m > 1:
            generators += [AffineAut.of(lattice, 0, Fraction(1, m)), AffineAut.of(lattice, 0, 0, Fraction(1, m))]
        beta = TorsionPoint.from_quad(lattice, QuadElem.of(h + eps, 1, l), m * k)
        generators.append(AffineAut.translation(beta))
        return Witness(lattice, generators, exceptional_scale_data(m, k, l, h=h))


def realize(label: GroupLabel) -> Witness:
    return WitnessBuilder().realize(label)
