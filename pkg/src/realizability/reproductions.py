import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.exact_arithmetic.int_matrix import IntMatrix2
from src.exact_arithmetic.quadratic_field import QuadElem
from src.group_managing.action_matrix import action_matrix, action_matrix_from_base_change
from src.group_managing.affine_aut import AffineAut
from src.group_managing.classifier import SubgroupClassifier
from src.group_managing.finite_subgroup import closure
from src.group_managing.group_label import GroupLabel, exceptional
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint, unit_action
from src.torsion_lattice.torsion_subgroup import DEFAULT_CLOSURE_CAP

logger = logging.getLogger(__name__)

SQUARE = LatticeClass.SQUARE


@dataclass
class ReproductionCheck:
    """Named comparisons between computed and expected values."""
    name: str
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, str] = field(default_factory=dict)

    def record(self, key: str, computed, expected) -> None:
        self.checks[key] = computed == expected
        self.details[key] = f"{computed} (expected {expected})"

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": {key: {"passed": ok, "detail": self.details[key]} for key, ok in self.checks.items()},
        }


def _rotation_relation_holds(beta: TorsionPoint, beta_prime: TorsionPoint, m: IntMatrix2) -> bool:
    """i * (beta, beta') = (beta, beta') M with the columns of M as coordinates."""
    first = beta.scale(m.p) + beta_prime.scale(m.q)
    second = beta.scale(m.r) + beta_prime.scale(m.s)
    return unit_action(1, beta) == first and unit_action(1, beta_prime) == second


def rank_two_action_reproduction() -> ReproductionCheck:
    """
    Rotation by i on the square lattice with beta = (2+i)/5, beta' = (3+i)/10.

    The action on (beta, beta') is diag(2, 3) modulo (5, 10), and the base change
    (1 1; 3 2) gives A_4 = (7 5; -10 -7), which agrees with it modulo the orders.
    """
    report = ReproductionCheck("action on Z_5 + Z_10")
    beta = TorsionPoint.from_quad(SQUARE, QuadElem.of(2, 1, 4), 5)
    beta_prime = TorsionPoint.from_quad(SQUARE, QuadElem.of(3, 1, 4), 10)
    report.record("beta", (str(beta.u), str(beta.v)), ("2/5", "1/5"))
    report.record("beta_order", beta.order(), 5)
    report.record("beta_prime_order", beta_prime.order(), 10)

    group = closure([AffineAut.rotation(SQUARE, 1), AffineAut.translation(beta), AffineAut.translation(beta_prime)])
    orders = (beta.order(), beta_prime.order())
    observed = action_matrix(group, basis=(beta, beta_prime)).reduce_rows_mod(orders)
    report.record("action_mod_orders", str(observed), str(IntMatrix2(2, 0, 0, 3)))

    base_change = action_matrix_from_base_change(IntMatrix2(1, 1, 3, 2), 4)
    report.record("A4", str(base_change), str(IntMatrix2(7, 5, -10, -7)))
    report.record("A4_mod_orders", str(base_change.reduce_rows_mod(orders)), str(observed))

    other = action_matrix_from_base_change(IntMatrix2(3, 2, -1, -1), 4)
    report.record("A4_alternative_up_to_sign", other in (base_change, -base_change), True)
    logger.info(f"Rank-two action reproduction {'passed' if report.passed else 'failed'}")
    return report


def _order_1300_case(name: str, beta: TorsionPoint, beta_prime: TorsionPoint, m: IntMatrix2,
                 factors: Tuple[int, int], label: GroupLabel, cap: int) -> ReproductionCheck:
    report = ReproductionCheck(name)
    report.record("det", m.det(), 1)
    report.record("action_relation", _rotation_relation_holds(beta, beta_prime, m), True)
    group = closure([AffineAut.rotation(SQUARE, 1), AffineAut.translation(beta), AffineAut.translation(beta_prime)],
                    cap=cap)
    report.record("order", group.order, factors[0] * factors[1] * 4)
    report.record("torsion_factors", group.torsion_part.invariant_factors, factors)
    report.record("label", SubgroupClassifier().classify(group), label)
    return report


def order_1300_reproduction(m: int, cap: int = DEFAULT_CLOSURE_CAP) -> List[ReproductionCheck]:
    """
    The two order 1300 m^2 constructions on the square lattice.

    beta = 1/5m, beta' = (-5+i)/65m gives Z_5m + Z_65m and E(5m, 13, 4);
    beta = 1/m, beta' = (57+i)/325m gives Z_m + Z_325m and E(m, 325, 4).
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    first = _order_1300_case(
        f"order {1300 * m * m}, first construction",
        TorsionPoint.from_quad(SQUARE, QuadElem.of(1, 0, 4), 5 * m),
        TorsionPoint.from_quad(SQUARE, QuadElem.of(-5, 1, 4), 65 * m),
        IntMatrix2(5, -2, 13, -5),
        (5 * m, 65 * m),
        exceptional(5 * m, 13, 4),
        cap,
    )
    second = _order_1300_case(
        f"order {1300 * m * m}, second construction",
        TorsionPoint.from_quad(SQUARE, QuadElem.of(1, 0, 4), m),
        TorsionPoint.from_quad(SQUARE, QuadElem.of(57, 1, 4), 325 * m),
        IntMatrix2(-57, -10, 325, 57),
        (m, 325 * m),
        exceptional(m, 325, 4),
        cap,
    )
    for report in (first, second):
        logger.info(f"Order 1300 m^2 reproduction ({report.name}) {'passed' if report.passed else 'failed'}")
    return [first, second]
