import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.group_managing.group_label import Abelian, Bidihedral, Dihedral, Exc1, Exc2, GroupLabel
from src.realizability.number_theory import exists_h, nonabelian_h, norm_form_rep

# Abelian groups that occur with a nontrivial rotation part
ROTATION_ABELIAN_LABELS: Tuple[Abelian, ...] = (
    Abelian.of(2),
    Abelian.of(2, 2),
    Abelian.of(2, 2, 2),
    Abelian.of(3),
    Abelian.of(3, 3),
    Abelian.of(4),
    Abelian.of(2, 4),
    Abelian.of(6),
)

GALOIS_ABELIAN_LABELS: Tuple[Abelian, ...] = tuple(label for label in ROTATION_ABELIAN_LABELS if label.order >= 3)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the subgroup and Galois realizability decisions for one label."""
    label: GroupLabel
    subgroup_realizable: bool
    galois_realizable: bool
    rotation_realizable: bool
    h: Optional[int] = None
    norm_form_pair: Optional[Tuple[int, int]] = None
    failure_reason: str = ""

    def to_dict(self) -> dict:
        from src.cli.label_parser import print_label

        return {
            "label": print_label(self.label),
            "order": self.label.order,
            "subgroup_realizable": self.subgroup_realizable,
            "galois_realizable": self.galois_realizable,
            "rotation_realizable": self.rotation_realizable,
            "h": self.h,
            "norm_form_pair": list(self.norm_form_pair) if self.norm_form_pair else None,
            "failure_reason": self.failure_reason,
        }


class AdmissibilityOracle:
    """Decides which labels occur as subgroups of Aut(E) and as Galois groups at Galois points."""

    def __init__(self):
        self._logger = logging.getLogger(self.__class__.__name__)

    def subgroup_admissible(self, label: GroupLabel) -> AdmissibilityReport:
        """
        Decide whether some elliptic curve has a subgroup of Aut(E) isomorphic to the label.

        Abelian groups of rank <= 2 always occur as translation groups; the only
        rank-3 case is Z2^3. Dihedral and bidihedral labels always occur;
        exceptional labels need an admissible action exponent.
        """
        h = None
        pair = None
        reason = ""
        if isinstance(label, Abelian):
            realizable = label.rank <= 2 or label == Abelian.of(2, 2, 2)
            if not realizable:
                reason = f"abelian group of rank {label.rank} other than Z2^3"
            rotation = label in ROTATION_ABELIAN_LABELS
        elif isinstance(label, (Dihedral, Bidihedral)):
            realizable, rotation = True, True
        elif isinstance(label, Exc1):
            h = nonabelian_h(label.k, label.l)
            pair = norm_form_rep(label.k, label.l)
            realizable = rotation = h is not None
            if h is None:
                reason = f"no h with {label.k} | h^2 + eps*h + 1 acting non-trivially"
        elif isinstance(label, Exc2):
            h = exists_h(label.k, label.l)
            pair = norm_form_rep(label.k, label.l)
            realizable = rotation = h is not None
            if h is None:
                reason = f"no h with {label.k} | h^2 + eps*h + 1"
        else:
            raise TypeError(f"Unsupported label type: {type(label).__name__}")

        self._logger.debug(f"Subgroup admissibility of {label}: {realizable}")
        return AdmissibilityReport(label, realizable, False, realizable and rotation, h, pair, reason)

    def galois_admissible(self, label: GroupLabel) -> AdmissibilityReport:
        """
        Decide whether the label is the Galois group at some outer Galois point of a genus-one curve.

        The group must have order at least 3 and be realizable with a nontrivial rotation part.
        """
        report = self.subgroup_admissible(label)
        reason = report.failure_reason
        if not report.subgroup_realizable:
            galois = False
        elif label.order < 3:
            galois, reason = False, "|G| < 3"
        elif not report.rotation_realizable:
            galois, reason = False, "|G_0| = 1"
        else:
            galois = True
        self._logger.info(f"Galois admissibility of {label}: {galois}{' (' + reason + ')' if reason else ''}")
        return AdmissibilityReport(label, report.subgroup_realizable, galois, report.rotation_realizable,
                                   report.h, report.norm_form_pair, reason)


def subgroup_admissible(label: GroupLabel) -> AdmissibilityReport:
    return AdmissibilityOracle().subgroup_admissible(label)


def galois_admissible(label: GroupLabel) -> AdmissibilityReport:
    return AdmissibilityOracle().galois_admissible(label)


def label_catalog() -> List[GroupLabel]:
    """
    Fixed catalog of admissible labels used for round-trip checks.

    The rotation abelian labels of order >= 3, Dihedral(3..8), Bidihedral(m, n)
    with m | n <= 8, Exc1(k, l) and Exc2(m, k, l) for k in {3, 7, 13}, m <= 3.
    """
    labels: List[GroupLabel] = list(GALOIS_ABELIAN_LABELS)
    labels += [Dihedral(n) for n in range(3, 9)]
    labels += [Bidihedral(m, n) for n in range(3, 9) for m in range(2, n + 1) if n % m == 0]
    for k in (3, 7, 13):
        for l in (3, 4, 6):
            if nonabelian_h(k, l) is not None:
                labels.append(Exc1(k, l))
            if exists_h(k, l) is not None:
                labels += [Exc2(m, k, l) for m in (2, 3)]
    return labels


def order_of(label: GroupLabel) -> int:
    """Predicted order of the group a label names (m^2 * k * l for E(m, k, l))."""
    return label.order
