import logging

from src.group_managing.finite_subgroup import FiniteSubgroup
from src.group_managing.group_label import Abelian, Bidihedral, Dihedral, Exc1, Exc2, GroupLabel
from src.group_managing.iso_check import ClassificationFailureError
from src.torsion_lattice.torsion_point import TorsionPoint, unit_action


class SubgroupClassifier:
    """Names finite subgroups of Aut(C/L) in the taxonomy of abelian, dihedral, bidihedral and exceptional groups."""

    def __init__(self):
        self._logger = logging.getLogger(self.__class__.__name__)

    def classify(self, group: FiniteSubgroup) -> GroupLabel:
        """
        Classify a finite subgroup.

        Args:
            group: A closed subgroup.

        Returns:
            GroupLabel: Abelian(invariant factors), Dihedral, Bidihedral, Exc1 (with the
            action exponent h) or Exc2.

        Raises:
            ClassificationFailureError: If the group fits no taxonomy shape.
        """
        torsion = group.torsion_part
        l_prime = group.unit_part_order
        d1, d2 = torsion.invariant_factors

        if group.is_abelian:
            label: GroupLabel = Abelian.of(d1, d2, l_prime)
        elif l_prime == 2:
            label = Dihedral(d2) if d1 == 1 else Bidihedral(d1, d2)
        elif l_prime in (3, 4, 6):
            if d1 == 1:
                label = Exc1(d2, l_prime, h=self._action_exponent(group, l_prime))
            else:
                label = Exc2(d1, d2 // d1, l_prime)
        else:
            self._logger.error(f"Unclassifiable group: factors {(d1, d2)}, rotation order {l_prime}")
            raise ClassificationFailureError(
                f"No taxonomy shape for torsion factors {(d1, d2)} with rotation order {l_prime}")

        self._logger.debug(f"Classified {group!r} as {label}")
        return label

    @staticmethod
    def _action_exponent(group: FiniteSubgroup, l_prime: int) -> int:
        """Solve e_l * beta = h * beta for a generator beta of a cyclic G_T."""
        k = group.torsion_part.invariant_factors[1]
        beta = next(p for p in sorted(group.torsion_part.elements, key=TorsionPoint.sort_key)
                    if p.order() == k)
        rotated = unit_action(group.lattice.unit_order // l_prime, beta)
        for h in range(k):
            if beta.scale(h) == rotated:
                return h
        raise ClassificationFailureError(f"Rotation does not preserve the cyclic torsion part {beta}")


def classify(group: FiniteSubgroup) -> GroupLabel:
    return SubgroupClassifier().classify(group)
