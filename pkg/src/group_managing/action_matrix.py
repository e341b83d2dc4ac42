import logging
from typing import Dict, Optional, Tuple

from src.exact_arithmetic.errors import GaloisToolkitError
from src.exact_arithmetic.int_matrix import IntMatrix2
from src.group_managing.finite_subgroup import FiniteSubgroup
from src.realizability.number_theory import epsilon
from src.torsion_lattice.torsion_point import TorsionPoint, unit_action
from src.torsion_lattice.torsion_subgroup import closure_of_points

logger = logging.getLogger(__name__)


class UndefinedActionError(GaloisToolkitError):
    """Exception raised when an action matrix is requested for a rank-1 torsion part."""
    pass


def rotation_matrix(l: int) -> IntMatrix2:
    """Multiplication by e_l in the basis (1, e_l): [[0, -1], [1, -eps]]."""
    return IntMatrix2(0, -1, 1, -epsilon(l))


def conjugated_rotation_closed_form(m: IntMatrix2, l: int) -> IntMatrix2:
    """
    Entries of M^-1 B_l M up to the factor det(M), written out for M = (p r; q s).
    """
    p, r, q, s = m.p, m.r, m.q, m.s
    eps = epsilon(l)
    return IntMatrix2(
        -p * r + eps * q * r - q * s,
        -r * r + eps * s * r - s * s,
        p * p - eps * p * q + q * q,
        p * r - eps * p * s + q * s,
    )


def action_matrix_from_base_change(m: IntMatrix2, l: int) -> IntMatrix2:
    """
    A_l = M^-1 B_l M for a basis change M with det(M) = ±1.

    Raises:
        NonUnimodularMatrixError: If det(M) is not ±1.
    """
    result = m.inverse_unimodular() @ rotation_matrix(l) @ m
    closed = conjugated_rotation_closed_form(m, l) * m.det()
    if result != closed:
        raise ArithmeticError(f"Closed form {closed} disagrees with M^-1 B M = {result}")
    return result


def default_basis(group: FiniteSubgroup) -> Tuple[TorsionPoint, TorsionPoint]:
    """
    Deterministic generator pair of a rank-2 torsion part: beta' of maximal order,
    beta of minimal order completing it, ties broken by coordinates.
    """
    torsion = group.torsion_part
    points = sorted(torsion.elements, key=TorsionPoint.sort_key)
    top = max(p.order() for p in points)
    beta_prime = next(p for p in points if p.order() == top)
    for beta in sorted(points, key=lambda p: (p.order(), p.sort_key())):
        if len(closure_of_points([beta, beta_prime], group.lattice)) == torsion.order:
            return beta, beta_prime
    raise UndefinedActionError("Torsion part is not generated by two elements")


def action_matrix(group: FiniteSubgroup,
                  basis: Optional[Tuple[TorsionPoint, TorsionPoint]] = None) -> IntMatrix2:
    """
    Integer matrix A with e_l(beta, beta') = (beta, beta') A modulo the lattice.

    Column i holds the coordinates of e_l times the i-th basis point, the first
    row reduced modulo ord(beta) and the second modulo ord(beta').

    Args:
        group: Group with rank-2 torsion part and rotation order 2, 3, 4 or 6.
        basis: Optional generator pair; defaults to ``default_basis``.

    Raises:
        UndefinedActionError: If G_T is not of rank 2 or G has no rotation.
    """
    torsion = group.torsion_part
    l_prime = group.unit_part_order
    if torsion.invariant_factors[0] == 1:
        raise UndefinedActionError(f"Torsion part {torsion.invariant_factors} has rank < 2")
    if l_prime not in (2, 3, 4, 6):
        raise UndefinedActionError(f"Rotation part of order {l_prime} defines no action")

    beta, beta_prime = basis or default_basis(group)
    n1, n2 = beta.order(), beta_prime.order()
    coordinates: Dict[TorsionPoint, Tuple[int, int]] = {}
    for x in range(n1):
        for y in range(n2):
            coordinates.setdefault(beta.scale(x) + beta_prime.scale(y), (x, y))

    exponent = group.lattice.unit_order // l_prime
    images = []
    for point in (beta, beta_prime):
        rotated = unit_action(exponent, point)
        if rotated not in coordinates:
            raise UndefinedActionError(f"{rotated} is not in the span of the chosen basis")
        images.append(coordinates[rotated])
    (p, q), (r, s) = images
    result = IntMatrix2(p, r, q, s)
    logger.debug(f"Action matrix {result} for basis {beta}, {beta_prime}")
    return result
