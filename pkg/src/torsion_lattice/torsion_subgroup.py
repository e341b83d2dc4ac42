import logging
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from src.exact_arithmetic.errors import GaloisToolkitError
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint, torsion_order

DEFAULT_CLOSURE_CAP = 10 ** 6

logger = logging.getLogger(__name__)


class ClosureCapExceededError(GaloisToolkitError):
    """Exception raised when a closure grows beyond the configured element cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class TorsionStructureError(GaloisToolkitError):
    """Exception raised when normal-form invariants disagree with the enumerated element set."""
    pass


@dataclass(frozen=True)
class TorsionSubgroup:
    """A finite subgroup of the torsion quotient, with its invariant factors (d1 | d2)."""
    lattice: LatticeClass
    elements: FrozenSet[TorsionPoint] = field(repr=False)
    generators: Tuple[TorsionPoint, ...]
    invariant_factors: Tuple[int, int]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_cyclic(self) -> bool:
        return self.invariant_factors[0] == 1

    @property
    def exponent(self) -> int:
        return self.invariant_factors[1]


def smith_form(rows: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """
    Elementary divisors of a 2 x n integer relation matrix.

    Args:
        rows: The two rows of the matrix.

    Returns:
        Tuple[int, int]: (d1, d2) with d1 | d2; zero entries stand for free directions.
    """
    matrix = Matrix(rows)
    if matrix.rows != 2:
        raise ValueError(f"Relation matrix must have two rows, got {matrix.rows}")
    if matrix.cols == 0 or matrix.is_zero_matrix:
        return 0, 0
    snf = smith_normal_form(matrix, domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.rows, snf.cols))]
    diagonal += [0] * (2 - len(diagonal))
    a, b = diagonal
    if a == 0 or b == 0:
        return a + b, 0
    d1 = gcd(a, b)
    return d1, a * b // d1


def closure_of_points(gens: Iterable[TorsionPoint], lattice: LatticeClass,
                      cap: int = DEFAULT_CLOSURE_CAP) -> FrozenSet[TorsionPoint]:
    """Additive closure of a list of torsion points."""
    gens = [g for g in gens if not g.is_zero()]
    zero = TorsionPoint.zero(lattice)
    elements = {zero}
    frontier = [zero]
    while frontier:
        next_frontier = []
        for point in frontier:
            for g in gens:
                candidate = point + g
                if candidate not in elements:
                    elements.add(candidate)
                    next_frontier.append(candidate)
                    if len(elements) > cap:
                        raise ClosureCapExceededError(
                            f"Torsion closure exceeded the cap of {cap} elements", cap)
        frontier = next_frontier
    return frozenset(elements)


def subgroup_structure(gens: List[TorsionPoint], cap: int = DEFAULT_CLOSURE_CAP,
                       lattice: LatticeClass = None) -> TorsionSubgroup:
    """
    Close a list of torsion points under addition and compute invariant factors.

    The relation lattice of the generated group is spanned by N*e1, N*e2 and the
    integer columns N*g_i, where N is the common denominator; its elementary
    divisors s1 | s2 give the group Z_{N/s2} + Z_{N/s1}.

    Args:
        gens: Generators, all on the same lattice.
        cap: Maximum number of elements before giving up.
        lattice: Lattice class, required only when gens is empty.

    Returns:
        TorsionSubgroup: The closed subgroup.

    Raises:
        ClosureCapExceededError: If the closure exceeds cap.
        TorsionStructureError: If |elements| != d1 * d2.
    """
    if lattice is None:
        if not gens:
            raise ValueError("A lattice class is required for an empty generator list")
        lattice = gens[0].lattice
    if any(g.lattice is not lattice for g in gens):
        raise ValueError("All generators must lie on the same lattice")

    elements = closure_of_points(gens, lattice, cap)
    n = lcm(1, *(torsion_order(g) for g in gens))
    columns = [(n, 0), (0, n)] + [(int(g.u * n), int(g.v * n)) for g in gens]
    rows = [[c[0] for c in columns], [c[1] for c in columns]]
    s1, s2 = smith_form(rows)
    invariant_factors = (n // s2, n // s1)

    if invariant_factors[0] * invariant_factors[1] != len(elements):
        logger.error(f"Invariant factors {invariant_factors} disagree with {len(elements)} elements")
        raise TorsionStructureError(
            f"Smith form gives {invariant_factors} but closure has {len(elements)} elements")

    logger.debug(f"Torsion subgroup on {lattice.value} lattice: factors {invariant_factors}")
    ordered = tuple(sorted(gens, key=TorsionPoint.sort_key))
    return TorsionSubgroup(lattice, elements, ordered, invariant_factors)
