from enum import Enum
from functools import lru_cache

from src.exact_arithmetic.errors import GaloisToolkitError
from src.exact_arithmetic.int_matrix import IntMatrix2


class UnsupportedRotationError(GaloisToolkitError):
    """Exception raised when a lattice class has no unit of the requested order."""
    pass


class LatticeClass(Enum):
    """The three homothety classes of lattices Z + Z*omega that matter for automorphisms."""
    GENERIC = "generic"
    SQUARE = "square"
    HEXAGONAL = "hexagonal"

    @property
    def unit_order(self) -> int:
        return {LatticeClass.GENERIC: 2, LatticeClass.SQUARE: 4, LatticeClass.HEXAGONAL: 6}[self]

    @property
    def ring_l(self) -> int:
        """Ring tag of the basis generator (1 for the formal omega of a generic lattice)."""
        return {LatticeClass.GENERIC: 1, LatticeClass.SQUARE: 4, LatticeClass.HEXAGONAL: 6}[self]

    @property
    def basis_generator(self) -> str:
        return {LatticeClass.GENERIC: "omega", LatticeClass.SQUARE: "e4", LatticeClass.HEXAGONAL: "e6"}[self]

    @classmethod
    def from_name(cls, name: str) -> "LatticeClass":
        aliases = {"hex": "hexagonal", "gen": "generic", "sq": "square"}
        key = aliases.get(name.strip().lower(), name.strip().lower())
        try:
            return cls(key)
        except ValueError as e:
            raise ValueError(f"Unknown lattice class: {name}") from e


_MAXIMAL_UNIT = {
    LatticeClass.GENERIC: IntMatrix2(-1, 0, 0, -1),
    LatticeClass.SQUARE: IntMatrix2(0, -1, 1, 0),
    LatticeClass.HEXAGONAL: IntMatrix2(0, -1, 1, 1),
}


@lru_cache(maxsize=None)
def unit_power_matrix(lattice: LatticeClass, j: int) -> IntMatrix2:
    """Matrix of multiplication by the j-th power of the lattice's maximal unit."""
    return _MAXIMAL_UNIT[lattice].pow(j % lattice.unit_order)


def unit_matrix(lattice: LatticeClass, l: int) -> IntMatrix2:
    """
    Matrix of multiplication by e_l in the lattice basis (1, zeta).

    Args:
        lattice: Lattice class.
        l: Order of the unit, one of 2, 3, 4, 6.

    Returns:
        IntMatrix2: Columns are the coordinates of e_l*1 and e_l*zeta.

    Raises:
        UnsupportedRotationError: If the lattice has no unit of order l.
    """
    if l not in (2, 3, 4, 6) or lattice.unit_order % l != 0:
        raise UnsupportedRotationError(f"The {lattice.value} lattice has no unit of order {l}")
    return unit_power_matrix(lattice, lattice.unit_order // l)
