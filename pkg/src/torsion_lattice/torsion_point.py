from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Tuple, Union

from src.exact_arithmetic.quadratic_field import QuadElem, RationalLike
from src.torsion_lattice.lattice_class import LatticeClass, unit_power_matrix


def _mod1(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


@dataclass(frozen=True, order=False)
class TorsionPoint:
    """A point u + v*zeta of (Q + Q*zeta)/L, stored with 0 <= u, v < 1."""
    lattice: LatticeClass
    u: Fraction
    v: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", _mod1(Fraction(self.u)))
        object.__setattr__(self, "v", _mod1(Fraction(self.v)))

    @classmethod
    def zero(cls, lattice: LatticeClass) -> "TorsionPoint":
        return cls(lattice, Fraction(0), Fraction(0))

    @classmethod
    def from_quad(cls, lattice: LatticeClass, numerator: QuadElem,
                  denominator: RationalLike = 1) -> "TorsionPoint":
        """
        Build the point numerator/denominator, e.g. (2+e4)/5 on the square lattice.

        Inputs written with e3 are converted to the (1, e6) basis of the hexagonal lattice.
        """
        value = numerator / Fraction(denominator)
        if lattice is LatticeClass.GENERIC:
            if value.ring.l != 1:
                raise ValueError("Generic lattices only accept rational coordinates; use TorsionPoint(u, v)")
            return cls(lattice, value.a, Fraction(0))
        value = value.to_ring(lattice.ring_l)
        return cls(lattice, value.a, value.b)

    @property
    def coordinates(self) -> Tuple[Fraction, Fraction]:
        return self.u, self.v

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return self.u, self.v

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def _check(self, other: "TorsionPoint") -> None:
        if other.lattice is not self.lattice:
            raise ValueError(f"Cannot combine points of {self.lattice.value} and {other.lattice.value} lattices")

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        self._check(other)
        return TorsionPoint(self.lattice, self.u + other.u, self.v + other.v)

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(self.lattice, -self.u, -self.v)

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        return self + (-other)

    def scale(self, n: int) -> "TorsionPoint":
        return TorsionPoint(self.lattice, n * self.u, n * self.v)

    def __rmul__(self, n: Union[int, "TorsionPoint"]) -> "TorsionPoint":
        if not isinstance(n, int):
            return NotImplemented
        return self.scale(n)

    def order(self) -> int:
        return torsion_order(self)

    def __str__(self) -> str:
        return f"({self.u}, {self.v})"


def torsion_order(beta: TorsionPoint) -> int:
    """Smallest n >= 1 with n*beta in the lattice."""
    return lcm(beta.u.denominator, beta.v.denominator)


def unit_action(j: int, beta: TorsionPoint) -> TorsionPoint:
    """
    Multiply a torsion point by the j-th power of the lattice's maximal unit.

    Args:
        j: Unit exponent, taken modulo the unit order.
        beta: Point to rotate.

    Returns:
        TorsionPoint: Coordinates of e^j * beta modulo the lattice.
    """
    matrix = unit_power_matrix(beta.lattice, j)
    u, v = matrix.mat_vec(beta.coordinates)
    return TorsionPoint(beta.lattice, u, v)
