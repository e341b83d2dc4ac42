from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint, unit_action


@dataclass(frozen=True)
class AffineAut:
    """The automorphism z -> e^j * z + beta of C/L, e the maximal unit of the lattice."""
    lattice: LatticeClass
    j: int
    beta: TorsionPoint

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.lattice.unit_order)
        if self.beta.lattice is not self.lattice:
            raise ValueError("Translation part must lie on the automorphism's lattice")

    @classmethod
    def identity(cls, lattice: LatticeClass) -> "AffineAut":
        return cls(lattice, 0, TorsionPoint.zero(lattice))

    @classmethod
    def rotation(cls, lattice: LatticeClass, j: int) -> "AffineAut":
        return cls(lattice, j, TorsionPoint.zero(lattice))

    @classmethod
    def translation(cls, beta: TorsionPoint) -> "AffineAut":
        return cls(beta.lattice, 0, beta)

    @classmethod
    def of(cls, lattice: LatticeClass, j: int, u, v=0) -> "AffineAut":
        return cls(lattice, j, TorsionPoint(lattice, Fraction(u), Fraction(v)))

    def compose(self, other: "AffineAut") -> "AffineAut":
        """self after other: (j1, b1)(j2, b2) = (j1 + j2, b1 + e^j1 * b2)."""
        return AffineAut(self.lattice, self.j + other.j, self.beta + unit_action(self.j, other.beta))

    def __mul__(self, other: "AffineAut") -> "AffineAut":
        return self.compose(other)

    def inverse(self) -> "AffineAut":
        return AffineAut(self.lattice, -self.j, -unit_action(-self.j, self.beta))

    def conjugate(self, by: "AffineAut") -> "AffineAut":
        """by * self * by^-1"""
        return by.compose(self).compose(by.inverse())

    def is_identity(self) -> bool:
        return self.j == 0 and self.beta.is_zero()

    def is_translation(self) -> bool:
        return self.j == 0

    def order(self) -> int:
        power, n = self, 1
        while not power.is_identity():
            power = power.compose(self)
            n += 1
        return n

    def sort_key(self) -> Tuple[int, Fraction, Fraction]:
        return self.j, self.beta.u, self.beta.v

    def __str__(self) -> str:
        return f"(j={self.j}, beta={self.beta})"
