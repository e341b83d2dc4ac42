from dataclasses import dataclass, field
from math import prod
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import factorint

VALID_ROTATION_ORDERS = (3, 4, 6)


def invariant_factors_from_cyclic(orders: Iterable[int]) -> Tuple[int, ...]:
    """
    Invariant factors of a direct sum of cyclic groups.

    Args:
        orders: Orders of the cyclic summands (1s are ignored).

    Returns:
        Tuple[int, ...]: Ascending factors d1 | d2 | ... with no 1s.
    """
    exponents: Dict[int, List[int]] = {}
    for order in orders:
        if order < 1:
            raise ValueError(f"Cyclic orders must be positive, got {order}")
        for prime, exp in factorint(order).items():
            exponents.setdefault(prime, []).append(exp)
    if not exponents:
        return ()
    rank = max(len(v) for v in exponents.values())
    factors = [1] * rank
    for prime, exps in exponents.items():
        for i, exp in enumerate(sorted(exps, reverse=True)):
            factors[rank - 1 - i] *= prime ** exp
    return tuple(factors)


@dataclass(frozen=True)
class GroupLabel:
    """Base of the subgroup taxonomy."""

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        return False

    @property
    def rotation_order(self) -> int:
        """Order of the rotation quotient G_0 forced by the label (1 for abelian labels)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Abelian(GroupLabel):
    """Finite abelian group with ascending invariant factors (1s dropped)."""
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        normalised = invariant_factors_from_cyclic(self.factors)
        object.__setattr__(self, "factors", normalised)

    @classmethod
    def of(cls, *orders: int) -> "Abelian":
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def d1(self) -> int:
        return self.factors[-2] if self.rank >= 2 else 1

    @property
    def d2(self) -> int:
        return self.factors[-1] if self.rank >= 1 else 1

    @property
    def is_abelian(self) -> bool:
        return True

    @property
    def rotation_order(self) -> int:
        return 1


@dataclass(frozen=True)
class Dihedral(GroupLabel):
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"Dihedral groups need n >= 3, got {self.n}")

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def rotation_order(self) -> int:
        return 2


@dataclass(frozen=True)
class Bidihedral(GroupLabel):
    """(Z_m + Z_n) extended by an involution inverting both summands; m | n."""
    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 3 or self.n % self.m != 0:
            raise ValueError(f"Bidihedral labels need m >= 2, m | n and n >= 3, got ({self.m}, {self.n})")

    @property
    def order(self) -> int:
        return 2 * self.m * self.n

    @property
    def rotation_order(self) -> int:
        return 2


def _check_rotation(l: int) -> None:
    if l not in VALID_ROTATION_ORDERS:
        raise ValueError(f"Exceptional labels need l in {VALID_ROTATION_ORDERS}, got {l}")


@dataclass(frozen=True)
class Exc1(GroupLabel):
    """Z_k extended by a rotation of order l acting as multiplication by h."""
    k: int
    l: int
    h: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        _check_rotation(self.l)
        if self.k < 2:
            raise ValueError(f"Exc1 needs k >= 2, got {self.k}")

    @property
    def order(self) -> int:
        return self.k * self.l

    @property
    def rotation_order(self) -> int:
        return self.l


@dataclass(frozen=True)
class Exc2(GroupLabel):
    """(Z_m + Z_mk) extended by a rotation of order l."""
    m: int
    k: int
    l: int
    h: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        _check_rotation(self.l)
        if self.m < 2 or self.k < 1:
            raise ValueError(f"Exc2 needs m >= 2 and k >= 1, got ({self.m}, {self.k})")

    @property
    def order(self) -> int:
        return self.m * self.m * self.k * self.l

    @property
    def rotation_order(self) -> int:
        return self.l


def bidihedral(m: int, n: int) -> GroupLabel:
    """Name (Z_m + Z_n) x| Z_2 canonically: Dihedral when the sum is cyclic."""
    factors = invariant_factors_from_cyclic((m, n))
    if len(factors) <= 1:
        return Dihedral(factors[0] if factors else 1)
    return Bidihedral(*factors)


def exceptional(m: int, k: int, l: int, h: Optional[int] = None) -> GroupLabel:
    """E(m, k, l) with the m = 1 case folded into E(k, l)."""
    if m == 1:
        return Exc1(k, l, h)
    return Exc2(m, k, l, h)
