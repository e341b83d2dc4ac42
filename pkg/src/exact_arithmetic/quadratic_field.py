from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from src.exact_arithmetic.errors import RingTagMismatchError

RationalLike = Union[int, Fraction]

# e_l^2 + epsilon * e_l + 1 = 0
_EPSILON = {3: 1, 4: 0, 6: -1}
_SYMBOLS = {1: "", 3: "e3", 4: "e4", 6: "e6"}


@dataclass(frozen=True)
class RingTag:
    """Selects the quadratic ring Q(e_l); l = 1 stands for the rationals."""
    l: int

    def __post_init__(self):
        """Validate the ring selector."""
        if self.l not in _SYMBOLS:
            raise ValueError(f"Invalid ring tag l={self.l}. Must be one of {sorted(_SYMBOLS)}")

    @property
    def epsilon(self) -> Optional[int]:
        """Coefficient of the minimal polynomial zeta^2 + epsilon*zeta + 1 (None for Q)."""
        return _EPSILON.get(self.l)

    @property
    def zeta_order(self) -> int:
        """Multiplicative order of the generator zeta."""
        return self.l

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.l]

    def shares_field_with(self, other: "RingTag") -> bool:
        """Q(e3) and Q(e6) coincide; Q sits inside every ring."""
        if self.l == other.l or 1 in (self.l, other.l):
            return True
        return {self.l, other.l} == {3, 6}


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class QuadElem:
    """
    Exact element a + b*zeta of Q(e_l).

    The components are kept as ``fractions.Fraction`` so every operation
    returns values in lowest terms.
    """
    ring: RingTag
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        if self.ring.l == 1 and self.b != 0:
            raise ValueError("Elements of Q cannot carry a zeta component")

    @classmethod
    def rational(cls, value: RationalLike, l: int = 1) -> "QuadElem":
        return cls(RingTag(l), _as_fraction(value), Fraction(0))

    @classmethod
    def zeta(cls, l: int) -> "QuadElem":
        """The generator e_l itself."""
        if l == 1:
            raise ValueError("Q has no zeta generator")
        return cls(RingTag(l), Fraction(0), Fraction(1))

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, l: int) -> "QuadElem":
        return cls(RingTag(l), _as_fraction(a), _as_fraction(b))

    @property
    def epsilon(self) -> int:
        return self.ring.epsilon or 0

    def _coerce(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.ring, _as_fraction(other))
        if not isinstance(other, QuadElem):
            return NotImplemented
        if other.ring == self.ring:
            return other
        if other.ring.l == 1:
            return QuadElem(self.ring, other.a)
        raise RingTagMismatchError(
            f"Cannot combine elements of Q({self.ring.symbol or '1'}) and Q({other.ring.symbol or '1'})")

    def _promote(self, other: "QuadElem") -> "QuadElem":
        # Q is absorbed by the other operand's ring
        if self.ring.l == 1 and isinstance(other, QuadElem) and other.ring.l != 1:
            return QuadElem(other.ring, self.a)
        return self

    def __add__(self, other):
        left = self._promote(other)
        right = left._coerce(other)
        if right is NotImplemented:
            return NotImplemented
        return QuadElem(left.ring, left.a + right.a, left.b + right.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadElem":
        return QuadElem(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        left = self._promote(other)
        right = left._coerce(other)
        if right is NotImplemented:
            return NotImplemented
        return QuadElem(left.ring, left.a - right.a, left.b - right.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        left = self._promote(other)
        right = left._coerce(other)
        if right is NotImplemented:
            return NotImplemented
        eps = left.epsilon
        a = left.a * right.a - left.b * right.b
        b = left.a * right.b + left.b * right.a - eps * left.b * right.b
        return QuadElem(left.ring, a, b)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        """Complex conjugate; conj(zeta) = -epsilon - zeta."""
        return QuadElem(self.ring, self.a - self.epsilon * self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.epsilon * self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadElem division by zero")
        c = self.conj()
        return QuadElem(self.ring, c.a / n, c.b / n)

    def __truediv__(self, other):
        left = self._promote(other)
        right = left._coerce(other)
        if right is NotImplemented:
            return NotImplemented
        return left * right.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "QuadElem":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = QuadElem(self.ring, Fraction(1))
        e = abs(exponent)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_ring(self, l: int) -> "QuadElem":
        """
        Re-express the element in another basis of the same field.

        Args:
            l: Target ring tag. Conversion between e3 and e6 uses e6 = 1 + e3.

        Raises:
            RingTagMismatchError: If the target field differs.
        """
        target = RingTag(l)
        if target == self.ring:
            return self
        if self.b == 0:
            return QuadElem(target, self.a)
        if (self.ring.l, l) == (6, 3):
            return QuadElem(target, self.a + self.b, self.b)
        if (self.ring.l, l) == (3, 6):
            return QuadElem(target, self.a - self.b, self.b)
        raise RingTagMismatchError(f"Q({self.ring.symbol}) cannot be rewritten over Q({target.symbol or '1'})")

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        zeta = self.ring.symbol
        b_part = zeta if self.b == 1 else f"-{zeta}" if self.b == -1 else f"{self.b}*{zeta}"
        if self.a == 0:
            return b_part
        sign = "" if b_part.startswith("-") else "+"
        return f"{self.a}{sign}{b_part}"


def quad_mul(u: QuadElem, v: QuadElem) -> QuadElem:
    """
    Multiply two elements of the same quadratic ring.

    Raises:
        RingTagMismatchError: If the ring tags differ.
    """
    if u.ring != v.ring:
        raise RingTagMismatchError(f"Ring tags differ: l={u.ring.l} and l={v.ring.l}")
    return u * v


def quad_norm(u: QuadElem) -> Fraction:
    """Return u * conj(u) as a nonnegative rational."""
    return u.norm()
