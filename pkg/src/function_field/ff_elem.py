import logging
from functools import cached_property
from typing import Any, Dict, Union

from sympy import Symbol
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement

from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.curve_model import CurveModel

X, Y = Symbol("x"), Symbol("y")


class FunctionFieldZeroDivisionError(GaloisToolkitError):
    """Exception raised when inverting the zero function."""
    pass


class FunctionField:
    """
    The function field K(x)[y]/(y^2 - f(x)) of a curve.

    Elements are pairs (r, s) of rational functions in x standing for r + s*y.
    Rational functions are kept with coprime numerator and monic denominator,
    so equal functions are equal as Python values.
    """

    def __init__(self, curve: CurveModel):
        self.curve = curve
        self.rational_functions, _ = field("x", curve.domain)
        self.ring = self.rational_functions.ring
        self._logger = logging.getLogger(self.__class__.__name__)

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and other.curve == self.curve

    def __hash__(self) -> int:
        return hash(self.curve)

    @property
    def domain(self):
        return self.curve.domain

    @cached_property
    def f(self) -> FracElement:
        return self.rational_functions.raw_new(self.curve.f_poly.set_ring(self.ring), self.ring.one)

    def canonical(self, value: Union[FracElement, PolyElement]) -> FracElement:
        """Coprime numerator and monic denominator."""
        if isinstance(value, PolyElement):
            numer, denom = value.set_ring(self.ring), self.ring.one
        else:
            numer, denom = value.numer, value.denom
        if not denom:
            raise FunctionFieldZeroDivisionError("Rational function with zero denominator")
        if not numer:
            return self.rational_functions.raw_new(self.ring.zero, self.ring.one)
        common = numer.gcd(denom)
        if common.degree() > 0:
            numer, denom = numer.exquo(common), denom.exquo(common)
        lc = denom.LC
        return self.rational_functions.raw_new(numer.quo_ground(lc), denom.quo_ground(lc))

    def element(self, r, s=0) -> "FFElem":
        return FFElem(self, self._coerce(r), self._coerce(s))

    def _coerce(self, value) -> FracElement:
        if isinstance(value, FracElement):
            return self.canonical(value)
        if isinstance(value, PolyElement):
            return self.canonical(value)
        return self.canonical(self.ring.ground_new(self.curve.field.convert(value)))

    def constant(self, value) -> "FFElem":
        return self.element(value, 0)

    @cached_property
    def zero(self) -> "FFElem":
        return self.constant(0)

    @cached_property
    def one(self) -> "FFElem":
        return self.constant(1)

    @cached_property
    def x(self) -> "FFElem":
        return self.element(self.ring.gens[0], 0)

    @cached_property
    def y(self) -> "FFElem":
        return self.element(0, 1)

    @cached_property
    def zeta(self) -> "FFElem":
        return self.constant(self.curve.field.zeta)

    def evaluate_poly(self, poly: PolyElement, at: "FFElem") -> "FFElem":
        """Horner evaluation of a polynomial in x at a function field element."""
        coefficients: Dict[int, Any] = {monom[0]: coeff for monom, coeff in poly.terms()}
        if not coefficients:
            return self.zero
        result = self.zero
        for degree in range(max(coefficients), -1, -1):
            result = result * at
            if degree in coefficients:
                result = result + self.constant(coefficients[degree])
        return result

    def evaluate_rational(self, value: FracElement, at: "FFElem") -> "FFElem":
        return self.evaluate_poly(value.numer, at) / self.evaluate_poly(value.denom, at)

    def __repr__(self) -> str:
        return f"FunctionField({self.curve})"


class FFElem:
    """An element r + s*y of the function field, immutable and canonical."""

    __slots__ = ("ff", "r", "s", "_hash")

    def __init__(self, ff: FunctionField, r: FracElement, s: FracElement):
        self.ff = ff
        self.r = r
        self.s = s
        self._hash = None

    def _lift(self, other) -> "FFElem":
        if isinstance(other, FFElem):
            if other.ff != self.ff:
                raise ValueError("Function field elements belong to different curves")
            return other
        return self.ff.constant(other)

    def __add__(self, other) -> "FFElem":
        other = self._lift(other)
        return self.ff.element(self.r + other.r, self.s + other.s)

    __radd__ = __add__

    def __neg__(self) -> "FFElem":
        return self.ff.element(-self.r, -self.s)

    def __sub__(self, other) -> "FFElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "FFElem":
        return self._lift(other) - self

    def __mul__(self, other) -> "FFElem":
        other = self._lift(other)
        f = self.ff.f
        r = self.r * other.r + self.s * other.s * f
        s = self.r * other.s + self.s * other.r
        return self.ff.element(r, s)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.r and not self.s

    def conj(self) -> "FFElem":
        return self.ff.element(self.r, -self.s)

    def norm(self) -> FracElement:
        """r^2 - s^2 f, the product with the conjugate."""
        return self.ff.canonical(self.r * self.r - self.s * self.s * self.ff.f)

    def inverse(self) -> "FFElem":
        """(r + s y)^-1 = (r - s y) / (r^2 - s^2 f)."""
        if self.is_zero():
            raise FunctionFieldZeroDivisionError("The zero function has no inverse")
        n = self.norm()
        return self.ff.element(self.r / n, -self.s / n)

    def __truediv__(self, other) -> "FFElem":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "FFElem":
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> "FFElem":
        if not isinstance(n, int):
            raise TypeError(f"Exponent must be an integer, got {type(n).__name__}")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.ff.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, xi: "FFElem", eta: "FFElem") -> "FFElem":
        """The function (x, y) -> r(xi) + s(xi) * eta."""
        ff = self.ff
        value = ff.evaluate_rational(self.r, xi)
        if self.s:
            value = value + ff.evaluate_rational(self.s, xi) * eta
        return value

    def is_constant(self) -> bool:
        return not self.s and self.r.numer.degree() <= 0 and self.r.denom.degree() <= 0

    def as_expr(self):
        return self.r.as_expr() + self.s.as_expr() * Y

    def __eq__(self, other) -> bool:
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.ff == other.ff and self.r == other.r and self.s == other.s

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, self.s))
        return self._hash

    def __str__(self) -> str:
        return str(self.as_expr())

    def __repr__(self) -> str:
        return f"FFElem({self})"
