from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, List, Optional, Tuple

from sympy import I, QQ, Rational, sqrt
from sympy.polys.rings import PolyElement, ring

from src.exact_arithmetic.errors import GaloisToolkitError
from src.exact_arithmetic.quadratic_field import QuadElem

# The point at infinity is represented by None
Point = Optional[Tuple[Any, Any]]


class SingularCurveError(GaloisToolkitError):
    """Exception raised when the cubic has a repeated root."""
    pass


class PointNotOnCurveError(GaloisToolkitError):
    """Exception raised when a point does not satisfy the curve equation."""
    pass


_FIELD_TAGS = {"Q": 1, "Q(e3)": 3, "Q(e4)": 4, "Q(i)": 4, "Q(w)": 3}


@dataclass(frozen=True)
class CoefficientField:
    """
    Coefficient domain K of a curve: Q, Q(e3) or Q(e4), wrapping the sympy domain.

    ``zeta`` is e_l as a domain element; ``w`` in expressions refers to it.
    """
    l: int

    def __post_init__(self):
        if self.l not in (1, 3, 4):
            raise ValueError(f"Unsupported coefficient field Q(e{self.l})")

    @classmethod
    def from_tag(cls, tag: str) -> "CoefficientField":
        key = tag.replace(" ", "")
        if key not in _FIELD_TAGS:
            raise ValueError(f"Unknown coefficient field tag {tag!r}; expected one of {sorted(_FIELD_TAGS)}")
        return cls(_FIELD_TAGS[key])

    @property
    def tag(self) -> str:
        return "Q" if self.l == 1 else f"Q(e{self.l})"

    @property
    def zeta_expr(self):
        """e_l as a sympy expression."""
        if self.l == 3:
            return Rational(-1, 2) + sqrt(3) * I / 2
        if self.l == 4:
            return I
        raise ValueError("Q has no zeta generator")

    @cached_property
    def domain(self):
        return QQ if self.l == 1 else QQ.algebraic_field(self.zeta_expr)

    @cached_property
    def zeta(self):
        return self.domain.from_sympy(self.zeta_expr)

    @property
    def has_zeta(self) -> bool:
        return self.l != 1

    def convert(self, value) -> Any:
        """Coerce an int, Fraction, QuadElem or sympy number into the domain."""
        K = self.domain
        if isinstance(value, bool):
            raise TypeError("Booleans are not field elements")
        if isinstance(value, int):
            return K.convert(value)
        if isinstance(value, Fraction):
            return K.quo(K.convert(value.numerator), K.convert(value.denominator))
        if isinstance(value, QuadElem):
            if value.ring.l == 1 or value.b == 0:
                return self.convert(value.a)
            target = value.to_ring(self.l) if self.l != 1 else None
            if target is None or target.ring.l != self.l:
                raise ValueError(f"{value} does not lie in {self.tag}")
            return K.add(self.convert(target.a), K.mul(self.convert(target.b), self.zeta))
        if K.of_type(value):
            return value
        return K.from_sympy(value)

    def to_sympy(self, element) -> Any:
        return self.domain.to_sympy(element)

    def box(self, radius: int) -> List[Any]:
        """Elements a + b*zeta with |a|, |b| <= radius (b = 0 over Q)."""
        span = range(-radius, radius + 1)
        pairs = product(span, span if self.has_zeta else (0,))
        return [self.convert(QuadElem.of(a, b, self.l)) if b else self.convert(a) for a, b in pairs]


@dataclass(frozen=True)
class CurveModel:
    """
    The curve y^2 = x^3 + a2 x^2 + a4 x + a6 over a coefficient field.

    Short Weierstrass curves have a2 = 0; the Legendre form x(x-1)(x-b)
    has a2 = -(1+b), a4 = b, a6 = 0.
    """
    field: CoefficientField
    a2: Any
    a4: Any
    a6: Any

    def __post_init__(self):
        K = self.field.domain
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, self.field.convert(getattr(self, name)))
        if self.discriminant == K.zero:
            raise SingularCurveError(f"y^2 = {self.f_poly.as_expr()} is singular")

    @classmethod
    def short_weierstrass(cls, p, q, field: CoefficientField = CoefficientField(1)) -> "CurveModel":
        return cls(field, 0, p, q)

    @classmethod
    def legendre(cls, b, field: CoefficientField = CoefficientField(1)) -> "CurveModel":
        b = field.convert(b)
        K = field.domain
        return cls(field, K.neg(K.add(K.one, b)), b, K.zero)

    @property
    def domain(self):
        return self.field.domain

    @property
    def discriminant(self) -> Any:
        """Discriminant of the cubic: a^2 b^2 - 4b^3 - 4a^3 c - 27c^2 + 18abc."""
        a, b, c = self.a2, self.a4, self.a6
        return a**2 * b**2 - 4 * b**3 - 4 * a**3 * c - 27 * c**2 + 18 * a * b * c

    @cached_property
    def poly_ring(self):
        R, _ = ring("x", self.domain)
        return R

    @cached_property
    def f_poly(self) -> PolyElement:
        x = self.poly_ring.gens[0]
        return x**3 + x**2 * self.a2 + x * self.a4 + self.a6

    def f(self, x) -> Any:
        return x**3 + self.a2 * x**2 + self.a4 * x + self.a6

    def contains(self, point: Point) -> bool:
        if point is None:
            return True
        x, y = point
        return y**2 == self.f(x)

    def check_point(self, point: Point) -> None:
        if not self.contains(point):
            raise PointNotOnCurveError(f"{self.format_point(point)} is not on y^2 = {self.f_poly.as_expr()}")

    def point(self, x, y) -> Tuple[Any, Any]:
        """Build a point from convertible coordinates, checking the equation."""
        p = (self.field.convert(x), self.field.convert(y))
        self.check_point(p)
        return p

    def negate(self, point: Point) -> Point:
        if point is None:
            return None
        x, y = point
        return x, -y

    def add(self, first: Point, second: Point) -> Point:
        """Chord-tangent addition with the point at infinity as zero."""
        if first is None:
            return second
        if second is None:
            return first
        K = self.domain
        x1, y1 = first
        x2, y2 = second
        if x1 == x2:
            if y1 + y2 == K.zero:
                return None
            lam = K.quo(3 * x1**2 + 2 * self.a2 * x1 + self.a4, 2 * y1)
        else:
            lam = K.quo(y2 - y1, x2 - x1)
        x3 = lam**2 - self.a2 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return x3, y3

    def multiply(self, n: int, point: Point) -> Point:
        result: Point = None
        base = point if n >= 0 else self.negate(point)
        n = abs(n)
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def point_order(self, point: Point, cap: int = 24) -> Optional[int]:
        """Order of a point, or None when it exceeds the cap."""
        current = point
        for n in range(1, cap + 1):
            if current is None:
                return n
            current = self.add(current, point)
        return None

    def torsion_points(self, radius: int = 3, cap: int = 24) -> List[Tuple[Any, Any]]:
        """K-rational points of finite order whose coordinates lie in the integral box of the radius."""
        values = self.field.box(radius)
        found = []
        for x in values:
            fx = self.f(x)
            for y in values:
                if y**2 == fx and self.point_order((x, y), cap) is not None:
                    found.append((x, y))
        return found

    def format_point(self, point: Point) -> str:
        if point is None:
            return "O"
        return f"({self.field.to_sympy(point[0])}, {self.field.to_sympy(point[1])})"

    def __str__(self) -> str:
        return f"y^2 = {self.f_poly.as_expr()} over {self.field.tag}"
