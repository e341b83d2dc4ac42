import logging
from typing import Iterable, List, Optional, Sequence

from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.curve_model import Point
from src.function_field.ff_elem import FFElem, FunctionField
from src.group_managing.abstract_group import AbstractGroup

DEFAULT_AUT_ORDER_CAP = 24

logger = logging.getLogger(__name__)


class AutOrderCapExceededError(GaloisToolkitError):
    """Exception raised when a map has no finite order below the cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class AutMap:
    """
    A self-map of the curve given by the images (xi, eta) of x and y.

    As a pullback it sends a function h(x, y) to h(xi, eta).
    """

    __slots__ = ("ff", "xi", "eta", "name")

    def __init__(self, xi: FFElem, eta: FFElem, name: str = ""):
        if xi.ff != eta.ff:
            raise ValueError("Map components belong to different function fields")
        self.ff: FunctionField = xi.ff
        self.xi = xi
        self.eta = eta
        self.name = name

    @classmethod
    def identity(cls, ff: FunctionField) -> "AutMap":
        return cls(ff.x, ff.y, "id")

    @classmethod
    def rotation(cls, ff: FunctionField, power: int, sign: int = 1) -> "AutMap":
        """(x, y) -> (zeta^power x, sign y) over a field containing zeta."""
        xi = ff.x if power == 0 else ff.zeta ** power * ff.x
        return cls(xi, ff.y if sign > 0 else -ff.y, f"rot({power},{'+' if sign > 0 else '-'})")

    def __call__(self, h: FFElem) -> FFElem:
        return h.substitute(self.xi, self.eta)

    def lands_on_curve(self) -> bool:
        """eta^2 = f(xi) identically."""
        return self.eta * self.eta == self.ff.evaluate_poly(self.ff.curve.f_poly, self.xi)

    def is_identity(self) -> bool:
        return self.xi == self.ff.x and self.eta == self.ff.y

    def __eq__(self, other) -> bool:
        if not isinstance(other, AutMap):
            return NotImplemented
        return self.xi == other.xi and self.eta == other.eta

    def __hash__(self) -> int:
        return hash((self.xi, self.eta))

    def __str__(self) -> str:
        return f"(x, y) -> ({self.xi}, {self.eta})"

    def __repr__(self) -> str:
        return f"AutMap{'[' + self.name + ']' if self.name else ''}({self.xi}, {self.eta})"


def compose(first: AutMap, second: AutMap) -> AutMap:
    """Substitute (xi2, eta2) into the first map."""
    if first.ff != second.ff:
        raise ValueError("Cannot compose maps of different curves")
    return AutMap(second(first.xi), second(first.eta))


def aut_order(m: AutMap, cap: int = DEFAULT_AUT_ORDER_CAP) -> int:
    """
    Least n with the n-fold composite equal to the identity.

    Raises:
        AutOrderCapExceededError: If no such n <= cap exists.
    """
    current = m
    for n in range(1, cap + 1):
        if current.is_identity():
            return n
        current = compose(current, m)
    logger.error(f"Map {m} has no order <= {cap}")
    raise AutOrderCapExceededError(f"Map {m} has no finite order up to {cap}", cap)


def translation_map(ff: FunctionField, point: Point) -> AutMap:
    """
    Addition of a fixed point P by the chord-tangent law: lam = (y - y0)/(x - x0),
    x3 = lam^2 - a2 - x - x0, y3 = lam (x - x3) - y.

    Raises:
        PointNotOnCurveError: If P is not on the curve.
    """
    curve = ff.curve
    curve.check_point(point)
    if point is None:
        return AutMap.identity(ff)
    x0, y0 = (ff.constant(c) for c in point)
    x, y = ff.x, ff.y
    lam = (y - y0) / (x - x0)
    x3 = lam * lam - ff.constant(curve.a2) - x - x0
    y3 = lam * (x - x3) - y
    return AutMap(x3, y3, f"tr{curve.format_point(point)}")


def rotation_maps(ff: FunctionField) -> List[AutMap]:
    """
    Automorphisms fixing the point at infinity: mu_6 on y^2 = x^3 + a6 over Q(e3),
    mu_4 on y^2 = x^3 + a4 x over Q(e4), otherwise +-1.
    """
    curve = ff.curve
    K = curve.domain
    l = curve.field.l
    if l == 3 and curve.a2 == K.zero and curve.a4 == K.zero:
        return [AutMap.rotation(ff, power, sign) for sign in (1, -1) for power in range(3)]
    if l == 4 and curve.a2 == K.zero and curve.a6 == K.zero:
        # (-x, iy) generates; its k-th power is ((-1)^k x, i^k y)
        generator = AutMap(-ff.x, ff.zeta * ff.y, "rot4")
        maps = [AutMap.identity(ff)]
        for _ in range(3):
            maps.append(compose(maps[-1], generator))
        return maps
    return [AutMap.identity(ff), AutMap(ff.x, -ff.y, "neg")]


def is_invariant(s: FFElem, m: AutMap) -> bool:
    return m(s) == s


def closure_of_maps(maps: Sequence[AutMap], cap: int = 1000) -> AbstractGroup:
    """
    The group generated by a list of maps under composition.

    Raises:
        AutOrderCapExceededError: If more than ``cap`` distinct maps appear.
    """
    if not maps:
        raise ValueError("At least one map is required")
    ff = maps[0].ff
    identity = AutMap.identity(ff)
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for current in frontier:
            for g in maps:
                product = compose(current, g)
                if product not in seen:
                    seen.add(product)
                    elements.append(product)
                    next_frontier.append(product)
                    if len(elements) > cap:
                        raise AutOrderCapExceededError(f"Closure exceeds {cap} maps", cap)
        frontier = next_frontier
    logger.debug(f"Closure of {len(maps)} maps has {len(elements)} elements")
    return AbstractGroup(elements, compose, identity, name="maps")


def translation_candidates(ff: FunctionField, radius: int = 3, cap: int = DEFAULT_AUT_ORDER_CAP) -> List[AutMap]:
    """Translations by the K-rational torsion points found in the search box."""
    return [translation_map(ff, p) for p in [None] + ff.curve.torsion_points(radius, cap)]


def candidate_automorphisms(ff: FunctionField, radius: int = 3,
                            cap: int = DEFAULT_AUT_ORDER_CAP) -> List[AutMap]:
    """Every translation by a box torsion point composed with every rotation, identity first."""
    rotations = rotation_maps(ff)
    candidates: List[AutMap] = []
    seen = set()
    for t in translation_candidates(ff, radius, cap):
        for r in rotations:
            m = compose(t, r)
            if m not in seen:
                seen.add(m)
                candidates.append(m)
    return candidates


def fixed_by(s: FFElem, candidates: Iterable[AutMap]) -> Optional[AutMap]:
    """First non-identity candidate leaving s invariant."""
    for m in candidates:
        if not m.is_identity() and is_invariant(s, m):
            return m
    return None
