import logging
import random
from fractions import Fraction
from typing import List, Optional

from sympy.polys.rings import PolyElement

from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.ff_elem import FFElem

DEFAULT_DEGREE_SAMPLES = 3

logger = logging.getLogger(__name__)


class DegreeDegeneracyError(GaloisToolkitError):
    """Exception raised when sampled fibre sizes keep disagreeing."""

    def __init__(self, message: str, samples: List[int]):
        super().__init__(message)
        self.samples = samples


def _strip_factors(poly: PolyElement, of: PolyElement) -> PolyElement:
    """Remove every factor ``poly`` shares with ``of``."""
    common = poly.gcd(of)
    while common.degree() > 0:
        poly = poly.exquo(common)
        common = poly.gcd(of)
    return poly


def fibre_degree(s: FFElem, c) -> int:
    """
    Number of points in the fibre s = c, counted through x-roots.

    With s = (U + V y)/W over a common denominator W, the zeros of s - c are the
    zeros of U_c + V y where U_c = U - c W. Off W, each root of U_c^2 - V^2 f gives one
    point; when V vanishes identically each root of U_c gives two.
    """
    ff = s.ff
    K = ff.domain
    W = s.r.denom.lcm(s.s.denom)
    U = s.r.numer * W.exquo(s.r.denom)
    V = s.s.numer * W.exquo(s.s.denom)
    u_c = U - W.mul_ground(c)
    if not V:
        roots = _strip_factors(u_c, W)
        if not roots:
            raise ValueError("Function is constant on the fibre")
        return 2 * roots.sqf_part().degree()
    f = ff.curve.f_poly.set_ring(ff.ring)
    fibre = _strip_factors(u_c * u_c - V * V * f, W)
    if not fibre:
        raise ValueError("Function is constant on the fibre")
    return fibre.sqf_part().degree()


def map_degree(s: FFElem, samples: int = DEFAULT_DEGREE_SAMPLES,
               rng: Optional[random.Random] = None, seed: int = 0) -> int:
    """
    Degree of s as a map to the projective line.

    The fibre size is computed at ``samples`` random rational values; all must agree.
    A disagreeing batch is re-sampled once.

    Args:
        s: Nonconstant function.
        samples: Number of independent fibre values.
        rng: Random source; defaults to ``random.Random(seed)``.
        seed: Seed used when no generator is supplied.

    Raises:
        ValueError: If s is constant.
        DegreeDegeneracyError: If two batches of samples disagree.
    """
    if s.is_constant():
        raise ValueError(f"Constant function {s} has no degree")
    rng = rng or random.Random(seed)
    field = s.ff.curve.field
    degrees: List[int] = []
    for attempt in range(2):
        degrees = []
        for _ in range(samples):
            c = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3))
            degrees.append(fibre_degree(s, field.convert(c)))
        if len(set(degrees)) == 1:
            logger.debug(f"Fibre sizes {degrees} for {s}")
            return degrees[0]
        logger.warning(f"Fibre sizes {degrees} disagree for {s} (attempt {attempt + 1})")
    raise DegreeDegeneracyError(f"Fibre sizes {degrees} disagree for {s}", degrees)
