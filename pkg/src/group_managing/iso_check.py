import logging
from itertools import product
from typing import Dict, List, Sequence, Tuple, Union

from sympy import divisors
from sympy.core.intfunc import igcdex

from src.exact_arithmetic.errors import GaloisToolkitError
from src.group_managing.abstract_group import AbstractGroup
from src.group_managing.affine_aut import AffineAut
from src.group_managing.finite_subgroup import FiniteSubgroup
from src.group_managing.group_label import (
    Abelian,
    Bidihedral,
    Dihedral,
    Exc1,
    Exc2,
    GroupLabel,
    VALID_ROTATION_ORDERS,
)
from src.realizability.number_theory import epsilon, exists_h, nonabelian_h

DEFAULT_ISO_BOUND = 2000
DEFAULT_ISO_SEARCH_BOUND = DEFAULT_ISO_BOUND

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class IsoBoundExceededError(GaloisToolkitError):
    """Exception raised when a group is too large for the isomorphism oracle."""
    pass


class ClassificationFailureError(GaloisToolkitError):
    """Exception raised when a group fits none of the taxonomy shapes."""
    pass


class LatticeQuotientGroup:
    """
    The semidirect product (Z^r / R) x| Z_l, where the generator of Z_l acts by
    an integer matrix preserving R.

    R is given by a triangular basis: basis[i] has a positive entry at position i
    and zeros after it, so every class has a unique representative in the box
    0 <= v[i] < basis[i][i].
    """

    def __init__(self, basis: Sequence[Vector], action: Matrix, rotation_order: int):
        self.basis = [tuple(b) for b in basis]
        self.dimension = len(self.basis)
        self.action = action
        self.rotation_order = rotation_order
        self._powers = [self._identity_matrix()]
        for _ in range(1, rotation_order):
            self._powers.append(self._mat_mul(action, self._powers[-1]))

    def _identity_matrix(self) -> Matrix:
        return tuple(tuple(int(i == j) for j in range(self.dimension)) for i in range(self.dimension))

    def _mat_mul(self, a: Matrix, b: Matrix) -> Matrix:
        n = self.dimension
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))

    def reduce(self, vector: Sequence[int]) -> Vector:
        v = list(vector)
        for i in reversed(range(self.dimension)):
            t = v[i] // self.basis[i][i]
            if t:
                v = [x - t * y for x, y in zip(v, self.basis[i])]
        return tuple(v)

    def elements(self) -> List[Tuple[Vector, int]]:
        box = [range(self.basis[i][i]) for i in range(self.dimension)]
        return [(tuple(v), j) for j in range(self.rotation_order) for v in product(*box)]

    def multiply(self, x: Tuple[Vector, int], y: Tuple[Vector, int]) -> Tuple[Vector, int]:
        (v1, j1), (v2, j2) = x, y
        m = self._powers[j1]
        rotated = [sum(m[i][k] * v2[k] for k in range(self.dimension)) for i in range(self.dimension)]
        return self.reduce([a + b for a, b in zip(v1, rotated)]), (j1 + j2) % self.rotation_order

    def as_abstract_group(self, name: str = "") -> AbstractGroup:
        identity = (tuple([0] * self.dimension), 0)
        return AbstractGroup(self.elements(), self.multiply, identity, name)


def _triangular_basis(col1: Tuple[int, int], col2: Tuple[int, int]) -> List[Vector]:
    """Triangular basis {(a, 0), (b, c)} of the rank-2 lattice spanned by two columns."""
    (x1, y1), (x2, y2) = col1, col2
    u, v, c = igcdex(y1, y2)
    u, v, c = int(u), int(v), int(c)
    if c < 0:
        u, v, c = -u, -v, -c
    det = x1 * y2 - x2 * y1
    a = abs(det) // c
    b = (u * x1 + v * x2) % a
    return [(a, 0), (b, c)]


def _exceptional_group(m: int, k: int, l: int, h: int) -> LatticeQuotientGroup:
    """
    (Z*k + Z*pi) / (mk * Z[zeta]) x| <zeta>, pi = (h + eps) + zeta.

    In the basis (k, pi) multiplication by zeta is [[-(h+eps), -k'], [k, h]]
    with h^2 + eps*h + 1 = k*k'.
    """
    eps = epsilon(l)
    k_prime = (h * h + eps * h + 1) // k
    t = h + eps
    basis = _triangular_basis((m, 0), (-m * t, m * k))
    action = ((-t, -k_prime), (k, h))
    return LatticeQuotientGroup(basis, action, l)


def canonical_group(label: GroupLabel) -> AbstractGroup:
    """Build the label's canonical presentation as an AbstractGroup."""
    if isinstance(label, Abelian):
        factors = label.factors
        basis = [tuple(d if i == j else 0 for j in range(len(factors))) for i, d in enumerate(factors)]
        identity = tuple(tuple(int(i == j) for j in range(len(factors))) for i in range(len(factors)))
        group = LatticeQuotientGroup(basis, identity, 1)
    elif isinstance(label, Dihedral):
        group = LatticeQuotientGroup([(label.n,)], ((-1,),), 2)
    elif isinstance(label, Bidihedral):
        group = LatticeQuotientGroup([(label.m, 0), (0, label.n)], ((-1, 0), (0, -1)), 2)
    elif isinstance(label, Exc1):
        h = label.h if label.h is not None else nonabelian_h(label.k, label.l)
        if h is None:
            raise ValueError(f"{label} has no non-abelian action exponent")
        group = _exceptional_group(1, label.k, label.l, h)
    elif isinstance(label, Exc2):
        h = label.h if label.h is not None else exists_h(label.k, label.l)
        if h is None:
            raise ValueError(f"{label} has no admissible action exponent")
        group = _exceptional_group(label.m, label.k, label.l, h)
    else:
        raise TypeError(f"Unsupported label type: {type(label).__name__}")
    return group.as_abstract_group(name=repr(label))


def as_abstract_group(group: Union[FiniteSubgroup, AbstractGroup]) -> AbstractGroup:
    if isinstance(group, AbstractGroup):
        return group
    ordered = list(group)
    return AbstractGroup(ordered, AffineAut.compose, group.identity, name=repr(group))


def _invariants(group: AbstractGroup) -> tuple:
    return (
        group.order,
        tuple(sorted(group.order_profile.items())),
        group.is_abelian,
        group.center_size,
        len(group.derived_subgroup),
        group.abelianization_invariants,
    )


def _extends(source: AbstractGroup, target: AbstractGroup, gens: Sequence[int],
             images: Sequence[int], full: bool) -> bool:
    """Whether gens -> images extends to a homomorphism on <gens>; with ``full`` also a bijection."""
    mapping: Dict[int, int] = {0: 0}
    frontier = [0]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g, image in zip(gens, images):
                y = source.mul(x, g)
                fy = target.mul(mapping[x], image)
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    next_frontier.append(y)
                elif known != fy:
                    return False
        frontier = next_frontier
    if len(set(mapping.values())) != len(mapping):
        return False
    return not full or len(mapping) == source.order


def is_isomorphic(first: AbstractGroup, second: AbstractGroup, search_bound: int = DEFAULT_ISO_SEARCH_BOUND) -> bool:
    """
    Decide isomorphism of two finite groups.

    Invariants (order profile, centre, derived subgroup, abelianization) are
    compared first; when they tie and the order is at most ``search_bound`` a
    backtracking search over generator images settles the question. Above it
    the tie is accepted and logged as a warning.
    """
    if first.order != second.order:
        return False
    if _invariants(first) != _invariants(second):
        return False
    if first.is_abelian:
        return first.abelian_invariants == second.abelian_invariants
    if first.order > search_bound:
        logger.warning(f"Invariants agree for order {first.order} but the search bound is {search_bound}; "
                       f"isomorphism is assumed, not proven")
        return True

    gens = first.generators
    by_order: Dict[int, List[int]] = {}
    for a in range(second.order):
        by_order.setdefault(second.element_order(a), []).append(a)
    class_reps = set(second.conjugacy_class_representatives())

    def search(images: List[int]) -> bool:
        position = len(images)
        if position == len(gens):
            return _extends(first, second, gens, images, full=True)
        candidates = by_order.get(first.element_order(gens[position]), [])
        if position == 0:
            candidates = [c for c in candidates if c in class_reps]
        for candidate in candidates:
            trial = images + [candidate]
            if _extends(first, second, gens[:position + 1], trial, full=False) and search(trial):
                return True
        return False

    return search([])


def iso_check(group: Union[FiniteSubgroup, AbstractGroup], label: GroupLabel,
              bound: int = DEFAULT_ISO_BOUND, search_bound: int = DEFAULT_ISO_SEARCH_BOUND) -> bool:
    """
    Test whether a group is isomorphic to the canonical presentation of a label.

    Args:
        group: The group to test.
        label: Candidate label.
        bound: Largest group order accepted.
        search_bound: Largest order for which the full generator-mapping search runs.

    Returns:
        bool: True when the groups are isomorphic.

    Raises:
        IsoBoundExceededError: If |group| exceeds bound.
    """
    order = group.order
    if order > bound:
        raise IsoBoundExceededError(f"Group of order {order} exceeds the isomorphism bound {bound}")
    if order != label.order:
        return False
    return is_isomorphic(as_abstract_group(group), canonical_group(label), search_bound)


def candidate_labels(order: int) -> List[GroupLabel]:
    """Every non-abelian taxonomy label of the given order."""
    labels: List[GroupLabel] = []
    if order % 2 == 0 and order // 2 >= 3:
        labels.append(Dihedral(order // 2))
    for m in divisors(order):
        rest = order // 2
        if order % 2 == 0 and m >= 2 and rest % m == 0:
            n = rest // m
            if n % m == 0 and n >= 3:
                labels.append(Bidihedral(m, n))
    for l in VALID_ROTATION_ORDERS:
        if order % l:
            continue
        k = order // l
        if k >= 2 and nonabelian_h(k, l) is not None:
            labels.append(Exc1(k, l))
        for m in range(2, k + 1):
            if (k % (m * m)) == 0 and exists_h(k // (m * m), l) is not None:
                labels.append(Exc2(m, k // (m * m), l))
    return labels


def identify_label(group: Union[FiniteSubgroup, AbstractGroup], bound: int = DEFAULT_ISO_BOUND,
                   search_bound: int = DEFAULT_ISO_SEARCH_BOUND) -> GroupLabel:
    """
    Name an arbitrary finite group in the taxonomy.

    Raises:
        ClassificationFailureError: If no label fits.
    """
    abstract = as_abstract_group(group)
    if abstract.order > bound:
        raise IsoBoundExceededError(f"Group of order {abstract.order} exceeds the isomorphism bound {bound}")
    if abstract.is_abelian:
        return Abelian(abstract.abelian_invariants)
    for label in candidate_labels(abstract.order):
        if is_isomorphic(abstract, canonical_group(label), search_bound):
            return label
    logger.error(f"No taxonomy label fits the group of order {abstract.order}")
    raise ClassificationFailureError(f"No taxonomy label fits the group of order {abstract.order}")
