import logging
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.group_managing.affine_aut import AffineAut
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint
from src.torsion_lattice.torsion_subgroup import (
    DEFAULT_CLOSURE_CAP,
    ClosureCapExceededError,
    TorsionSubgroup,
    closure_of_points,
    subgroup_structure,
)


class FiniteSubgroup:
    """
    A finite subgroup of Aut(C/L) given by its full element set.

    The exact sequence 1 -> G_T -> G -> G_0 -> 1 is computed lazily:
    ``torsion_part`` is the kernel of the unit-exponent map and
    ``unit_part_order`` the order of its image.
    """

    def __init__(self, lattice: LatticeClass, elements: Iterable[AffineAut],
                 generators: Sequence[AffineAut] = ()):
        self.lattice = lattice
        self.elements: FrozenSet[AffineAut] = frozenset(elements)
        self.generators: Tuple[AffineAut, ...] = tuple(generators)
        self._logger = logging.getLogger(self.__class__.__name__)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: AffineAut) -> bool:
        return item in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=AffineAut.sort_key))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> AffineAut:
        return AffineAut.identity(self.lattice)

    @cached_property
    def translations(self) -> List[TorsionPoint]:
        return sorted((g.beta for g in self.elements if g.is_translation()), key=TorsionPoint.sort_key)

    @cached_property
    def unit_part_order(self) -> int:
        exponents = {g.j for g in self.elements}
        return len(exponents)

    @cached_property
    def torsion_part(self) -> TorsionSubgroup:
        return subgroup_structure(minimal_point_generators(self.translations, self.lattice),
                                  cap=max(len(self.elements), 1), lattice=self.lattice)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(a.compose(b) == b.compose(a) for a in gens for b in gens)

    def element_order(self, g: AffineAut) -> int:
        return g.order()

    def inverse(self, g: AffineAut) -> AffineAut:
        return g.inverse()

    def conjugate(self, g: AffineAut, by: AffineAut) -> AffineAut:
        return g.conjugate(by)

    def rotation_element(self, exponent: Optional[int] = None) -> AffineAut:
        """Some element whose unit exponent is ``exponent`` (default: generator of the image)."""
        if exponent is None:
            exponent = self.lattice.unit_order // self.unit_part_order
        for g in self:
            if g.j == exponent % self.lattice.unit_order:
                return g
        raise ValueError(f"No element with unit exponent {exponent}")

    def __repr__(self) -> str:
        return f"FiniteSubgroup({self.lattice.value}, order={self.order})"


def minimal_point_generators(points: Sequence[TorsionPoint], lattice: LatticeClass) -> List[TorsionPoint]:
    """Greedy small generating set: take points of largest order first, skipping those already generated."""
    chosen: List[TorsionPoint] = []
    generated = {TorsionPoint.zero(lattice)}
    for point in sorted(points, key=lambda p: (-p.order(), p.sort_key())):
        if point not in generated:
            chosen.append(point)
            generated = set(closure_of_points(chosen, lattice))
    return chosen


def closure(gens: Sequence[AffineAut], cap: int = DEFAULT_CLOSURE_CAP,
            lattice: Optional[LatticeClass] = None) -> FiniteSubgroup:
    """
    Close a list of affine automorphisms under composition.

    Args:
        gens: Generators on one lattice; translation parts must be torsion.
        cap: Maximum number of elements.
        lattice: Lattice class, required only when gens is empty.

    Returns:
        FiniteSubgroup: The generated group.

    Raises:
        ClosureCapExceededError: If more than cap elements are produced.
    """
    if lattice is None:
        if not gens:
            raise ValueError("A lattice class is required for an empty generator list")
        lattice = gens[0].lattice
    if any(g.lattice is not lattice for g in gens):
        raise ValueError("All generators must lie on the same lattice")

    identity = AffineAut.identity(lattice)
    elements = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for g in gens:
                candidate = element.compose(g)
                if candidate not in elements:
                    elements.add(candidate)
                    next_frontier.append(candidate)
                    if len(elements) > cap:
                        raise ClosureCapExceededError(
                            f"Group closure exceeded the cap of {cap} elements", cap)
        frontier = next_frontier
    logging.getLogger(__name__).debug(f"Closure on {lattice.value} lattice has {len(elements)} elements")
    return FiniteSubgroup(lattice, elements, gens)


def decompose(group: FiniteSubgroup) -> Tuple[TorsionSubgroup, int]:
    """Return (G_T, |G_0|) for the exact sequence 1 -> G_T -> G -> G_0 -> 1."""
    torsion = group.torsion_part
    if torsion.order * group.unit_part_order != group.order:
        raise ValueError(f"Exactness fails: {torsion.order} * {group.unit_part_order} != {group.order}")
    return torsion, group.unit_part_order
