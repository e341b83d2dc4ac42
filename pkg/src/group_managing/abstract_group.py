import logging
from collections import Counter
from functools import cached_property
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

from sympy import factorint


class AbstractGroup:
    """
    A finite group on integer indices 0..n-1 with identity 0.

    Elements are arbitrary hashable values; ``multiply`` combines two values
    and the result is looked up in the element index. Nothing is tabulated
    up front, so groups of a few thousand elements stay cheap to build.
    """

    def __init__(self, elements: Sequence[Hashable], multiply: Callable[[Hashable, Hashable], Hashable],
                 identity: Hashable, name: str = ""):
        values = [identity] + [e for e in elements if e != identity]
        self._values: List[Hashable] = values
        self._index: Dict[Hashable, int] = {v: i for i, v in enumerate(values)}
        if len(self._index) != len(values):
            raise ValueError("Group elements must be distinct")
        self._multiply = multiply
        self.name = name
        self._orders: Dict[int, int] = {0: 1}
        self._inverses: Dict[int, int] = {0: 0}
        self._logger = logging.getLogger(self.__class__.__name__)

    @property
    def order(self) -> int:
        return len(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def value(self, i: int) -> Hashable:
        return self._values[i]

    def index(self, value: Hashable) -> int:
        return self._index[value]

    def mul(self, a: int, b: int) -> int:
        product = self._multiply(self._values[a], self._values[b])
        try:
            return self._index[product]
        except KeyError as e:
            raise ValueError(f"Group is not closed: {product} is missing") from e

    def power(self, a: int, n: int) -> int:
        result = 0
        for _ in range(n % self.element_order(a)):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        if a not in self._orders:
            x, n = a, 1
            while x != 0:
                x = self.mul(x, a)
                n += 1
            self._orders[a] = n
        return self._orders[a]

    def inverse(self, a: int) -> int:
        if a not in self._inverses:
            n = self.element_order(a)
            x = 0
            for _ in range(n - 1):
                x = self.mul(x, a)
            self._inverses[a] = x
        return self._inverses[a]

    def subgroup_generated(self, gens: Sequence[int]) -> Set[int]:
        elements = {0}
        frontier = [0]
        while frontier:
            next_frontier = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elements:
                        elements.add(y)
                        next_frontier.append(y)
            frontier = next_frontier
        return elements

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set, elements of larger order first."""
        chosen: List[int] = []
        generated = {0}
        for a in sorted(range(self.order), key=lambda i: (-self.element_order(i), i)):
            if a not in generated:
                chosen.append(a)
                generated = self.subgroup_generated(chosen)
                if len(generated) == self.order:
                    break
        return tuple(chosen)

    @cached_property
    def order_profile(self) -> Counter:
        return Counter(self.element_order(a) for a in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    @cached_property
    def center_size(self) -> int:
        gens = self.generators
        return sum(1 for z in range(self.order) if all(self.mul(z, g) == self.mul(g, z) for g in gens))

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(a, b), self.mul(self.inverse(a), self.inverse(b)))

    @cached_property
    def derived_subgroup(self) -> Set[int]:
        gens = self.generators
        normal_gens = {self.commutator(a, b) for a in gens for b in gens} - {0}
        subgroup = self.subgroup_generated(sorted(normal_gens))
        changed = True
        while changed:
            changed = False
            for d in sorted(subgroup):
                for g in gens:
                    c = self.mul(self.mul(g, d), self.inverse(g))
                    if c not in subgroup:
                        normal_gens.add(c)
                        changed = True
            if changed:
                subgroup = self.subgroup_generated(sorted(normal_gens))
        return subgroup

    @cached_property
    def abelianization_invariants(self) -> Tuple[int, ...]:
        """Invariant factors of G / [G, G]."""
        derived = self.derived_subgroup
        seen: Set[int] = set()
        quotient_orders: Counter = Counter()
        for a in range(self.order):
            if a in seen:
                continue
            coset = {self.mul(a, d) for d in derived}
            seen |= coset
            n, x = 1, a
            while x not in derived:
                x = self.mul(x, a)
                n += 1
            quotient_orders[n] += 1
        return invariants_from_order_profile(quotient_orders)

    @cached_property
    def abelian_invariants(self) -> Tuple[int, ...]:
        if not self.is_abelian:
            raise ValueError("Invariant factors are only defined for abelian groups")
        return invariants_from_order_profile(self.order_profile)

    def conjugacy_class_representatives(self) -> List[int]:
        gens = self.generators
        seen: Set[int] = set()
        representatives = []
        for a in range(self.order):
            if a in seen:
                continue
            representatives.append(a)
            orbit = {a}
            frontier = [a]
            while frontier:
                next_frontier = []
                for x in frontier:
                    for g in gens:
                        y = self.mul(self.mul(g, x), self.inverse(g))
                        if y not in orbit:
                            orbit.add(y)
                            next_frontier.append(y)
                frontier = next_frontier
            seen |= orbit
        return representatives

    def __repr__(self) -> str:
        return f"AbstractGroup({self.name or 'unnamed'}, order={self.order})"


def invariants_from_order_profile(profile: Counter) -> Tuple[int, ...]:
    """
    Invariant factors of a finite abelian group from the number of elements of each order.

    For each prime p the count of elements killed by p^e is p^(r_1 + ... ), whose
    successive exponents give the number of cyclic p-factors of order >= p^e.
    """
    order = sum(profile.values())
    factors_by_prime: Dict[int, List[int]] = {}
    for prime, top in factorint(order).items():
        ranks = []
        previous = 0
        for e in range(1, top + 1):
            killed = sum(count for o, count in profile.items() if (p_part(o, prime) == o and o <= prime ** e))
            exponent = _log(killed, prime)
            ranks.append(exponent - previous)
            previous = exponent
        # ranks[e-1] = number of cyclic factors of order >= p^e
        powers = []
        for e in range(1, top + 1):
            at_least = ranks[e - 1]
            above = ranks[e] if e < top else 0
            powers += [prime ** e] * (at_least - above)
        factors_by_prime[prime] = sorted(powers, reverse=True)
    rank = max((len(v) for v in factors_by_prime.values()), default=0)
    factors = [1] * rank
    for prime, powers in factors_by_prime.items():
        for i, power in enumerate(powers):
            factors[rank - 1 - i] *= power
    return tuple(factors)


def p_part(n: int, p: int) -> int:
    result = 1
    while n % p == 0:
        n //= p
        result *= p
    return result


def _log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e
