"""
Permutation groups with fully enumerated element sets, plus the subgroup toolkit built on
them: cosets, double cosets, conjugation, normalizers, normal closures and Sylow 2-subgroups.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import multiplicity

from .config import get_settings
from .errors import (
    ConsistencyViolation,
    DomainNotInvariant,
    ElementNotInGroup,
    EnumerationCapExceeded,
    InvalidInput,
    NotASubgroup,
)
from .perms import Permutation

log = logging.getLogger("perfectcodes.groups")


class PermGroup:
    """
    A permutation group together with all of its elements.

    Elements are kept in canonical (lexicographic image) order. Two groups are equal when
    they have the same degree and the same element set, whatever generators built them.
    """

    __slots__ = ("degree", "elements", "_index", "_set", "_generators", "_hash", "name")

    def __init__(
        self,
        degree: int,
        elements: Iterable[Permutation],
        generators: Optional[Sequence[Permutation]] = None,
        name: Optional[str] = None,
    ):
        self.degree = degree
        self.elements: Tuple[Permutation, ...] = tuple(sorted(elements))
        self._index: Dict[Permutation, int] = {x: i for i, x in enumerate(self.elements)}
        self._set: FrozenSet[Permutation] = frozenset(self._index)
        self._generators = tuple(generators) if generators is not None else None
        self._hash = None
        self.name = name

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def element_set(self) -> FrozenSet[Permutation]:
        return self._set

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        if self._generators is None:
            self._generators = tuple(_greedy_generators(self))
        return self._generators

    def index_of(self, element: Permutation) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise ElementNotInGroup(f"{element} is not in the group") from None

    def __contains__(self, element) -> bool:
        return element in self._set

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self._set == other._set

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, self._set))
        return self._hash

    def __le__(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._set <= other._set

    def __lt__(self, other: "PermGroup") -> bool:
        return self <= other and self.order < other.order

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} order={self.order}>"

    def is_trivial(self) -> bool:
        return self.order == 1

    def describe(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "generators": [str(g) for g in self.generators],
        }


def closure(
    degree: int,
    generators: Iterable[Permutation],
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> PermGroup:
    """Enumerate the group generated by ``generators`` by breadth-first multiplication."""
    cap = get_settings().enumeration_cap if cap is None else cap
    gens = []
    for g in generators:
        if len(g) != degree:
            raise InvalidInput(f"generator {g} has degree {len(g)}, expected {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    identity = Permutation.identity(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = current * g
            if product not in seen:
                seen.add(product)
                if len(seen) > cap:
                    raise EnumerationCapExceeded(
                        f"group generated by {len(gens)} permutations of degree {degree} "
                        f"has more than {cap} elements"
                    )
                queue.append(product)
    return PermGroup(degree, seen, gens, name=name)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [Permutation.identity(degree)], [])


def _greedy_generators(group: PermGroup) -> List[Permutation]:
    # Canonical order makes the generator list reproducible.
    gens: List[Permutation] = []
    current = {Permutation.identity(group.degree)}
    for element in group.elements:
        if element in current:
            continue
        gens.append(element)
        current = closure(group.degree, gens, cap=group.order).element_set
        if len(current) == group.order:
            break
    return gens


def subgroup(group: PermGroup, generators: Iterable[Permutation], name=None) -> PermGroup:
    """The subgroup of ``group`` generated by ``generators``."""
    generators = list(generators)
    for g in generators:
        if g not in group:
            raise ElementNotInGroup(f"{g} is not in {group!r}")
    return closure(group.degree, generators, cap=group.order, name=name)


def require_subgroup(big: PermGroup, small: PermGroup):
    if big.degree != small.degree or not small.element_set <= big.element_set:
        raise NotASubgroup(f"{small!r} is not a subgroup of {big!r}")


def require_element(group: PermGroup, element: Permutation):
    if element not in group:
        raise ElementNotInGroup(f"{element} is not in {group!r}")


@dataclass(frozen=True)
class CosetDecomposition:
    """Left cosets ``xA`` of ``subgroup`` in ``supergroup``, labelled by their minimal element."""

    supergroup: PermGroup
    subgroup: PermGroup
    representatives: Tuple[Permutation, ...]
    coset_index: Dict[Permutation, int] = field(repr=False)
    members: Tuple[Tuple[Permutation, ...], ...] = field(repr=False)

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset_of(self, element: Permutation) -> int:
        try:
            return self.coset_index[element]
        except KeyError:
            raise ElementNotInGroup(f"{element} is not in the supergroup") from None

    def is_transversal(self, elements: Iterable[Permutation]) -> bool:
        labels = [self.coset_index.get(x) for x in elements]
        return None not in labels and sorted(labels) == list(range(self.index))


@lru_cache(maxsize=256)
def left_cosets(G: PermGroup, A: PermGroup) -> CosetDecomposition:
    require_subgroup(G, A)
    coset_index: Dict[Permutation, int] = {}
    representatives = []
    members = []
    for x in G.elements:
        if x in coset_index:
            continue
        label = len(representatives)
        representatives.append(x)
        coset = tuple(sorted(x * a for a in A.elements))
        for y in coset:
            coset_index[y] = label
        members.append(coset)
    log.debug("Split %r into %d left cosets of %r", G, len(representatives), A)
    return CosetDecomposition(G, A, tuple(representatives), coset_index, tuple(members))


def right_coset(A: PermGroup, x: Permutation) -> FrozenSet[Permutation]:
    return frozenset(a * x for a in A.elements)


@dataclass(frozen=True)
class DoubleCosetUnion:
    """``A{g, g^-1}A`` together with the sizes needed by the parity tests."""

    base: PermGroup
    seed: Permutation
    elements: FrozenSet[Permutation] = field(repr=False)
    symmetric: bool
    double_coset_size: int
    cosets: FrozenSet[int] = field(repr=False)

    @property
    def ratio(self) -> int:
        """``|A{g, g^-1}A| / |A|``."""
        return len(self.elements) // self.base.order

    @property
    def double_coset_ratio(self) -> int:
        """``|AgA| / |A|``."""
        return self.double_coset_size // self.base.order


def double_coset_cosets(G: PermGroup, A: PermGroup, g: Permutation) -> FrozenSet[int]:
    """Labels of the left cosets of A making up AgA."""
    cosets = left_cosets(G, A)
    return frozenset(cosets.coset_index[a * g] for a in A.elements)


def double_coset_union(G: PermGroup, A: PermGroup, g: Permutation) -> DoubleCosetUnion:
    require_subgroup(G, A)
    require_element(G, g)
    cosets = left_cosets(G, A)
    forward = double_coset_cosets(G, A, g)
    backward = double_coset_cosets(G, A, g.inverse())
    double_coset_size = len(forward) * A.order
    stabilised = len(A.element_set & conjugate_subgroup(A, g).element_set)
    if double_coset_size * stabilised != A.order**2:
        raise ConsistencyViolation(
            f"|AgA| * |A & A^g| = {double_coset_size * stabilised} differs from |A|^2 for g = {g}"
        )
    labels = forward | backward
    elements = frozenset(y for label in labels for y in cosets.members[label])
    return DoubleCosetUnion(A, g, elements, forward == backward, double_coset_size, labels)


def conjugate_subgroup(A: PermGroup, x: Permutation) -> PermGroup:
    """``A^x = x^-1 A x``."""
    if len(x) != A.degree:
        raise InvalidInput("conjugating element has the wrong degree")
    gens = [g.conjugate(x) for g in A.generators]
    return PermGroup(A.degree, (a.conjugate(x) for a in A.elements), gens)


def intersect(A: PermGroup, B: PermGroup) -> PermGroup:
    if A.degree != B.degree:
        raise NotASubgroup("cannot intersect groups of different degrees")
    return PermGroup(A.degree, A.element_set & B.element_set)


def normalizes(x: Permutation, H: PermGroup) -> bool:
    return all(h.conjugate(x) in H for h in H.generators)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    require_subgroup(G, H)
    return PermGroup(G.degree, (x for x in G.elements if normalizes(x, H)))


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    require_subgroup(G, H)
    return all(normalizes(g, H) for g in G.generators)


def non_normalizing_generator(G: PermGroup, H: PermGroup) -> Optional[Permutation]:
    """First generator g of G with H^g != H, if any."""
    for g in G.generators:
        if not normalizes(g, H):
            return g
    return None


def normal_closure(G: PermGroup, H: PermGroup) -> PermGroup:
    """Smallest normal subgroup of G containing H."""
    require_subgroup(G, H)
    current = H
    while True:
        extra = [
            h.conjugate(g)
            for h in current.generators
            for g in G.generators
            if h.conjugate(g) not in current
        ]
        if not extra:
            return current
        current = closure(G.degree, list(current.generators) + extra, cap=G.order)


def _is_power_of_two(value: int) -> bool:
    return value & (value - 1) == 0


def sylow_2(G: PermGroup) -> PermGroup:
    """
    A Sylow 2-subgroup grown from the trivial group.

    Each step adjoins the first (canonical order) element of 2-power order in N_G(P) \\ P.
    """
    target = 2 ** multiplicity(2, G.order)
    P = trivial_group(G.degree)
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x not in P and _is_power_of_two(x.order()):
                P = closure(G.degree, list(P.generators) + [x], cap=target)
                break
        else:
            raise ConsistencyViolation(f"no 2-element outside P in N_G(P) for {G!r}")
        log.debug("Sylow 2-subgroup growth reached order %d of %d", P.order, target)
    return P


def orbits(G: PermGroup, points: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
    remaining = set(range(G.degree) if points is None else points)
    result = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = deque([start])
        while queue:
            point = queue.popleft()
            for g in G.generators:
                image = g[point]
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        remaining -= orbit
        result.append(tuple(sorted(orbit)))
    return result


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    return PermGroup(G.degree, (x for x in G.elements if x[point] == point))


def is_semiregular(G: PermGroup, domain: Iterable[int]) -> bool:
    """True iff only the identity fixes a point of ``domain``."""
    domain = sorted(set(domain))
    if not all(g.preserves(domain) for g in G.generators):
        raise DomainNotInvariant(f"{domain} is not invariant under {G!r}")
    return all(
        x.is_identity() or all(x[point] != point for point in domain) for x in G.elements
    )


def cyclic_subgroups(G: PermGroup) -> List[PermGroup]:
    found: Dict[FrozenSet[Permutation], PermGroup] = {}
    for x in G.elements:
        powers = frozenset(x**k for k in range(x.order()))
        if powers not in found:
            found[powers] = PermGroup(G.degree, powers, [x] if not x.is_identity() else [])
    return list(found.values())


def all_subgroups(G: PermGroup) -> List[PermGroup]:
    """Every subgroup of G, each a join of cyclic subgroups, sorted by order then elements."""
    cyclics = cyclic_subgroups(G)
    found: Dict[FrozenSet[Permutation], PermGroup] = {c.element_set: c for c in cyclics}
    frontier = list(found.values())
    while frontier:
        fresh = []
        for K in frontier:
            for c in cyclics:
                if c.element_set <= K.element_set:
                    continue
                joined = closure(G.degree, list(K.generators) + list(c.generators), cap=G.order)
                if joined.element_set not in found:
                    found[joined.element_set] = joined
                    fresh.append(joined)
        frontier = fresh
    log.debug("Found %d subgroups of %r", len(found), G)
    return sorted(found.values(), key=lambda K: (K.order, K.elements))
