"""
Cayley graphs, coset graphs and perfect codes inside them.

Adjacency is stored as one integer bit row per vertex. Graph-level checks here are the
ground truth the algebraic decisions in ``codes`` are compared against.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.readwrite import json_graph

from .codes import PairInstance, coset_profile
from .config import MODES, get_settings
from .errors import (
    ConsistencyViolation,
    InvalidConnectionSet,
    InvalidInput,
    TooManyDoubleCosetClasses,
)
from .groups import PermGroup, left_cosets, require_subgroup, trivial_group
from .perms import Permutation, format_elements

log = logging.getLogger("perfectcodes.graphs")


@dataclass(frozen=True)
class VertexGraph:
    """A simple undirected graph; bit ``j`` of ``rows[i]`` is set iff i ~ j."""

    labels: Tuple[Permutation, ...]
    rows: Tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if row >> i & 1:
                raise ConsistencyViolation(f"vertex {i} has a loop")
            for j in _bits(row):
                if not self.rows[j] >> i & 1:
                    raise ConsistencyViolation(f"edge {i}-{j} is not symmetric")

    @property
    def order(self) -> int:
        return len(self.labels)

    def neighbours(self, vertex: int) -> List[int]:
        return list(_bits(self.rows[vertex]))

    def degree(self, vertex: int) -> int:
        return self.rows[vertex].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in _bits(row) if i < j]

    def is_regular(self) -> bool:
        return len({self.degree(v) for v in range(self.order)}) <= 1

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for i, label in enumerate(self.labels):
            graph.add_node(i, label=str(label))
        graph.add_edges_from(self.edges())
        return graph

    def to_json(self) -> dict:
        return json_graph.node_link_data(self.to_networkx())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  {i} [label="{label}"];' for i, label in enumerate(self.labels)]
        lines += [f"  {i} -- {j};" for i, j in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(row: int):
    while row:
        low = row & -row
        yield low.bit_length() - 1
        row ^= low


@dataclass(frozen=True)
class ConnectionSet:
    """An inverse-closed set of group elements, with the double-coset classes it is made of."""

    elements: FrozenSet[Permutation]
    classes: Tuple[int, ...] = ()

    @classmethod
    def of(cls, elements: Iterable[Permutation], classes: Sequence[int] = ()) -> "ConnectionSet":
        elements = frozenset(elements)
        if {x.inverse() for x in elements} != elements:
            raise InvalidConnectionSet("connection set is not inverse-closed")
        return cls(elements, tuple(classes))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def to_record(self) -> dict:
        return {"elements": format_elements(self), "double_coset_classes": list(self.classes)}


def _check_connection_set(G: PermGroup, S: ConnectionSet, forbidden: FrozenSet[Permutation]):
    if not S.elements <= G.element_set:
        raise InvalidConnectionSet("connection set leaves the group")
    if S.elements & forbidden:
        raise InvalidConnectionSet("connection set meets the forbidden subgroup")
    if {x.inverse() for x in S.elements} != S.elements:
        raise InvalidConnectionSet("connection set is not inverse-closed")


def cayley_graph(G: PermGroup, S: ConnectionSet) -> VertexGraph:
    """Vertices are the elements of G; g ~ h iff h g^-1 is in S."""
    _check_connection_set(G, S, frozenset([G.identity]))
    rows = [0] * G.order
    for i, g in enumerate(G.elements):
        for s in S.elements:
            rows[i] |= 1 << G.index_of(s * g)
    return VertexGraph(G.elements, tuple(rows))


def saturate(H: PermGroup, U: Iterable[Permutation]) -> FrozenSet[Permutation]:
    """``HUH``."""
    return frozenset(h * u * k for u in U for h in H.elements for k in H.elements)


def coset_graph(G: PermGroup, H: PermGroup, U: ConnectionSet) -> VertexGraph:
    """
    Vertices are the left cosets of H; xH ~ yH iff x^-1 y lies in HUH. U is saturated to
    HUH first.
    """
    require_subgroup(G, H)
    _check_connection_set(G, U, H.element_set)
    cosets = left_cosets(G, H)
    connection = saturate(H, U.elements)
    rows = [0] * cosets.index
    for i, x in enumerate(cosets.representatives):
        for u in connection:
            rows[i] |= 1 << cosets.coset_index[x * u]
    return VertexGraph(cosets.representatives, tuple(rows))


def is_perfect_code_in_graph(
    graph: VertexGraph, code: Iterable[int], mode: Optional[str] = None
) -> bool:
    """
    ``literal``: every vertex outside the code has exactly one neighbour in it.
    ``independent``: additionally no two code vertices are adjacent.
    """
    mode = get_settings().mode if mode is None else mode
    if mode not in MODES:
        raise InvalidInput(f"unknown mode {mode!r}")
    mask = 0
    for v in code:
        if not 0 <= v < graph.order:
            raise InvalidInput(f"vertex {v} is not in the graph")
        mask |= 1 << v
    return _is_perfect_code(graph.rows, mask, mode)


def _is_perfect_code(rows: Sequence[int], mask: int, mode: str) -> bool:
    for v, row in enumerate(rows):
        hits = row & mask
        if mask >> v & 1:
            if mode == "independent" and hits:
                return False
        elif hits == 0 or hits & (hits - 1):
            return False
    return True


def _code_mask(inst: PairInstance) -> int:
    cosets = inst.cosets_H_in_G
    return sum(1 << i for i, x in enumerate(cosets.representatives) if x in inst.A)


def _outside_classes(inst: PairInstance):
    """The inverse-paired H-double-coset classes of G outside H, as coset labels."""
    profile = coset_profile(inst.G, inst.H)
    return [members for members in profile.classes if 0 not in members]


def _class_rows(inst: PairInstance, classes) -> List[List[int]]:
    """Adjacency contributed by each class."""
    cosets = inst.cosets_H_in_G
    class_rows = []
    for members in classes:
        elements = [y for k in members for y in cosets.members[k]]
        rows = [0] * cosets.index
        for i, x in enumerate(cosets.representatives):
            for u in elements:
                rows[i] |= 1 << cosets.coset_index[x * u]
        class_rows.append(rows)
    return class_rows


def find_witness_connection_set(
    inst: PairInstance, mode: Optional[str] = None, limit: Optional[int] = None
) -> Optional[ConnectionSet]:
    """
    First connection set U, in Gray-code order over the inverse-paired H-double-coset
    classes of G outside H, for which the cosets of H inside A form a perfect code of
    Cos(G, H, U). Consecutive subsets differ in one class, so each step XORs one class's
    adjacency into the current rows.
    """
    mode = get_settings().mode if mode is None else mode
    limit = get_settings().max_connection_subsets if limit is None else limit
    classes = _outside_classes(inst)
    k = len(classes)
    if 2**k > limit:
        raise TooManyDoubleCosetClasses(
            f"{k} double-coset classes give {2**k} connection sets, the limit is {limit}"
        )
    class_rows = _class_rows(inst, classes)
    mask = _code_mask(inst)
    rows = [0] * inst.cosets_H_in_G.index
    chosen = 0
    for step in range(2**k):
        if step:
            flip = (step & -step).bit_length() - 1
            chosen ^= 1 << flip
            rows = [a ^ b for a, b in zip(rows, class_rows[flip])]
        if _is_perfect_code(rows, mask, mode):
            picked = [j for j in range(k) if chosen >> j & 1]
            cosets = inst.cosets_H_in_G
            elements = [y for j in picked for c in classes[j] for y in cosets.members[c]]
            log.debug("Witness connection set after %d of %d subsets", step + 1, 2**k)
            return ConnectionSet.of(elements, picked)
    log.debug("No witness connection set among %d subsets (%s mode)", 2**k, mode)
    return None


def double_coset_class_count(inst: PairInstance) -> int:
    return len(_outside_classes(inst))


def compare_modes(inst: PairInstance, limit: Optional[int] = None) -> Dict[str, bool]:
    found = {mode: find_witness_connection_set(inst, mode, limit) is not None for mode in MODES}
    found["agree"] = len(set(found.values())) == 1
    if not found["agree"]:
        log.warning("Literal and independent perfect codes disagree: %s", found)
    return found


def is_left_action_invariant(
    graph: VertexGraph, G: PermGroup, H: Optional[PermGroup] = None
) -> bool:
    """Every generator g of G maps the coset graph edge xH ~ yH to gxH ~ gyH."""
    H = trivial_group(G.degree) if H is None else H
    cosets = left_cosets(G, H)
    if len(cosets.representatives) != graph.order:
        raise InvalidInput("graph does not have one vertex per left coset")
    position = {cosets.coset_index[label]: i for i, label in enumerate(graph.labels)}
    for g in G.generators:
        image = [position[cosets.coset_index[g * label]] for label in graph.labels]
        for u, v in graph.edges():
            if not graph.has_edge(image[u], image[v]):
                return False
    return True
