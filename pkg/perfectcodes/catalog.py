"""
Maximal subgroups of Sym(n) for n <= 7, one per conjugacy class.

Maximality comes from the classical classification (intransitive, imprimitive, primitive
affine and almost simple cases) and is not recomputed. Each entry is certified to be a
proper subgroup of the stated order that lies in no other entry.
"""
import logging
from dataclasses import dataclass
from math import factorial
from typing import Dict, List

from .constructions import intransitive_subgroup
from .errors import ConsistencyViolation, ParameterOutOfRange
from .groups import PermGroup, closure, trivial_group
from .named_groups import affine_group, alternating
from .perms import parse_generators

log = logging.getLogger("perfectcodes.catalog")

CATALOG_DEGREES = range(2, 8)


@dataclass
class CatalogEntry:
    name: str
    kind: str
    group: PermGroup
    expected_order: int
    source: str

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "order": self.group.order,
            "generators": [str(g) for g in self.group.generators],
            "source": self.source,
        }


_CLASSIFICATION = "O'Nan-Scott classification of maximal subgroups of Sym(n)"


def _from_text(n: int, text: str, name: str) -> PermGroup:
    gens, _ = parse_generators(text, n)
    return closure(n, gens, name=name)


def _intransitive(n: int) -> List[CatalogEntry]:
    entries = []
    for m in range(n - 1, n // 2, -1):
        k = n - m
        entries.append(
            CatalogEntry(
                f"S{m}xS{k}",
                "intransitive",
                intransitive_subgroup(m, n),
                factorial(m) * factorial(k),
                _CLASSIFICATION,
            )
        )
    return entries


_IMPRIMITIVE: Dict[int, List[tuple]] = {
    4: [("S2wrS2", "[(1 2),(1 3)(2 4)]", 8)],
    6: [
        ("S2wrS3", "[(1 2),(1 3)(2 4),(1 3 5)(2 4 6)]", 48),
        ("S3wrS2", "[(1 2),(1 2 3),(1 4)(2 5)(3 6)]", 72),
    ],
}

_PRIMITIVE_TEXT: Dict[int, List[tuple]] = {
    6: [("PGL(2,5)", "[(1 2 3 4 5),(2 3 5 4),(1 6)(2 5)]", 120)],
}


def maximal_catalog(n: int) -> List[CatalogEntry]:
    """Maximal subgroups of Sym(n) up to conjugacy for 2 <= n <= 7."""
    if n not in CATALOG_DEGREES:
        raise ParameterOutOfRange(f"the maximal subgroup catalog covers 2 <= n <= 7, not {n}")
    if n == 2:
        entries = [CatalogEntry("1", "intransitive", trivial_group(2), 1, _CLASSIFICATION)]
    else:
        order = factorial(n) // 2
        entries = [CatalogEntry(f"A{n}", "alternating", alternating(n), order, _CLASSIFICATION)]
        entries += _intransitive(n)
    for name, text, order in _IMPRIMITIVE.get(n, []):
        entries.append(
            CatalogEntry(name, "imprimitive", _from_text(n, text, name), order, _CLASSIFICATION)
        )
    if n in (5, 7):
        entries.append(
            CatalogEntry(f"AGL(1,{n})", "affine", affine_group(n), n * (n - 1), _CLASSIFICATION)
        )
    for name, text, order in _PRIMITIVE_TEXT.get(n, []):
        entries.append(
            CatalogEntry(name, "almost simple", _from_text(n, text, name), order, _CLASSIFICATION)
        )
    certify(n, entries)
    return entries


def certify(n: int, entries: List[CatalogEntry]):
    """Each entry has its stated order, is proper in Sym(n) and lies in no other entry."""
    for entry in entries:
        group = entry.group
        if group.degree != n:
            raise ConsistencyViolation(f"{entry.name} acts on {group.degree} points, not {n}")
        if group.order != entry.expected_order:
            raise ConsistencyViolation(
                f"{entry.name} has order {group.order}, expected {entry.expected_order}"
            )
        if group.order >= factorial(n):
            raise ConsistencyViolation(f"{entry.name} is not a proper subgroup of Sym({n})")
        for other in entries:
            if other is not entry and group <= other.group:
                raise ConsistencyViolation(f"{entry.name} lies inside {other.name}")
    log.debug("Certified %d catalog entries for Sym(%d)", len(entries), n)
