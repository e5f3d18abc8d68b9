"""
Preset groups: symmetric, alternating, cyclic, dihedral, dicyclic, affine and products.
"""
import re
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from sympy import isprime, primitive_root

from .errors import InvalidInput, NotPrime, ParameterOutOfRange, ParseError
from .groups import PermGroup, closure, trivial_group
from .perms import Permutation, extend, parse_generators


def symmetric_on(points: Sequence[int], degree: int, name: Optional[str] = None) -> PermGroup:
    """Sym(points) inside Sym(degree), fixing every other point."""
    points = sorted(points)
    if len(points) < 2:
        return trivial_group(degree)
    gens = [Permutation.from_cycles([points], degree)]
    gens.append(Permutation.transposition(points[0], points[1], degree))
    return closure(degree, gens, name=name)


def symmetric(n: int) -> PermGroup:
    return symmetric_on(range(n), max(n, 1), name=f"S{n}")


def alternating(n: int) -> PermGroup:
    degree = max(n, 1)
    gens = [Permutation.from_cycles([(0, 1, k)], degree) for k in range(2, n)]
    return closure(degree, gens, name=f"A{n}")


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ParameterOutOfRange("cyclic groups need n >= 1")
    return closure(n, [Permutation.from_cycles([range(n)], n)], name=f"C{n}")


def regular_representation(
    elements: Sequence[Hashable],
    multiply: Callable[[Hashable, Hashable], Hashable],
    generators: Sequence[Hashable],
    name: Optional[str] = None,
) -> PermGroup:
    """Right regular action: point i goes to the index of ``elements[i] * g``."""
    index = {element: i for i, element in enumerate(elements)}
    gens = [Permutation(index[multiply(x, g)] for x in elements) for g in generators]
    return closure(len(elements), gens, name=name)


def dihedral(order: int) -> PermGroup:
    """The dihedral group of the given order (``dihedral(8)`` is D8)."""
    if order < 2 or order % 2:
        raise ParameterOutOfRange("dihedral groups have even order >= 2")
    n = order // 2
    if n <= 2:
        elements = [(k, e) for e in (0, 1) for k in range(n)]
        return regular_representation(
            elements,
            lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % n, x[1] ^ y[1]),
            [(1 % n, 0), (0, 1)],
            name=f"D{order}",
        )
    rotation = Permutation((i + 1) % n for i in range(n))
    reflection = Permutation((-i) % n for i in range(n))
    return closure(n, [rotation, reflection], name=f"D{order}")


def dicyclic(order: int) -> PermGroup:
    """
    Dic(4n) = <a, b | a^(2n) = 1, b^2 = a^n, b^-1 a b = a^-1> in its regular representation.

    ``dicyclic(8)`` is the quaternion group Q8.
    """
    if order < 8 or order % 4:
        raise ParameterOutOfRange("dicyclic groups have order 4n with n >= 2")
    n = order // 4

    def multiply(x, y):
        (k1, e1), (k2, e2) = x, y
        if not e1:
            return ((k1 + k2) % (2 * n), e2)
        if e2:
            return ((k1 - k2 + n) % (2 * n), 0)
        return ((k1 - k2) % (2 * n), 1)

    elements = [(k, e) for e in (0, 1) for k in range(2 * n)]
    name = "Q8" if order == 8 else f"Dic{order}"
    return regular_representation(elements, multiply, [(1, 0), (0, 1)], name=name)


def quaternion() -> PermGroup:
    return dicyclic(8)


def direct_product(*factors: PermGroup) -> PermGroup:
    """Product acting on disjoint point blocks, in the order given."""
    degree = sum(factor.degree for factor in factors)
    gens = []
    offset = 0
    for factor in factors:
        for g in factor.generators:
            images = list(range(degree))
            for point, image in enumerate(g):
                images[offset + point] = offset + image
            gens.append(Permutation(images))
        offset += factor.degree
    names = [factor.name for factor in factors]
    name = "x".join(names) if all(names) else None
    return closure(degree, gens, name=name)


def affine_group(p: int) -> PermGroup:
    """AGL(1, p) acting on the residues 0..p-1."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    translation = Permutation((i + 1) % p for i in range(p))
    gens = [translation]
    if p > 2:
        root = primitive_root(p)
        gens.append(Permutation((i * root) % p for i in range(p)))
    return closure(p, gens, name=f"AGL1_{p}")


def catalog_groups() -> List[PermGroup]:
    """Small groups whose every subgroup is scanned by the equivalence suites."""
    from .constructions import build_field_c2

    klein = dihedral(4)
    groups = [
        cyclic(4),
        cyclic(6),
        cyclic(8),
        klein,
        direct_product(klein, cyclic(2)),
        dihedral(8),
        dihedral(12),
        dihedral(16),
        quaternion(),
        dicyclic(12),
        alternating(4),
        symmetric(4),
        direct_product(symmetric(4), cyclic(2)),
        affine_group(3),
        affine_group(5),
        build_field_c2(2).instance.A,
    ]
    groups[-1].name = "F16:C2"
    return groups


_PRESETS: Dict[str, Callable[[int], PermGroup]] = {
    "S": symmetric,
    "A": alternating,
    "C": cyclic,
    "D": dihedral,
    "Dic": dicyclic,
}


def parse_group(text: str, degree: Optional[int] = None) -> PermGroup:
    """
    A group from a preset name (``S4``, ``A5``, ``C4``, ``D8``, ``Q8``, ``Dic12``,
    ``AGL1_5``) or from a bracketed generator list in 1-based cycle notation.
    """
    text = text.strip()
    if text.startswith("[") or text.startswith("("):
        gens, degree = parse_generators(text, degree)
        return closure(degree, gens)
    try:
        group = _parse_preset(text)
    except (ParameterOutOfRange, InvalidInput, NotPrime) as e:
        raise ParseError(str(e)) from None
    if degree is None or degree == group.degree:
        return group
    if degree < group.degree:
        raise ParseError(f"{text} needs {group.degree} points, only {degree} available")
    return closure(degree, [extend(g, degree) for g in group.generators], name=group.name)


def _parse_preset(text: str) -> PermGroup:
    if text == "Q8":
        return quaternion()
    match = re.fullmatch(r"AGL1_(\d+)", text)
    if match:
        return affine_group(int(match.group(1)))
    match = re.fullmatch(r"(Dic|S|A|C|D)(\d+)", text)
    if not match:
        raise ParseError(f"unknown group {text!r}")
    return _PRESETS[match.group(1)](int(match.group(2)))
