"""
Permutations acting on the right of {0, ..., n-1}.

``p * q`` applies ``p`` first and then ``q``, so ``i^(pq) = (i^p)^q`` and
``(p * q)[i] == q[p[i]]``. Conjugation is ``x^g = g^-1 x g``. Text input and output use
disjoint cycle notation with 1-based points, and the identity prints as ``()``.
"""
import math
import re
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidInput, ParseError

_CYCLE = re.compile(r"\(([^()]*)\)")


def _raw(images) -> "Permutation":
    return tuple.__new__(Permutation, images)


class Permutation(tuple):
    """An immutable bijection on ``range(degree)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise InvalidInput(f"{images} is not a permutation of 0..{len(images) - 1}")
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return _raw(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based cycles; the cycles are composed left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            if any(not 0 <= point < degree for point in cycle):
                raise InvalidInput(f"cycle {tuple(cycle)} leaves 0..{degree - 1}")
            if len(set(cycle)) != len(cycle):
                raise InvalidInput(f"cycle {tuple(cycle)} repeats a point")
            images = list(range(degree))
            for position, point in enumerate(cycle):
                images[point] = cycle[(position + 1) % len(cycle)]
            result = result * _raw(images)
        return result

    @classmethod
    def transposition(cls, a: int, b: int, degree: int) -> "Permutation":
        return cls.from_cycles([(a, b)], degree)

    @classmethod
    def parse(cls, text: str, degree: Optional[int] = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``(1,2)``."""
        stripped = text.strip()
        if not stripped:
            raise ParseError("empty permutation")
        if _CYCLE.sub("", stripped).strip():
            raise ParseError(f"unexpected characters in permutation {text!r}")
        cycles = []
        for body in _CYCLE.findall(stripped):
            tokens = [token for token in re.split(r"[\s,]+", body.strip()) if token]
            try:
                points = [int(token) - 1 for token in tokens]
            except ValueError:
                raise ParseError(f"non-integer point in {text!r}") from None
            if any(point < 0 for point in points):
                raise ParseError(f"points are 1-based, got {text!r}")
            if points:
                cycles.append(points)
        largest = max((max(cycle) + 1 for cycle in cycles), default=0)
        if degree is None:
            degree = largest
        elif largest > degree:
            raise ParseError(f"{text!r} moves a point beyond degree {degree}")
        try:
            return cls.from_cycles(cycles, degree)
        except InvalidInput as e:
            raise ParseError(str(e)) from None

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, point: int) -> int:
        return self[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other) != len(self):
            raise InvalidInput("cannot multiply permutations of different degrees")
        return _raw(other[i] for i in self)

    __rmul__ = None

    def inverse(self) -> "Permutation":
        images = [0] * len(self)
        for point, image in enumerate(self):
            images[image] = point
        return _raw(images)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = Permutation.identity(len(self))
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return ``g^-1 * self * g``."""
        inverse = g.inverse()
        return _raw(g[self[inverse[i]]] for i in range(len(self)))

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self))

    def is_involution(self) -> bool:
        """True for elements of order exactly 2."""
        return not self.is_identity() and self.squares_to_identity()

    def squares_to_identity(self) -> bool:
        return all(self[image] == point for point, image in enumerate(self))

    def support(self) -> List[int]:
        return [point for point, image in enumerate(self) if point != image]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, ordered by that point."""
        seen = [False] * len(self)
        result = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                seen[start] = True
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self[point]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return math.lcm(1, *(len(cycle) for cycle in self.cycles()))

    def preserves(self, points: Iterable[int]) -> bool:
        points = set(points)
        return all(self[point] in points for point in points)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(point + 1) for point in cycle) + ")" for cycle in cycles)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, degree={len(self)})"


def split_top_level(text: str) -> List[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


def parse_generators(text: str, degree: Optional[int] = None) -> Tuple[List[Permutation], int]:
    """
    Parse ``[(1 2 3),(1 2)]`` into permutations of a common degree.

    The degree is the largest point mentioned unless given explicitly.
    """
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = split_top_level(body)
    if not parts:
        raise ParseError(f"no generators in {text!r}")
    parsed = [Permutation.parse(part) for part in parts]
    largest = max(len(perm) for perm in parsed)
    if degree is None:
        degree = max(largest, 1)
    elif largest > degree:
        raise ParseError(f"{text!r} moves a point beyond degree {degree}")
    return [extend(perm, degree) for perm in parsed], degree


def extend(perm: Permutation, degree: int) -> Permutation:
    """The same permutation on a larger point set, fixing the new points."""
    if degree < len(perm):
        raise InvalidInput(f"cannot shrink a permutation of degree {len(perm)} to {degree}")
    return _raw(tuple(perm) + tuple(range(len(perm), degree)))


def format_elements(elements: Iterable[Permutation]) -> List[str]:
    return [str(element) for element in elements]
