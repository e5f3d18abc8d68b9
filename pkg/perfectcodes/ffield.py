"""
Arithmetic in GF(p^f) in a polynomial basis, and the embedding of translations, the Singer
cycle and the Frobenius map into Sym(GF(p^f)).

Elements are coefficient vectors ``[c0, c1, ..., c(f-1)]`` (low degree first). The field's
points are ordered coefficient-lexicographically with ``c0`` most significant, so the zero
vector is point 0.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd, gf_mul, gf_pow_mod, gf_rem, gf_sub

from .config import get_settings
from .errors import ConsistencyViolation, DivisionByZero, FieldTooLarge, InvalidInput, NotPrime
from .groups import PermGroup
from .perms import Permutation

log = logging.getLogger("perfectcodes.ffield")


class FieldElement(tuple):
    """Coefficient vector of a field element, lowest degree first."""

    __slots__ = ()

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self) + "]"

    def __repr__(self) -> str:
        return f"FieldElement({str(self)})"


def _to_sympy(coeffs: Sequence[int]) -> List[int]:
    # galoistools wants dense high-to-low lists without leading zeros.
    dense = list(reversed(coeffs))
    while dense and dense[0] == 0:
        dense.pop(0)
    return dense


def _from_sympy(dense: Sequence[int], length: int) -> Tuple[int, ...]:
    low = [int(c) for c in reversed(dense)]
    return tuple(low + [0] * (length - len(low)))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    Irreducibility of a monic polynomial (low-to-high coefficients) over GF(p):
    gcd(x^(p^k) - x mod m, m) = 1 for every 1 <= k <= deg(m) / 2.
    """
    degree = len(modulus) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    m = _to_sympy(modulus)
    x = [1, 0]
    for k in range(1, degree // 2 + 1):
        frobenius = gf_pow_mod(x, p**k, m, p, ZZ)
        if gf_gcd(gf_sub(frobenius, x, p, ZZ), m, p, ZZ) != [1]:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^f) with a fixed modulus, generator and log tables."""

    p: int
    f: int
    modulus: Tuple[int, ...]
    omega: FieldElement
    power_table: Tuple[FieldElement, ...] = field(repr=False)
    log_table: Dict[FieldElement, int] = field(repr=False, compare=False)
    elements: Tuple[FieldElement, ...] = field(repr=False, compare=False)
    position: Dict[FieldElement, int] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.f)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.f - 1))

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) != self.f or any(not 0 <= c < self.p for c in coeffs):
            raise InvalidInput(f"{list(coeffs)} is not an element of GF({self.p}^{self.f})")
        return FieldElement(coeffs)

    def omega_power(self, k: int) -> FieldElement:
        return self.power_table[k % (self.q - 1)]

    def add(self, u: FieldElement, v: FieldElement) -> FieldElement:
        return FieldElement((a + b) % self.p for a, b in zip(u, v))

    def neg(self, u: FieldElement) -> FieldElement:
        return FieldElement((-a) % self.p for a in u)

    def sub(self, u: FieldElement, v: FieldElement) -> FieldElement:
        return self.add(u, self.neg(v))

    def mul(self, u: FieldElement, v: FieldElement) -> FieldElement:
        if u == self.zero or v == self.zero:
            return self.zero
        return self.omega_power(self.log_table[u] + self.log_table[v])

    def inv(self, u: FieldElement) -> FieldElement:
        if u == self.zero:
            raise DivisionByZero("zero has no multiplicative inverse")
        return self.omega_power(-self.log_table[u])

    def power(self, u: FieldElement, exponent: int) -> FieldElement:
        if u == self.zero:
            if exponent < 0:
                raise DivisionByZero("zero has no multiplicative inverse")
            return self.one if exponent == 0 else self.zero
        return self.omega_power(self.log_table[u] * exponent)

    def frobenius(self, u: FieldElement) -> FieldElement:
        """``u -> u^p``."""
        return self.power(u, self.p)

    def log(self, u: FieldElement) -> int:
        if u == self.zero:
            raise DivisionByZero("zero has no discrete logarithm")
        return self.log_table[u]

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "modulus": list(self.modulus),
            "omega": str(self.omega),
            "point_order": "coefficient-lexicographic, c0 most significant, zero first",
        }


def _polymul_mod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> tuple:
    m = _to_sympy(modulus)
    product_ = gf_rem(gf_mul(_to_sympy(a), _to_sympy(b), p, ZZ), m, p, ZZ)
    return _from_sympy(product_, len(modulus) - 1)


def _multiplicative_order_is_full(
    element: Sequence[int], modulus: Sequence[int], p: int, f: int
) -> bool:
    q = p**f
    if not any(element):
        return False
    m = _to_sympy(modulus)
    base = _to_sympy(element)
    if gf_pow_mod(base, q - 1, m, p, ZZ) != [1]:
        return False
    return all(gf_pow_mod(base, (q - 1) // r, m, p, ZZ) != [1] for r in primefactors(q - 1))


def _monic_candidates(p: int, f: int):
    for low in product(range(p), repeat=f):
        yield tuple(low) + (1,)


def make_field(p: int, f: int, cap: Optional[int] = None) -> FieldSpec:
    """
    GF(p^f) with the lexicographically first monic irreducible modulus whose root x is
    primitive, falling back to the first irreducible modulus and the first primitive element.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise InvalidInput("field degree must be at least 1")
    cap = get_settings().field_cap if cap is None else cap
    q = p**f
    if q > cap:
        raise FieldTooLarge(f"GF({p}^{f}) has {q} elements, the cap is {cap}")
    x = tuple([0, 1] + [0] * (f - 2)) if f > 1 else None
    first_irreducible = None
    chosen = None
    for modulus in _monic_candidates(p, f):
        if not is_irreducible(modulus, p):
            continue
        if first_irreducible is None:
            first_irreducible = modulus
        root = x if f > 1 else ((-modulus[0]) % p,)
        if _multiplicative_order_is_full(root, modulus, p, f):
            chosen = (modulus, root)
            break
    if chosen is None:
        modulus = first_irreducible
        root = next(
            c
            for c in product(range(p), repeat=f)
            if _multiplicative_order_is_full(c, modulus, p, f)
        )
        log.info("No modulus of GF(%d^%d) has a primitive root x, using omega=%s", p, f, root)
        chosen = (modulus, root)
    modulus, root = chosen
    powers = [FieldElement((1,) + (0,) * (f - 1))]
    for _ in range(q - 2):
        powers.append(FieldElement(_polymul_mod(powers[-1], root, modulus, p)))
    log_table = {u: k for k, u in enumerate(powers)}
    if len(log_table) != q - 1:
        raise ConsistencyViolation(f"omega={root} does not generate GF({p}^{f})^*")
    elements = tuple(FieldElement(c) for c in product(range(p), repeat=f))
    spec = FieldSpec(
        p=p,
        f=f,
        modulus=tuple(modulus),
        omega=FieldElement(root),
        power_table=tuple(powers),
        log_table=log_table,
        elements=elements,
        position={u: i for i, u in enumerate(elements)},
    )
    log.debug("Built GF(%d^%d) with modulus %s and omega %s", p, f, list(modulus), spec.omega)
    return spec


class FieldPermutations(NamedTuple):
    V: PermGroup
    s: Permutation
    phi: Permutation
    R: Dict[FieldElement, Permutation]


def field_map(spec: FieldSpec, function) -> Permutation:
    """The permutation of the field's points induced by ``function``."""
    return Permutation(spec.position[function(v)] for v in spec.elements)


def embed_permutations(spec: FieldSpec) -> FieldPermutations:
    """Translations R(u): v -> v + u, Singer cycle s: v -> v*omega, Frobenius phi: v -> v^p."""
    R = {u: field_map(spec, lambda v, u=u: spec.add(v, u)) for u in spec.elements}
    s = field_map(spec, lambda v: spec.mul(v, spec.omega))
    phi = field_map(spec, spec.frobenius)
    basis = [spec.element(tuple(int(i == j) for j in range(spec.f))) for i in range(spec.f)]
    V = PermGroup(spec.q, R.values(), [R[b] for b in basis], name=f"V{spec.q}")
    return FieldPermutations(V, s, phi, R)
