"""
Explicit families of triples (G, A, H) together with the transversals and involutions that
certify their perfect-code behaviour.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime, multiplicity, primitive_root

from .codes import PairInstance
from .config import get_settings
from .errors import (
    ConsistencyViolation,
    InvalidInput,
    ParameterOutOfRange,
    ParseError,
    PreconditionViolated,
)
from .ffield import FieldSpec, embed_permutations, make_field
from .groups import (
    PermGroup,
    closure,
    is_semiregular,
    left_cosets,
    normalizer,
    normalizes,
    orbits,
    point_stabilizer,
    sylow_2,
)
from .named_groups import affine_group, symmetric, symmetric_on
from .perms import Permutation

log = logging.getLogger("perfectcodes.constructions")


class Family(str, Enum):
    DIHEDRAL = "Dihedral8n"
    FIELD_C2 = "FieldC2"
    FIELD_AGAMMAL = "FieldAGammaL"
    SYM_CHAIN = "SymChain"
    INTRANSITIVE_MAX = "IntransitiveMax"
    AFFINE = "Affine"


@dataclass
class TripleSpec:
    family: Family
    parameters: Tuple[int, ...]
    instance: PairInstance
    expected: Tuple[str, ...]
    elements: Dict[str, Permutation] = field(default_factory=dict)
    field_spec: Optional[FieldSpec] = None

    def fingerprint(self) -> dict:
        record = {"family": self.family.value, "parameters": list(self.parameters)}
        record.update(self.instance.fingerprint())
        return record

    def to_record(self) -> dict:
        record = self.fingerprint()
        record["expected"] = list(self.expected)
        record["elements"] = {name: str(x) for name, x in sorted(self.elements.items())}
        if self.field_spec is not None:
            record["field"] = self.field_spec.to_record()
        return record


def _require_order(label: str, group: PermGroup, expected: int):
    if group.order != expected:
        raise ConsistencyViolation(f"{label} has order {group.order}, expected {expected}")


def build_dihedral(n: int) -> TripleSpec:
    """D_8n on the 4n vertices of a polygon, A = <a^2n, b>, H = <b>."""
    if n < 1:
        raise ParameterOutOfRange("the dihedral family needs n >= 1")
    points = 4 * n
    a = Permutation((i + 1) % points for i in range(points))
    b = Permutation((-i) % points for i in range(points))
    G = closure(points, [a, b], name=f"D{8 * n}")
    A = closure(points, [a ** (2 * n), b])
    H = closure(points, [b])
    _require_order("G", G, 8 * n)
    _require_order("A", A, 4)
    return TripleSpec(
        Family.DIHEDRAL,
        (n,),
        PairInstance(G, A, H),
        ("parity-or-square-condition holds", "NotPerfectCode"),
        {"a": a, "b": b},
    )


def build_field_c2(d: int) -> TripleSpec:
    """
    On GF(4^d): G = V:(<s^(2^d-1)>:<phi^d>), A = V:<phi^d> and
    H = <R(omega), R(omega^(2^d))>.
    """
    if d < 2:
        raise ParameterOutOfRange("the field C2 family needs d >= 2")
    if 4**d > get_settings().field_cap:
        raise ParameterOutOfRange(f"GF(4^{d}) exceeds the field cap")
    spec = make_field(2, 2 * d)
    V, s, phi, R = embed_permutations(spec)
    t = s ** (2**d - 1)
    psi = phi**d
    omega = spec.omega
    omega_2d = spec.power(omega, 2**d)
    q = spec.q
    G = closure(q, list(V.generators) + [t, psi], name=f"FieldC2_{d}")
    A = closure(q, list(V.generators) + [psi])
    H = closure(q, [R[omega], R[omega_2d]])
    _require_order("G", G, q * (2**d + 1) * 2)
    _require_order("A", A, 2 * q)
    _require_order("H", H, 4)
    if not psi.is_involution() or t.conjugate(psi) != t.inverse():
        raise ConsistencyViolation("phi^d is not an involution inverting s^(2^d-1)")
    if R[omega].conjugate(psi) != R[omega_2d]:
        raise ConsistencyViolation("R(omega)^(phi^d) differs from R(omega^(2^d))")
    if not all(normalizes(g, H) for g in A.generators):
        raise ConsistencyViolation("A does not normalize H")
    log.info("Built the field C2 family for d=%d: |G|=%d |A|=%d", d, G.order, A.order)
    return TripleSpec(
        Family.FIELD_C2,
        (d,),
        PairInstance(G, A, H),
        ("ratio even for every g outside A", "normal-closure-obstruction", "NotPerfectCode"),
        {
            "s": s,
            "phi": phi,
            "s^(2^d-1)": t,
            "phi^d": psi,
            "R(omega)": R[omega],
            "R(omega^(2^d))": R[omega_2d],
        },
        spec,
    )


def build_field_agammal(p: int, f: int) -> TripleSpec:
    """G = AGammaL(1, p^f), A = V:<phi> and H = <R(1)> for odd p and odd f."""
    if p % 2 == 0 or not isprime(p):
        raise ParameterOutOfRange(f"p={p} is not an odd prime")
    if f < 1 or f % 2 == 0:
        raise ParameterOutOfRange(f"f={f} is not a positive odd integer")
    if p**f > get_settings().field_cap:
        raise ParameterOutOfRange(f"GF({p}^{f}) exceeds the field cap")
    spec = make_field(p, f)
    V, s, phi, R = embed_permutations(spec)
    q = spec.q
    G = closure(q, list(V.generators) + [s, phi], name=f"AGammaL1_{q}")
    A = closure(q, list(V.generators) + [phi])
    H = closure(q, [R[spec.one]])
    _require_order("G", G, q * (q - 1) * f)
    _require_order("A", A, q * f)
    _require_order("H", H, p)
    log.info("Built AGammaL(1,%d): |G|=%d |A|=%d", q, G.order, A.order)
    expected = [
        "parity-or-square-condition holds",
        "only self-paired coset outside A is s^((q-1)/2)A",
        "A is a perfect code of G",
    ]
    if f == 1:
        # A = H = V is normal in G here.
        expected.append("PerfectCode")
    else:
        expected += ["normal-closure-obstruction", "NotPerfectCode"]
    return TripleSpec(
        Family.FIELD_AGAMMAL,
        (p, f),
        PairInstance(G, A, H),
        tuple(expected),
        {"s": s, "phi": phi, "s^((q-1)/2)": s ** ((q - 1) // 2), "R(1)": R[spec.one]},
        spec,
    )


def _check_chain(l: int, m: int, n: int):
    if not 1 <= l < m < n:
        raise ParameterOutOfRange(f"need 1 <= l < m < n, got ({l}, {m}, {n})")
    if n > get_settings().symmetric_degree_cap:
        raise ParameterOutOfRange(f"n={n} exceeds the symmetric degree cap")


def build_sym_chain(l: int, m: int, n: int) -> TripleSpec:
    """Sym([n]) > Sym([m]) > Sym([l]), each the pointwise stabilizer of the remaining points."""
    _check_chain(l, m, n)
    G = symmetric(n)
    A = symmetric_on(range(m), n, name=f"S{m}")
    H = symmetric_on(range(l), n, name=f"S{l}")
    return TripleSpec(
        Family.SYM_CHAIN,
        (l, m, n),
        PairInstance(G, A, H),
        ("chain transversal certificate", "PerfectCode"),
    )


def build_intransitive(m: int, n: int) -> TripleSpec:
    """Sym(n) with A = Sym([m]) x Sym([n] - [m]) and H trivial."""
    if not 1 <= m < n:
        raise ParameterOutOfRange(f"need 1 <= m < n, got ({m}, {n})")
    if n > get_settings().symmetric_degree_cap:
        raise ParameterOutOfRange(f"n={n} exceeds the symmetric degree cap")
    G = symmetric(n)
    A = intransitive_subgroup(m, n)
    return TripleSpec(
        Family.INTRANSITIVE_MAX,
        (m, n),
        PairInstance.of_group(G, A),
        ("explicit involution for every trigger", "PerfectCode"),
    )


def intransitive_subgroup(m: int, n: int) -> PermGroup:
    left = symmetric_on(range(m), n)
    right = symmetric_on(range(m, n), n)
    gens = list(left.generators) + list(right.generators)
    return closure(n, gens, name=f"S{m}xS{n - m}")


def build_affine(p: int) -> TripleSpec:
    """Sym(p) with the affine group AGL(1, p) as A and H trivial."""
    if p % 2 == 0 or not isprime(p) or p > 13:
        raise ParameterOutOfRange(f"p={p} is not an odd prime <= 13")
    if p > get_settings().symmetric_degree_cap:
        raise ParameterOutOfRange(f"Sym({p}) exceeds the symmetric degree cap")
    return TripleSpec(
        Family.AFFINE,
        (p,),
        PairInstance.of_group(symmetric(p), affine_group(p)),
        ("PerfectCode", "Sylow 2-subgroup agrees"),
    )


Injection = Tuple[int, ...]


def injections(m: int, n: int) -> List[Injection]:
    """All injections from the points m..n-1 into range(n); entry i is the image of m + i."""
    return list(permutations(range(n), n - m))


def _preimage_walk(sigma: Injection, k: int, m: int, n: int) -> List[int]:
    """``k, k^(sigma^-1), ..., k^(sigma^-j)`` stopping at the first point outside the image."""
    preimage = {image: m + i for i, image in enumerate(sigma)}
    walk = [k]
    while walk[-1] in preimage:
        walk.append(preimage[walk[-1]])
        if len(walk) > n:
            raise ConsistencyViolation(f"preimage walk from {k} does not terminate")
    return walk


def chain_element(sigma: Injection, m: int, n: int) -> Permutation:
    """x(sigma): sigma on m..n-1, and k to the end of its preimage walk for k < m."""
    images = [0] * n
    for i, image in enumerate(sigma):
        images[m + i] = image
    for k in range(m):
        images[k] = _preimage_walk(sigma, k, m, n)[-1]
    return Permutation(images)


@dataclass
class ChainTransversal:
    transversal: Tuple[Permutation, ...]
    by_injection: Dict[Injection, Permutation] = field(repr=False)
    certificate: Dict[str, bool]


def symmetric_chain_transversal(l: int, m: int, n: int) -> ChainTransversal:
    """
    The transversal {x(sigma)} of Sym([m]) in Sym([n]), one element per injection sigma,
    certified to have n!/m! elements, to be a left transversal and to satisfy
    X Sym([l]) = Sym([l]) X^-1.
    """
    triple = build_sym_chain(l, m, n)
    inst = triple.instance
    by_injection = {sigma: chain_element(sigma, m, n) for sigma in injections(m, n)}
    X = tuple(sorted(by_injection.values()))
    H = inst.H.elements
    certificate = {
        "size": len(X) == inst.G.order // inst.A.order,
        "left_transversal": left_cosets(inst.G, inst.A).is_transversal(X),
        "XH=HX^-1": {x * h for x in X for h in H} == {h * x.inverse() for x in X for h in H},
        "one_point_of_m_per_cycle": all(
            sum(point < m for point in cycle) <= 1 for x in X for cycle in x.cycles()
        ),
    }
    failed = [name for name, ok in certificate.items() if not ok]
    if failed:
        raise ConsistencyViolation(f"chain transversal for ({l},{m},{n}) fails {failed}")
    return ChainTransversal(X, by_injection, certificate)


def symmetric_chain_partner(
    l: int, m: int, n: int, sigma: Sequence[int], h: Permutation
) -> Permutation:
    """
    y(sigma) for x(sigma) and h in Sym([l]): the cycles of x(sigma) inside [n] - [m]
    inverted, and for every k < m with a nonempty walk the cycle
    ``(k^(sigma^-1), ..., k^(sigma^-j), k^h)``. y(sigma) lies in the chain transversal and
    x(sigma) h y(sigma) lies in Sym([l]).
    """
    _check_chain(l, m, n)
    sigma = tuple(sigma)
    if len(sigma) != n - m or len(set(sigma)) != len(sigma):
        raise InvalidInput(f"{sigma} is not an injection of {n - m} points")
    if any(not 0 <= image < n for image in sigma):
        raise InvalidInput(f"{sigma} maps outside range({n})")
    if len(h) != n or any(h[i] != i for i in range(l, n)):
        raise InvalidInput(f"{h} is not in Sym([{l}])")
    x = chain_element(sigma, m, n)
    images = list(range(n))
    for cycle in x.cycles():
        if min(cycle) >= m:
            for position, point in enumerate(cycle):
                images[point] = cycle[position - 1]
    for k in range(m):
        walk = _preimage_walk(sigma, k, m, n)
        if len(walk) == 1:
            continue
        cycle = walk[1:] + [h[k]]
        for position, point in enumerate(cycle):
            images[point] = cycle[(position + 1) % len(cycle)]
    try:
        return Permutation(images)
    except InvalidInput:
        raise ConsistencyViolation(f"partner cycles for {sigma} overlap") from None


def preserves_block(x: Permutation, m: int) -> bool:
    return x.preserves(range(m))


def intransitive_involution(x: Permutation, m: int, n: int) -> Permutation:
    """
    The product of the transpositions (k, k^x) over k < m with k^x >= m, an involution in
    the coset of x modulo Sym([m]) x Sym([n] - [m]).
    """
    if len(x) != n or not 1 <= m < n:
        raise InvalidInput(f"{x} is not in Sym({n}) or m={m} is out of range")
    if not preserves_block(x * x, m):
        raise PreconditionViolated("x^2 in Sm x Sn-m", f"x = {x}")
    images = list(range(n))
    for k in range(m):
        if x[k] >= m:
            images[k], images[x[k]] = x[k], k
    return Permutation(images)


def semiregular_coset_involution(
    G: PermGroup, Q: PermGroup, x: Permutation, domain: Optional[Sequence[int]] = None
) -> Permutation:
    """
    An involution in xQ, where Q is a semiregular 2-subgroup of G whose order is the 2-part
    of the domain size and x normalizes Q with x^2 in Q but x outside Q.

    <Q, x> has an orbit of length |Q|; the stabilizer of a point of it has order 2 and its
    involution lies in xQ.
    """
    domain = sorted(range(G.degree) if domain is None else domain)
    if not all(g.preserves(domain) for g in G.generators):
        raise PreconditionViolated("domain invariant under G", str(domain))
    if not Q.element_set <= G.element_set:
        raise PreconditionViolated("Q <= G")
    if x not in G:
        raise PreconditionViolated("x in G", str(x))
    t = multiplicity(2, Q.order)
    if Q.order != 2**t or t < 1:
        raise PreconditionViolated("|Q| = 2^t with t >= 1", f"|Q| = {Q.order}")
    if len(domain) % Q.order or (len(domain) // Q.order) % 2 == 0:
        raise PreconditionViolated("degree = |Q| * odd", f"degree {len(domain)}, |Q| {Q.order}")
    if not is_semiregular(Q, domain):
        raise PreconditionViolated("Q semiregular")
    if not normalizes(x, Q):
        raise PreconditionViolated("x in N_G(Q)", str(x))
    if x in Q:
        raise PreconditionViolated("x not in Q", str(x))
    if x * x not in Q:
        raise PreconditionViolated("x^2 in Q", str(x))
    K = closure(G.degree, list(Q.generators) + [x], cap=2 * Q.order)
    short = next((orbit for orbit in orbits(K, domain) if len(orbit) == Q.order), None)
    if short is None:
        raise ConsistencyViolation(f"<Q, x> has no orbit of length {Q.order}")
    stabilizer = point_stabilizer(K, short[0])
    y = next((z for z in stabilizer.elements if z.is_involution()), None)
    if y is None or x.inverse() * y not in Q:
        raise ConsistencyViolation(f"point stabilizer of {short[0]} gives no involution in xQ")
    return y


@dataclass
class AffineSetup:
    p: int
    G0: PermGroup
    Q: PermGroup
    domain: Tuple[int, ...]


def affine_involution_setup(p: int) -> AffineSetup:
    """Sym on the nonzero residues mod p and the Sylow 2-subgroup of GL(1, p) inside it."""
    if p % 2 == 0 or not isprime(p):
        raise ParameterOutOfRange(f"p={p} is not an odd prime")
    domain = tuple(range(1, p))
    G0 = symmetric_on(domain, p, name=f"Sym(F{p}*)")
    root = primitive_root(p)
    GL = closure(p, [Permutation((i * root) % p for i in range(p))], name=f"GL1_{p}")
    return AffineSetup(p, G0, sylow_2(GL), domain)


def qualifying_normalizer_elements(G: PermGroup, Q: PermGroup) -> List[Permutation]:
    """Every x in N_G(Q) - Q with x^2 in Q."""
    return [x for x in normalizer(G, Q).elements if x not in Q and x * x in Q]


_FAMILIES = {
    "dihedral": (build_dihedral, 1),
    "field_c2": (build_field_c2, 1),
    "field_agammal": (build_field_agammal, 2),
    "sym_chain": (build_sym_chain, 3),
    "intransitive": (build_intransitive, 2),
    "affine": (build_affine, 1),
}


def parse_family(text: str) -> TripleSpec:
    """Build a family from ``name:param1,param2``, for example ``field_agammal:3,3``."""
    match = re.fullmatch(r"\s*(\w+)\s*:\s*([\d,\s]+)", text)
    if not match or match.group(1) not in _FAMILIES:
        known = ", ".join(sorted(_FAMILIES))
        raise ParseError(f"unknown family spec {text!r}; known families: {known}")
    builder, arity = _FAMILIES[match.group(1)]
    params = [int(value) for value in re.split(r"[,\s]+", match.group(2).strip()) if value]
    if len(params) != arity:
        raise ParseError(f"{match.group(1)} takes {arity} parameter(s), got {len(params)}")
    return builder(*params)


def is_family_spec(text: str) -> bool:
    return ":" in text and text.split(":", 1)[0].strip() in _FAMILIES
