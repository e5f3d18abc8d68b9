"""
Decision procedures for subgroup perfect codes of a group G and of a pair (G, H).

Every positive answer carries a transversal that is re-checked from scratch before it is
returned; every negative answer names the exhausted search or the obstruction that fired.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import BudgetExceeded, ConsistencyViolation, HypothesisNotMet
from .groups import (
    CosetDecomposition,
    PermGroup,
    double_coset_union,
    left_cosets,
    non_normalizing_generator,
    normal_closure,
    normalizer,
    require_subgroup,
    sylow_2,
    trivial_group,
)
from .perms import Permutation, format_elements
from .transversals import NodeBudget, perfect_matching_with_loops, solve_exact_cover

log = logging.getLogger("perfectcodes.codes")


class Status(str, Enum):
    PERFECT_CODE = "PerfectCode"
    NOT_PERFECT_CODE = "NotPerfectCode"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    status: Status
    path: str
    reason: str = ""
    witness: Optional[Tuple[Permutation, ...]] = None
    violating_element: Optional[Permutation] = None
    certificates: Dict[str, Any] = field(default_factory=dict)
    search_nodes: int = 0
    elapsed_ms: Optional[float] = None

    @property
    def is_perfect_code(self) -> bool:
        return self.status is Status.PERFECT_CODE

    @property
    def is_definite(self) -> bool:
        return self.status is not Status.UNKNOWN

    def to_record(self, timings: bool = False) -> dict:
        record = {
            "status": self.status.value,
            "theorem_path": self.path,
            "reason": self.reason,
            "witness": None if self.witness is None else format_elements(self.witness),
            "violating_element": (
                None if self.violating_element is None else str(self.violating_element)
            ),
            "certificates": _jsonable(self.certificates),
            "search_nodes": self.search_nodes,
        }
        if timings:
            record["elapsed_ms"] = self.elapsed_ms
        return record


def _jsonable(value):
    if isinstance(value, Permutation):
        return str(value)
    if isinstance(value, PermGroup):
        return value.describe()
    if isinstance(value, Verdict):
        return value.to_record()
    if isinstance(value, CheckResult):
        return value.to_record()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return value


@dataclass
class CheckResult:
    """A yes/no test together with the element that decided it."""

    holds: bool
    element: Optional[Permutation] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_record(self) -> dict:
        return {
            "holds": self.holds,
            "element": None if self.element is None else str(self.element),
            "detail": _jsonable(self.detail),
        }


@dataclass(frozen=True)
class PairInstance:
    """A validated triple H <= A <= G."""

    G: PermGroup
    A: PermGroup
    H: PermGroup

    def __post_init__(self):
        require_subgroup(self.G, self.A)
        require_subgroup(self.A, self.H)

    @classmethod
    def of_group(cls, G: PermGroup, A: PermGroup) -> "PairInstance":
        return cls(G, A, trivial_group(G.degree))

    @property
    def cosets_A_in_G(self) -> CosetDecomposition:
        return left_cosets(self.G, self.A)

    @property
    def cosets_H_in_G(self) -> CosetDecomposition:
        return left_cosets(self.G, self.H)

    def fingerprint(self) -> dict:
        return {
            "degree": self.G.degree,
            "G": self.G.describe(),
            "A": self.A.describe(),
            "H": self.H.describe(),
            "index_A_in_G": self.G.order // self.A.order,
            "index_H_in_A": self.A.order // self.H.order,
        }


@dataclass(frozen=True)
class CosetProfile:
    """
    Inversion structure of the left cosets of A in G.

    ``partners[c]`` are the cosets meeting the inverse of coset c, ``loop_element[c]`` is
    the first element of c squaring to the identity, ``double_coset[c]`` are the cosets of
    AxA for x in c, and cosets sharing a ``union_class`` make up one A{g, g^-1}A.
    """

    cosets: CosetDecomposition
    partners: Tuple[FrozenSet[int], ...]
    loop_element: Tuple[Optional[Permutation], ...]
    double_coset: Tuple[FrozenSet[int], ...]
    union_class: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]

    def pair_element(self, c: int, d: int) -> Permutation:
        """First x in coset c with x^-1 in coset d."""
        index = self.cosets.coset_index
        for x in self.cosets.members[c]:
            if index[x.inverse()] == d:
                return x
        raise ConsistencyViolation(f"cosets {c} and {d} are not inverse partners")

    def class_size(self, c: int) -> int:
        return len(self.classes[self.union_class[c]])


@lru_cache(maxsize=128)
def coset_profile(G: PermGroup, A: PermGroup) -> CosetProfile:
    cosets = left_cosets(G, A)
    index = cosets.coset_index
    partners, loops, double = [], [], []
    for c, members in enumerate(cosets.members):
        partners.append(frozenset(index[x.inverse()] for x in members))
        loops.append(next((x for x in members if x.squares_to_identity()), None))
        rep = cosets.representatives[c]
        double.append(frozenset(index[a * rep] for a in A.elements))
    labels = [-1] * cosets.index
    classes = []
    for c in range(cosets.index):
        if labels[c] >= 0:
            continue
        inverse_coset = index[cosets.representatives[c].inverse()]
        members = sorted(double[c] | double[inverse_coset])
        for d in members:
            labels[d] = len(classes)
        classes.append(tuple(members))
    return CosetProfile(
        cosets, tuple(partners), tuple(loops), tuple(double), tuple(labels), tuple(classes)
    )


def union_classes(G: PermGroup, A: PermGroup) -> List[Tuple[Permutation, Tuple[int, ...]]]:
    """One (representative, coset labels) entry per union A{g, g^-1}A."""
    profile = coset_profile(G, A)
    reps = profile.cosets.representatives
    return [(reps[members[0]], members) for members in profile.classes]


def condition_triggers(G: PermGroup, A: PermGroup) -> Iterator[Permutation]:
    """Every x with x^2 in A and |A| / |A & A^x| odd."""
    require_subgroup(G, A)
    profile = coset_profile(G, A)
    index = profile.cosets.coset_index
    for x in G.elements:
        if x * x in A and len(profile.double_coset[index[x]]) % 2:
            yield x


def square_coset_condition(G: PermGroup, A: PermGroup) -> CheckResult:
    """
    For each x with x^2 in A and |A| / |A & A^x| odd, some y in xA has y^2 = e.

    ``|A| / |A & A^x|`` is read off as the number of left cosets in AxA.
    """
    profile = coset_profile(G, A)
    index = profile.cosets.coset_index
    checked = 0
    for x in condition_triggers(G, A):
        checked += 1
        if profile.loop_element[index[x]] is None:
            return CheckResult(False, x, {"triggers_checked": checked})
    return CheckResult(True, None, {"triggers_checked": checked})


def double_coset_condition(G: PermGroup, A: PermGroup) -> CheckResult:
    """The square-coset condition with the trigger AxA = Ax^-1A, one x per left coset."""
    require_subgroup(G, A)
    profile = coset_profile(G, A)
    index = profile.cosets.coset_index
    checked = 0
    for c, x in enumerate(profile.cosets.representatives):
        inverse_coset = index[x.inverse()]
        if profile.double_coset[c] != profile.double_coset[inverse_coset]:
            continue
        if len(profile.double_coset[c]) % 2 == 0:
            continue
        checked += 1
        if profile.loop_element[c] is None:
            return CheckResult(False, x, {"triggers_checked": checked})
    return CheckResult(True, None, {"triggers_checked": checked})


def _transversal_from_matching(profile: CosetProfile, partner: Dict[int, int]):
    chosen = []
    for c, d in sorted(partner.items()):
        if c == d:
            chosen.append(profile.loop_element[c])
        elif c < d:
            x = profile.pair_element(c, d)
            chosen.extend((x, x.inverse()))
    return tuple(sorted(chosen))


def _inverse_closed_search(G, A, budget, cosets=None):
    profile = coset_profile(G, A)
    vertices = list(range(profile.cosets.index)) if cosets is None else list(cosets)
    allowed = set(vertices)
    loops = [c for c in vertices if profile.loop_element[c] is not None]
    neighbours = {c: [d for d in profile.partners[c] if d in allowed] for c in vertices}
    outcome = perfect_matching_with_loops(vertices, loops, neighbours, budget)
    if outcome.exhausted_budget:
        raise BudgetExceeded(outcome.nodes)
    if outcome.solution is None:
        return None, outcome.nodes
    return _transversal_from_matching(profile, outcome.solution), outcome.nodes


def find_inverse_closed_transversal(
    G: PermGroup, A: PermGroup, budget: Optional[int] = None
) -> Optional[Tuple[Permutation, ...]]:
    """
    An inverse-closed left transversal of A in G, or None when none exists.

    Cosets are matched with their inverse partners; a coset matched with itself needs an
    element squaring to the identity. Raises BudgetExceeded when the node budget runs out.
    """
    require_subgroup(G, A)
    transversal, nodes = _inverse_closed_search(G, A, budget)
    log.debug("Inverse-closed transversal search for %r in %r: %d nodes", A, G, nodes)
    return transversal


def _blossom_cover(vertices, loops, neighbours) -> Optional[Dict[int, int]]:
    # Loop vertices get a private dummy and all dummies form a clique, so a perfect matching
    # of this graph is exactly a cover of the vertices by loops and edges.
    graph = nx.Graph()
    graph.add_nodes_from(("coset", v) for v in vertices)
    for v in vertices:
        for w in neighbours[v]:
            if w != v:
                graph.add_edge(("coset", v), ("coset", w))
    dummies = [("dummy", v) for v in loops]
    for v in loops:
        graph.add_edge(("coset", v), ("dummy", v))
    if (len(vertices) + len(dummies)) % 2:
        dummies.append(("dummy", None))
        graph.add_node(("dummy", None))
    for i, first in enumerate(dummies):
        for second in dummies[i + 1 :]:
            graph.add_edge(first, second)
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(matching) != graph.number_of_nodes():
        return None
    partner = {}
    for left, right in matching:
        if left[0] == "coset" and right[0] == "coset":
            partner[left[1]] = right[1]
            partner[right[1]] = left[1]
        elif left[0] != right[0]:
            vertex = left[1] if left[0] == "coset" else right[1]
            partner[vertex] = vertex
    return partner


def per_class_transversals_exist(G: PermGroup, A: PermGroup) -> CheckResult:
    """
    For each union A{g, g^-1}A, an inverse-closed left transversal of A inside it exists.

    Each class is solved on its own with a maximum matching, independently of the
    backtracking search used by find_inverse_closed_transversal.
    """
    require_subgroup(G, A)
    profile = coset_profile(G, A)
    witnesses = {}
    for label, members in enumerate(profile.classes):
        allowed = set(members)
        loops = [c for c in members if profile.loop_element[c] is not None]
        neighbours = {c: [d for d in profile.partners[c] if d in allowed] for c in members}
        partner = _blossom_cover(members, loops, neighbours)
        rep = profile.cosets.representatives[members[0]]
        if partner is None:
            return CheckResult(False, rep, {"class": label, "class_size": len(members)})
        witnesses[str(rep)] = [str(y) for y in _transversal_from_matching(profile, partner)]
    return CheckResult(True, None, {"classes": len(profile.classes), "witnesses": witnesses})


def verify_group_witness(G: PermGroup, A: PermGroup, X: Sequence[Permutation]) -> bool:
    """Independent re-check: X is an inverse-closed left transversal of A in G."""
    X = set(X)
    if {x.inverse() for x in X} != X:
        return False
    return left_cosets(G, A).is_transversal(X)


def is_perfect_code_of_group(G: PermGroup, A: PermGroup, budget: Optional[int] = None) -> Verdict:
    """Decide whether A is a perfect code of G, with a transversal witness when it is."""
    start = time.perf_counter()
    require_subgroup(G, A)
    condition = square_coset_condition(G, A)
    try:
        transversal, nodes = _inverse_closed_search(G, A, budget)
    except BudgetExceeded as e:
        elapsed = (time.perf_counter() - start) * 1000
        if not condition:
            return Verdict(
                Status.NOT_PERFECT_CODE,
                "square-coset-condition",
                "x^2 in A with odd |A|/|A & A^x| but no y in xA with y^2 = e",
                violating_element=condition.element,
                search_nodes=e.nodes,
                elapsed_ms=elapsed,
            )
        return Verdict(
            Status.UNKNOWN,
            "inverse-closed-transversal",
            "witness search ran out of budget",
            search_nodes=e.nodes,
            elapsed_ms=elapsed,
        )
    if (transversal is not None) != condition.holds:
        raise ConsistencyViolation(
            f"square-coset condition says {condition.holds} but transversal search found "
            f"{transversal is not None} for {A!r} in {G!r}"
        )
    elapsed = (time.perf_counter() - start) * 1000
    if transversal is None:
        return Verdict(
            Status.NOT_PERFECT_CODE,
            "square-coset-condition",
            "x^2 in A with odd |A|/|A & A^x| but no y in xA with y^2 = e",
            violating_element=condition.element,
            certificates={"transversal_search": "exhausted"},
            search_nodes=nodes,
            elapsed_ms=elapsed,
        )
    if not verify_group_witness(G, A, transversal):
        raise ConsistencyViolation("inverse-closed transversal failed its re-check")
    return Verdict(
        Status.PERFECT_CODE,
        "inverse-closed-transversal",
        "inverse-closed left transversal of A in G",
        witness=transversal,
        search_nodes=nodes,
        elapsed_ms=elapsed,
    )


@dataclass(frozen=True)
class PairProfile:
    """
    H-double-coset structure of a pair.

    Blocks are the unions H{y, y^-1}H, listed as H-coset labels. ``block_acosets[b]`` maps
    each A-coset met by block b to the H-cosets of b inside it.
    """

    hcosets: CosetDecomposition
    acoset_of_hcoset: Tuple[int, ...]
    blocks: Tuple[Tuple[int, ...], ...]
    block_acosets: Tuple[Dict[int, Tuple[int, ...]], ...]

    def block_is_valid(self, b: int) -> bool:
        """The block meets every left coset of A in at most one left coset of H."""
        return all(len(hs) == 1 for hs in self.block_acosets[b].values())


@lru_cache(maxsize=64)
def pair_profile(inst: PairInstance) -> PairProfile:
    G, A, H = inst.G, inst.A, inst.H
    hcosets = left_cosets(G, H)
    acosets = left_cosets(G, A)
    hindex = hcosets.coset_index
    acoset_of = tuple(acosets.coset_index[rep] for rep in hcosets.representatives)
    block_of = [-1] * hcosets.index
    blocks = []
    for k, rep in enumerate(hcosets.representatives):
        if block_of[k] >= 0:
            continue
        members = {hindex[h * rep] for h in H.elements}
        members |= {hindex[h * rep.inverse()] for h in H.elements}
        for m in members:
            block_of[m] = len(blocks)
        blocks.append(tuple(sorted(members)))
    block_acosets = []
    for members in blocks:
        grouped: Dict[int, List[int]] = {}
        for k in members:
            grouped.setdefault(acoset_of[k], []).append(k)
        block_acosets.append({a: tuple(hs) for a, hs in sorted(grouped.items())})
    return PairProfile(hcosets, acoset_of, tuple(blocks), tuple(block_acosets))


def verify_pair_witness(
    inst: PairInstance, X: Sequence[Permutation], commuting: bool = False
) -> bool:
    """
    Independent re-check that X is a left transversal of A with XH = HX^-1, and with
    ``commuting`` also X = X^-1 and XH = HX.
    """
    X = list(X)
    if not inst.cosets_A_in_G.is_transversal(X):
        return False
    H = inst.H.elements
    XH = {x * h for x in X for h in H}
    HXinv = {h * x.inverse() for x in X for h in H}
    if XH != HXinv:
        return False
    if commuting:
        if {x.inverse() for x in X} != set(X):
            return False
        if XH != {h * x for x in X for h in H}:
            return False
    return True


def _pair_witness(inst: PairInstance, profile: PairProfile, chosen: Sequence[int]):
    members = profile.hcosets.members
    return tuple(
        sorted(members[hs[0]][0] for b in chosen for hs in profile.block_acosets[b].values())
    )


def search_pair_transversal(inst: PairInstance, budget: Optional[int] = None) -> Verdict:
    """
    Search for a left transversal X of A in G with XH = HX^-1.

    X is fixed by the left cosets of H it meets, one inside each left coset of A. Choosing
    the coset yH forces every coset meeting Hy^-1, hence all of H{y, y^-1}H, so the search is
    an exact cover of the cosets of A by the blocks H{y, y^-1}H that meet each coset of A in
    at most one coset of H.
    """
    start = time.perf_counter()
    profile = pair_profile(inst)
    options = {
        b: frozenset(profile.block_acosets[b])
        for b in range(len(profile.blocks))
        if profile.block_is_valid(b)
    }
    index = inst.cosets_A_in_G.index
    outcome = solve_exact_cover(list(range(index)), options, budget)
    elapsed = (time.perf_counter() - start) * 1000
    certificates = {
        "blocks": len(profile.blocks),
        "valid_blocks": len(options),
        "independent_parts": outcome.components,
    }
    if outcome.exhausted_budget:
        return Verdict(
            Status.UNKNOWN,
            "pair-transversal-search",
            "node budget exhausted",
            certificates=certificates,
            search_nodes=outcome.nodes,
            elapsed_ms=elapsed,
        )
    if outcome.solution is None:
        return Verdict(
            Status.NOT_PERFECT_CODE,
            "pair-transversal-search",
            "search exhausted: no left transversal X of A with XH = HX^-1",
            certificates=certificates,
            search_nodes=outcome.nodes,
            elapsed_ms=elapsed,
        )
    X = _pair_witness(inst, profile, list(outcome.solution))
    if not verify_pair_witness(inst, X):
        raise ConsistencyViolation("pair transversal failed its re-check")
    return Verdict(
        Status.PERFECT_CODE,
        "pair-transversal-search",
        "left transversal X of A with XH = HX^-1",
        witness=X,
        certificates=certificates,
        search_nodes=outcome.nodes,
        elapsed_ms=elapsed,
    )


@lru_cache(maxsize=64)
def _conjugates_of_H_by_A(inst: PairInstance) -> FrozenSet[Permutation]:
    return frozenset(h.conjugate(y) for y in inst.A.elements for h in inst.H.elements)


def parity_or_square_condition(inst: PairInstance) -> CheckResult:
    """
    For one g per left coset of A: |A{g, g^-1}A| / |A| is even, or gA holds an x with
    x^2 in H^y for some y in A. Both halves are checked to be the same for a second element
    of the coset.
    """
    G, A = inst.G, inst.A
    profile = coset_profile(G, A)
    squares_into = _conjugates_of_H_by_A(inst)
    rows = []
    for c, g in enumerate(profile.cosets.representatives):
        ratio = profile.class_size(c)
        members = profile.cosets.members[c]
        square = next((x for x in members if x * x in squares_into), None)
        if len(members) > 1:
            other = double_coset_union(G, A, members[1])
            if other.ratio != ratio:
                raise ConsistencyViolation(
                    f"|A{{g,g^-1}}A|/|A| changes inside the coset of {g}: {ratio} vs {other.ratio}"
                )
        rows.append({"g": g, "ratio": ratio, "even": ratio % 2 == 0, "square": square})
        if ratio % 2 and square is None:
            return CheckResult(False, g, {"rows": rows})
    return CheckResult(True, None, {"rows": rows})


def normal_closure_obstruction(
    inst: PairInstance, budget: Optional[int] = None
) -> Optional[Verdict]:
    """
    NotPerfectCode when H is nonnormal in G, H is a perfect code of G and
    H^G <= A <= N_G(H); otherwise None.
    """
    start = time.perf_counter()
    G, A, H = inst.G, inst.A, inst.H
    moving = non_normalizing_generator(G, H)
    if moving is None:
        return None
    h_verdict = is_perfect_code_of_group(G, H, budget)
    if not h_verdict.is_perfect_code:
        return None
    closure_ = normal_closure(G, H)
    norm = normalizer(G, H)
    if not (closure_ <= A and A <= norm):
        return None
    return Verdict(
        Status.NOT_PERFECT_CODE,
        "normal-closure-obstruction",
        "H nonnormal, H a perfect code of G and H^G <= A <= N_G(H)",
        violating_element=moving,
        certificates={
            "H_nonnormal_witness": moving,
            "H_perfect_code_of_G": h_verdict,
            "normal_closure_order": closure_.order,
            "normalizer_order": norm.order,
            "A_order": A.order,
        },
        search_nodes=h_verdict.search_nodes,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def _require_h_perfect(inst: PairInstance, budget: Optional[int]):
    verdict = is_perfect_code_of_group(inst.G, inst.H, budget)
    if not verdict.is_perfect_code:
        raise HypothesisNotMet(
            f"H is not known to be a perfect code of G ({verdict.status.value}); "
            "commuting transversals only characterize pair codes under that hypothesis"
        )


def find_commuting_transversal(
    inst: PairInstance, budget: Optional[int] = None
) -> Optional[Tuple[Permutation, ...]]:
    """
    An inverse-closed left transversal X of A with XH = HX, or None.

    Solved as an exact cover of the cosets of A by blocks H{y, y^-1}H that admit an
    inverse-closed left transversal of H of their own. Raises HypothesisNotMet unless H is
    a perfect code of G and BudgetExceeded when the node budget runs out.
    """
    _require_h_perfect(inst, budget)
    profile = pair_profile(inst)
    hprofile = coset_profile(inst.G, inst.H)
    options, block_partners = {}, {}
    nodes = 0
    for b, members in enumerate(profile.blocks):
        if not profile.block_is_valid(b):
            continue
        allowed = set(members)
        loops = [k for k in members if hprofile.loop_element[k] is not None]
        neighbours = {k: [m for m in hprofile.partners[k] if m in allowed] for k in members}
        outcome = perfect_matching_with_loops(members, loops, neighbours, budget)
        nodes += outcome.nodes
        if outcome.exhausted_budget:
            raise BudgetExceeded(nodes)
        if outcome.solution is not None:
            options[b] = frozenset(profile.block_acosets[b])
            block_partners[b] = outcome.solution
    cover = solve_exact_cover(list(range(inst.cosets_A_in_G.index)), options, budget)
    nodes += cover.nodes
    if cover.exhausted_budget:
        raise BudgetExceeded(nodes)
    log.debug("Commuting transversal search: %d admissible blocks, %d nodes", len(options), nodes)
    if cover.solution is None:
        return None
    partner = {}
    for b in cover.solution:
        partner.update(block_partners[b])
    X = _transversal_from_matching(hprofile, partner)
    if not verify_pair_witness(inst, X, commuting=True):
        raise ConsistencyViolation("commuting transversal failed its re-check")
    return X


def _class_search(acosets, hcosets, hdouble, class_members, budget):
    """
    Element-level search inside one union class for an inverse-closed Y, one element per
    coset of A, whose cosets of H are closed under HyH.
    """
    aindex = acosets.coset_index
    hindex = hcosets.coset_index

    def assign(state, y):
        elements, hsel = dict(state[0]), dict(state[1])
        pending = [y]
        while pending:
            z = pending.pop()
            c = aindex[z]
            if c in elements:
                if elements[c] != z:
                    return None
                continue
            k = hindex[z]
            if hsel.get(c, k) != k:
                return None
            elements[c] = z
            hsel[c] = k
            for m in hdouble[k]:
                a = aindex[hcosets.representatives[m]]
                if hsel.setdefault(a, m) != m:
                    return None
            pending.append(z.inverse())
        return elements, hsel

    def candidates(state, c):
        elements, hsel = state
        pool = hcosets.members[hsel[c]] if c in hsel else acosets.members[c]
        return list(pool)

    def solve(state):
        budget.tick()
        free = [c for c in class_members if c not in state[0]]
        if not free:
            return state[0]
        c = min(free, key=lambda d: (len(candidates(state, d)), d))
        for y in candidates(state, c):
            nxt = assign(state, y)
            if nxt is not None:
                found = solve(nxt)
                if found is not None:
                    return found
        return None

    return solve(({}, {}))


def per_class_commuting_transversals(
    inst: PairInstance, budget: Optional[int] = None
) -> CheckResult:
    """
    For every union A{g, g^-1}A: an inverse-closed left transversal Y of A in it that is a
    left transversal of H in HYH. Raises HypothesisNotMet unless H is a perfect code of G.
    """
    _require_h_perfect(inst, budget)
    G, A, H = inst.G, inst.A, inst.H
    aprofile = coset_profile(G, A)
    hcosets = left_cosets(G, H)
    hdouble = coset_profile(G, H).double_coset
    witnesses = {}
    nodes = 0
    for members in aprofile.classes:
        counter = NodeBudget(budget)
        try:
            found = _class_search(aprofile.cosets, hcosets, hdouble, members, counter)
        finally:
            nodes += counter.nodes
        rep = aprofile.cosets.representatives[members[0]]
        if found is None:
            return CheckResult(False, rep, {"nodes": nodes})
        witnesses[str(rep)] = [str(y) for y in sorted(found.values())]
    return CheckResult(True, None, {"nodes": nodes, "witnesses": witnesses})


@dataclass
class PairDecision:
    verdict: Verdict
    paths: Dict[str, Verdict]
    necessary: CheckResult

    def to_record(self, timings: bool = False) -> dict:
        return {
            "verdict": self.verdict.to_record(timings),
            "paths": {name: v.to_record(timings) for name, v in sorted(self.paths.items())},
            "necessary_condition": self.necessary.to_record(),
            "agreement": all(
                v.status is self.verdict.status for v in self.paths.values() if v.is_definite
            ),
        }


def _commuting_verdict(inst, budget) -> Verdict:
    start = time.perf_counter()
    try:
        X = find_commuting_transversal(inst, budget)
    except BudgetExceeded as e:
        return Verdict(
            Status.UNKNOWN,
            "commuting-transversal",
            "node budget exhausted",
            search_nodes=e.nodes,
        )
    elapsed = (time.perf_counter() - start) * 1000
    if X is None:
        return Verdict(
            Status.NOT_PERFECT_CODE,
            "commuting-transversal",
            "H is a perfect code of G and no inverse-closed X with XH = HX exists",
            elapsed_ms=elapsed,
        )
    return Verdict(
        Status.PERFECT_CODE,
        "commuting-transversal",
        "inverse-closed left transversal X of A with XH = HX",
        witness=X,
        elapsed_ms=elapsed,
    )


def decide_pair(
    inst: PairInstance, budget: Optional[int] = None, cross_check: bool = False
) -> PairDecision:
    """
    Run the necessary condition, the normal-closure obstruction, the commuting transversal
    search (when H is a perfect code of G) and the raw pair search, stopping at the first
    definite answer unless ``cross_check`` is set. Definite answers must all agree.
    """
    paths: Dict[str, Verdict] = {}
    necessary = parity_or_square_condition(inst)
    if not necessary:
        paths["parity-or-square-condition"] = Verdict(
            Status.NOT_PERFECT_CODE,
            "parity-or-square-condition",
            "|A{g,g^-1}A|/|A| odd and no x in gA with x^2 in a conjugate of H by A",
            violating_element=necessary.element,
        )
    if necessary or cross_check:
        obstruction = normal_closure_obstruction(inst, budget)
        if obstruction is not None:
            paths["normal-closure-obstruction"] = obstruction
    if not paths or cross_check:
        if is_perfect_code_of_group(inst.G, inst.H, budget).is_perfect_code:
            paths["commuting-transversal"] = _commuting_verdict(inst, budget)
    if not any(v.is_definite for v in paths.values()) or cross_check:
        paths["pair-transversal-search"] = search_pair_transversal(inst, budget)
    definite = [v for v in paths.values() if v.is_definite]
    if len({v.status for v in definite}) > 1:
        summary = ", ".join(f"{name}={v.status.value}" for name, v in sorted(paths.items()))
        raise ConsistencyViolation(f"decision paths disagree: {summary}")
    if definite:
        order = [
            "parity-or-square-condition",
            "normal-closure-obstruction",
            "commuting-transversal",
            "pair-transversal-search",
        ]
        verdict = next(paths[name] for name in order if name in paths and paths[name].is_definite)
    else:
        verdict = paths["pair-transversal-search"]
    if verdict.is_perfect_code and not necessary:
        raise ConsistencyViolation("perfect pair code violates the necessary condition")
    return PairDecision(verdict, paths, necessary)


def sylow_reduction_check(G: PermGroup, A: PermGroup, budget: Optional[int] = None) -> bool:
    """A and its Sylow 2-subgroup must be perfect codes of G together."""
    whole = is_perfect_code_of_group(G, A, budget)
    P = sylow_2(A)
    part = is_perfect_code_of_group(G, P, budget)
    if whole.is_definite and part.is_definite and whole.status is not part.status:
        raise ConsistencyViolation(
            f"{A!r} is {whole.status.value} but its Sylow 2-subgroup {P!r} is {part.status.value}"
        )
    return whole.is_perfect_code
