"""
Executable checks of the claims this library reproduces.

Every ``check_*`` function returns ``ClaimRow`` objects; ``verify_claims`` runs them all for
the ``verify-paper`` command. A row is PASS, FAIL, or UNKNOWN when a search ran out of
budget before reaching a definite answer.
"""
import logging
import random
from collections import Counter
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from .catalog import CatalogEntry, maximal_catalog
from .codes import (
    PairInstance,
    Status,
    Verdict,
    condition_triggers,
    coset_profile,
    decide_pair,
    double_coset_condition,
    find_commuting_transversal,
    find_inverse_closed_transversal,
    is_perfect_code_of_group,
    normal_closure_obstruction,
    parity_or_square_condition,
    per_class_commuting_transversals,
    per_class_transversals_exist,
    search_pair_transversal,
    square_coset_condition,
    sylow_reduction_check,
)
from .config import MODES, get_settings
from .constructions import (
    ChainTransversal,
    Family,
    TripleSpec,
    affine_involution_setup,
    build_affine,
    build_dihedral,
    build_field_agammal,
    build_field_c2,
    build_intransitive,
    build_sym_chain,
    intransitive_involution,
    qualifying_normalizer_elements,
    semiregular_coset_involution,
    symmetric_chain_partner,
    symmetric_chain_transversal,
)
from .errors import BudgetExceeded, ConsistencyViolation, PreconditionViolated
from .graphs import double_coset_class_count, find_witness_connection_set
from .groups import PermGroup, all_subgroups, conjugate_subgroup, double_coset_union, trivial_group
from .named_groups import alternating, catalog_groups, symmetric

log = logging.getLogger("perfectcodes.verification")

DIHEDRAL_RANGE = range(1, 6)
FIELD_C2_DEGREES = (2, 3)
FIELD_C2_PAIR_BUDGET = 10**8
AGAMMAL_PARAMETERS = ((3, 3), (5, 3), (3, 1), (5, 1), (7, 1))
CHAIN_MAX_DEGREE = 6
INTRANSITIVE_MAX_DEGREE = 7
AFFINE_PRIMES = (3, 5, 7)
SEMIREGULAR_PRIMES = (5, 7)
SURVEY_DEGREES = range(2, 7)
ORACLE_SAMPLES = 200
ORACLE_MAX_ORDER = 120
ORACLE_MAX_CLASSES = 12
# One sampling slot per entry, cycled; keeps H = A and H = 1 to a fifth of the sample.
STRATUM_PLAN = ("proper",) * 8 + ("whole", "trivial")


@dataclass
class ClaimRow:
    statement: str
    passed: Optional[bool]
    detail: str = ""
    definite_required: bool = False

    @property
    def result(self) -> str:
        if self.passed is None:
            return "UNKNOWN"
        return "PASS" if self.passed else "FAIL"

    def to_record(self) -> dict:
        return {
            "statement": self.statement,
            "result": self.result,
            "detail": self.detail,
            "definite_required": self.definite_required,
        }


def _progress(items: Iterable, desc: str, progress: bool):
    return tqdm(list(items), desc=desc, disable=None if progress else True, leave=False)


def _aggregate(
    statement: str, results: Dict[str, Optional[bool]], definite_required: bool = False
) -> ClaimRow:
    """One row for a claim checked on several instances, keyed by instance label."""
    failed = [label for label, ok in results.items() if ok is False]
    unknown = [label for label, ok in results.items() if ok is None]
    if failed:
        passed, detail = False, "fails for " + "; ".join(failed)
    elif unknown:
        passed, detail = None, "undecided for " + "; ".join(unknown)
    else:
        passed, detail = True, f"{len(results)} instance(s): " + "; ".join(results)
    return ClaimRow(statement, passed, detail, definite_required)


def _status_is(verdict: Verdict, expected: Status) -> Optional[bool]:
    if not verdict.is_definite:
        return None
    return verdict.status is expected


def group_conditions(G: PermGroup, A: PermGroup, budget: Optional[int] = None) -> Dict[str, bool]:
    """The four group-level characterizations of A being a perfect code of G."""
    return {
        "square_coset": square_coset_condition(G, A).holds,
        "double_coset": double_coset_condition(G, A).holds,
        "transversal": find_inverse_closed_transversal(G, A, budget) is not None,
        "per_class": per_class_transversals_exist(G, A).holds,
    }


def equivalence_groups() -> List[PermGroup]:
    return catalog_groups() + [symmetric(n) for n in range(2, 6)]


def check_group_equivalence(budget: Optional[int] = None, progress: bool = False):
    pairs = 0
    disagreements = []
    for G in _progress(equivalence_groups(), "group equivalence", progress):
        for A in all_subgroups(G):
            pairs += 1
            outcome = group_conditions(G, A, budget)
            if len(set(outcome.values())) > 1:
                log.warning("Characterizations disagree for %r in %r: %s", A, G, outcome)
                disagreements.append(f"{A!r} in {G!r}")
    detail = f"{pairs} subgroup pairs, {len(disagreements)} disagreements"
    if disagreements:
        detail += ": " + ", ".join(disagreements[:5])
    return [ClaimRow("group-level characterizations agree", not disagreements, detail)]


def check_dihedral(budget: Optional[int] = None, progress: bool = False):
    necessary, searched = {}, {}
    for n in _progress(DIHEDRAL_RANGE, "dihedral", progress):
        inst = build_dihedral(n).instance
        necessary[f"n={n}"] = parity_or_square_condition(inst).holds
        verdict = search_pair_transversal(inst, budget)
        searched[f"n={n}"] = _status_is(verdict, Status.NOT_PERFECT_CODE)
    return [
        _aggregate("dihedral: every coset of A passes the parity-or-square test", necessary),
        _aggregate("dihedral: no left transversal X of A with XH = HX^-1", searched, True),
    ]


def ratios_outside_A(inst: PairInstance) -> Set[Tuple[int, int]]:
    """Every value of (|A{g,g^-1}A| / |A|, |AgA| / |A|) over the cosets gA other than A."""
    G, A = inst.G, inst.A
    seen = set()
    for g in inst.cosets_A_in_G.representatives:
        if g not in A:
            union = double_coset_union(G, A, g)
            seen.add((union.ratio, union.double_coset_ratio))
    return seen


def check_field_c2(
    budget: Optional[int] = None, progress: bool = False, pair_budget: int = FIELD_C2_PAIR_BUDGET
):
    ratios, obstruction, searched = {}, {}, {}
    for d in _progress(FIELD_C2_DEGREES, "field C2", progress):
        triple = build_field_c2(d)
        inst = triple.instance
        ratios[f"d={d}"] = ratios_outside_A(inst) == {(2, 2)}
        fired = normal_closure_obstruction(inst, budget)
        moved = conjugate_subgroup(inst.H, triple.elements["s^(2^d-1)"]) != inst.H
        obstruction[f"d={d}"] = fired is not None and moved
        if d == 2:
            verdict = search_pair_transversal(inst, pair_budget)
            searched[f"d={d}, {verdict.search_nodes} nodes"] = _status_is(
                verdict, Status.NOT_PERFECT_CODE
            )
    return [
        _aggregate("field C2: |A{g,g^-1}A|/|A| = |AgA|/|A| = 2 for every g outside A", ratios),
        _aggregate("field C2: normal-closure obstruction fires, H^t != H", obstruction),
        _aggregate(
            "field C2: pair transversal search finds no code", searched, definite_required=True
        ),
    ]


def self_paired_cosets(G: PermGroup, A: PermGroup) -> List[int]:
    """Cosets gA outside A with AgA = Ag^-1A."""
    profile = coset_profile(G, A)
    index = profile.cosets.coset_index
    home = index[G.identity]
    return [
        c
        for c, g in enumerate(profile.cosets.representatives)
        if c != home and profile.double_coset[c] == profile.double_coset[index[g.inverse()]]
    ]


def only_half_turn_self_paired(triple: TripleSpec) -> bool:
    inst = triple.instance
    half_turn = inst.cosets_A_in_G.coset_index[triple.elements["s^((q-1)/2)"]]
    return self_paired_cosets(inst.G, inst.A) == [half_turn]


def check_field_agammal(budget: Optional[int] = None, progress: bool = False):
    necessary, self_paired, odd_code, obstruction, decided = {}, {}, {}, {}, {}
    for p, f in _progress(AGAMMAL_PARAMETERS, "AGammaL", progress):
        triple = build_field_agammal(p, f)
        inst = triple.instance
        G, A = inst.G, inst.A
        label = f"({p},{f})"
        necessary[label] = parity_or_square_condition(inst).holds
        self_paired[label] = only_half_turn_self_paired(triple)
        odd_code[label] = A.order % 2 == 1 and _status_is(
            is_perfect_code_of_group(G, A, budget), Status.PERFECT_CODE
        )
        expect_obstruction = "normal-closure-obstruction" in triple.expected
        fired = normal_closure_obstruction(inst, budget) is not None
        obstruction[label] = fired == expect_obstruction
        expected = Status(triple.expected[-1])
        decided[label] = _status_is(decide_pair(inst, budget).verdict, expected)
    return [
        _aggregate("AGammaL: parity-or-square test holds for every coset", necessary),
        _aggregate("AGammaL: s^((q-1)/2)A is the only self-paired coset outside A", self_paired),
        _aggregate("AGammaL: A has odd order and is a perfect code of G", odd_code),
        _aggregate("AGammaL: obstruction fires exactly when f > 1", obstruction),
        _aggregate("AGammaL: pair decision matches f", decided, definite_required=True),
    ]


def chain_parameters(max_n: int = CHAIN_MAX_DEGREE) -> List[Tuple[int, int, int]]:
    return [(l, m, n) for n in range(3, max_n + 1) for m in range(2, n) for l in range(1, m)]


def chain_partners_hold(
    chain: ChainTransversal, H: PermGroup, parameters: Tuple[int, int, int]
) -> bool:
    """For every x(sigma) and h in H, the partner y lies in X and x h y lies in H."""
    members = set(chain.transversal)
    for sigma, x in chain.by_injection.items():
        for h in H.elements:
            y = symmetric_chain_partner(*parameters, sigma, h)
            if y not in members or x * h * y not in H:
                return False
    return True


def check_sym_chains(budget: Optional[int] = None, progress: bool = False):
    certified, partners, decided = {}, {}, {}
    for l, m, n in _progress(chain_parameters(), "symmetric chains", progress):
        label = f"({l},{m},{n})"
        try:
            chain = symmetric_chain_transversal(l, m, n)
        except ConsistencyViolation as e:
            log.error("Chain transversal %s failed: %s", label, e)
            certified[label] = False
            continue
        certified[label] = all(chain.certificate.values())
        inst = build_sym_chain(l, m, n).instance
        partners[label] = chain_partners_hold(chain, inst.H, (l, m, n))
        decided[label] = _status_is(decide_pair(inst, budget).verdict, Status.PERFECT_CODE)
    return [
        _aggregate("symmetric chains: X has n!/m! elements and X S_l = S_l X^-1", certified),
        _aggregate("symmetric chains: partner y lies in X and x h y lies in S_l", partners),
        _aggregate("symmetric chains: pair decision is PerfectCode", decided, True),
    ]


def intransitive_involutions_hold(inst: PairInstance, m: int, n: int) -> bool:
    """The explicit involution lies in xA for every x triggering the square-coset test."""
    for x in condition_triggers(inst.G, inst.A):
        try:
            y = intransitive_involution(x, m, n)
        except PreconditionViolated as e:
            log.error("Involution for %s rejected: %s", x, e)
            return False
        if not y.squares_to_identity() or x.inverse() * y not in inst.A:
            return False
    return True


def check_intransitive(budget: Optional[int] = None, progress: bool = False):
    involutions, codes = {}, {}
    cases = [(m, n) for n in range(2, INTRANSITIVE_MAX_DEGREE + 1) for m in range(1, n)]
    for m, n in _progress(cases, "intransitive", progress):
        inst = build_intransitive(m, n).instance
        G, A = inst.G, inst.A
        label = f"S{m}xS{n - m} in S{n}"
        involutions[label] = intransitive_involutions_hold(inst, m, n)
        codes[label] = _status_is(is_perfect_code_of_group(G, A, budget), Status.PERFECT_CODE)
    return [
        _aggregate("intransitive: explicit involution in xA for every trigger x", involutions),
        _aggregate("intransitive: Sm x Sn-m is a perfect code of Sn", codes, True),
    ]


def check_affine(budget: Optional[int] = None, progress: bool = False):
    codes, sylow, involutions = {}, {}, {}
    for p in _progress(AFFINE_PRIMES, "affine", progress):
        inst = build_affine(p).instance
        label = f"p={p}"
        codes[label] = _status_is(
            is_perfect_code_of_group(inst.G, inst.A, budget), Status.PERFECT_CODE
        )
        sylow[label] = sylow_reduction_check(inst.G, inst.A, budget)
    for p in SEMIREGULAR_PRIMES:
        setup = affine_involution_setup(p)
        qualifying = qualifying_normalizer_elements(setup.G0, setup.Q)
        ok = bool(qualifying)
        for x in qualifying:
            y = semiregular_coset_involution(setup.G0, setup.Q, x, setup.domain)
            if not y.is_involution() or x.inverse() * y not in setup.Q:
                ok = False
        involutions[f"p={p}, {len(qualifying)} elements"] = ok
    return [
        _aggregate("affine: AGL(1,p) is a perfect code of Sym(p)", codes, True),
        _aggregate("affine: Sylow 2-subgroup of AGL(1,p) agrees", sylow),
        _aggregate("affine: semiregular coset involution for every qualifying x", involutions),
    ]


def family_claims(triple: TripleSpec, budget: Optional[int] = None) -> List[ClaimRow]:
    """The structural claims specific to the family a triple was built from."""
    inst = triple.instance
    family = triple.family
    rows = []
    if family in (Family.DIHEDRAL, Family.FIELD_C2, Family.FIELD_AGAMMAL):
        holds = parity_or_square_condition(inst).holds
        rows.append(ClaimRow("parity-or-square test holds for every coset", holds))
    if family is Family.FIELD_C2:
        ratios = ratios_outside_A(inst)
        rows.append(
            ClaimRow(
                "|A{g,g^-1}A|/|A| = |AgA|/|A| = 2 for every g outside A",
                ratios == {(2, 2)},
                f"ratios {sorted(ratios)}",
            )
        )
    if family is Family.FIELD_AGAMMAL:
        rows.append(
            ClaimRow(
                "s^((q-1)/2)A is the only self-paired coset outside A",
                only_half_turn_self_paired(triple),
            )
        )
        verdict = is_perfect_code_of_group(inst.G, inst.A, budget)
        rows.append(
            ClaimRow(
                "A has odd order and is a perfect code of G",
                inst.A.order % 2 == 1 and _status_is(verdict, Status.PERFECT_CODE),
            )
        )
    if family is Family.SYM_CHAIN:
        chain = symmetric_chain_transversal(*triple.parameters)
        for name, ok in chain.certificate.items():
            rows.append(ClaimRow(f"chain transversal: {name}", ok))
        holds = chain_partners_hold(chain, inst.H, triple.parameters)
        rows.append(ClaimRow("partner y lies in X and x h y lies in S_l", holds))
    if family is Family.INTRANSITIVE_MAX:
        holds = intransitive_involutions_hold(inst, *triple.parameters)
        rows.append(ClaimRow("explicit involution in xA for every trigger x", holds))
    if family is Family.AFFINE:
        holds = sylow_reduction_check(inst.G, inst.A, budget)
        rows.append(ClaimRow("A and its Sylow 2-subgroup are perfect codes together", holds))
    return rows


def survey_maximal(
    n: int, budget: Optional[int] = None, progress: bool = False
) -> List[Tuple[CatalogEntry, Verdict]]:
    """Decide every catalogued maximal subgroup of Sym(n) as a perfect code of Sym(n)."""
    entries = maximal_catalog(n)
    G = symmetric(n)
    results = []
    for entry in _progress(entries, f"survey S{n}", progress):
        verdict = is_perfect_code_of_group(G, entry.group, budget)
        log.info("Maximal subgroup %s of S%d: %s", entry.name, n, verdict.status.value)
        results.append((entry, verdict))
    return results


def check_survey(
    budget: Optional[int] = None, progress: bool = False, degrees: Iterable[int] = SURVEY_DEGREES
):
    results = {}
    for n in degrees:
        for entry, verdict in survey_maximal(n, budget, progress):
            results[f"{entry.name} in S{n}"] = _status_is(verdict, Status.PERFECT_CODE)
    statement = "survey: every maximal subgroup of Sym(n) is a perfect code"
    return [_aggregate(statement, results, True)]


def sampling_pool() -> List[PermGroup]:
    return [G for G in catalog_groups() if G.order <= ORACLE_MAX_ORDER] + [
        alternating(5),
        symmetric(5),
    ]


def stratum(inst: PairInstance) -> str:
    """``trivial`` for H = 1, ``whole`` for H = A, ``proper`` for 1 < H < A."""
    if inst.H.is_trivial():
        return "trivial"
    return "whole" if inst.H == inst.A else "proper"


def _draw_inner(
    rng: random.Random, G: PermGroup, A: PermGroup, lattice: Sequence[PermGroup], wanted: str
) -> Optional[PermGroup]:
    if A.is_trivial():
        return None
    if wanted == "whole":
        return A
    if wanted == "trivial":
        return trivial_group(G.degree)
    proper = [K for K in lattice if K <= A and K != A and not K.is_trivial()]
    return rng.choice(proper) if proper else None


def sample_pair_instances(
    count: int = ORACLE_SAMPLES,
    seed: Optional[int] = None,
    max_classes: int = ORACLE_MAX_CLASSES,
    pool: Optional[Sequence[PermGroup]] = None,
) -> List[PairInstance]:
    """
    ``count`` seeded random triples H <= A <= G with G from ``pool`` and at most
    ``max_classes`` inverse-paired H-double-coset classes outside H.

    Strata follow ``STRATUM_PLAN``: mostly 1 < H < A, with H = A and H = 1 capped at one
    slot in ten each.
    """
    rng = random.Random(get_settings().seed if seed is None else seed)
    pool = sampling_pool() if pool is None else list(pool)
    subgroups: Dict[PermGroup, List[PermGroup]] = {}
    instances = []
    attempts = 0
    while len(instances) < count:
        attempts += 1
        if attempts > 100 * count:
            raise ConsistencyViolation(
                f"only {len(instances)} of {count} instances found in {attempts} attempts"
            )
        G = rng.choice(pool)
        if G not in subgroups:
            subgroups[G] = all_subgroups(G)
        A = rng.choice(subgroups[G])
        H = _draw_inner(rng, G, A, subgroups[G], STRATUM_PLAN[len(instances) % len(STRATUM_PLAN)])
        if H is None:
            continue
        inst = PairInstance(G, A, H)
        if double_coset_class_count(inst) <= max_classes:
            instances.append(inst)
    log.debug("Sampled %d instances in %d attempts", count, attempts)
    return instances


def check_graph_oracle(
    budget: Optional[int] = None,
    progress: bool = False,
    samples: int = ORACLE_SAMPLES,
    seed: Optional[int] = None,
):
    mismatches = {mode: [] for mode in MODES}
    tally = Counter()
    unknown = 0
    instances = sample_pair_instances(samples, seed)
    for i, inst in enumerate(_progress(instances, "graph oracle", progress)):
        verdict = search_pair_transversal(inst, budget)
        if not verdict.is_definite:
            unknown += 1
            continue
        tally[stratum(inst), verdict.status] += 1
        for mode in MODES:
            found = find_witness_connection_set(inst, mode) is not None
            if found != verdict.is_perfect_code:
                mismatches[mode].append(f"#{i}")
    strata = ", ".join(
        f"{name} {tally[name, Status.PERFECT_CODE]}/{tally[name, Status.NOT_PERFECT_CODE]}"
        for name in ("proper", "whole", "trivial")
    )
    rows = []
    for mode in MODES:
        if mismatches[mode]:
            passed, detail = False, "mismatches at " + ", ".join(mismatches[mode])
        else:
            passed = None if unknown else True
            detail = f"{samples} instances ({strata} perfect/not), {unknown} undecided"
        rows.append(
            ClaimRow(f"graph oracle ({mode}): witness graph iff pair transversal", passed, detail)
        )
    covered = tally["proper", Status.NOT_PERFECT_CODE]
    rows.append(
        ClaimRow(
            "graph oracle sample holds NotPerfectCode pairs with 1 < H < A",
            True if covered else None,
            f"{covered} instance(s)",
        )
    )
    return rows


def pair_conditions(inst: PairInstance, budget: Optional[int] = None) -> Dict[str, bool]:
    """The pair-level characterizations; H must be a perfect code of G."""
    return {
        "commuting": find_commuting_transversal(inst, budget) is not None,
        "per_class": per_class_commuting_transversals(inst, budget).holds,
        "pair_search": search_pair_transversal(inst, budget).is_perfect_code,
    }


def check_pair_equivalence(
    budget: Optional[int] = None,
    progress: bool = False,
    samples: int = ORACLE_SAMPLES,
    seed: Optional[int] = None,
):
    compared = 0
    disagreements = []
    for i, inst in enumerate(_progress(sample_pair_instances(samples, seed), "pairs", progress)):
        if inst.G.order // inst.A.order > 8:
            continue
        if not is_perfect_code_of_group(inst.G, inst.H, budget).is_perfect_code:
            continue
        compared += 1
        outcome = pair_conditions(inst, budget)
        if len(set(outcome.values())) > 1:
            log.warning("Pair characterizations disagree on instance %d: %s", i, outcome)
            disagreements.append(f"#{i}")
    detail = f"{compared} instances with H a perfect code of G"
    detail += f", {len(disagreements)} disagreements"
    return [ClaimRow("pair-level characterizations agree", not disagreements, detail)]


def _guarded(name: str, check: Callable[[], List[ClaimRow]]) -> List[ClaimRow]:
    try:
        return check()
    except BudgetExceeded as e:
        log.warning("%s ran out of budget after %d nodes", name, e.nodes)
        return [ClaimRow(name, None, str(e), definite_required=True)]
    except (ConsistencyViolation, PreconditionViolated) as e:
        log.error("%s failed: %s", name, e)
        return [ClaimRow(name, False, str(e))]


def verify_claims(
    budget: Optional[int] = None,
    progress: bool = False,
    stretch: bool = False,
    samples: int = ORACLE_SAMPLES,
) -> List[ClaimRow]:
    """Run every claim check; ``stretch`` adds Sym(7) to the survey."""
    degrees = range(2, 8) if stretch else SURVEY_DEGREES
    checks = [
        ("group-level equivalence", partial(check_group_equivalence, budget, progress)),
        ("dihedral family", partial(check_dihedral, budget, progress)),
        ("field C2 family", partial(check_field_c2, budget, progress)),
        ("AGammaL family", partial(check_field_agammal, budget, progress)),
        ("symmetric chains", partial(check_sym_chains, budget, progress)),
        ("intransitive subgroups", partial(check_intransitive, budget, progress)),
        ("affine subgroups", partial(check_affine, budget, progress)),
        ("maximal subgroup survey", partial(check_survey, budget, progress, degrees)),
        ("pair-level equivalence", partial(check_pair_equivalence, budget, progress, samples)),
        ("graph oracle", partial(check_graph_oracle, budget, progress, samples)),
    ]
    rows = []
    for name, check in checks:
        log.info("Checking %s", name)
        rows += _guarded(name, check)
    return rows
