import json

import pytest
from hypothesis import given

from perfectcodes.codes import (
    PairInstance,
    Status,
    condition_triggers,
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
    union_classes,
    verify_group_witness,
    verify_pair_witness,
)
from perfectcodes.constructions import build_dihedral, build_field_c2, build_sym_chain
from perfectcodes.errors import BudgetExceeded, HypothesisNotMet, NotASubgroup
from perfectcodes.groups import is_normal, normal_closure, normalizer, trivial_group
from perfectcodes.named_groups import alternating, cyclic, dihedral, parse_group, symmetric
from perfectcodes.perms import Permutation
from strategies import pair_instances, subgroup_pairs


def c4_with_square():
    G = cyclic(4)
    return G, parse_group("[(1 3)(2 4)]", 4)


def d8_with_reflection():
    G = parse_group("[(1 2 3 4),(2 4)]")
    return G, parse_group("[(2 4)]", 4)


def test_c4_square_subgroup_is_not_a_perfect_code():
    G, A = c4_with_square()
    check = square_coset_condition(G, A)
    assert not check.holds
    assert str(check.element) == "(1 2 3 4)"
    assert not double_coset_condition(G, A)
    assert not per_class_transversals_exist(G, A)
    assert find_inverse_closed_transversal(G, A) is None
    verdict = is_perfect_code_of_group(G, A)
    assert verdict.status is Status.NOT_PERFECT_CODE
    assert verdict.path == "square-coset-condition"
    assert str(verdict.violating_element) == "(1 2 3 4)"


def test_d8_reflection_subgroup_is_a_perfect_code():
    G, A = d8_with_reflection()
    assert G.order == 8
    assert square_coset_condition(G, A)
    assert double_coset_condition(G, A)
    assert per_class_transversals_exist(G, A)
    verdict = is_perfect_code_of_group(G, A)
    assert verdict.is_perfect_code
    assert verify_group_witness(G, A, verdict.witness)


def test_whole_group_has_identity_transversal():
    G = symmetric(4)
    assert find_inverse_closed_transversal(G, G) == (G.identity,)
    assert square_coset_condition(G, G)


def test_s3_rotation_subgroup_transversal():
    G = symmetric(3)
    A = parse_group("[(1 2 3)]", 3)
    X = find_inverse_closed_transversal(G, A)
    assert X[0] == G.identity
    assert len(X) == 2
    assert X[1].is_involution()
    assert double_coset_condition(G, parse_group("[(1 2)]", 3))


@pytest.mark.parametrize("m, n", [(m, n) for n in range(2, 6) for m in range(1, n)])
def test_symmetric_subgroups_are_perfect_codes(m, n):
    G = symmetric(n)
    A = parse_group(f"S{m}", n) if m > 1 else trivial_group(n)
    assert is_perfect_code_of_group(G, A).is_perfect_code


def test_condition_triggers_include_a():
    G, A = c4_with_square()
    assert set(condition_triggers(G, A)) == G.element_set


def test_union_classes_cover_the_cosets():
    G, A = d8_with_reflection()
    labels = sorted(c for _, members in union_classes(G, A) for c in members)
    assert labels == list(range(4))


@given(subgroup_pairs())
def test_group_level_characterizations_agree(pair):
    G, A = pair
    verdict = is_perfect_code_of_group(G, A)
    assert verdict.is_definite
    expected = verdict.is_perfect_code
    assert square_coset_condition(G, A).holds is expected
    assert double_coset_condition(G, A).holds is expected
    assert per_class_transversals_exist(G, A).holds is expected
    if expected:
        assert verify_group_witness(G, A, verdict.witness)


@given(subgroup_pairs())
def test_odd_order_subgroups_are_perfect_codes(pair):
    G, A = pair
    if A.order % 2:
        assert is_perfect_code_of_group(G, A).is_perfect_code


@given(subgroup_pairs())
def test_sylow_reduction(pair):
    G, A = pair
    assert sylow_reduction_check(G, A) is is_perfect_code_of_group(G, A).is_perfect_code


def test_search_budget_gives_unknown():
    G = symmetric(4)
    A = parse_group("[(1 2 3)]", 4)
    verdict = is_perfect_code_of_group(G, A, budget=1)
    assert verdict.status is Status.UNKNOWN
    with pytest.raises(BudgetExceeded):
        find_inverse_closed_transversal(G, A, budget=1)


def test_pair_instance_validation():
    S4 = symmetric(4)
    with pytest.raises(NotASubgroup):
        PairInstance(S4, symmetric(3), alternating(4))
    with pytest.raises(NotASubgroup):
        PairInstance(alternating(4), S4, trivial_group(4))
    inst = PairInstance.of_group(S4, alternating(4))
    assert inst.H.is_trivial()
    assert inst.fingerprint()["index_A_in_G"] == 2


def test_h_equal_to_a_is_always_a_pair_code():
    G = symmetric(4)
    A = parse_group("[(1 2)(3 4),(1 3)(2 4)]")
    verdict = search_pair_transversal(PairInstance(G, A, A))
    assert verdict.is_perfect_code
    assert verify_pair_witness(PairInstance(G, A, A), verdict.witness)


def test_trivial_h_reduces_to_group_level():
    G, A = c4_with_square()
    inst = PairInstance.of_group(G, A)
    assert search_pair_transversal(inst).status is Status.NOT_PERFECT_CODE
    G, A = d8_with_reflection()
    assert search_pair_transversal(PairInstance.of_group(G, A)).is_perfect_code


def test_whole_group_as_a_is_a_pair_code_with_identity_witness():
    G = symmetric(4)
    H = parse_group("S3", 4)
    decision = decide_pair(PairInstance(G, G, H))
    assert decision.verdict.is_perfect_code
    assert decision.verdict.witness == (G.identity,)


def test_dihedral_family_with_n_1():
    inst = build_dihedral(1).instance
    assert parity_or_square_condition(inst)
    obstruction = normal_closure_obstruction(inst)
    assert obstruction is not None
    assert obstruction.status is Status.NOT_PERFECT_CODE
    assert obstruction.certificates["A_order"] == 4
    assert search_pair_transversal(inst).status is Status.NOT_PERFECT_CODE
    assert find_commuting_transversal(inst) is None
    assert not per_class_commuting_transversals(inst)
    decision = decide_pair(inst, cross_check=True)
    assert decision.verdict.status is Status.NOT_PERFECT_CODE
    assert decision.verdict.path == "normal-closure-obstruction"
    assert decision.to_record()["agreement"]


def test_obstruction_on_d8_uses_the_normal_closure_of_a_reflection():
    inst = build_dihedral(1).instance
    assert inst.G.order == 8
    closure_ = normal_closure(inst.G, inst.H)
    assert closure_ == inst.A
    assert normalizer(inst.G, inst.H) == inst.A
    assert not is_normal(inst.G, inst.H)
    certificates = normal_closure_obstruction(inst).certificates
    assert certificates["normal_closure_order"] == 4
    assert certificates["normalizer_order"] == 4
    assert certificates["H_perfect_code_of_G"].is_perfect_code


def test_obstruction_ignores_normal_h():
    G = symmetric(4)
    V4 = parse_group("[(1 2)(3 4),(1 3)(2 4)]")
    assert normal_closure_obstruction(PairInstance(G, G, V4)) is None


def test_field_c2_with_d_2():
    inst = build_field_c2(2).instance
    assert parity_or_square_condition(inst)
    assert normal_closure_obstruction(inst) is not None
    assert find_commuting_transversal(inst) is None
    decision = decide_pair(inst)
    assert decision.verdict.status is Status.NOT_PERFECT_CODE
    assert decision.verdict.path == "normal-closure-obstruction"


def test_chain_s5_s4_s3():
    inst = build_sym_chain(3, 4, 5).instance
    X = find_commuting_transversal(inst)
    assert X is not None
    assert verify_pair_witness(inst, X, commuting=True)
    assert per_class_commuting_transversals(inst)
    decision = decide_pair(inst, cross_check=True)
    assert decision.verdict.is_perfect_code
    assert verify_pair_witness(inst, decision.verdict.witness)


def test_commuting_search_needs_h_to_be_a_perfect_code():
    G = cyclic(4)
    A = G
    H = parse_group("[(1 3)(2 4)]", 4)
    inst = PairInstance(G, A, H)
    with pytest.raises(HypothesisNotMet):
        find_commuting_transversal(inst)
    with pytest.raises(HypothesisNotMet):
        per_class_commuting_transversals(inst)
    assert decide_pair(inst).verdict.is_perfect_code


@given(pair_instances())
def test_pair_decisions_are_sound(inst):
    decision = decide_pair(inst, cross_check=True)
    verdict = decision.verdict
    assert verdict.is_definite
    assert decision.to_record()["agreement"]
    if verdict.is_perfect_code:
        assert decision.necessary.holds
        assert verify_pair_witness(inst, verdict.witness)
    commuting = decision.paths.get("commuting-transversal")
    if commuting is not None and commuting.is_perfect_code:
        assert verify_pair_witness(inst, commuting.witness, commuting=True)


@given(pair_instances())
def test_pair_characterizations_agree_when_h_is_a_perfect_code(inst):
    if not is_perfect_code_of_group(inst.G, inst.H).is_perfect_code:
        return
    commuting = find_commuting_transversal(inst) is not None
    assert per_class_commuting_transversals(inst).holds is commuting
    assert search_pair_transversal(inst).is_perfect_code is commuting


def test_verdict_record_is_json_ready():
    G, A = d8_with_reflection()
    record = is_perfect_code_of_group(G, A).to_record()
    assert json.loads(json.dumps(record)) == record
    assert record["status"] == "PerfectCode"
    assert record["theorem_path"] == "inverse-closed-transversal"
    assert all(isinstance(x, str) for x in record["witness"])
    assert "elapsed_ms" not in record
    assert "elapsed_ms" in is_perfect_code_of_group(G, A).to_record(timings=True)


def test_dihedral_preset_matches_polygon_action():
    assert dihedral(8) == parse_group("[(1 2 3 4),(2 4)]")
    assert Permutation.parse("(2 4)", 4) in dihedral(8)
