from collections import Counter

import pytest

from perfectcodes.constructions import parse_family
from perfectcodes.errors import BudgetExceeded, ConsistencyViolation
from perfectcodes.graphs import double_coset_class_count
from perfectcodes.named_groups import parse_group, symmetric
from perfectcodes.verification import (
    ClaimRow,
    _aggregate,
    _guarded,
    check_affine,
    check_dihedral,
    check_field_agammal,
    check_field_c2,
    check_graph_oracle,
    check_group_equivalence,
    check_intransitive,
    check_pair_equivalence,
    check_survey,
    check_sym_chains,
    family_claims,
    group_conditions,
    sample_pair_instances,
    stratum,
)


def test_claim_row_results():
    assert ClaimRow("s", True).result == "PASS"
    assert ClaimRow("s", False).result == "FAIL"
    assert ClaimRow("s", None).result == "UNKNOWN"
    assert ClaimRow("s", None, "why", True).to_record() == {
        "statement": "s",
        "result": "UNKNOWN",
        "detail": "why",
        "definite_required": True,
    }


def test_aggregate():
    assert _aggregate("s", {"a": True, "b": True}).passed is True
    row = _aggregate("s", {"a": True, "b": None})
    assert row.passed is None
    assert "b" in row.detail
    row = _aggregate("s", {"a": False, "b": None}, definite_required=True)
    assert row.passed is False
    assert row.detail == "fails for a"
    assert row.definite_required


def test_guarded_turns_errors_into_rows():
    def exhausted():
        raise BudgetExceeded(5)

    def broken():
        raise ConsistencyViolation("mismatch")

    [row] = _guarded("search", exhausted)
    assert row.result == "UNKNOWN"
    assert row.definite_required
    [row] = _guarded("broken", broken)
    assert row.result == "FAIL"
    assert row.detail == "mismatch"


def test_group_conditions_agree_on_s4():
    G = symmetric(4)
    for name in ("S3", "[(1 2 3)]", "[(1 2)(3 4),(1 3)(2 4)]", "[(1 2 3 4)]"):
        conditions = group_conditions(G, parse_group(name, 4))
        assert len(set(conditions.values())) == 1, name


def test_sampling_is_seeded():
    first = sample_pair_instances(6, seed=3)
    second = sample_pair_instances(6, seed=3)
    assert [(i.G, i.A, i.H) for i in first] == [(i.G, i.A, i.H) for i in second]
    for inst in first:
        assert inst.H <= inst.A <= inst.G
        assert double_coset_class_count(inst) <= 12


def test_sampling_is_stratified():
    instances = sample_pair_instances(20, seed=0)
    assert Counter(stratum(inst) for inst in instances) == {"proper": 16, "whole": 2, "trivial": 2}
    for inst in instances:
        if stratum(inst) == "proper":
            assert 1 < inst.H.order < inst.A.order
        elif stratum(inst) == "whole":
            assert inst.H == inst.A and not inst.A.is_trivial()


@pytest.mark.parametrize(
    "spec", ["dihedral:1", "sym_chain:1,2,4", "intransitive:2,5", "field_agammal:3,1"]
)
def test_family_claims_pass(spec):
    rows = family_claims(parse_family(spec))
    assert rows
    assert all(row.passed for row in rows), [r.to_record() for r in rows]


def test_survey_for_small_degrees():
    [row] = check_survey(degrees=(2, 3, 4))
    assert row.passed
    assert row.definite_required


@pytest.mark.slow
@pytest.mark.parametrize(
    "check",
    [
        check_group_equivalence,
        check_dihedral,
        check_field_c2,
        check_field_agammal,
        check_sym_chains,
        check_intransitive,
        check_affine,
        check_survey,
    ],
)
def test_claim_checks(check):
    rows = check()
    assert rows
    assert all(row.passed for row in rows), [r.to_record() for r in rows if not r.passed]


@pytest.mark.slow
def test_sampled_claim_checks():
    oracle = check_graph_oracle(samples=40, seed=7)
    assert oracle[-1].statement.startswith("graph oracle sample holds NotPerfectCode")
    rows = check_pair_equivalence(samples=40, seed=7) + oracle
    assert all(row.passed for row in rows), [r.to_record() for r in rows if not r.passed]
