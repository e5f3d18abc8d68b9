import pytest

from perfectcodes.catalog import CatalogEntry, certify, maximal_catalog
from perfectcodes.errors import ConsistencyViolation, ParameterOutOfRange
from perfectcodes.named_groups import alternating, parse_group
from perfectcodes.verification import survey_maximal


@pytest.mark.parametrize(
    "n, names",
    [
        (2, {"1"}),
        (3, {"A3", "S2xS1"}),
        (4, {"A4", "S3xS1", "S2wrS2"}),
        (5, {"A5", "S4xS1", "S3xS2", "AGL(1,5)"}),
        (6, {"A6", "S5xS1", "S4xS2", "S2wrS3", "S3wrS2", "PGL(2,5)"}),
        (7, {"A7", "S6xS1", "S5xS2", "S4xS3", "AGL(1,7)"}),
    ],
)
def test_catalog_entries(n, names):
    entries = maximal_catalog(n)
    assert {entry.name for entry in entries} == names
    for entry in entries:
        assert entry.group.order == entry.expected_order
        assert entry.group.degree == n


@pytest.mark.parametrize("n", [1, 8])
def test_catalog_range(n):
    with pytest.raises(ParameterOutOfRange):
        maximal_catalog(n)


def test_certify_rejects_nested_entries():
    A4 = alternating(4)
    V4 = parse_group("[(1 2)(3 4),(1 3)(2 4)]")
    entries = [
        CatalogEntry("A4", "alternating", A4, 12, "test"),
        CatalogEntry("V4", "imprimitive", V4, 4, "test"),
    ]
    with pytest.raises(ConsistencyViolation):
        certify(4, entries)


def test_certify_rejects_wrong_orders():
    entry = CatalogEntry("A4", "alternating", alternating(4), 24, "test")
    with pytest.raises(ConsistencyViolation):
        certify(4, [entry])


def test_entry_record():
    record = maximal_catalog(5)[-1].to_record()
    assert record["name"] == "AGL(1,5)"
    assert record["order"] == 20
    assert record["kind"] == "affine"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_maximal_subgroups_are_perfect_codes(n):
    results = survey_maximal(n)
    assert len(results) == len(maximal_catalog(n))
    assert all(verdict.is_perfect_code for _, verdict in results)


@pytest.mark.slow
def test_maximal_subgroups_of_s6_are_perfect_codes():
    assert all(verdict.is_perfect_code for _, verdict in survey_maximal(6))
