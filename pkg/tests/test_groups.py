import pytest
from hypothesis import given
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from perfectcodes.config import configure
from perfectcodes.errors import (
    DomainNotInvariant,
    EnumerationCapExceeded,
    NotASubgroup,
    ParseError,
)
from perfectcodes.groups import (
    all_subgroups,
    closure,
    conjugate_subgroup,
    double_coset_union,
    intersect,
    is_normal,
    is_semiregular,
    left_cosets,
    normal_closure,
    normalizer,
    orbits,
    point_stabilizer,
    require_subgroup,
    right_coset,
    sylow_2,
    trivial_group,
)
from perfectcodes.named_groups import (
    affine_group,
    alternating,
    catalog_groups,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    parse_group,
    quaternion,
    symmetric,
    symmetric_on,
)
from perfectcodes.perms import Permutation
from strategies import subgroup_pairs


@pytest.mark.parametrize(
    "group, order",
    [
        (symmetric(4), 24),
        (alternating(5), 60),
        (cyclic(8), 8),
        (dihedral(4), 4),
        (dihedral(8), 8),
        (dihedral(12), 12),
        (quaternion(), 8),
        (dicyclic(12), 12),
        (affine_group(5), 20),
        (direct_product(symmetric(4), cyclic(2)), 48),
    ],
)
def test_orders(group, order):
    assert group.order == order


@pytest.mark.parametrize("group", catalog_groups(), ids=lambda G: G.name)
def test_orders_match_sympy(group):
    gens = [SympyPermutation(list(g)) for g in group.generators]
    assert PermutationGroup(gens).order() == group.order


def test_elements_are_sorted_with_identity_first():
    G = symmetric(3)
    assert G.elements[0] == G.identity
    assert list(G.elements) == sorted(G.elements)


def test_equality_ignores_generators():
    a = Permutation.parse("(1 2 3 4)", 4)
    assert closure(4, [a]) == closure(4, [a**3])
    assert closure(4, [a]) != closure(4, [a**2])


def test_closure_respects_the_cap():
    with pytest.raises(EnumerationCapExceeded):
        closure(5, symmetric(5).generators, cap=100)
    configure(enumeration_cap=50)
    with pytest.raises(EnumerationCapExceeded):
        symmetric(5)


@pytest.mark.parametrize(
    "group, count",
    [(symmetric(3), 6), (symmetric(4), 30), (dihedral(8), 10), (quaternion(), 6)],
)
def test_subgroup_counts(group, count):
    assert len(all_subgroups(group)) == count


def test_require_subgroup():
    S4 = symmetric(4)
    require_subgroup(S4, alternating(4))
    with pytest.raises(NotASubgroup):
        require_subgroup(alternating(4), S4)
    with pytest.raises(NotASubgroup):
        require_subgroup(S4, symmetric(3))


@given(subgroup_pairs())
def test_left_cosets_partition_the_group(pair):
    G, A = pair
    cosets = left_cosets(G, A)
    assert cosets.index * A.order == G.order
    assert cosets.members[0] == A.elements
    seen = set()
    for rep, members in zip(cosets.representatives, cosets.members):
        assert set(members) == {rep * a for a in A.elements}
        assert seen.isdisjoint(members)
        seen.update(members)
    assert seen == G.element_set
    assert cosets.is_transversal(cosets.representatives)


@given(subgroup_pairs())
def test_double_coset_size_formula(pair):
    G, A = pair
    for g in G.elements[:: max(1, G.order // 6)]:
        union = double_coset_union(G, A, g)
        stabilised = intersect(A, conjugate_subgroup(A, g)).order
        assert union.double_coset_ratio * stabilised == A.order
        assert union.ratio >= union.double_coset_ratio


@given(subgroup_pairs())
def test_inverting_a_left_coset_gives_a_right_coset(pair):
    G, A = pair
    cosets = left_cosets(G, A)
    for rep, members in zip(cosets.representatives, cosets.members):
        assert {y.inverse() for y in members} == right_coset(A, rep.inverse())


@given(subgroup_pairs())
def test_double_coset_unions_are_inverse_closed_unions_of_cosets(pair):
    G, A = pair
    for g in G.elements[:: max(1, G.order // 6)]:
        elements = double_coset_union(G, A, g).elements
        assert {y.inverse() for y in elements} == elements
        assert all(y * a in elements for y in elements for a in A.generators)
        assert len(elements) % A.order == 0


def d8():
    G = dihedral(8)
    a = Permutation.parse("(1 2 3 4)", 4)
    b = Permutation.parse("(2 4)", 4)
    return G, a, b


def test_d8_cosets_of_the_klein_subgroup():
    G, a, b = d8()
    e = G.identity
    V = closure(4, [a * a, b])
    assert V.element_set == {e, a * a, b, a * a * b}
    cosets = left_cosets(G, V)
    assert cosets.index == 2
    assert {frozenset(m) for m in cosets.members} == {
        V.element_set,
        frozenset(a * v for v in V.elements),
    }


def test_d8_double_coset_of_a_reflection_subgroup():
    G, a, b = d8()
    A = closure(4, [b])
    union = double_coset_union(G, A, a)
    assert union.elements == {a, a**3, a * b, a**3 * b}
    assert union.double_coset_size == 4
    assert intersect(A, conjugate_subgroup(A, a)).is_trivial()
    assert union.symmetric


def test_d8_double_coset_of_a_normal_subgroup():
    G, a, b = d8()
    V = closure(4, [a * a, b])
    union = double_coset_union(G, V, a)
    assert union.symmetric
    assert union.ratio == 1


def test_d8_normal_closure_of_a_reflection():
    G, a, b = d8()
    H = closure(4, [b])
    expected = {G.identity, b, a * a * b, a * a}
    assert normal_closure(G, H).element_set == expected
    assert normalizer(G, H).element_set == expected
    assert not is_normal(G, H)


def test_double_coset_union_in_s3():
    G = symmetric(3)
    A = parse_group("[(1 2)]", 3)
    union = double_coset_union(G, A, Permutation.parse("(1 3)", 3))
    assert union.symmetric
    assert union.ratio == 2
    assert union.double_coset_ratio == 2
    assert union.elements == G.element_set - A.element_set


def test_normal_closure_and_normalizer():
    S4 = symmetric(4)
    H = parse_group("[(1 2)]", 4)
    assert normal_closure(S4, H) == S4
    assert normalizer(S4, H).order == 4
    V4 = parse_group("[(1 2)(3 4),(1 3)(2 4)]")
    assert is_normal(S4, V4)
    assert normal_closure(S4, V4) == V4
    assert normalizer(S4, V4) == S4


@pytest.mark.parametrize(
    "group, order", [(symmetric(4), 8), (symmetric(5), 8), (alternating(5), 4), (cyclic(6), 2)]
)
def test_sylow_2(group, order):
    P = sylow_2(group)
    assert P.order == order
    assert P <= group


def test_orbits_and_stabilizers():
    G = symmetric_on(range(3), 5)
    assert orbits(G) == [(0, 1, 2), (3,), (4,)]
    assert point_stabilizer(G, 0).order == 2


def test_is_semiregular():
    C4 = cyclic(4)
    assert is_semiregular(C4, range(4))
    assert not is_semiregular(symmetric(4), range(4))
    with pytest.raises(DomainNotInvariant):
        is_semiregular(C4, range(2))
    assert is_semiregular(trivial_group(3), [0])


def test_parse_group_presets_and_lists():
    assert parse_group("S4").order == 24
    assert parse_group("Q8").order == 8
    assert parse_group("AGL1_7").order == 42
    assert parse_group("S3", 5).degree == 5
    assert parse_group("[(1 2 3),(1 2)]", 4).order == 6


@pytest.mark.parametrize("text", ["X4", "D7", "AGL1_4", "[(1 2)", "S5x"])
def test_parse_group_errors(text):
    with pytest.raises(ParseError):
        parse_group(text)


def test_parse_group_rejects_too_small_degree():
    with pytest.raises(ParseError):
        parse_group("S5", 4)
