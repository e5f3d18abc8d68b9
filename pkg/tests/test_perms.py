import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfectcodes.errors import InvalidInput, ParseError
from perfectcodes.perms import Permutation, extend, parse_generators, split_top_level
from strategies import permutations


def test_product_applies_left_factor_first():
    p = Permutation.parse("(1 2)", 3)
    q = Permutation.parse("(2 3)", 3)
    assert str(p * q) == "(1 3 2)"
    assert str(q * p) == "(1 2 3)"


def test_identity_prints_empty_cycle():
    assert str(Permutation.identity(4)) == "()"
    assert Permutation.parse("()", 3) == Permutation.identity(3)


def test_parse_accepts_commas_and_spaces():
    assert Permutation.parse("(1,2)(3 4)", 4) == Permutation.parse("(1 2)(3 4)", 4)
    assert Permutation.parse("(1 2 3)").degree == 3


@pytest.mark.parametrize(
    "text",
    ["", "(1 2", "1 2", "(0 1)", "(1 a)", "(1 2 1)", "(1 5)"],
)
def test_parse_rejects_bad_cycles(text):
    with pytest.raises(ParseError):
        Permutation.parse(text, 4)


def test_constructor_rejects_non_bijections():
    with pytest.raises(InvalidInput):
        Permutation([0, 0, 1])


def test_conjugation_is_right_action():
    x = Permutation.parse("(1 2)", 3)
    g = Permutation.parse("(1 2 3)", 3)
    assert x.conjugate(g) == g.inverse() * x * g
    assert str(x.conjugate(g)) == "(2 3)"


def test_involution_and_order():
    assert Permutation.parse("(1 2)(3 4)", 4).is_involution()
    assert not Permutation.identity(4).is_involution()
    assert Permutation.identity(4).squares_to_identity()
    assert Permutation.parse("(1 2 3)(4 5)", 5).order() == 6


@given(permutations())
def test_inverse_cancels(x):
    identity = Permutation.identity(x.degree)
    assert x * x.inverse() == identity
    assert ~x * x == identity


@given(permutations(degree=5), permutations(degree=5), permutations(degree=5))
def test_product_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(permutations(degree=6), st.integers(min_value=-7, max_value=7))
def test_power_matches_repeated_product(x, k):
    expected = Permutation.identity(6)
    step = x if k >= 0 else x.inverse()
    for _ in range(abs(k)):
        expected = expected * step
    assert x**k == expected


@given(permutations(max_degree=8))
def test_str_parses_back(x):
    assert Permutation.parse(str(x), x.degree) == x


def test_split_top_level_keeps_commas_in_cycles():
    assert split_top_level("(1,2),(3 4)") == ["(1,2)", "(3 4)"]
    with pytest.raises(ParseError):
        split_top_level("(1 2))")


def test_parse_generators_uses_a_common_degree():
    gens, degree = parse_generators("[(1 2 3),(1 2)]")
    assert degree == 3
    assert [g.degree for g in gens] == [3, 3]
    gens, degree = parse_generators("[(1 2)]", 5)
    assert degree == 5
    with pytest.raises(ParseError):
        parse_generators("[]")
    with pytest.raises(ParseError):
        parse_generators("[(1 6)]", 5)


def test_extend_fixes_new_points():
    x = extend(Permutation.parse("(1 2)"), 4)
    assert x == Permutation.parse("(1 2)", 4)
    with pytest.raises(InvalidInput):
        extend(x, 2)
