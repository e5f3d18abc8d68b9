import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfectcodes.config import configure
from perfectcodes.errors import DivisionByZero, FieldTooLarge, InvalidInput, NotPrime
from perfectcodes.ffield import embed_permutations, is_irreducible, make_field

FIELDS = [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


@pytest.fixture(params=FIELDS, ids=lambda pf: f"GF({pf[0]}^{pf[1]})")
def field(request):
    return make_field(*request.param)


def test_elements_start_with_zero(field):
    assert len(field.elements) == field.q
    assert field.elements[0] == field.zero
    assert field.position[field.zero] == 0
    assert len(set(field.elements)) == field.q


def test_omega_generates_the_multiplicative_group(field):
    assert len(field.power_table) == field.q - 1
    assert set(field.power_table) == set(field.elements) - {field.zero}
    assert field.omega_power(0) == field.one


def test_inverses(field):
    for u in field.elements[1:]:
        assert field.mul(u, field.inv(u)) == field.one


def test_distributive_law(field):
    sample = field.elements[:: max(1, field.q // 7)]
    for u in sample:
        for v in sample:
            for w in sample:
                left = field.mul(u, field.add(v, w))
                right = field.add(field.mul(u, v), field.mul(u, w))
                assert left == right


def test_frobenius_is_additive_and_of_order_f(field):
    for u in field.elements:
        image = u
        for _ in range(field.f):
            image = field.frobenius(image)
        assert image == u
        for v in field.elements[:5]:
            assert field.frobenius(field.add(u, v)) == field.add(
                field.frobenius(u), field.frobenius(v)
            )


def test_zero_has_no_inverse():
    spec = make_field(3, 2)
    with pytest.raises(DivisionByZero):
        spec.inv(spec.zero)
    with pytest.raises(ZeroDivisionError):
        spec.log(spec.zero)
    assert spec.power(spec.zero, 0) == spec.one


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(InvalidInput):
        make_field(3, 0)
    with pytest.raises(FieldTooLarge):
        make_field(2, 13)
    configure(field_cap=8)
    with pytest.raises(FieldTooLarge):
        make_field(3, 2)


def test_element_validation():
    spec = make_field(3, 2)
    assert spec.element([2, 1]) in spec.elements
    with pytest.raises(InvalidInput):
        spec.element([3, 0])
    with pytest.raises(InvalidInput):
        spec.element([1])


@pytest.mark.parametrize(
    "modulus, p, irreducible",
    [
        ([1, 1, 1], 2, True),
        ([1, 0, 1], 2, False),
        ([1, 1, 0, 1], 2, True),
        ([1, 0, 1], 3, True),
        ([2, 0, 1], 3, False),
        ([1, 1], 5, True),
        ([1, 0, 0, 0, 1], 2, False),
    ],
)
def test_is_irreducible(modulus, p, irreducible):
    assert is_irreducible(modulus, p) is irreducible


@given(st.sampled_from(FIELDS))
def test_embedded_permutations(pf):
    spec = make_field(*pf)
    V, s, phi, R = embed_permutations(spec)
    assert V.order == spec.q
    assert s.order() == spec.q - 1
    assert s[0] == 0
    assert phi.order() == spec.f
    assert all(R[u] in V for u in spec.elements)
    assert R[spec.zero].is_identity()
