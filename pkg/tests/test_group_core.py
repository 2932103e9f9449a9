from fractions import Fraction

import pytest

from orbivertex.errors import (Ineffective, NonSL, SpecParseError,
                               TooLarge, TrivialGroup)
from orbivertex.group_core import (age, build_group, group_from_spec,
                                   parse_group_spec)

from conftest import Z2Z2, Z3, Z4, Z5, Z6


def shifts_by_label(group):
    return {e.label: e.shifts for e in group.elements}


@pytest.mark.parametrize("label, order, small", [
    (Z3, 3, 1), (Z4, 4, 2), (Z5, 5, 2), (Z6, 6, 4), (Z2Z2, 4, 3),
])
def test_order_and_small_part(label, order, small):
    group = group_from_spec(label)
    assert group.order == order
    assert len(group.small) == small
    assert all(age(group.elements[i]) == 1 for i in group.small)


def test_z5_shifts():
    table = shifts_by_label(group_from_spec(Z5))
    assert table["xi"] == (Fraction(3, 5), Fraction(1, 5), Fraction(1, 5))
    assert table["2xi"] == (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))


def test_z6_shifts():
    table = shifts_by_label(group_from_spec(Z6))
    assert table["xi"] == (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
    assert table["2xi"] == (Fraction(1, 3), Fraction(2, 3), 0)
    assert table["3xi"] == (Fraction(1, 2), 0, Fraction(1, 2))
    assert table["4xi"] == (Fraction(2, 3), Fraction(1, 3), 0)


def test_ages_lie_in_zero_one_two():
    for label in (Z3, Z4, Z5, Z6, Z2Z2):
        group = group_from_spec(label)
        assert {age(e) for e in group.elements} <= {0, 1, 2}
        assert sum(1 for e in group.elements if age(e) == 0) == 1


def test_isotropy_orders():
    assert group_from_spec(Z3).g0_order == 1
    assert group_from_spec(Z4).g0_order == 2
    assert group_from_spec(Z4).quotient_order(0) == 2
    assert [len(group_from_spec(Z2Z2).isotropy(j)) for j in range(3)] == [2, 2, 2]


def test_element_arithmetic_is_closed():
    group = group_from_spec(Z6)
    xi = group.index_of("xi")
    assert group.label(group.multiple(2, xi)) == "2xi"
    assert group.label(group.add(xi, group.index_of("3xi"))) == "4xi"
    assert group.label(group.add(xi, group.negate(xi))) == "0"


def test_labels_accept_greek_and_plain():
    group = group_from_spec(Z3)
    assert group.index_of("ξ") == group.index_of("xi")


def test_product_label_and_generator_list_agree():
    by_label = group_from_spec(Z2Z2)
    by_list = group_from_spec({"generators": [{"order": 2, "weights": [1, 0, 1]},
                                              {"order": 2, "weights": [1, 1, 0]}]})
    assert shifts_by_label(by_label) == shifts_by_label(by_list)


def test_unicode_product_label():
    assert parse_group_spec("ℤ2(1,0,1)×ℤ2(1,1,0)") == [(2, (1, 0, 1)), (2, (1, 1, 0))]


def test_rotation_when_z1_is_fixed():
    group = group_from_spec("Z3(1,0,2)")
    assert group.rotation != 0
    assert any(e.shifts[1] != 0 for e in group.elements)


def test_presentation_basis_z2z2():
    group = group_from_spec(Z2Z2)
    assert group.abc == (1, 0, 1)
    assert group.label(group.alpha) == "a1+a2"


@pytest.mark.parametrize("spec, error", [
    ("Z3(1,1,2)", NonSL),
    ("Z3(0,0,0)", Ineffective),
    ("Z2(1,1,0)xZ2(1,1,0)", Ineffective),
    ("Z1(0,0,0)", TrivialGroup),
    ("nonsense", SpecParseError),
    ({"weights": [1, 1, 1]}, SpecParseError),
])
def test_rejections(spec, error):
    with pytest.raises(error):
        group_from_spec(spec)


def test_empty_generator_list():
    with pytest.raises(TrivialGroup):
        build_group([])


def test_size_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ORBIVERTEX_MAX_GROUP", "4")
    with pytest.raises(TooLarge):
        group_from_spec(Z5)
    assert group_from_spec(Z4).order == 4


def test_describe_is_plain_data():
    info = group_from_spec(Z4).describe()
    assert info["small"] == ["2xi", "xi"]
    assert info["isotropy_orders"] == [2, 1, 1]
