"""Intersection tables and charge vectors against the worked examples."""

import pytest

from orbivertex import group_from_spec, intersection_table, triangle_points
from orbivertex.errors import NotCompact, NotOnV1V2
from orbivertex.toric_charges import (charge_basis, check_charge_system,
                                      curve_relation, dual_graph)

from conftest import Z3, Z4, Z5, Z6, by_name, charge_system

COLUMNS_Z3 = ("0", "1", "2", "xi")
COLUMNS_2 = ("0", "1", "2", "xi", "2xi")
COLUMNS_Z6 = ("0", "1", "2", "xi", "2xi", "3xi", "4xi")

TABLES = {
    Z3: (COLUMNS_Z3, {
        ("xi", "0"): (1, 1, 1, -3),
        ("xi", "1"): (1, 1, 1, -3),
        ("xi", "2"): (1, 1, 1, -3),
    }),
    Z4: (COLUMNS_2, {
        ("xi", "0"): (2, 1, 1, -4, 0),
        ("xi", "1"): (1, 0, 0, -2, 1),
        ("xi", "2"): (1, 0, 0, -2, 1),
        ("xi", "2xi"): (0, 1, 1, 0, -2),
    }),
    Z5: (COLUMNS_2, {
        ("xi", "0"): (3, 1, 1, -5, 0),
        ("xi", "1"): (1, 0, 0, -2, 1),
        ("xi", "2"): (1, 0, 0, -2, 1),
        ("xi", "2xi"): (0, 1, 1, 1, -3),
        ("2xi", "1"): (0, 1, 1, 1, -3),
        ("2xi", "2"): (0, 1, 1, 1, -3),
    }),
}

CHARGES = {
    Z3: (COLUMNS_Z3, {"xi": (1, 1, 1, -3)}),
    Z4: (COLUMNS_2, {"xi": (1, 0, 0, -2, 1), "2xi": (0, 1, 1, 0, -2)}),
    Z5: (COLUMNS_2, {"xi": (1, 0, 0, -2, 1), "2xi": (0, 1, 1, 1, -3)}),
}

# Phases of the ℤ6 example; the value is the enumeration index.
Z6_PHASES = {
    "I": (0, {
        ("xi", "0"): (-1, 0, 0, -1, 0, 1, 1),
        ("xi", "1"): (0, 0, 1, -2, 1, 0, 0),
        ("xi", "2"): (0, 1, 1, -3, 0, 1, 0),
        ("xi", "2xi"): (0, 1, 0, 0, -2, 0, 1),
        ("xi", "3xi"): (1, 0, 1, 0, 0, -2, 0),
        ("xi", "4xi"): (1, 0, 0, 0, 1, 0, -2),
    }, {
        "xi": (-1, 0, 0, -1, 0, 1, 1),
        "2xi": (0, 1, 0, 0, -2, 0, 1),
        "3xi": (1, 0, 1, 0, 0, -2, 0),
        "4xi": (1, 0, 0, 0, 1, 0, -2),
    }),
    "II": (2, {
        ("3xi", "4xi"): (1, 0, 0, 1, 0, -1, -1),
        ("xi", "1"): (0, 0, 1, -2, 1, 0, 0),
        ("xi", "2"): (0, 1, 1, -3, 0, 1, 0),
        ("xi", "2xi"): (0, 1, 0, 0, -2, 0, 1),
        ("xi", "3xi"): (0, 0, 1, -1, 0, -1, 1),
        ("xi", "4xi"): (0, 0, 0, -1, 1, 1, -1),
    }, {
        "xi": (0, 0, 1, -1, 0, -1, 1),
        "2xi": (0, 1, 0, 0, -2, 0, 1),
        "3xi": (1, 0, 0, 1, 0, -1, -1),
        "4xi": (0, 0, 0, -1, 1, 1, -1),
    }),
    "III": (3, {
        ("3xi", "4xi"): (1, 0, 1, 0, 0, -2, 0),
        ("xi", "1"): (0, 0, 1, -2, 1, 0, 0),
        ("xi", "2"): (0, 1, 2, -4, 0, 0, 1),
        ("xi", "2xi"): (0, 1, 0, 0, -2, 0, 1),
        ("4xi", "2"): (0, 0, -1, 1, 0, 1, -1),
        ("xi", "4xi"): (0, 0, 1, -2, 1, 0, 0),
    }, {
        "xi": (0, 0, 1, -2, 1, 0, 0),
        "2xi": (0, 1, 0, 0, -2, 0, 1),
        "3xi": (1, 0, 1, 0, 0, -2, 0),
        "4xi": (0, 0, -1, 1, 0, 1, -1),
    }),
    "IV": (1, {
        ("3xi", "4xi"): (1, 0, 0, 0, 1, 0, -2),
        ("xi", "1"): (0, 0, 1, -2, 1, 0, 0),
        ("xi", "2"): (0, 1, 1, -3, 0, 1, 0),
        ("xi", "2xi"): (0, 1, 0, -1, -1, 1, 0),
        ("xi", "3xi"): (0, 0, 1, -2, 1, 0, 0),
        ("2xi", "3xi"): (0, 0, 0, 1, -1, -1, 1),
    }, {
        "xi": (0, 1, 0, -1, -1, 1, 0),
        "2xi": (0, 0, 0, 1, -1, -1, 1),
        "3xi": (0, 0, 1, -2, 1, 0, 0),
        "4xi": (1, 0, 0, 0, 1, 0, -2),
    }),
    "V": (4, {
        ("3xi", "4xi"): (1, 0, 0, 0, 1, 0, -2),
        ("xi", "1"): (0, 1, 1, -3, 0, 1, 0),
        ("xi", "2"): (0, 1, 1, -3, 0, 1, 0),
        ("3xi", "1"): (0, -1, 0, 1, 1, -1, 0),
        ("xi", "3xi"): (0, 1, 1, -3, 0, 1, 0),
        ("2xi", "3xi"): (0, 1, 0, 0, -2, 0, 1),
    }, {
        "xi": (0, 1, 1, -3, 0, 1, 0),
        "2xi": (0, 1, 0, 0, -2, 0, 1),
        "3xi": (0, -1, 0, 1, 1, -1, 0),
        "4xi": (1, 0, 0, 0, 1, 0, -2),
    }),
}


def named_table(cs):
    tp = cs.points
    table = intersection_table(cs.triangulation)
    return {frozenset((tp.name(a), tp.name(b))): by_name(tp, row) for (a, b), row in table.items()}


def check_table(cs, columns, expected):
    got = named_table(cs)
    assert len(got) == len(expected)
    for curve, row in expected.items():
        assert got[frozenset(curve)] == dict(zip(columns, row)), curve


def check_charges(cs, columns, expected):
    tp = cs.points
    got = {tp.name(g): by_name(tp, row) for g, row in cs.charges.items()}
    assert got == {g: dict(zip(columns, row)) for g, row in expected.items()}


@pytest.mark.parametrize("label", [Z3, Z4, Z5])
def test_intersection_tables(label):
    columns, expected = TABLES[label]
    check_table(charge_system(label), columns, expected)


@pytest.mark.parametrize("label", [Z3, Z4, Z5])
def test_charge_vectors(label):
    columns, expected = CHARGES[label]
    check_charges(charge_system(label), columns, expected)


@pytest.mark.parametrize("phase", sorted(Z6_PHASES))
def test_z6_phase(phase):
    index, table, charges = Z6_PHASES[phase]
    cs = charge_system(Z6, index=index)
    check_table(cs, COLUMNS_Z6, table)
    check_charges(cs, COLUMNS_Z6, charges)


@pytest.mark.parametrize("label, index", [(Z3, 0), (Z4, 0), (Z5, 0)] + [(Z6, k) for k in range(5)])
def test_charge_identities(label, index):
    assert check_charge_system(charge_system(label, index=index))


def test_brane_data_default_segments():
    z3 = charge_system(Z3, framing=2)
    names = z3.points.keys
    assert (names[z3.i0], names[z3.i1], names[z3.i2]) == ("xi", "1", "2")
    assert by_name(z3.points, z3.l0) == {"0": 0, "1": 2, "2": -3, "xi": 1}
    z4 = charge_system(Z4, framing=1)
    assert (z4.points.name(z4.i1), z4.points.name(z4.i2)) == ("2xi", "2")
    assert by_name(z4.points, z4.l0) == {"0": 0, "1": 0, "2": -2, "xi": 1, "2xi": 1}
    z5 = charge_system(Z5)
    assert by_name(z5.points, z5.l0) == {"0": 0, "1": 0, "2": -1, "xi": 0, "2xi": 1}


def test_explicit_segment_and_rejections():
    cs = charge_system(Z4, segment=("1", "2xi"))
    assert (cs.points.name(cs.i1), cs.points.name(cs.i2)) == ("1", "2xi")
    with pytest.raises(NotOnV1V2):
        charge_system(Z4, segment=("1", "2"))
    with pytest.raises(NotOnV1V2):
        charge_system(Z4, segment=("0", "xi"))


def test_boundary_curve_is_not_compact():
    cs = charge_system(Z3)
    with pytest.raises(NotCompact):
        curve_relation(cs.triangulation, (0, 1))


def test_forced_choice():
    cs = charge_system(Z3)
    charges, curves = charge_basis(cs.triangulation, choices={3: 2})
    assert curves == {3: (2, 3)}
    assert charges[3] == (1, 1, 1, -3)


def test_with_framing_keeps_charges():
    cs = charge_system(Z5).with_framing(-2)
    assert cs.framing == -2
    assert by_name(cs.points, cs.l0)["1"] == -2
    assert by_name(cs.points, cs.l0)["2"] == 1


def test_dual_graph_shape():
    tr = charge_system(Z6).triangulation
    graph = dual_graph(tr)
    assert len(graph.nodes) == 6
    assert len(graph.finite_edges) == len(tr.interior_edges)
    assert len(graph.half_edges) == len(tr.boundary_edges)
    assert graph.to_dot(tr.points.keys).startswith("graph dual {")


def test_to_dict_is_named():
    data = charge_system(Z4).to_dict()
    assert data["i0i1i2"] == ["xi", "2xi", "2"]
    assert data["charges"]["xi"] == [1, 0, 0, 1, -2]
