from fractions import Fraction

import pytest

from orbivertex import (brane_extension, enumerate_triangulations,
                        group_from_spec, triangle_points)

Z3 = "Z3(1,1,1)"
Z4 = "Z4(2,1,1)"
Z5 = "Z5(3,1,1)"
Z6 = "Z6(1,2,3)"
Z2Z2 = "Z2(1,0,1)xZ2(1,1,0)"


def charge_system(label, framing=0, index=0, segment=None):
    group = group_from_spec(label)
    tr = enumerate_triangulations(triangle_points(group))[index]
    return brane_extension(tr, segment=segment, framing=framing)


def by_name(tp, row):
    """A position-indexed row as {divisor name: value}."""
    return {tp.name(p): v for p, v in enumerate(row)}


def named_exp(vars_, **powers):
    """Exponent tuple over ``vars_`` from keyword powers like q_xi=2, q0=1."""
    return tuple(Fraction(powers.get(v, 0)) for v in vars_)


@pytest.fixture
def z3_system():
    return charge_system(Z3)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
