import pytest
from hypothesis import given
from hypothesis import strategies as st

from ajcable.jones.cable import (
    cable_degree, cable_degree_side, cable_divisor, cable_jones, cable_jones_diagrammatic, cable_sequence,
    verify_cable_identity,
)
from ajcable.jones.colored import colored_jones_sequence
from ajcable.jones.diagram import diagram_stats, twist_knot_diagram
from ajcable.poly import ONE, t, t_degree_bounds
from ajcable.qtorus import LaurentSequence, apply, unknot_sequence

odd_r = st.integers(-20, 20).filter(lambda r: r % 2)


def test_small_colors():
    base = colored_jones_sequence(-1)
    assert cable_jones(base, 5, 1) == ONE
    for r in (-3, -1, 7):
        assert cable_jones(base, r, 2) == t ** (-6 * r) * (-ONE + t ** (4 * r) * base(3))
    with pytest.raises(ValueError):
        cable_jones(base, 2, 3)


@pytest.mark.parametrize("m,r", [(-1, -1), (-1, 15), (1, 9), (2, -1), (-2, 3)])
def test_cable_identity(m, r):
    assert verify_cable_identity(colored_jones_sequence(m), r, 5)


@given(odd_r)
def test_cable_identity_unknot(r):
    assert verify_cable_identity(unknot_sequence(), r, 6)


def test_cable_identity_negative_control():
    base = colored_jones_sequence(-1)
    bumped = LaurentSequence(lambda n: base(n) + (ONE if n == 5 else 0 * ONE), odd=True)
    cable = cable_sequence(base, -1)
    assert not verify_cable_identity(bumped, -1, 5, cable=cable)


@pytest.mark.parametrize("m,r", [(-1, -1), (1, 9)])
def test_divisor_maps_cable_to_odd_colors(m, r):
    base = colored_jones_sequence(m)
    cable = cable_sequence(base, r)
    for n in range(1, 5):
        assert apply(cable_divisor(r), cable, n) == base(2 * n + 1)


def test_cable_degree_thresholds():
    stats = diagram_stats(twist_knot_diagram(1))
    assert cable_degree_side(stats, 9) == "min"
    assert cable_degree_side(stats, -9) == "max"
    assert cable_degree_side(stats, 7) is None and cable_degree_side(stats, -7) is None
    assert cable_degree(stats, 9, 1).value == 0
    assert not cable_degree(stats, 7, 3).applicable


@pytest.mark.parametrize("m,r", [(-1, -1), (1, 9), (-1, 15), (2, -9)])
def test_cable_degrees_measured(m, r):
    stats = diagram_stats(twist_knot_diagram(m))
    base = colored_jones_sequence(m)
    for n in range(2, 5):
        cd = cable_degree(stats, r, n)
        lo, hi = t_degree_bounds(cable_jones(base, r, n))
        assert (hi if cd.side == "max" else lo) == cd.value == -2 * r * n * n + 2 * r


@pytest.mark.parametrize("m,r,n", [(-1, -1, 2), (-1, -1, 3), (1, 9, 2), (-1, 3, 2), (1, -1, 2)])
def test_drawn_cable_matches_formula(m, r, n):
    # independent route: Chebyshev coloring of the drawn cable diagram
    assert cable_jones_diagrammatic(m, r, n) == cable_jones(colored_jones_sequence(m), r, n)
