"""The eleven acceptance criteria, one test each, at their stated limits.

Every test records a PASS/FAIL line; the lines are repeated in the
terminal summary of the run.
"""

import pytest

from ajcable.apoly import (
    cable_apoly, check_hs_properties, expected_l_degree, irreducibility_certificate, listed_vertices, r_poly,
    twist_aprime,
)
from ajcable.guess import GuessConfig, minimal_recurrence
from ajcable.harness import PASS, m_equiv, theorem_condition, threshold_condition
from ajcable.jones.bracket import kauffman_bracket
from ajcable.jones.cable import adequate_degree_bounds, cable_degree, cable_jones, verify_cable_identity
from ajcable.jones.colored import colored_jones, colored_jones_sequence
from ajcable.jones.diagram import diagram_stats, twist_knot_diagram
from ajcable.poly import L, ONE, epsilon_specialize, newton_polygon, t, t_degree_bounds
from ajcable.qtorus import quantum_integer, unknot_sequence

pytestmark = pytest.mark.acceptance

TABLE = [-3, -2, -1, 1, 2, 3]


def test_c01_unknot_normalization(criterion):
    with criterion(1, "J_U(n) = [n], n = 1..12, skein and fast evaluators", limit=1.0):
        for method in ("skein", "fast"):
            for n in range(1, 13):
                assert colored_jones(0, n, method) == quantum_integer(n)


def test_c02_first_colors(criterion):
    with criterion(2, "J(1) = 1 and J(2) = -<K> for m in {-2,-1,1,2}", limit=5.0):
        for m in (-2, -1, 1, 2):
            pd = twist_knot_diagram(m)
            bracket0 = kauffman_bracket(pd) * (-t ** 3) ** -pd.writhe  # framing 0
            for method in ("skein", "fast"):
                assert colored_jones(m, 1, method) == ONE
                assert colored_jones(m, 2, method) == -bracket0


def test_c03_evaluator_agreement(criterion):
    with criterion(3, "skein = fast for m = +-1 (n <= 4) and m = +-2 (n <= 3)", limit=120.0):
        for ms, n_max in (((-1, 1), 4), ((-2, 2), 3)):
            for m in ms:
                for n in range(1, n_max + 1):
                    assert colored_jones(m, n, "skein") == colored_jones(m, n, "fast")


def test_c04_degree_formulas(criterion):
    with criterion(4, "adequate-diagram degree formulas, m in {-2,-1,1,2}, n = 2..5", limit=120.0):
        for m in (-2, -1, 1, 2):
            stats = diagram_stats(twist_knot_diagram(m))
            for n in range(2, 6):
                measured = t_degree_bounds(colored_jones(m, n, "fast"))
                assert measured == adequate_degree_bounds(stats, n)


def test_c05_cable_identity(criterion):
    with criterion(5, "cable identity for (m,r) in {(-1,-1),(-1,15),(1,9)}, n <= 5", limit=60.0):
        for m, r in ((-1, -1), (-1, 15), (1, 9)):
            assert verify_cable_identity(colored_jones_sequence(m), r, 5)


def test_c06_cable_degrees(criterion):
    with criterion(6, "cable extreme degree -2rn^2 + 2r for (-1,-1) and (1,9), n = 2..4", limit=60.0):
        for m, r, side in ((-1, -1, "max"), (1, 9, "min")):
            stats = diagram_stats(twist_knot_diagram(m))
            base = colored_jones_sequence(m)
            for n in range(2, 5):
                cd = cable_degree(stats, r, n)
                assert cd.side == side
                lo, hi = t_degree_bounds(cable_jones(base, r, n))
                assert (hi if side == "max" else lo) == -2 * r * n * n + 2 * r


def test_c07_guesser_sanity(criterion):
    with criterion(7, "minimal recurrence of [n] has L-degree 1 and eps = L - 1 up to M", limit=10.0):
        op = minimal_recurrence(unknot_sequence(), GuessConfig(start=1))
        assert op.l_degree() == 1
        assert m_equiv(epsilon_specialize(op.to_poly()), L - 1)


def test_c08_aprime_properties(criterion):
    with criterion(8, "A' table: L-degrees, Newton vertices, A'(L,0), |m| <= 3", limit=10.0):
        for m in TABLE:
            rep = check_hs_properties(m)
            assert rep.all_pass, rep.to_json()
            assert newton_polygon(twist_aprime(m).poly).vertex_set() == set(listed_vertices(m))


def test_c09_resultant_premises(criterion):
    with criterion(9, "odd-L monomial, R(L,0) not a square, R L-degrees", limit=10.0):
        for m in TABLE:
            cert = irreducibility_certificate(m)
            assert cert.odd_l_monomial and cert.r_at_zero and cert.r_at_zero_not_square
            assert r_poly(m).l_degree == expected_l_degree(m)


def test_c10_trefoil_cable_aj(criterion, trefoil_report):
    rep, elapsed = trefoil_report
    with criterion(10, "AJ for the (-1,2)-cable of the trefoil: PASS (caps d <= 2, delta <= 30)",
                   limit=30 * 60, elapsed=elapsed):
        assert rep.verdict == PASS, rep.digest()
        d, delta = rep.caps["found"]
        assert d <= 2 and delta <= 30
        assert m_equiv(rep.epsilon_alpha, cable_apoly(-1, -1, rep.knot_convention))
        print(f"    knot convention matched: {rep.knot_convention}; alpha_JJ at (d, delta) = ({d}, {delta})")


def test_c11_condition_equivalence(criterion):
    with criterion(11, "theorem condition = degree thresholds, m in -3..3, odd r in [-40, 40]", limit=1.0):
        for m in TABLE:
            for r in range(-39, 40, 2):
                assert theorem_condition(m, r) == threshold_condition(m, r)
