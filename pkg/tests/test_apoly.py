import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ajcable.apoly import (
    APoly, KNOT_VARIANTS, TABLE_BOUND, UnsupportedKnotError, aprime_variant, cable_apoly,
    check_hs_properties, expected_at_m_zero, expected_l_degree, f_factor, factorization_check,
    irreducibility_certificate, is_squarefree_in_L, listed_vertices, numeric_oracle, r_poly, riley_samples,
    shape_properties, table_entry, twist_aprime, twist_apoly,
)
from ajcable.poly import L, M, MultiLaurent, newton_polygon, resultant

TABLE = [-3, -2, -1, 1, 2, 3]


def test_apoly_type_validates():
    with pytest.raises(ValueError):
        APoly(MultiLaurent.const(0))
    with pytest.raises(ValueError):
        APoly(2 * L + 4)
    with pytest.raises(ValueError):
        APoly(MultiLaurent.var("t") + L)
    assert APoly.of(2 * L + 4).poly == L + 2


def test_unsupported_knots():
    with pytest.raises(UnsupportedKnotError):
        twist_aprime(TABLE_BOUND + 1)
    with pytest.raises(ValueError):
        twist_aprime(0)


def test_trefoil_entry():
    # [DERIVED] binomial supported on {(1,0),(0,6)}
    a = twist_aprime(-1).poly
    assert newton_polygon(a).vertex_set() == {(1, 0), (0, 6)} and len(a.terms) == 2
    assert r_poly(-1).poly in (M ** 12 - L, L - M ** 12)
    assert r_poly(-1).poly.subs("M", 0) == -L


def test_figure_eight_entry():
    # [PAPER] L-degree 2m at m = 1; the classical figure-eight A-polynomial up to sign
    a = twist_aprime(1).poly
    classical = (-L + L * M ** 2 + M ** 4 + 2 * L * M ** 4 + L ** 2 * M ** 4 + L * M ** 6 - L * M ** 8)
    assert a == classical or a == -classical
    assert r_poly(1).l_degree == 2


def test_listed_vertices_examples():
    assert set(listed_vertices(1)) == {(1, 8), (0, 4), (2, 4), (1, 0)}
    assert set(listed_vertices(-2)) == {(0, 14), (1, 14), (1, 4), (2, 10), (2, 0), (3, 0)}
    assert expected_l_degree(-1) == 1 and expected_l_degree(2) == 4


@pytest.mark.parametrize("m", TABLE)
def test_table_properties(m):
    rep = check_hs_properties(m)
    assert rep.all_pass, rep.to_json()
    assert newton_polygon(twist_aprime(m).poly).vertex_set() == set(listed_vertices(m))
    entry = table_entry(m)
    assert entry["validated"] and entry["l_degree"] == expected_l_degree(m)


def test_shape_properties_judges_hull_not_support():
    # interior support does not matter, a missing or extra vertex does
    f = -L + M ** 4 + L ** 2 * M ** 4 + L * M ** 8 + 5 * L * M ** 3
    assert shape_properties(1, f).all_pass
    assert not shape_properties(1, f + L ** 3 * M ** 4).checks["newton_vertices"]
    bad = shape_properties(-1, L + M ** 6 + L ** 2)
    assert not bad.checks["l_degree"] and not bad.checks["newton_vertices"]


@pytest.mark.parametrize("m", TABLE)
def test_apoly_has_abelian_factor_and_no_repeats(m):
    a = twist_apoly(m).poly
    assert a.subs("L", 1).is_zero()
    assert is_squarefree_in_L(twist_aprime(m).poly)
    assert not is_squarefree_in_L((L - M) ** 2 * (L + 1))


@pytest.mark.parametrize("m", TABLE)
def test_r_poly_shape(m):
    r = r_poly(m)
    assert r.l_degree == expected_l_degree(m)
    assert r.poly.subs("M", 0) == -expected_at_m_zero(m)


@pytest.mark.parametrize("m", TABLE)
def test_factorization_at_random_points(m):
    rng = random.Random(m)
    for _ in range(20):
        c = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert factorization_check(m, c)


@pytest.mark.parametrize("m", TABLE)
def test_certificate(m):
    cert = irreducibility_certificate(m)
    assert cert.premises_pass and cert.squarefree
    assert "conditional" in cert.conclusion


@pytest.mark.parametrize("m", TABLE)
def test_numeric_oracle(m):
    assert len(riley_samples(m, 50)) == 50
    assert numeric_oracle(m) < 1e-8


def test_f_factor():
    assert f_factor(3) == M ** 6 * L + 1
    assert f_factor(-1) == L + M ** 2
    with pytest.raises(ValueError):
        f_factor(2)


def test_trefoil_cable():
    c = cable_apoly(-1, -1).poly
    target = (L - 1) * (M ** 24 - L) * (L + M ** 2)
    assert c == target or c == -target
    with pytest.raises(ValueError):
        cable_apoly(-1, 4)


@pytest.mark.parametrize("m", TABLE)
@pytest.mark.parametrize("r", [-9, -1, 3, 15])
@pytest.mark.parametrize("variant", KNOT_VARIANTS)
def test_cable_divisibility(m, r, variant):
    c = cable_apoly(m, r, variant).poly
    rest = c.exact_div(L - 1).exact_div(f_factor(r))
    assert rest == r_poly(m, variant).poly.scale_var("M", 2) or rest == -r_poly(m, variant).poly.scale_var("M", 2)


def test_variant_inverts_L():
    a = aprime_variant(-1, "L -> 1/L").poly
    assert a in (1 + L * M ** 6, -1 - L * M ** 6)
    with pytest.raises(ValueError):
        aprime_variant(-1, "sideways")


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 4).filter(bool)),
                min_size=1, max_size=5))
def test_resultant_with_square_is_product(terms):
    # Res_lam(P(lam), lam^2 - L) at L = c^2 equals P(c) P(-c)
    p = MultiLaurent({(0, j, 0, i, 0): c for i, j, c in terms} or {(0, 0, 0, 0, 0): 1})
    if p.is_zero():
        return
    q = resultant(p, MultiLaurent.var("lam") ** 2 - L, "lam")
    for c in (2, -3, Fraction(1, 2)):
        lhs = q.subs("L", c * c)
        rhs = p.subs("lam", c) * p.subs("lam", -c)
        assert lhs == rhs
