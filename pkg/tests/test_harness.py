import json

import pytest
from hypothesis import given

from ajcable.guess import GuessConfig
from ajcable.harness import (
    CAPS_EXHAUSTED, NOT_APPLICABLE, PASS, REPORT_SCHEMA, m_equiv, m_equiv_variant, theorem_condition,
    threshold_condition, verify_aj, verify_unknot_control,
)
from ajcable.apoly import cable_apoly, f_factor
from ajcable.poly import L, M, MultiLaurent, epsilon_specialize
from ajcable.jones.cable import cable_divisor

from conftest import laurent, nonzero

lm_polys = nonzero(laurent(("L", "M"), lo=0, hi=3, max_terms=4))
m_polys = nonzero(laurent(("M",), lo=-2, hi=3, max_terms=3))


def test_m_equiv_examples():
    f = L ** 2 * M - 3 * L + M ** 5
    assert m_equiv(f, (M ** 3 + 1) * f)
    assert not m_equiv(L - 1, L + 1)
    assert m_equiv(L * M ** 4 - 1, L ** 3 * M ** 7 - L ** 2 * M ** 3)
    with pytest.raises(ValueError):
        m_equiv(MultiLaurent.const(0), L)


def test_m_equiv_reports_mirror():
    f = (L - 1) * (L - M ** 6)
    g = (L - 1) * (1 - L * M ** 6)
    assert not m_equiv(f, g)
    assert m_equiv(f, g, mirror=True)
    assert m_equiv_variant(f, g) == "L -> 1/L"
    assert m_equiv_variant(f, M * f) == "identity"
    assert m_equiv_variant(f, L + 1) is None


@given(lm_polys, m_polys, m_polys)
def test_m_equiv_is_an_equivalence(f, c, d):
    g, h = f * c, f * c * d
    assert m_equiv(f, f)
    assert m_equiv(f, g) and m_equiv(g, f)
    assert m_equiv(g, h) and m_equiv(f, h)


@given(lm_polys, lm_polys)
def test_m_equiv_is_symmetric(f, g):
    assert m_equiv(f, g) == m_equiv(g, f)


def test_theorem_condition_examples():
    assert theorem_condition(1, 9)
    assert not theorem_condition(1, 7)
    assert theorem_condition(-1, -1)
    with pytest.raises(ValueError):
        theorem_condition(1, 4)


@pytest.mark.parametrize("m", [-3, -2, -1, 1, 2, 3])
def test_condition_matches_thresholds(m):
    for r in range(-41, 42, 2):
        assert theorem_condition(m, r) == threshold_condition(m, r)


@pytest.mark.parametrize("r", [-7, -1, 1, 9])
def test_divisor_contributes_the_f_factor(r):
    eps = epsilon_specialize(cable_divisor(r).to_poly())
    assert m_equiv(eps, f_factor(r))


def test_not_applicable():
    rep = verify_aj(1, 7)
    assert rep.verdict == NOT_APPLICABLE and rep.guessed_alpha_J is None
    assert json.loads(json.dumps(rep.to_json()))["verdict"] == NOT_APPLICABLE


def test_caps_exhausted_is_reported():
    rep = verify_aj(-1, -1, GuessConfig(d_cap=1, delta_cap=3))
    assert rep.verdict == CAPS_EXHAUSTED
    assert rep.caps["searched"]["d_cap"] == 1


def test_unknot_control():
    rep = verify_unknot_control()
    assert rep.verdict == PASS
    assert m_equiv(rep.epsilon_alpha, L - 1)


def test_trefoil_report(trefoil_report):
    rep, _ = trefoil_report
    assert rep.verdict == PASS, rep.digest()
    assert rep.stages["4_cable_annihilation"].endswith("ok")
    assert m_equiv(rep.epsilon_alpha, cable_apoly(-1, -1, rep.knot_convention))
    data = rep.to_json()
    assert data["schema"] == REPORT_SCHEMA
    assert data["cable"] == {"r": -1, "s": 2}
    assert MultiLaurent.from_text(data["epsilon_alpha"]) == rep.epsilon_alpha
    assert "verdict: PASS" in rep.digest()


def test_verify_is_deterministic(trefoil_report):
    rep, _ = trefoil_report
    again = verify_aj(-1, -1, GuessConfig(d_cap=2, delta_cap=30))
    assert again.content_hash() == rep.content_hash()
