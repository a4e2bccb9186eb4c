import pytest
from hypothesis import given
from hypothesis import strategies as st

from ajcable.guess import (
    PRIME_POOL, CapsExhaustedError, GuessConfig, GuessStats, UndersupplyError, ZeroSequenceError,
    _is_prime, _rational_number, guess_recurrence, minimal_recurrence, operator_from_text, operator_to_text,
    primes_below,
)
from ajcable.harness import m_equiv
from ajcable.jones.colored import colored_jones_sequence
from ajcable.poly import L, M, ONE, MultiLaurent, epsilon_specialize, t
from ajcable.qtorus import (
    LaurentSequence, QOperator, annihilates, content_normalize, left_divide, op_mul, quantum_integer,
    unknot_sequence,
)

UNKNOT_OP = content_normalize(QOperator({1: M ** 2 - 1, 0: -(t ** 2 * M ** 2 - t ** -2)}))


def qint_values(lo, hi):
    return [(n, quantum_integer(n)) for n in range(lo, hi + 1)]


def test_config_validation():
    with pytest.raises(ValueError):
        GuessConfig(margin=1)
    with pytest.raises(ValueError):
        GuessConfig(holdout=2)
    a, b = GuessConfig(seed=0), GuessConfig(seed=1)
    assert not set(a.primes) & set(b.primes)
    assert a.values_needed(1, 2) == 11


def test_prime_pool():
    assert all(_is_prime(p) and p < 2 ** 31 for p in PRIME_POOL)
    assert len(set(PRIME_POOL)) == len(PRIME_POOL)
    assert primes_below(30, 3) == [29, 23, 19]
    assert not _is_prime(2 ** 31 - 3)


def test_rational_number_reconstruction():
    p = PRIME_POOL[0]
    x = 7 * pow(12, -1, p) % p
    assert _rational_number(x, p) == pytest.approx(7 / 12)


def test_quantum_integers_example():
    # [DERIVED] certified below on a wider window
    op = guess_recurrence(qint_values(1, 12), 1, 2)
    assert op == UNKNOT_OP
    assert annihilates(op, unknot_sequence(), 1, 20)


def test_constant_sequence():
    op = guess_recurrence([(n, ONE) for n in range(12)], 1, 0)
    assert op == QOperator({1: ONE, 0: -ONE})


def test_order_zero_has_no_annihilator():
    assert guess_recurrence(qint_values(1, 12), 0, 2) is None


def test_undersupply_and_zero():
    with pytest.raises(UndersupplyError):
        guess_recurrence(qint_values(1, 8), 1, 2)
    with pytest.raises(UndersupplyError):
        # enough values by count, but fewer fitted windows than unknowns
        guess_recurrence(qint_values(1, GuessConfig().values_needed(3, 0)), 3, 0)
    with pytest.raises(ZeroSequenceError):
        guess_recurrence([(n, MultiLaurent.const(0)) for n in range(20)], 1, 1)


def test_unknot_minimal():
    stats = GuessStats()
    op = minimal_recurrence(unknot_sequence(), GuessConfig(start=1), stats=stats)
    assert op.l_degree() == 1 and stats.found == (1, 2)
    assert m_equiv(epsilon_specialize(op.to_poly()), L - 1)


def test_caps_exhausted_carries_region():
    with pytest.raises(CapsExhaustedError) as info:
        minimal_recurrence(unknot_sequence(), GuessConfig(d_cap=0, delta_cap=3, start=1))
    assert info.value.region["d_cap"] == 0 and info.value.region["delta_cap"] == 3


@pytest.fixture(scope="module")
def trefoil_ops():
    seq = colored_jones_sequence(-1)
    out = {}
    for seed in (0, 1):
        stats = GuessStats()
        out[seed] = (minimal_recurrence(seq, GuessConfig(d_cap=2, delta_cap=12, start=1, seed=seed), stats), stats)
    return seq, out


def test_trefoil_recurrence_is_certified(trefoil_ops):
    seq, out = trefoil_ops
    op, stats = out[0]
    assert stats.found == (2, 10)
    assert annihilates(op, seq, 1, 40)


def test_stability_across_schedules(trefoil_ops):
    _, out = trefoil_ops
    assert out[0][0] == out[1][0]


def test_grid_minimality(trefoil_ops):
    # nothing of L-degree one up to the M-degree cap
    seq, out = trefoil_ops
    cfg = GuessConfig(d_cap=2, delta_cap=12, start=1)
    vals = seq.values(range(1, 1 + cfg.values_wanted(1, 12)))
    assert guess_recurrence(vals, 1, 12, cfg) is None
    _, stats = out[0]
    d, delta = stats.found
    vals = seq.values(range(1, 1 + cfg.values_wanted(d, delta - 1)))
    assert guess_recurrence(vals, d, delta - 1, cfg) is None


def test_exact_and_modular_paths_agree(trefoil_ops):
    seq, out = trefoil_ops
    cfg = GuessConfig(start=1)
    vals = seq.values(range(1, 1 + cfg.values_wanted(2, 10)))
    assert guess_recurrence(vals, 2, 10, cfg) == out[0][0]
    assert guess_recurrence(vals, 2, 10, cfg, modular=seq.modular) == out[0][0]


@given(st.integers(-3, 3), st.integers(0, 2), st.integers(1, 3))
def test_guessed_operator_divides_known_annihilator(a, b, k):
    # any left multiple of the unknot operator annihilates [n]; the guess divides it
    left = QOperator({k: MultiLaurent.monomial({"t": a, "M": b}), 0: ONE})
    known = op_mul(left, UNKNOT_OP)
    assert annihilates(known, unknot_sequence(), 1, 8)
    q, rem = left_divide(known, UNKNOT_OP)
    assert rem.is_zero()
    assert op_mul(q, UNKNOT_OP) == known


def test_operator_text_roundtrip():
    op = QOperator({0: t ** -3 * M - 2, 2: MultiLaurent.const(1) / 3 * M ** 4})
    assert operator_from_text(operator_to_text(op)) == op
    with pytest.raises(ValueError):
        operator_from_text("L^1 : M\nL^1 : t")
    with pytest.raises(ValueError):
        operator_from_text("M : 1")


def test_affine_variable_for_odd_colors():
    # J_U(2n+1) is annihilated by the halved unknot operator; searching in the
    # parent M finds an operator that acts correctly in the child M
    seq = LaurentSequence(lambda n: quantum_integer(2 * n + 1), m_affine=(2, 1))
    op = minimal_recurrence(seq, GuessConfig(d_cap=1, delta_cap=4))
    assert op.l_degree() == 1
    assert annihilates(op, seq, 0, 20)
