"""Colored Jones polynomials of twist knots.

Three independent evaluators:

* :func:`colored_jones_skein` colors the diagram by the Chebyshev
  combination of blackboard parallels and evaluates Kauffman brackets;
* :func:`colored_jones_fast` runs a slice-by-slice state sum on the Morse
  word in which every strand carries an n-dimensional label (the
  Jones-Wenzl image inside n-1 parallel Kauffman strands);
* :func:`colored_jones_cyclotomic` sums the cyclotomic expansion of twist
  knots, and has a modular twin used by the recurrence guesser for colors
  in the hundreds.

All three return J_K(n) with framing 0 and J_U(n) = [n].
"""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict

import numpy as np

from ..poly import ONE, ZERO, MultiLaurent, poly_sum
from ..qtorus import LaurentSequence, quantum_integer
from .bracket import kauffman_bracket
from .diagram import MorseDiagram, twist_knot_morse, unknot_morse

SKEIN_COLOR_CAP = 6
FAST_COLOR_CAP = 12


class ColorCapError(RuntimeError):
    """Requested color lies beyond what the chosen evaluator is configured for."""


def chebyshev(n: int) -> MultiLaurent:
    """S_n(z): S_0 = 1, S_1 = z, S_{n+1} = z S_n - S_{n-1}."""
    return _chebyshev(n)


@functools.lru_cache(maxsize=None)
def _chebyshev(n: int) -> MultiLaurent:
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if n == 0:
        return ONE
    z = MultiLaurent.var("z")
    if n == 1:
        return z
    return z * _chebyshev(n - 1) - _chebyshev(n - 2)


def framing_factor(n: int, writhe: int) -> MultiLaurent:
    """((-1)^{n-1} t^{n^2-1})^{-w}: turns a blackboard-framed value into framing 0."""
    sign = -1 if ((n - 1) * writhe) % 2 else 1
    return MultiLaurent.monomial({"t": -(n * n - 1) * writhe}, sign)


def _morse_for(m: int) -> MorseDiagram:
    return unknot_morse() if m == 0 else twist_knot_morse(m)


def _writhe(morse: MorseDiagram) -> int:
    return morse.to_pd().writhe


# ---------------------------------------------------------------------------
# skein evaluator


def colored_bracket_skein(morse: MorseDiagram, n: int) -> MultiLaurent:
    """<S_{n-1}(K)> with blackboard framing."""
    parts = []
    for (e, c) in chebyshev(n - 1).terms.items():
        j = e[4]
        if j == 0:
            parts.append(MultiLaurent.const(c))
        else:
            parts.append(kauffman_bracket(morse.parallel(j).to_pd()) * c)
    return poly_sum(parts)


def colored_jones_skein(m: int, n: int, cap: int = SKEIN_COLOR_CAP) -> MultiLaurent:
    """J_{K_m}(n) from brackets of parallels; m = 0 gives the unknot."""
    if n < 1:
        raise ValueError("color must be positive")
    morse = _morse_for(m)
    limit = max(cap, 2 * cap) if morse.crossing_count() == 0 else cap
    if n > limit:
        raise ColorCapError(f"skein evaluator is capped at color {limit}, asked for {n}")
    value = colored_bracket_skein(morse, n)
    sign = -1 if (n - 1) % 2 else 1
    return value * sign * framing_factor(n, _writhe(morse))


# ---------------------------------------------------------------------------
# state-sum evaluator
#
# Elementary Kauffman strands carry labels 0/1 with
#   cap(0,1) = t, cap(1,0) = -t^{-1},  cup(0,1) = -t, cup(1,0) = t^{-1},
# so a circle is worth -t^2 - t^{-2} and both zigzags are the identity.  A
# crossing whose over-strand runs bottom-left to top-right is
# t * identity + t^{-1} * cup o cap.
#
# A strand of color N is a bundle of N-1 elementary strands restricted to
# the Jones-Wenzl image, which is the common kernel of adjacent caps and has
# basis w_k = sum_{|S| = k} t^{2 inv(S)} e_S (inv counts pairs 1 before 0).


_T = MultiLaurent.var("t")
_TINV = MultiLaurent.var("t", -1)
_CAP = {(0, 1): _T, (1, 0): -_TINV}
_CUP = {(0, 1): -_T, (1, 0): _TINV}


def _inversions(bits) -> int:
    ones, inv = 0, 0
    for b in bits:
        if b:
            ones += 1
        else:
            inv += ones
    return inv


@functools.lru_cache(maxsize=None)
def _jw_basis(n: int) -> tuple[dict, ...]:
    """w_0..w_n as {bit tuple: exponent of t}."""
    basis = []
    for k in range(n + 1):
        vec = {}
        for ones in itertools.combinations(range(n), k):
            bits = tuple(1 if i in ones else 0 for i in range(n))
            vec[bits] = 2 * _inversions(bits)
        basis.append(vec)
    return tuple(basis)


def _canonical(n: int, k: int) -> tuple:
    return (0,) * (n - k) + (1,) * k


@functools.lru_cache(maxsize=None)
def colored_cap(n: int) -> dict[int, MultiLaurent]:
    """Nested cap on w_a (x) w_{n-a}, keyed by a."""
    basis = _jw_basis(n)
    out = {}
    for a in range(n + 1):
        right = basis[n - a]
        parts = []
        for bits, ea in basis[a].items():
            tb = tuple(1 - bits[n - 1 - i] for i in range(n))
            eb = right[tb]
            val = MultiLaurent.monomial({"t": ea + eb})
            for i in range(n):
                val = val * _CAP[(bits[n - 1 - i], tb[i])]
            parts.append(val)
        out[a] = poly_sum(parts)
    return out


@functools.lru_cache(maxsize=None)
def colored_cup(n: int) -> tuple[dict[int, MultiLaurent], MultiLaurent]:
    """(numerators g_a, common denominator D): the cup is sum_a (g_a / D) w_a (x) w_{n-a}.

    Zigzag forces g_a / D = 1 / cap(w_{n-a}, w_a).
    """
    cap = colored_cap(n)
    vals = []
    for v in cap.values():
        if not any(v == u or v == -u for u in vals):
            vals.append(v)
    den = ONE
    for v in vals:
        den = den * v
    return {a: den.exact_div(cap[n - a]) for a in range(n + 1)}, den


def _elementary_crossing(vec: dict, pos: int, over_left: bool) -> dict:
    id_w, turn_w = (_T, _TINV) if over_left else (_TINV, _T)
    out: dict = defaultdict(list)
    for bits, c in vec.items():
        out[bits].append(c * id_w)
        pair = (bits[pos], bits[pos + 1])
        if pair in _CAP:
            cc = c * turn_w * _CAP[pair]
            for (k, l), g in _CUP.items():
                nb = bits[:pos] + (k, l) + bits[pos + 2:]
                out[nb].append(cc * g)
    res = {}
    for bits, parts in out.items():
        s = poly_sum(parts)
        if not s.is_zero():
            res[bits] = s
    return res


@functools.lru_cache(maxsize=None)
def colored_crossing(n: int, over_left: bool) -> dict[tuple[int, int], dict[tuple[int, int], MultiLaurent]]:
    """Matrix of the cabled crossing on JW (x) JW: {(a, b): {(c, d): entry}}."""
    basis = _jw_basis(n)
    grid = []
    for a in range(n):
        for b in range(n):
            grid.append(n - 1 - a + b)
    out = {}
    for a in range(n + 1):
        for b in range(n + 1):
            vec = {}
            for ba, ea in basis[a].items():
                for bb, eb in basis[b].items():
                    vec[ba + bb] = MultiLaurent.monomial({"t": ea + eb})
            for pos in grid:
                vec = _elementary_crossing(vec, pos, over_left)
            row = {}
            for c in range(n + 1):
                d = a + b - c
                if 0 <= d <= n:
                    v = vec.get(_canonical(n, c) + _canonical(n, d))
                    if v is not None and not v.is_zero():
                        row[(c, d)] = v
            out[(a, b)] = row
    return out


def colored_bracket_state_sum(morse: MorseDiagram, color: int) -> MultiLaurent:
    """Blackboard-framed bracket of the diagram colored by the JW projector."""
    n = color - 1
    if n == 0:
        return ONE
    cap = colored_cap(n)
    cup, den = colored_cup(n)
    cups = 0
    states: dict[tuple, MultiLaurent] = {(): ONE}
    for ev in morse.events:
        kind, i = ev[0], ev[1]
        new: dict[tuple, list] = defaultdict(list)
        if kind == "cup":
            cups += 1
            for lab, c in states.items():
                for a, g in cup.items():
                    new[lab[:i] + (a, n - a) + lab[i:]].append(c * g)
        elif kind == "cap":
            for lab, c in states.items():
                a, b = lab[i], lab[i + 1]
                if a + b == n:
                    new[lab[:i] + lab[i + 2:]].append(c * cap[a])
        else:
            mat = colored_crossing(n, ev[2])
            for lab, c in states.items():
                for (x, y), v in mat[(lab[i], lab[i + 1])].items():
                    new[lab[:i] + (x, y) + lab[i + 2:]].append(c * v)
        states = {}
        for lab, parts in new.items():
            s = poly_sum(parts)
            if not s.is_zero():
                states[lab] = s
    value = states.get((), ZERO)
    for _ in range(cups):
        value = value.exact_div(den)
    return value


def colored_jones_fast(m: int, n: int, cap: int = FAST_COLOR_CAP) -> MultiLaurent:
    """J_{K_m}(n) by the colored state sum; m = 0 gives the unknot."""
    if n < 1:
        raise ValueError("color must be positive")
    if n > cap:
        raise ColorCapError(f"state-sum evaluator is capped at color {cap}, asked for {n}")
    morse = _morse_for(m)
    value = colored_bracket_state_sum(morse, n)
    sign = -1 if (n - 1) % 2 else 1
    return value * sign * framing_factor(n, _writhe(morse))


# ---------------------------------------------------------------------------
# cyclotomic expansion
#
# J_{K_m}(N) = [N] * sum_{k=0}^{N-1} C_k(q) prod_{j=1}^{k} (q^N + q^{-N} - q^j - q^{-j})
# with q = t^{-4} for m < 0 and q = t^4 for m > 0, and
# C_k = (-1)^k q^{k(k+3)/2} sum_{l=0}^{k} (-1)^l q^{l(l+1)p + l(l-1)/2} (1 - q^{2l+1})
#       / ((q^{k+1}; q)_{l+1} (q; q)_{k-l}),    p = -m.
# The orientation of q and the sign of p were fixed against the state sum.


def cyclotomic_q_power(m: int) -> int:
    """Exponent s with q = t^s."""
    return -4 if m < 0 else 4


def _qpoly_one_minus(a: int) -> MultiLaurent:
    return ONE - MultiLaurent.var("t", a)


@functools.lru_cache(maxsize=None)
def _inner_sum_generic(k: int, p: int) -> MultiLaurent:
    """The l-sum of C_k as a polynomial in q (written in the variable t)."""
    parts = []
    for l in range(k + 1):
        term = MultiLaurent.monomial({"t": l * (l + 1) * p + l * (l - 1) // 2}, -1 if l % 2 else 1)
        term = term * _qpoly_one_minus(2 * l + 1)
        for j in range(1, 2 * k + 2):
            if not (1 <= j <= k - l or k + 1 <= j <= k + l + 1):
                term = term * _qpoly_one_minus(j)
        parts.append(term)
    den = ONE
    for j in range(1, 2 * k + 2):
        den = den * _qpoly_one_minus(j)
    return poly_sum(parts).exact_div(den)


def cyclotomic_coefficient(m: int, k: int, generic: bool = False) -> dict[int, int]:
    """C_k for K_m as {q-exponent: coefficient}."""
    if m == 0:
        return {0: 1} if k == 0 else {}
    p = -m
    sign = -1 if k % 2 else 1
    base = k * (k + 3) // 2
    if not generic and p == 1:
        return {base: sign}
    if not generic and p == -1:
        return {0: 1}
    inner = _inner_sum_generic(k, p)
    return {e[0] + base: sign * c for e, c in inner.terms.items()}


def _balanced_digits(value: int, slots: int, nbytes: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * slots, "little")
    raw = (value + offset).to_bytes(slots * nbytes + 1, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(slots)]


def cyclotomic_sum(m: int, N: int) -> dict[int, int]:
    """J'_{K_m}(N) = J(N) / [N] as {q-exponent: coefficient}, by Horner's rule on packed integers."""
    coeffs = [cyclotomic_coefficient(m, k) for k in range(N)]
    # coefficient bound for the Horner accumulator
    bound = 0
    for k in range(N - 1, -1, -1):
        bound = 4 * bound + sum(abs(c) for c in coeffs[k].values())
    nbytes = (bound.bit_length() + 2 + 7) // 8
    B = 8 * nbytes
    acc, lo, top = 0, None, None
    for k in range(N - 1, -1, -1):
        if acc:
            # multiply by q^{-N} (q^{2N} + 1 - q^{N+k+1} - q^{N-k-1})
            j = k + 1
            acc = (acc << (2 * N * B)) + acc - (acc << ((N + j) * B)) - (acc << ((N - j) * B))
            lo -= N
            top += N
        ck = coeffs[k]
        if not ck:
            continue
        emin, emax = min(ck), max(ck)
        if lo is None:
            lo, top = emin, emax
        elif emin < lo:
            acc <<= (lo - emin) * B
            lo = emin
        top = max(top, emax)
        for e, c in ck.items():
            acc += c << ((e - lo) * B)
    if not acc:
        return {}
    slots = top - lo + 1
    digits = _balanced_digits(acc, slots, nbytes)
    return {lo + i: d for i, d in enumerate(digits) if d}


def colored_jones_cyclotomic(m: int, n: int) -> MultiLaurent:
    """J_{K_m}(n) from the cyclotomic expansion; m = 0 gives the unknot."""
    if n < 1:
        raise ValueError("color must be positive")
    s = cyclotomic_q_power(m)
    jp = cyclotomic_sum(m, n)
    return MultiLaurent.univariate("t", {s * e: c for e, c in jp.items()}) * quantum_integer(n)


# -- modular twin ------------------------------------------------------------


def powmod(base: np.ndarray, exp: int, prime: int) -> np.ndarray:
    """Elementwise base**exp mod prime for int64 arrays (prime < 2^31)."""
    base = np.asarray(base, dtype=np.int64) % prime
    if exp < 0:
        base = powmod(base, prime - 2, prime)
        exp = -exp
    out = np.ones_like(base)
    while exp:
        if exp & 1:
            out = out * base % prime
        exp >>= 1
        if exp:
            base = base * base % prime
    return out


def cyclotomic_mod(m: int, colors, points, prime: int):
    """J_{K_m}(N) at t = point modulo prime, for every color N and point.

    Returns ``(values, valid)`` where ``values`` has shape (len(colors),
    len(points)) and ``valid`` flags the points at which no denominator
    vanished.
    """
    colors = [int(N) for N in colors]
    t0 = np.asarray(points, dtype=np.int64) % prime
    valid = t0 != 0
    t0 = np.where(valid, t0, 1)
    s = cyclotomic_q_power(m)
    q = powmod(t0, s, prime)
    qinv = powmod(q, -1, prime)
    K = max(colors)
    # C_k(q) for k < K
    C = np.zeros((K, len(t0)), dtype=np.int64)
    p = -m
    if m == 0:
        C[0] = 1
    elif p in (1, -1):
        qe = np.ones_like(q)  # q^{k(k+3)/2}
        q_step = q * q % prime
        for k in range(K):
            if p == -1:
                C[k] = 1
            else:
                C[k] = qe if k % 2 == 0 else (prime - qe) % prime
            qe = qe * q_step % prime
            q_step = q_step * q % prime
    else:
        # (q; q)_j and inverses for j <= 2K + 1
        poch = [np.ones_like(q)]
        qj = np.ones_like(q)
        for j in range(1, 2 * K + 2):
            qj = qj * q % prime
            poch.append(poch[-1] * ((1 - qj) % prime) % prime)
        valid &= poch[-1] != 0
        safe_last = np.where(poch[-1] != 0, poch[-1], 1)
        inv = [None] * len(poch)
        inv[-1] = powmod(safe_last, -1, prime)
        for j in range(len(poch) - 1, 0, -1):
            qj_pow = powmod(q, j, prime)
            inv[j - 1] = inv[j] * ((1 - qj_pow) % prime) % prime
        for k in range(K):
            acc = np.zeros_like(q)
            for l in range(k + 1):
                e = l * (l + 1) * p + l * (l - 1) // 2
                term = powmod(q, e, prime) * ((1 - powmod(q, 2 * l + 1, prime)) % prime) % prime
                term = term * inv[k + l + 1] % prime * inv[k - l] % prime
                acc = (acc - term) % prime if l % 2 else (acc + term) % prime
            base = powmod(q, k * (k + 3) // 2, prime)
            ck = acc * poch[k] % prime * base % prime
            C[k] = (prime - ck) % prime if k % 2 else ck
    # [N] = (t^{2N} - t^{-2N}) / (t^2 - t^{-2})
    t2 = t0 * t0 % prime
    t2inv = powmod(t2, -1, prime)
    den = (t2 - t2inv) % prime
    valid &= den != 0
    den_inv = powmod(np.where(den != 0, den, 1), -1, prime)
    out = np.zeros((len(colors), len(t0)), dtype=np.int64)
    for row, N in enumerate(colors):
        qN = powmod(q, N, prime)
        qNsum = (qN + powmod(qN, -1, prime)) % prime
        acc = np.zeros_like(q)
        prod = np.ones_like(q)
        qj, qjinv = np.ones_like(q), np.ones_like(q)
        for k in range(N):
            if k:
                qj = qj * q % prime
                qjinv = qjinv * qinv % prime
                prod = prod * ((qNsum - qj - qjinv) % prime) % prime
            acc = (acc + C[k] * prod) % prime
        qnum = (powmod(t2, N, prime) - powmod(t2inv, N, prime)) % prime
        out[row] = acc * (qnum * den_inv % prime) % prime
    return out, valid


# ---------------------------------------------------------------------------
# sequences


EVALUATORS = {
    "skein": colored_jones_skein,
    "fast": colored_jones_fast,
    "cyclotomic": colored_jones_cyclotomic,
}


def colored_jones(m: int, n: int, method: str = "cyclotomic") -> MultiLaurent:
    try:
        fn = EVALUATORS[method]
    except KeyError:
        raise ValueError(f"unknown evaluator {method!r}; choose from {sorted(EVALUATORS)}") from None
    return fn(m, n)


def colored_jones_sequence(m: int, method: str = "cyclotomic") -> LaurentSequence:
    """n -> J_{K_m}(n) with J(0) = 0 and J(-n) = -J(n); m = 0 is the unknot."""

    def modular(indices, points, prime):
        return cyclotomic_mod(m, indices, points, prime)

    return LaurentSequence(
        lambda n: colored_jones(m, n, method),
        odd=True,
        name=f"J_{{K_{m}}}" if m else "J_U",
        modular=modular if method == "cyclotomic" else None,
    )


def odd_color_sequence(m: int, method: str = "cyclotomic") -> LaurentSequence:
    """n -> J_{K_m}(2n+1), defined for n >= 0."""
    base = colored_jones_sequence(m, method)

    def modular(indices, points, prime):
        return cyclotomic_mod(m, [2 * n + 1 for n in indices], points, prime)

    return LaurentSequence(
        lambda n: base(2 * n + 1),
        name=f"JJ_{{K_{m}}}" if m else "JJ_U",
        modular=modular if method == "cyclotomic" else None,
        m_affine=(2, 1),
    )
