"""The quantum torus: Laurent polynomials in L, M over Q[t^{+-1}] with LM = t^2 ML.

Operators act on sequences f: Z -> Q[t^{+-1}] by (Lf)(n) = f(n+1) and
(Mf)(n) = t^{2n} f(n).  An operator is stored in normal form as a map
``{i: c_i(t, M)}`` standing for sum c_i(t, M) L^i.
"""

from __future__ import annotations

import math
import threading
from typing import Callable, Iterable, Mapping

from .poly import ONE, ZERO, MultiLaurent, RationalFunction, poly_sum


def _check_tm(c: MultiLaurent):
    if not c.only_uses("t", "M"):
        raise ValueError("operator coefficients must be polynomials in t and M")


class QOperator:
    """Element sum c_i(t, M) L^i of the quantum torus."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, MultiLaurent | int] | None = None):
        clean = {}
        for i, c in (coeffs or {}).items():
            if not isinstance(c, MultiLaurent):
                c = MultiLaurent.const(c)
            _check_tm(c)
            if not c.is_zero():
                clean[int(i)] = c
        self._coeffs = clean

    @classmethod
    def from_poly(cls, p: MultiLaurent) -> "QOperator":
        """Read a commutative polynomial in t, M, L as a normal-ordered operator."""
        if not p.only_uses("t", "M", "L"):
            raise ValueError("expected a polynomial in t, M, L")
        return cls(p.coefficients("L"))

    @classmethod
    def L(cls, k: int = 1) -> "QOperator":
        return cls({k: ONE})

    @classmethod
    def M(cls, k: int = 1) -> "QOperator":
        return cls({0: MultiLaurent.var("M", k)})

    @classmethod
    def scalar(cls, c) -> "QOperator":
        return cls({0: c if isinstance(c, MultiLaurent) else MultiLaurent.const(c)})

    @property
    def coeffs(self) -> Mapping[int, MultiLaurent]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    def l_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("L-degree of the zero operator")
        return max(self._coeffs)

    def l_min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("L-degree of the zero operator")
        return min(self._coeffs)

    def m_degree(self) -> int:
        return max(c.degree("M") for c in self._coeffs.values())

    def leading(self) -> MultiLaurent:
        return self._coeffs[self.l_degree()]

    def to_poly(self) -> MultiLaurent:
        """The normal-ordered symbol as a commutative polynomial in t, M, L."""
        return poly_sum(c.times_monomial({"L": i}) for i, c in self._coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, QOperator):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        if not self._coeffs:
            return "QOperator(0)"
        parts = [f"({c})*L^{i}" for i, c in sorted(self._coeffs.items())]
        return "QOperator(" + " + ".join(parts) + ")"

    def __add__(self, other):
        other = _lift(other)
        out = dict(self._coeffs)
        for i, c in other._coeffs.items():
            out[i] = out[i] + c if i in out else c
        return QOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return QOperator({i: -c for i, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        return op_mul(self, _lift(other))

    def __rmul__(self, other):
        return op_mul(_lift(other), self)

    def scale(self, c: MultiLaurent) -> "QOperator":
        """Left multiplication by a coefficient c(t, M)."""
        return QOperator({i: c * v for i, v in self._coeffs.items()})

    def shift_L(self, k: int) -> "QOperator":
        """Right multiplication by L^k."""
        return QOperator({i + k: c for i, c in self._coeffs.items()})

    def map_coeffs(self, fn: Callable[[MultiLaurent], MultiLaurent]) -> "QOperator":
        return QOperator({i: fn(c) for i, c in self._coeffs.items()})

    def to_text(self) -> str:
        """One line per L-power: ``L^i : <poly in t, M>``."""
        return "".join(f"L^{i} : {c}\n" for i, c in sorted(self._coeffs.items()))


def _lift(x) -> QOperator:
    if isinstance(x, QOperator):
        return x
    if isinstance(x, MultiLaurent):
        if x.only_uses("t", "M"):
            return QOperator({0: x})
        return QOperator.from_poly(x)
    return QOperator.scalar(x)


def op_mul(a: QOperator, b: QOperator) -> QOperator:
    """a(M) L^k * b(M) L^l = a(M) b(t^{2k} M) L^{k+l}."""
    out: dict[int, list] = {}
    for k, ca in a.coeffs.items():
        for l, cb in b.coeffs.items():
            out.setdefault(k + l, []).append(ca * cb.shift_M(k))
    return QOperator({i: poly_sum(v) for i, v in out.items()})


# ---------------------------------------------------------------------------
# sequences


class LaurentSequence:
    """A function Z -> Q[t^{+-1}] with memoized values.

    With ``odd=True`` the producer is only consulted for n > 0; J(0) = 0 and
    J(-n) = -J(n) are supplied by the wrapper.  ``modular`` optionally maps
    (n, point, prime) to the value at t = point modulo prime, which lets the
    recurrence guesser skip building exact polynomials.
    """

    def __init__(
        self,
        producer: Callable[[int], MultiLaurent],
        *,
        odd: bool = False,
        name: str = "",
        modular: Callable[[Iterable[int], Iterable[int], int], object] | None = None,
        start: int | None = None,
        m_affine: tuple[int, int] = (1, 0),
    ):
        self._producer = producer
        self.odd = odd
        self.name = name
        self.modular = modular
        self.start = start
        # the guesser's preferred coefficient variable t^{2(an+b)}
        self.m_affine = m_affine
        self._cache: dict[int, MultiLaurent] = {}
        self._lock = threading.Lock()

    def __call__(self, n: int) -> MultiLaurent:
        v = self._cache.get(n)
        if v is not None:
            return v
        if self.odd:
            if n == 0:
                return ZERO
            if n < 0:
                return -self(-n)
        if self.start is not None and n < self.start:
            raise ValueError(f"{self.name or 'sequence'} is only defined from n = {self.start}")
        v = self._producer(n)
        if not isinstance(v, MultiLaurent):
            v = MultiLaurent.const(v)
        with self._lock:
            self._cache.setdefault(n, v)
        return v

    def values(self, indices: Iterable[int]) -> list[tuple[int, MultiLaurent]]:
        return [(n, self(n)) for n in indices]

    def mapped(self, fn: Callable[[int], int], name: str = "") -> "LaurentSequence":
        """The sequence n -> self(fn(n)); oddness is not inherited."""
        return LaurentSequence(lambda n: self(fn(n)), name=name)

    @classmethod
    def constant(cls, c=1) -> "LaurentSequence":
        v = c if isinstance(c, MultiLaurent) else MultiLaurent.const(c)
        return cls(lambda n: v, name=f"const({v})")

    @classmethod
    def from_function(cls, fn, name: str = "") -> "LaurentSequence":
        return cls(fn, name=name)


def quantum_integer(n: int) -> MultiLaurent:
    """[n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2})."""
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    n = abs(n)
    return MultiLaurent.univariate("t", {2 * n - 2 - 4 * j: sign for j in range(n)})


def unknot_sequence() -> LaurentSequence:
    return LaurentSequence(quantum_integer, odd=True, name="[n]")


# ---------------------------------------------------------------------------
# operator action


def apply(op: QOperator, f: LaurentSequence | Callable[[int], MultiLaurent], n: int) -> MultiLaurent:
    """(sum c_i(t, M) L^i f)(n) = sum c_i(t, t^{2n}) f(n + i)."""
    parts = []
    for i, c in op.coeffs.items():
        v = f(n + i)
        if v.is_zero():
            continue
        parts.append(c.at_M_power_of_t(n) * v)
    return poly_sum(parts) if len(parts) != 1 else parts[0]


def annihilates(op: QOperator, f, n_lo: int, n_hi: int) -> bool:
    if n_lo > n_hi:
        raise ValueError("empty index window")
    return all(apply(op, f, n).is_zero() for n in range(n_lo, n_hi + 1))


def applied_sequence(op: QOperator, f) -> LaurentSequence:
    """The sequence n -> (op f)(n)."""
    return LaurentSequence(lambda n: apply(op, f, n))


# ---------------------------------------------------------------------------
# involution and the Frohman-Gelca map


def sigma(op: QOperator) -> QOperator:
    """Linear extension of M^k L^l -> M^{-k} L^{-l}."""
    return QOperator.from_poly(op.to_poly().scale_var("M", -1).scale_var("L", -1))


def upsilon(k: int, l: int) -> QOperator:
    """(-1)^{k+l} t^{kl} (M^k L^l + M^{-k} L^{-l})."""
    if math.gcd(k, l) != 1:
        raise ValueError(f"upsilon needs a coprime pair, got ({k}, {l})")
    sign = -1 if (k + l) % 2 else 1
    c = MultiLaurent.monomial({"t": k * l}, sign)
    p = c * (MultiLaurent.monomial({"M": k, "L": l}) + MultiLaurent.monomial({"M": -k, "L": -l}))
    return QOperator.from_poly(p)


def operator_halving(p: QOperator) -> QOperator:
    """M^k L^{2l} -> (t^2 M^2)^k L^l; defined only for even L-powers."""
    out = {}
    for i, c in p.coeffs.items():
        if i % 2:
            raise ValueError("operator_halving needs only even powers of L")
        out[i // 2] = c.map_exponents(lambda e: (e[0] + 2 * e[1], 2 * e[1]) + e[2:])
    return QOperator(out)


# ---------------------------------------------------------------------------
# division


class RationalOperator:
    """sum q_i L^i with q_i rational functions of (t, M); used by left_divide."""

    def __init__(self, coeffs: Mapping[int, RationalFunction]):
        self.coeffs = {i: c for i, c in coeffs.items() if not c.is_zero()}

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs.values())

    def to_qoperator(self) -> QOperator:
        if not self.is_polynomial():
            raise ValueError("operator has non-polynomial coefficients")
        return QOperator({i: c.num for i, c in self.coeffs.items()})

    def cleared(self) -> tuple[QOperator, MultiLaurent]:
        """(D * self as a polynomial operator, D) for a common denominator D in M."""
        den = ONE
        for c in self.coeffs.values():
            if not c.is_polynomial() and not c.den.divides(den):
                den = den * c.den
        return QOperator({i: (c * den).num for i, c in self.coeffs.items()}), den


def left_divide(a: QOperator, b: QOperator):
    """Write a = q * b + rem with deg_L rem < deg_L b.

    Coefficients of q and rem are rational in M; if they happen to be
    polynomial, plain :class:`QOperator` values are returned, otherwise
    :class:`RationalOperator` values.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    db = b.l_degree()
    lo_b = b.l_min_degree()
    if db - lo_b <= 0:
        raise ValueError("divisor must have positive L-degree")
    if not a.is_zero() and a.l_min_degree() < 0 or lo_b < 0:
        raise ValueError("shift by a power of L so that all L-exponents are nonnegative")
    lead = b.coeffs[db]
    rem = {i: RationalFunction(c) for i, c in a.coeffs.items()}
    quot: dict[int, RationalFunction] = {}
    while rem and max(rem) >= db:
        d = max(rem)
        e = d - db
        # (c / sigma_e(lead)) L^e * lead L^db has leading term c L^d
        qc = rem[d] / RationalFunction(lead.shift_M(e))
        quot[e] = qc
        for j, bc in b.coeffs.items():
            term = qc * RationalFunction(bc.shift_M(e))
            k = e + j
            v = rem.get(k)
            v = -term if v is None else v - term
            if v.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = v
        rem.pop(d, None)
    q = RationalOperator(quot)
    r = RationalOperator(rem)
    if q.is_polynomial() and r.is_polynomial():
        return q.to_qoperator(), r.to_qoperator()
    return q, r


def content_normalize(op: QOperator) -> QOperator:
    """Integer coefficients, overall content 1, lowest t-power cleared,
    and positive leading coefficient of the top t-term of the leading L-coefficient."""
    if op.is_zero():
        return op
    p = op.to_poly()
    p = p.primitive()
    p = p.times_monomial({"t": -p.min_degree("t"), "M": -p.min_degree("M")})
    out = QOperator.from_poly(p)
    lead = out.leading()
    top_t = lead.degree("t")
    top_terms = [(e, c) for e, c in lead.terms.items() if e[0] == top_t]
    _, c = max(top_terms)
    if c < 0:
        out = -out
    return out
