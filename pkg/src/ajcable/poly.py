"""Sparse exact Laurent polynomials in the variables t, M, L, lam, z.

Every polynomial is stored as a dict mapping a 5-tuple of integer exponents
(always in the order of ``VARIABLES``) to a nonzero rational coefficient.
Integral coefficients are kept as plain ``int``; anything else is a
``fractions.Fraction``.

Large univariate products with integer coefficients (colored Jones values
run to 10^5 terms) go through Kronecker substitution so that the work is
done by CPython's big-integer multiplication.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

VARIABLES = ("t", "M", "L", "lam", "z")
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_INDEX["λ"] = _INDEX["lam"]
_ZERO_EXP = (0,) * NVARS

# Kronecker substitution pays off once the naive product has this many terms.
_KRONECKER_THRESHOLD = 4000


class NotDivisibleError(ArithmeticError):
    """Raised by :meth:`MultiLaurent.exact_div` when the division leaves a remainder."""


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_coeff(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not supported")
    return _norm(Fraction(c))


class MultiLaurent:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for exp, c in (terms or {}).items():
                exp = tuple(exp)
                if len(exp) != NVARS:
                    exp = exp + (0,) * (NVARS - len(exp))
                c = _as_coeff(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
            self._terms = {e: _norm(c) for e, c in clean.items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "MultiLaurent":
        c = _as_coeff(c)
        return cls({_ZERO_EXP: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiLaurent":
        return cls.monomial({name: power})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "MultiLaurent":
        exp = [0] * NVARS
        for name, p in powers.items():
            exp[var_index(name)] += p
        coeff = _as_coeff(coeff)
        return cls({tuple(exp): coeff} if coeff else {}, _trusted=True)

    @classmethod
    def univariate(cls, name: str, coeffs: Mapping[int, object]) -> "MultiLaurent":
        """Build sum(c * name**k) from a mapping ``{k: c}``."""
        i = var_index(name)
        terms = {}
        for k, c in coeffs.items():
            c = _as_coeff(c)
            if c:
                e = [0] * NVARS
                e[i] = k
                terms[tuple(e)] = c
        return cls(terms, _trusted=True)

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple, object]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, MultiLaurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiLaurent.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"MultiLaurent({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(VARIABLES, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = f"({c})" if isinstance(c, Fraction) else str(c)
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- ring operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiLaurent.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MultiLaurent(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent({e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_coeff(other)
            if not c:
                return MultiLaurent.const(0)
            return MultiLaurent({e: _norm(v * c) for e, v in self._terms.items()}, _trusted=True)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiLaurent.const(0)
        if len(a) == 1 or len(b) == 1:
            (e1, c1), = (a if len(a) == 1 else b).items()
            rest = b if len(a) == 1 else a
            return MultiLaurent(
                {tuple(x + y for x, y in zip(e, e1)): _norm(c * c1) for e, c in rest.items()},
                _trusted=True,
            )
        if len(a) * len(b) >= _KRONECKER_THRESHOLD:
            fast = _kronecker_product(self, other)
            if fast is not None:
                return fast
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                out[e] = out.get(e, 0) + c1 * c2
        return MultiLaurent({e: _norm(c) for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_coeff(other))
        if isinstance(other, MultiLaurent):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            return MultiLaurent({tuple(k * x for x in e): _norm(Fraction(1) / c ** (-k))}, _trusted=True)
        result = MultiLaurent.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- inspection -------------------------------------------------------

    def variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            for name, x in zip(VARIABLES, e):
                if x:
                    used.add(name)
        return used

    def only_uses(self, *names: str) -> bool:
        allowed = {var_index(n) for n in names}
        return all(not x or i in allowed for e in self._terms for i, x in enumerate(e))

    def degree(self, name: str) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        i = var_index(name)
        return max(e[i] for e in self._terms)

    def min_degree(self, name: str) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        i = var_index(name)
        return min(e[i] for e in self._terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def constant_term(self):
        return self._terms.get(_ZERO_EXP, 0)

    def coefficients(self, name: str) -> dict[int, "MultiLaurent"]:
        """Collect by powers of ``name``: ``{k: coefficient of name**k}``."""
        i = var_index(name)
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            buckets.setdefault(k, {})[e2] = c
        return {k: MultiLaurent(v, _trusted=True) for k, v in buckets.items()}

    def univariate_coeffs(self, name: str) -> dict[int, object]:
        """Coefficients ``{k: c}`` of a polynomial in ``name`` alone."""
        if not self.only_uses(name):
            raise ValueError(f"polynomial involves variables other than {name}")
        i = var_index(name)
        return {e[i]: c for e, c in self._terms.items()}

    # -- substitutions ----------------------------------------------------

    def map_exponents(self, fn) -> "MultiLaurent":
        """Apply an exponent map ``fn(exp_tuple) -> exp_tuple`` (must be injective or additive-safe)."""
        out: dict = {}
        for e, c in self._terms.items():
            e2 = tuple(fn(e))
            out[e2] = out.get(e2, 0) + c
        return MultiLaurent({e: _norm(c) for e, c in out.items() if c}, _trusted=True)

    def shift_M(self, k: int) -> "MultiLaurent":
        """Substitute M -> t^(2k) M."""
        if k == 0:
            return self
        return MultiLaurent(
            {(e[0] + 2 * k * e[1],) + e[1:]: c for e, c in self._terms.items()}, _trusted=True
        )

    def at_M_power_of_t(self, n: int) -> "MultiLaurent":
        """Substitute M -> t^(2n)."""
        return self.map_exponents(lambda e: (e[0] + 2 * n * e[1], 0) + e[2:])

    def scale_var(self, name: str, factor: int) -> "MultiLaurent":
        """Substitute name -> name**factor (factor may be negative)."""
        i = var_index(name)
        return MultiLaurent(
            {e[:i] + (e[i] * factor,) + e[i + 1:]: c for e, c in self._terms.items()}, _trusted=True
        )

    def rename(self, old: str, new: str) -> "MultiLaurent":
        i, j = var_index(old), var_index(new)

        def fn(e):
            e = list(e)
            e[j] += e[i]
            e[i] = 0
            return e

        return self.map_exponents(fn)

    def times_monomial(self, powers: Mapping[str, int]) -> "MultiLaurent":
        shift = [0] * NVARS
        for name, p in powers.items():
            shift[var_index(name)] += p
        return MultiLaurent(
            {tuple(x + s for x, s in zip(e, shift)): c for e, c in self._terms.items()}, _trusted=True
        )

    def subs(self, name: str, value) -> "MultiLaurent":
        """Substitute a rational number or a MultiLaurent for ``name``."""
        i = var_index(name)
        if isinstance(value, MultiLaurent):
            result = MultiLaurent.const(0)
            for k, coeff in self.coefficients(name).items():
                result = result + coeff * value ** k
            return result
        value = _as_coeff(value)
        out: dict = {}
        for e, c in self._terms.items():
            k = e[i]
            if k < 0 and value == 0:
                raise ZeroDivisionError(f"negative power of {name} at 0")
            w = c * (Fraction(value) ** k if k < 0 else value ** k)
            e2 = e[:i] + (0,) + e[i + 1:]
            out[e2] = out.get(e2, 0) + w
        return MultiLaurent({e: _norm(c) for e, c in out.items() if c}, _trusted=True)

    def derivative(self, name: str) -> "MultiLaurent":
        i = var_index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiLaurent(out, _trusted=True)

    def evaluate_mod(self, point: int, p: int, name: str = "t") -> int:
        """Value of a univariate polynomial at ``point`` modulo the prime ``p``."""
        total = 0
        i = var_index(name)
        for e, c in self._terms.items():
            k = e[i]
            if isinstance(c, Fraction):
                c = c.numerator * pow(c.denominator, -1, p)
            total += c * pow(point, k, p)
        return total % p

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        return Fraction(reduce(math.gcd, nums), reduce(math.lcm, dens))

    def primitive(self) -> "MultiLaurent":
        """Integer polynomial with content 1, same sign as the input."""
        if not self._terms:
            return self
        c = self.content()
        return self * (1 / c)

    def monomial_normalized(self, *names: str) -> "MultiLaurent":
        """Shift so that the minimal exponent of each named variable is 0."""
        if not self._terms:
            return self
        shift = {n: -self.min_degree(n) for n in names}
        return self.times_monomial(shift)

    def leading_term(self):
        """Lexicographically largest exponent and its coefficient."""
        e = max(self._terms)
        return e, self._terms[e]

    # -- division ---------------------------------------------------------

    def exact_div(self, other: "MultiLaurent") -> "MultiLaurent":
        """Quotient ``self / other``; raises :class:`NotDivisibleError` on a remainder."""
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return self
        if len(other._terms) == 1:
            (e, c), = other._terms.items()
            inv = Fraction(1) / c
            return MultiLaurent(
                {tuple(x - y for x, y in zip(f, e)): _norm(v * inv) for f, v in self._terms.items()},
                _trusted=True,
            )
        # exponents of the quotient are boxed in by the degree bounds in each variable
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in other._terms) for i in range(NVARS)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in other._terms) for i in range(NVARS)]
        if any(a > b for a, b in zip(lo, hi)):
            raise NotDivisibleError("degree bounds rule out exact division")
        used = [i for i in range(NVARS) if any(e[i] for e in self._terms) or any(e[i] for e in other._terms)]
        if len(used) == 1:
            return _univariate_exact_div(self, other, used[0])
        rem = dict(self._terms)
        lead_e, lead_c = other.leading_term()
        gterms = list(other._terms.items())
        quot: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(x - y for x, y in zip(e, lead_e))
            if any(q < a or q > b for q, a, b in zip(qe, lo, hi)):
                raise NotDivisibleError("nonzero remainder")
            qc = _norm(Fraction(c) / lead_c) if not (isinstance(c, int) and c % lead_c == 0) else c // lead_c
            quot[qe] = qc
            for ge, gc in gterms:
                te = tuple(x + y for x, y in zip(qe, ge))
                v = rem.get(te, 0) - qc * gc
                if v:
                    rem[te] = _norm(v)
                else:
                    rem.pop(te, None)
        return MultiLaurent(quot, _trusted=True)

    def divides(self, other: "MultiLaurent") -> bool:
        try:
            other.exact_div(self)
        except NotDivisibleError:
            return False
        return True

    # -- serialization ----------------------------------------------------

    def to_records(self) -> list[tuple[int, int, int, int, int]]:
        """Sorted records ``(e_t, e_M, e_L, num, den)``; only t, M, L may occur."""
        if not self.only_uses("t", "M", "L"):
            raise ValueError("record format only carries t, M and L exponents")
        recs = []
        for e, c in self._terms.items():
            c = Fraction(c)
            recs.append((e[0], e[1], e[2], c.numerator, c.denominator))
        recs.sort()
        return recs

    def to_text(self) -> str:
        return "".join(f"[{a}, {b}, {c}, {n}, {d}]\n" for a, b, c, n, d in self.to_records())

    @classmethod
    def from_records(cls, records: Iterable[Iterable[int]]) -> "MultiLaurent":
        terms = {}
        for rec in records:
            et, em, el, num, den = (int(x) for x in rec)
            if den == 0:
                raise ValueError("zero denominator in record")
            terms[(et, em, el, 0, 0)] = terms.get((et, em, el, 0, 0), 0) + Fraction(num, den)
        return cls(terms)

    @classmethod
    def from_text(cls, text: str) -> "MultiLaurent":
        records = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            m = _RECORD_RE.fullmatch(line)
            if m is None:
                raise ValueError(f"malformed polynomial record: {line!r}")
            records.append(m.groups())
        return cls.from_records(records)


_RECORD_RE = re.compile(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(\d+)\s*\]")


# ---------------------------------------------------------------------------
# univariate kernels


def _single_var(p: MultiLaurent):
    idx = None
    for e in p.terms:
        for i, x in enumerate(e):
            if x:
                if idx is None:
                    idx = i
                elif idx != i:
                    return -1
    return idx


def _pack(values: list[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _kronecker_product(a: MultiLaurent, b: MultiLaurent):
    """Univariate integer product through one big-integer multiplication, or None."""
    ia, ib = _single_var(a), _single_var(b)
    if ia == -1 or ib == -1:
        return None
    idx = ia if ia is not None else ib
    if ib is not None and ib != idx:
        return None
    if idx is None or not a.is_integral() or not b.is_integral():
        return None
    ea = {e[idx]: c for e, c in a.terms.items()}
    eb = {e[idx]: c for e, c in b.terms.items()}
    lo_a, lo_b = min(ea), min(eb)
    stride = 0
    for k in ea:
        stride = math.gcd(stride, k - lo_a)
    for k in eb:
        stride = math.gcd(stride, k - lo_b)
    stride = stride or 1
    span_a = (max(ea) - lo_a) // stride + 1
    span_b = (max(eb) - lo_b) // stride + 1
    bound = max(abs(c) for c in ea.values()) * max(abs(c) for c in eb.values()) * min(len(ea), len(eb))
    bits = bound.bit_length() + 2
    nbytes = (bits + 7) // 8
    bits = 8 * nbytes
    # dense packing is wasteful for very sparse inputs
    if (span_a + span_b) > 40 * (len(ea) + len(eb)):
        return None

    def pack(exps, lo, span):
        pos = [0] * span
        neg = [0] * span
        for k, c in exps.items():
            j = (k - lo) // stride
            if c > 0:
                pos[j] = c
            else:
                neg[j] = -c
        return _pack(pos, nbytes) - _pack(neg, nbytes)

    prod = pack(ea, lo_a, span_a) * pack(eb, lo_b, span_b)
    span = span_a + span_b - 1
    half = 1 << (bits - 1)
    offset = _pack([half] * span, nbytes)
    raw = (prod + offset).to_bytes(span * nbytes + 1, "little")
    lo = lo_a + lo_b
    terms = {}
    for j in range(span):
        c = int.from_bytes(raw[j * nbytes:(j + 1) * nbytes], "little") - half
        if c:
            e = [0] * NVARS
            e[idx] = lo + j * stride
            terms[tuple(e)] = c
    return MultiLaurent(terms, _trusted=True)


def _univariate_exact_div(f: MultiLaurent, g: MultiLaurent, idx: int) -> MultiLaurent:
    fe = {e[idx]: c for e, c in f.terms.items()}
    ge = {e[idx]: c for e, c in g.terms.items()}
    flo, fhi = min(fe), max(fe)
    glo, ghi = min(ge), max(ge)
    n = fhi - flo + 1
    m = ghi - glo + 1
    rem = [0] * n
    for k, c in fe.items():
        rem[k - flo] = c
    gd = [(k - glo, c) for k, c in ge.items() if k != ghi]
    lead = ge[ghi]
    qlen = n - m + 1
    quot = [0] * qlen
    integral = isinstance(lead, int) and all(isinstance(c, int) for c in fe.values()) and all(
        isinstance(c, int) for c in ge.values()
    )
    for j in range(qlen - 1, -1, -1):
        c = rem[j + m - 1]
        if not c:
            continue
        if integral and c % lead == 0:
            q = c // lead
        else:
            q = _norm(Fraction(c) / lead)
            integral = integral and isinstance(q, int)
        quot[j] = q
        rem[j + m - 1] = 0
        for k, gc in gd:
            rem[j + k] -= q * gc
    if any(rem):
        raise NotDivisibleError("nonzero remainder")
    lo = flo - glo
    terms = {}
    for j, q in enumerate(quot):
        if q:
            e = [0] * NVARS
            e[idx] = lo + j
            terms[tuple(e)] = q
    return MultiLaurent(terms, _trusted=True)


# ---------------------------------------------------------------------------
# convenient names

ONE = MultiLaurent.const(1)
ZERO = MultiLaurent.const(0)
t = MultiLaurent.var("t")
M = MultiLaurent.var("M")
L = MultiLaurent.var("L")
lam = MultiLaurent.var("lam")
z = MultiLaurent.var("z")


def poly_sum(items: Iterable[MultiLaurent]) -> MultiLaurent:
    """Sum many polynomials with a single accumulator dict."""
    out: dict = {}
    for p in items:
        for e, c in p.terms.items():
            out[e] = out.get(e, 0) + c
    return MultiLaurent({e: _norm(c) for e, c in out.items() if c}, _trusted=True)


# ---------------------------------------------------------------------------
# specializations


def epsilon_specialize(f: MultiLaurent) -> MultiLaurent:
    """The classical limit t = -1."""
    out: dict = {}
    for e, c in f.terms.items():
        e2 = (0,) + e[1:]
        out[e2] = out.get(e2, 0) + (-c if e[0] & 1 else c)
    return MultiLaurent({e: _norm(c) for e, c in out.items() if c}, _trusted=True)


def t_degree_bounds(f: MultiLaurent) -> tuple[int, int]:
    """(minimal, maximal) exponent of t in a nonzero polynomial in t alone."""
    if f.is_zero():
        raise ValueError("t-degree of the zero polynomial is undefined")
    if not f.only_uses("t"):
        raise ValueError("t_degree_bounds expects a polynomial in t only")
    exps = [e[0] for e in f.terms]
    return min(exps), max(exps)


# ---------------------------------------------------------------------------
# resultants


def _bareiss_det(mat: list[list[MultiLaurent]]) -> MultiLaurent:
    n = len(mat)
    if n == 0:
        return ONE
    a = [row[:] for row in mat]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = pivot * a[i][j] - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if not num.is_zero() else ZERO
            a[i][k] = ZERO
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: MultiLaurent, g: MultiLaurent, name: str) -> list[list[MultiLaurent]]:
    """Sylvester matrix with the g-rows stacked above the f-rows."""
    fc, gc = f.coefficients(name), g.coefficients(name)
    df, dg = max(fc), max(gc)
    size = df + dg
    rows = []
    for i in range(df):
        rows.append([gc.get(dg - (j - i), ZERO) if 0 <= j - i <= dg else ZERO for j in range(size)])
    for i in range(dg):
        rows.append([fc.get(df - (j - i), ZERO) if 0 <= j - i <= df else ZERO for j in range(size)])
    return rows


def resultant(f: MultiLaurent, g: MultiLaurent, name: str = "lam") -> MultiLaurent:
    """Res_name(f, g) = lc(f)^deg(g) * prod g(root of f).

    Both inputs must be polynomial (no negative exponents) in ``name``.
    """
    if f.is_zero() or g.is_zero():
        return ZERO
    for p in (f, g):
        if p.min_degree(name) < 0:
            raise ValueError(f"negative exponent of {name}; clear denominators first")
    df, dg = f.degree(name), g.degree(name)
    if df == 0 and dg == 0:
        raise ValueError(f"at least one argument must have positive degree in {name}")
    det = _bareiss_det(sylvester_matrix(f, g, name))
    # g-block on top differs from the f-on-top determinant by (-1)^(df*dg)
    return -det if (df * dg) % 2 else det


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull vertices, counterclockwise from the lexicographically smallest."""

    vertices: tuple[tuple[int, int], ...]

    def vertex_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.vertices)

    def contains(self, point: tuple[int, int]) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return point == vs[0]
        if len(vs) == 2:
            (x0, y0), (x1, y1) = vs
            px, py = point
            if (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0):
                return False
            return min(x0, x1) <= px <= max(x0, x1) and min(y0, y1) <= py <= max(y0, y1)
        n = len(vs)
        for i in range(n):
            (x0, y0), (x1, y1) = vs[i], vs[(i + 1) % n]
            if (x1 - x0) * (point[1] - y0) - (y1 - y0) * (point[0] - x0) < 0:
                return False
        return True


def convex_hull(points: Iterable[tuple[int, int]]) -> NewtonPolygon:
    pts = sorted(set(points))
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) <= 2:
        return NewtonPolygon(tuple(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return NewtonPolygon(tuple(hull))


def newton_polygon(f: MultiLaurent, x: str = "L", y: str = "M") -> NewtonPolygon:
    """Newton polygon of a polynomial in (x, y); points are (x-exponent, y-exponent)."""
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    if not f.only_uses(x, y):
        raise ValueError(f"expected a polynomial in {x} and {y} only")
    ix, iy = var_index(x), var_index(y)
    return convex_hull((e[ix], e[iy]) for e in f.terms)


def minkowski_sum(p: NewtonPolygon, q: NewtonPolygon) -> NewtonPolygon:
    return convex_hull((a[0] + b[0], a[1] + b[1]) for a in p.vertices for b in q.vertices)


# ---------------------------------------------------------------------------
# rational functions (used for left division in the quantum torus)


class RationalFunction:
    """num/den with MultiLaurent parts; only monomial denominators are folded away."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiLaurent, den: MultiLaurent = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif len(den) == 1:
            num, den = num.exact_div(den), ONE
        else:
            try:
                num, den = num.exact_div(den), ONE
            except NotDivisibleError:
                pass
        self.num, self.den = num, den

    @classmethod
    def lift(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, MultiLaurent):
            return cls(x)
        return cls(MultiLaurent.const(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, other):
        o = RationalFunction.lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other))

    def __rsub__(self, other):
        return RationalFunction.lift(other) - self

    def __mul__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        try:
            o = RationalFunction.lift(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    def shift_M(self, k: int) -> "RationalFunction":
        return RationalFunction(self.num.shift_M(k), self.den.shift_M(k))

    def __repr__(self):
        if self.den == ONE:
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"


# ---------------------------------------------------------------------------
# parsing the printed form


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?\s*"
    r"(?:(?P<coef>\d+|\(-?\d+/\d+\))\s*\*?\s*)?"
    r"(?P<mono>(?:[A-Za-z]+(?:\^-?\d+)?(?:\s*\*\s*[A-Za-z]+(?:\^-?\d+)?)*)?)"
)
_FACTOR_RE = re.compile(r"([A-Za-z]+)(?:\^(-?\d+))?")


def parse_poly(text: str) -> MultiLaurent:
    """Inverse of ``str(MultiLaurent)``: terms like ``-3*t^-2*M^4`` or ``(1/2)*L``."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    if text == "0":
        return MultiLaurent.const(0)
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator before {text[pos:]!r}")
        coef_s, mono = m.group("coef"), m.group("mono").strip()
        if coef_s is None and not mono:
            raise ValueError(f"empty term in {text!r}")
        coef = Fraction(coef_s.strip("()")) if coef_s else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        exp = [0] * NVARS
        for name, e in _FACTOR_RE.findall(mono):
            exp[var_index(name)] += int(e) if e else 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coef
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
        first = False
    return MultiLaurent({e: c for e, c in terms.items() if c})
