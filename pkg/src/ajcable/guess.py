"""Guess linear q-recurrences sum_{i<=d} a_i(t, t^{2n}) f(n+i) = 0 from values.

The unknowns are the coefficients c_{ij}(t) of a_i = sum_{j<=delta} c_{ij} M^j.
Each window n gives one linear equation over Q(t).  The nullspace is found
by evaluating t at integer points modulo word-size primes:

  1. at each point, row-reduce mod p and take the reduced-echelon nullspace
     vector with the smallest pivot (normalized to 1 at the pivot);
  2. recover the common denominator D(t) by rational reconstruction of a
     random combination of the entries, then interpolate D * entry;
  3. lift the coefficients over several primes (CRT + rational
     reconstruction of numbers) until two successive lifts agree;
  4. certify the candidate by exact substitution on every window, including
     held-out ones that never entered the solve.

A trivial nullspace at a single point proves that no operator of the given
shape exists (ranks only drop under specialization).
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .poly import MultiLaurent, parse_poly
from .qtorus import LaurentSequence, QOperator, apply, content_normalize

log = logging.getLogger(__name__)

ModularHook = Callable[[Sequence[int], Sequence[int], int], tuple]


# ---------------------------------------------------------------------------
# primes


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):  # deterministic far beyond 2^31
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(bound: int, count: int) -> list[int]:
    out, n = [], bound - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return out


PRIME_POOL = tuple(primes_below(2 ** 31, 64))


# ---------------------------------------------------------------------------
# configuration and errors


@dataclass(frozen=True)
class GuessConfig:
    """Search box and evaluation schedule.

    ``seed`` picks a disjoint slice of the prime pool and a different run of
    evaluation points, so two seeds give two independent schedules.
    """

    d_cap: int = 2
    delta_cap: int = 30
    margin: int = 2
    holdout: int = 3
    start: int = 0
    seed: int = 0
    primes_per_schedule: int = 8
    first_point: int = 1009
    max_points: int = 6000
    certify: bool = True

    def __post_init__(self):
        if self.margin < 2:
            raise ValueError("margin must be at least 2")
        if self.holdout < 3:
            raise ValueError("holdout must be at least 3")
        if self.d_cap < 0 or self.delta_cap < 0:
            raise ValueError("caps must be nonnegative")
        if (self.seed + 1) * self.primes_per_schedule > len(PRIME_POOL):
            raise ValueError("seed too large for the prime pool")

    @property
    def primes(self) -> tuple[int, ...]:
        k = self.primes_per_schedule
        return PRIME_POOL[self.seed * k:(self.seed + 1) * k]

    @property
    def point_offset(self) -> int:
        return self.first_point + 100003 * self.seed

    def values_needed(self, d: int, delta: int) -> int:
        """Minimum number of values accepted for a search of shape (d, delta)."""
        return (d + 1) * (delta + 1) + self.margin + self.holdout

    def values_wanted(self, d: int, delta: int) -> int:
        """Values used by the search: d more than the minimum, so the fitted
        windows exceed the unknowns by ``margin``."""
        return self.values_needed(d, delta) + d


class UndersupplyError(ValueError):
    """Not enough sequence values for the requested search shape."""


class ZeroSequenceError(ValueError):
    """Every supplied value is zero; only the trivial operator would be found."""


class CapsExhaustedError(RuntimeError):
    """No recurrence inside the configured caps."""

    def __init__(self, region: dict):
        super().__init__(f"no recurrence found with d <= {region['d_cap']}, delta <= {region['delta_cap']}")
        self.region = region


class ReconstructionError(RuntimeError):
    """The modular pipeline failed to stabilize within its budget."""


@dataclass
class GuessStats:
    """Bookkeeping of one search, kept for reports."""

    tried: list[tuple[int, int]] = field(default_factory=list)
    points: int = 0
    primes: int = 0
    found: tuple[int, int] | None = None


# ---------------------------------------------------------------------------
# modular linear algebra


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _nullspace_first(a: np.ndarray, p: int) -> tuple[np.ndarray | None, int, tuple]:
    """Reduced-echelon nullspace vector with smallest pivot, the nullity, and a
    signature (pivot pattern) used to spot degenerate points."""
    rows, cols = a.shape
    red, piv = _rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    if not free:
        return None, 0, (tuple(piv),)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = (-red[r, f]) % p
    nb, npiv = _rref_mod(basis, p)
    return nb[0], len(free), (tuple(piv), tuple(npiv))


# ---------------------------------------------------------------------------
# polynomial arithmetic mod p (coefficient lists, low degree first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int):
    a = a[:]
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, bv in enumerate(b):
            a[k + i] = (a[k + i] - c * bv) % p
        _trim(a)
    return _trim(q), a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _interpolate_many(xs: np.ndarray, ys: np.ndarray, p: int) -> np.ndarray:
    """Newton interpolation for several value rows at once.

    ys has shape (rows, K); returns coefficients (rows, K), low degree first.
    """
    K = len(xs)
    dd = ys.copy() % p
    xs = xs % p
    for j in range(1, K):
        diff = (xs[j:] - xs[:-j]) % p
        inv = np.array([pow(int(v), -1, p) for v in diff], dtype=np.int64)
        dd[:, j:] = (dd[:, j:] - dd[:, j - 1:-1]) % p * inv % p
    coeffs = np.zeros_like(dd)
    for k in range(K - 1, -1, -1):
        # coeffs = coeffs * (x - xs[k]) + dd[:, k]
        shifted = np.zeros_like(coeffs)
        shifted[:, 1:] = coeffs[:, :-1]
        coeffs = (shifted - coeffs * xs[k] % p) % p
        coeffs[:, 0] = (coeffs[:, 0] + dd[:, k]) % p
    return coeffs


def _eval_poly_mod(coeffs: list[int], xs: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    return acc


def _rational_reconstruct_poly(values: np.ndarray, xs: np.ndarray, p: int):
    """(num, den) with den monic and deg num + deg den < len(xs), from values."""
    K = len(xs)
    f = [int(c) for c in _interpolate_many(xs, values[None, :], p)[0]]
    f = _trim(f)
    modulus = [1]
    for x in xs:
        modulus = _poly_mul(modulus, [(-int(x)) % p, 1], p)
    r0, r1 = modulus, f
    s0, s1 = [], [1]
    # stop at the first remainder of degree below K/2 (balanced reconstruction)
    while r1 and len(r1) - 1 >= K // 2:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
    if not s1:
        return None
    num, den = r1, s1
    if len(num) + len(den) - 2 >= K:
        return None
    inv = pow(den[-1], -1, p)
    return [c * inv % p for c in num], [c * inv % p for c in den]


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    k = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * k, m1 * m2


def _rational_number(a: int, m: int) -> Fraction | None:
    """Smallest fraction n/d = a mod m with |n|, d <= sqrt(m/2)."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


# ---------------------------------------------------------------------------
# the equation system


def _windows(indices: set[int], d: int) -> list[int]:
    return sorted(n for n in indices if all(n + i in indices for i in range(d + 1)))


def _system_mod(vals: np.ndarray, idx_pos: dict[int, int], windows: list[int], d: int,
                delta: int, xs: np.ndarray, p: int, m_affine=(1, 0)) -> np.ndarray:
    """Matrices (points, windows, unknowns) of  t0^{2j(an+b)} f(n+i)  mod p."""
    P = len(xs)
    W = len(windows)
    out = np.zeros((P, W, (d + 1) * (delta + 1)), dtype=np.int64)
    for w, n in enumerate(windows):
        e = 2 * (m_affine[0] * n + m_affine[1])
        step = np.array([pow(int(x), e, p) for x in xs], dtype=np.int64)
        powj = np.ones(P, dtype=np.int64)
        for j in range(delta + 1):
            for i in range(d + 1):
                out[:, w, i * (delta + 1) + j] = powj * vals[idx_pos[n + i]] % p
            powj = powj * step % p
    return out


class _ModularSource:
    """Values of the sequence at t = point modulo p, memoized per prime."""

    def __init__(self, values: dict[int, MultiLaurent], hook: ModularHook | None):
        self.values = values
        self.hook = hook
        self._dense: dict[int, tuple[int, list[int]]] = {}

    def _dense_of(self, n: int):
        if n not in self._dense:
            f = self.values[n]
            if f.is_zero():
                self._dense[n] = (0, [])
            else:
                coeffs = f.univariate_coeffs("t")
                lo = min(coeffs)
                hi = max(coeffs)
                self._dense[n] = (lo, [coeffs.get(k, 0) for k in range(lo, hi + 1)])
        return self._dense[n]

    def evaluate(self, indices: list[int], xs: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
        if self.hook is not None:
            vals, valid = self.hook(indices, [int(x) for x in xs], p)
            return np.asarray(vals, dtype=np.int64) % p, np.asarray(valid, dtype=bool)
        valid = xs % p != 0
        safe = np.where(valid, xs % p, 1)
        out = np.zeros((len(indices), len(xs)), dtype=np.int64)
        for r, n in enumerate(indices):
            lo, coeffs = self._dense_of(n)
            if not coeffs:
                continue
            acc = _eval_poly_mod([c % p for c in coeffs], safe, p)
            shift = np.array([pow(int(x), lo, p) for x in safe], dtype=np.int64)
            out[r] = acc * shift % p
        return out, valid


# ---------------------------------------------------------------------------
# reconstruction over one prime


def _solve_one_prime(src: _ModularSource, fit_windows: list[int], d: int, delta: int, p: int,
                     offset: int, max_points: int, rng: random.Random, m_affine=(1, 0)):
    """Normalized nullspace direction as polynomials mod p, or None if trivial.

    Returns (pivot_col, signature, [poly per unknown]) with the pivot entry's
    polynomial monic (it is the common denominator).
    """
    needed = sorted({n + i for n in fit_windows for i in range(d + 1)})
    pos = {n: k for k, n in enumerate(needed)}
    ncols = (d + 1) * (delta + 1)
    xs_all: list[int] = []
    vecs: list[np.ndarray] = []
    signature = None
    next_point = offset
    while len(xs_all) < max_points:
        batch = max(32, len(xs_all) // 2)
        xs = np.arange(next_point, next_point + batch, dtype=np.int64) % p
        next_point += batch
        vals, valid = src.evaluate(needed, xs, p)
        mats = _system_mod(vals, pos, fit_windows, d, delta, xs, p, m_affine)
        for k in range(len(xs)):
            if not valid[k]:
                continue
            vec, nullity, sig = _nullspace_first(mats[k], p)
            if vec is None:
                # specialization only lowers rank, so one trivial nullspace settles it
                return None
            if signature is None:
                signature = (nullity, sig)
            elif (nullity, sig) != signature:
                if nullity < signature[0]:
                    # the first point was degenerate: restart with this one as reference
                    signature = (nullity, sig)
                    xs_all, vecs = [], []
                else:
                    continue
            xs_all.append(int(xs[k]))
            vecs.append(vec)
        if len(xs_all) < 16:
            continue
        X = np.array(xs_all, dtype=np.int64)
        V = np.array(vecs, dtype=np.int64).T  # (unknowns, points)
        K = len(X)
        check = min(6, K // 4)
        fit = K - check
        weights = np.array([rng.randrange(1, p) for _ in range(ncols)], dtype=np.int64)
        combo = (weights[:, None] * V % p).sum(axis=0) % p
        rr = _rational_reconstruct_poly(combo[:fit], X[:fit], p)
        if rr is None:
            continue
        num, den = rr
        if len(num) + len(den) + 2 > fit:
            continue
        # verify the reconstruction of the combination on the held-back points
        lhs = _eval_poly_mod(num, X[fit:], p)
        rhs = combo[fit:] * _eval_poly_mod(den, X[fit:], p) % p
        if not np.array_equal(lhs, rhs):
            continue
        dvals = _eval_poly_mod(den, X, p)
        scaled = V * dvals[None, :] % p
        coeffs = _interpolate_many(X[:fit], scaled[:, :fit], p)
        polys = [_trim([int(c) for c in row]) for row in coeffs]
        if max(len(q) for q in polys) + 2 > fit:
            continue
        ok = all(np.array_equal(_eval_poly_mod(q, X[fit:], p), scaled[i, fit:]) for i, q in enumerate(polys))
        if not ok:
            continue
        pivot = int(signature[1][1][0])
        return pivot, signature, polys
    raise ReconstructionError(f"no stable reconstruction within {max_points} points mod {p}")


def _lift(per_prime: list[tuple[int, list[list[int]]]]):
    """CRT the polynomial coefficients and reconstruct rationals; None if unstable."""
    modulus = 1
    acc: list[list[int]] | None = None
    for p, polys in per_prime:
        if acc is None:
            acc = [q[:] for q in polys]
            modulus = p
            continue
        new = []
        for a, b in zip(acc, polys):
            n = max(len(a), len(b))
            a = a + [0] * (n - len(a))
            b = b + [0] * (n - len(b))
            new.append([_crt_pair(x, modulus, y, p)[0] for x, y in zip(a, b)])
        acc = new
        modulus *= p
    out = []
    for q in acc:
        row = []
        for c in q:
            fr = _rational_number(c, modulus)
            if fr is None:
                return None
            row.append(fr)
        out.append(row)
    return out


def _to_operator(rows: list[list[Fraction]], d: int, delta: int, m_affine=(1, 0)) -> QOperator:
    """Assemble sum c_ij(t) X^j L^i with X = t^{2b} M^a."""
    a, b = m_affine
    coeffs: dict[int, dict] = {}
    for col, row in enumerate(rows):
        i, j = divmod(col, delta + 1)
        for k, c in enumerate(row):
            if c:
                coeffs.setdefault(i, {})[(k + 2 * b * j, a * j, 0, 0, 0)] = c
    return QOperator({i: MultiLaurent(t) for i, t in coeffs.items()})


# ---------------------------------------------------------------------------
# public API


def _prepare(values) -> dict[int, MultiLaurent]:
    out = {}
    for n, v in values:
        out[int(n)] = v if isinstance(v, MultiLaurent) else MultiLaurent.const(v)
    return out


def _check_supply(vals: dict, d: int, delta: int, cfg: GuessConfig):
    need = cfg.values_needed(d, delta)
    if len(vals) < need:
        raise UndersupplyError(f"{len(vals)} values supplied, {need} needed for d={d}, delta={delta}")
    windows = _windows(set(vals), d)
    # fewer fitted windows than unknowns would always leave a nullspace
    if len(windows) - cfg.holdout < (d + 1) * (delta + 1):
        raise UndersupplyError(f"only {len(windows)} complete windows of length {d + 1}")


def has_candidate(values, d: int, delta: int, cfg: GuessConfig | None = None,
                  modular: ModularHook | None = None, m_affine=(1, 0)) -> bool:
    """Cheap test at one evaluation point: False proves no operator of this shape fits."""
    cfg = cfg or GuessConfig()
    vals = _prepare(values)
    _check_supply(vals, d, delta, cfg)
    windows = _windows(set(vals), d)
    fit = windows[:len(windows) - cfg.holdout]
    src = _ModularSource(vals, modular)
    p = cfg.primes[0]
    needed = sorted({n + i for n in fit for i in range(d + 1)})
    pos = {n: k for k, n in enumerate(needed)}
    xs = np.arange(cfg.point_offset, cfg.point_offset + 2, dtype=np.int64)
    v, valid = src.evaluate(needed, xs, p)
    if not valid.any():
        raise ReconstructionError("no valid evaluation point for the quick test")
    mats = _system_mod(v, pos, fit, d, delta, xs, p, m_affine)
    return all(_nullspace_first(mats[k], p)[0] is not None for k in range(len(xs)) if valid[k])


def guess_recurrence(values, d: int, delta: int, cfg: GuessConfig | None = None,
                     modular: ModularHook | None = None, stats: GuessStats | None = None,
                     m_affine: tuple[int, int] = (1, 0)) -> QOperator | None:
    """Certified annihilator sum_{i<=d} a_i(t, M) L^i with deg_M a_i <= delta, or None.

    ``values`` is a list of (index, value).  ``modular`` optionally evaluates
    values at t = point modulo a prime without building them.

    With ``m_affine = (a, b)`` the coefficients are searched as polynomials of
    degree <= delta in X = t^{2b} M^a, i.e. X acts as t^{2(an+b)}.  For
    n -> f(2n+1) and (a, b) = (2, 1), X is the M of the parent sequence.  The
    returned operator is always written in the sequence's own M.
    """
    cfg = cfg or GuessConfig()
    if d < 0 or delta < 0:
        raise ValueError("d and delta must be nonnegative")
    vals = _prepare(values)
    if modular is None and all(v.is_zero() for v in vals.values()):
        raise ZeroSequenceError("all supplied values vanish")
    _check_supply(vals, d, delta, cfg)
    windows = _windows(set(vals), d)
    fit, hold = windows[:-cfg.holdout], windows[-cfg.holdout:]
    src = _ModularSource(vals, modular)
    rng = random.Random(cfg.seed * 7919 + d * 131 + delta)
    per_prime = []
    previous = None
    ref_sig = None
    for p in cfg.primes:
        sol = _solve_one_prime(src, fit, d, delta, p, cfg.point_offset, cfg.max_points, rng, m_affine)
        if stats is not None:
            stats.primes += 1
        if sol is None:
            return None
        pivot, sig, polys = sol
        if ref_sig is None:
            ref_sig = sig
        elif sig != ref_sig:
            log.info("prime %d gave a different pivot pattern; skipped", p)
            continue
        if stats is not None:
            stats.points = max(stats.points, max(len(q) for q in polys))
        per_prime.append((p, polys))
        lifted = _lift(per_prime)
        if lifted is not None and lifted == previous:
            op = _to_operator(lifted, d, delta, m_affine)
            return _certify(op, vals, fit + hold, cfg)
        previous = lifted
    raise ReconstructionError(f"coefficients did not stabilize over {len(cfg.primes)} primes")


def _certify(op: QOperator, vals: dict[int, MultiLaurent], windows: list[int], cfg: GuessConfig):
    op = content_normalize(op)
    if not cfg.certify:
        return op
    f = vals.__getitem__
    for n in windows:
        if not apply(op, f, n).is_zero():
            log.warning("candidate failed exact certification at n=%d", n)
            return None
    return op


def minimal_recurrence(seq: LaurentSequence, cfg: GuessConfig | None = None,
                       stats: GuessStats | None = None, m_affine: tuple[int, int] | None = None) -> QOperator:
    """First certified operator in the order d = 0, 1, ..., then delta = 0, 1, ...

    ``m_affine`` defaults to the sequence's own ``m_affine`` attribute (see
    :func:`guess_recurrence`).  Raises :class:`CapsExhaustedError` carrying
    the searched region.
    """
    cfg = cfg or GuessConfig()
    if m_affine is None:
        m_affine = getattr(seq, "m_affine", (1, 0))
    stats = stats if stats is not None else GuessStats()
    hook = seq.modular
    max_need = cfg.values_wanted(cfg.d_cap, cfg.delta_cap)
    for d in range(cfg.d_cap + 1):
        for delta in range(cfg.delta_cap + 1):
            count = cfg.values_wanted(d, delta)
            idx = list(range(cfg.start, cfg.start + count))
            stats.tried.append((d, delta))
            if hook is not None:
                # the quick test needs no exact values
                vals = [(n, MultiLaurent.const(0)) for n in idx]
                if not has_candidate(vals, d, delta, cfg, hook, m_affine):
                    continue
                vals = seq.values(idx)
            else:
                vals = seq.values(idx)
                if all(v.is_zero() for _, v in vals):
                    raise ZeroSequenceError("sequence vanishes on the search window")
                if not has_candidate(vals, d, delta, cfg, m_affine=m_affine):
                    continue
            log.info("quick test passed at d=%d, delta=%d; reconstructing", d, delta)
            op = guess_recurrence(vals, d, delta, cfg, modular=hook, stats=stats, m_affine=m_affine)
            if op is not None:
                stats.found = (d, delta)
                return op
    raise CapsExhaustedError({"d_cap": cfg.d_cap, "delta_cap": cfg.delta_cap, "m_affine": list(m_affine),
                              "start": cfg.start, "max_index": cfg.start + max_need - 1,
                              "tried": len(stats.tried)})


# ---------------------------------------------------------------------------
# text forms


def operator_to_text(op: QOperator) -> str:
    return op.to_text()


def operator_from_text(text: str) -> QOperator:
    coeffs = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        head = head.strip()
        if not sep or not head.startswith("L^"):
            raise ValueError(f"malformed operator line: {line!r}")
        i = int(head[2:])
        if i in coeffs:
            raise ValueError(f"L^{i} listed twice")
        coeffs[i] = parse_poly(body.strip())
    return QOperator(coeffs)
