"""Kauffman bracket of a PD diagram by frontier (Temperley-Lieb) contraction.

Crossings are absorbed one at a time.  The state after each step is a
linear combination of crossingless matchings of the open edge ends, stored
as ``{matching: {t-exponent: coefficient}}``.  A crossing ``X a b c d``
contributes t * P[a,b] P[c,d] + t^{-1} * P[a,d] P[b,c]; a closed circle
contributes -t^2 - t^{-2}.
"""

from __future__ import annotations

from collections import defaultdict

from ..poly import MultiLaurent
from .diagram import PlanarDiagram

DEFAULT_WIDTH_CAP = 24
_LOOP = {2: -1, -2: -1}


class BracketWidthError(RuntimeError):
    """The frontier grew beyond the configured cap."""


def _tmul(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _loop_power(k: int, _cache={0: {0: 1}}) -> dict:
    if k not in _cache:
        _cache[k] = _tmul(_loop_power(k - 1), _LOOP)
    return _cache[k]


def greedy_order(pd: PlanarDiagram) -> list[int]:
    """Crossing order that keeps the frontier small: always absorb the crossing
    sharing the most edge ends with the current frontier (ties: lowest index)."""
    n = len(pd.crossings)
    remaining = set(range(n))
    frontier: dict[int, int] = {}
    order = []
    while remaining:
        best, best_score = None, None
        for i in sorted(remaining):
            edges = pd.crossings[i].edges
            shared = sum(1 for e in edges if e in frontier)
            if best_score is None or shared > best_score:
                best, best_score = i, shared
                if shared == 4:
                    break
        order.append(best)
        remaining.discard(best)
        for e in pd.crossings[best].edges:
            if e in frontier:
                del frontier[e]
            else:
                frontier[e] = 1
    return order


def _add_arc(partner: dict, x: int, y: int) -> int:
    """Join edge ends x and y in the matching; return the number of closed circles."""
    if x == y:
        # an edge running from a crossing straight back into it
        return 1
    px = partner.pop(x, None)
    py = partner.pop(y, None)
    if px is None and py is None:
        partner[x], partner[y] = y, x
        return 0
    if px is not None and py is None:
        del partner[px]
        partner[px], partner[y] = y, px
        return 0
    if px is None:
        del partner[py]
        partner[py], partner[x] = x, py
        return 0
    if px == y:
        return 1
    del partner[px], partner[py]
    partner[px], partner[py] = py, px
    return 0


def kauffman_bracket(pd: PlanarDiagram, order: list[int] | None = None,
                     width_cap: int = DEFAULT_WIDTH_CAP) -> MultiLaurent:
    """<D> with <empty> = 1 and a circle worth -t^2 - t^{-2}."""
    if order is None:
        order = greedy_order(pd)
    if sorted(order) != list(range(len(pd.crossings))):
        raise ValueError("order must be a permutation of the crossings")
    states: dict[frozenset, dict] = {frozenset(): {0: 1}}
    for ci in order:
        a, b, c, d = pd.crossings[ci].edges
        new: dict[frozenset, dict] = {}
        for matching, poly in states.items():
            for (p1, p2), shift in ((((a, b), (c, d)), 1), (((a, d), (b, c)), -1)):
                partner = {}
                for u, v in matching:
                    partner[u], partner[v] = v, u
                loops = _add_arc(partner, *p1) + _add_arc(partner, *p2)
                key = frozenset((u, v) for u, v in partner.items() if u < v)
                if len(key) * 2 > width_cap:
                    raise BracketWidthError(
                        f"frontier of {2 * len(key)} edge ends exceeds the cap of {width_cap}")
                term = {e + shift: co for e, co in poly.items()}
                if loops:
                    term = _tmul(term, _loop_power(loops))
                acc = new.setdefault(key, {})
                for e, co in term.items():
                    v = acc.get(e, 0) + co
                    if v:
                        acc[e] = v
                    else:
                        acc.pop(e, None)
        states = {k: v for k, v in new.items() if v}
    if not states:
        return MultiLaurent.const(0)
    if set(states) != {frozenset()}:
        raise RuntimeError("open edge ends left after absorbing every crossing")
    result = _tmul(states[frozenset()], _loop_power(pd.loops))
    return MultiLaurent.univariate("t", result)


def bracket_state_sum(pd: PlanarDiagram) -> MultiLaurent:
    """Exhaustive sum over all 2^k smoothings (small diagrams only)."""
    k = len(pd.crossings)
    edges = sorted(pd.edges())
    total: dict = defaultdict(int)
    for mask in range(1 << k):
        uf = {e: e for e in edges}

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        for i, x in enumerate(pd.crossings):
            a, b, c, d = x.edges
            pairs = ((a, b), (c, d)) if mask >> i & 1 else ((a, d), (b, c))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    uf[ru] = rv
        circles = len({find(e) for e in edges}) + pd.loops
        shift = 2 * bin(mask).count("1") - k
        for e, co in _loop_power(circles).items():
            total[e + shift] += co
    return MultiLaurent.univariate("t", {e: c for e, c in total.items() if c})
