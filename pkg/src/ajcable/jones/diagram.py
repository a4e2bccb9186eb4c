"""Knot diagrams: Morse words, PD codes, and the smoothing statistics k, s, w.

A Morse word reads a diagram from bottom to top as a list of events on
vertical strands numbered from the left:

* ``("cup", i)`` creates two strands at positions i, i+1 joined below;
* ``("cap", i)`` joins strands i, i+1 and removes them;
* ``("X", i, over_from_left)`` crosses strands i and i+1.  With
  ``over_from_left`` true the strand entering at the bottom left passes over
  to the top right.

PD codes follow the usual convention: ``X a b c d`` lists the four edges
counterclockwise starting from the incoming under-strand, and the sign is
``+`` when the over-strand runs from d to b.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

Event = tuple


class DiagramError(ValueError):
    """Malformed diagram input."""


# ---------------------------------------------------------------------------
# Morse words


@dataclass(frozen=True)
class MorseDiagram:
    events: tuple[Event, ...]

    def __post_init__(self):
        width = 0
        for ev in self.events:
            kind = ev[0]
            i = ev[1]
            if kind == "cup":
                if not 0 <= i <= width:
                    raise DiagramError(f"cup at {i} with {width} strands")
                width += 2
            elif kind == "cap":
                if not 0 <= i < width - 1:
                    raise DiagramError(f"cap at {i} with {width} strands")
                width -= 2
            elif kind == "X":
                if not 0 <= i < width - 1:
                    raise DiagramError(f"crossing at {i} with {width} strands")
            else:
                raise DiagramError(f"unknown event {ev!r}")
        if width:
            raise DiagramError("Morse word leaves open strands")

    def widths(self) -> list[int]:
        w, out = 0, []
        for ev in self.events:
            if ev[0] == "cup":
                w += 2
            elif ev[0] == "cap":
                w -= 2
            out.append(w)
        return out

    def max_width(self) -> int:
        return max(self.widths(), default=0)

    def crossing_count(self) -> int:
        return sum(1 for ev in self.events if ev[0] == "X")

    def mirror(self) -> "MorseDiagram":
        return MorseDiagram(tuple(
            ("X", ev[1], not ev[2]) if ev[0] == "X" else ev for ev in self.events
        ))

    def parallel(self, copies: int) -> "MorseDiagram":
        """Blackboard-framed ``copies``-fold parallel of the diagram."""
        if copies < 0:
            raise ValueError("number of copies must be nonnegative")
        if copies == 1:
            return self
        events: list[Event] = []
        for ev in self.events:
            kind, i = ev[0], ev[1]
            base = i * copies
            if kind == "cup":
                for j in range(copies):
                    events.append(("cup", base + j))
            elif kind == "cap":
                for j in range(copies):
                    events.append(("cap", base + copies - 1 - j))
            else:
                over = ev[2]
                # strand block at base..base+c-1 crosses block base+c..base+2c-1
                for a in range(copies):
                    for b in range(copies):
                        pos = base + copies - 1 - a + b
                        events.append(("X", pos, over))
        return MorseDiagram(tuple(events))

    def to_pd(self) -> "PlanarDiagram":
        return morse_to_pd(self)


def morse_to_pd(md: MorseDiagram) -> "PlanarDiagram":
    """Orient the diagram along a traversal and emit its PD code."""
    # Segment ids: every strand piece between two events.  Cups and caps
    # merge segments; crossings have four endpoint slots.
    parent: list[int] = []

    def new_seg() -> int:
        parent.append(len(parent))
        return len(parent) - 1

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    strands: list[int] = []
    crossings = []  # (bl, br, tl, tr, over_from_left)
    free_loops = []
    for ev in md.events:
        kind, i = ev[0], ev[1]
        if kind == "cup":
            s = new_seg()
            strands[i:i] = [s, s]
        elif kind == "cap":
            a, b = strands[i], strands[i + 1]
            if find(a) == find(b):
                free_loops.append(find(a))
            union(a, b)
            del strands[i:i + 2]
        else:
            bl, br = strands[i], strands[i + 1]
            tl, tr = new_seg(), new_seg()
            crossings.append((bl, br, tl, tr, ev[2]))
            strands[i], strands[i + 1] = tl, tr

    if not crossings:
        return PlanarDiagram((), loops=len(free_loops))

    # endpoint slots: 0 = BL, 1 = BR, 2 = TL, 3 = TR
    slots_of: dict[int, list[tuple[int, int]]] = {}
    for c, (bl, br, tl, tr, _) in enumerate(crossings):
        for slot, seg in enumerate((bl, br, tl, tr)):
            slots_of.setdefault(find(seg), []).append((c, slot))
    for root, ends in slots_of.items():
        if len(ends) != 2:
            raise DiagramError("segment does not join exactly two crossing slots")
    touched = set(slots_of)
    loops = sum(1 for r in {find(x) for x in free_loops} if r not in touched)

    through = {0: 3, 3: 0, 1: 2, 2: 1}
    edge_label: dict[int, int] = {}
    # (crossing, slot) -> True when the traversal enters the crossing there
    entering: dict[tuple[int, int], bool] = {}
    next_label = 1
    visited_slots: set[tuple[int, int]] = set()
    for start_c in range(len(crossings)):
        for start_slot in (0, 1):
            if (start_c, start_slot) in visited_slots:
                continue
            c, slot = start_c, start_slot
            while (c, slot) not in visited_slots:
                # enter crossing c through `slot`, leave through the opposite slot
                visited_slots.add((c, slot))
                entering[(c, slot)] = True
                out_slot = through[slot]
                visited_slots.add((c, out_slot))
                entering[(c, out_slot)] = False
                seg = find(crossings[c][out_slot])
                edge_label[seg] = next_label
                next_label += 1
                ends = slots_of[seg]
                c, slot = ends[0] if ends[1] == (c, out_slot) else ends[1]
    pd = []
    ccw = (0, 1, 3, 2)  # BL, BR, TR, TL
    for c, (bl, br, tl, tr, over_left) in enumerate(crossings):
        segs = (bl, br, tl, tr)
        under = (1, 2) if over_left else (0, 3)
        under_in = under[0] if entering[(c, under[0])] else under[1]
        start = ccw.index(under_in)
        order = [ccw[(start + k) % 4] for k in range(4)]
        labels = tuple(edge_label[find(segs[s])] for s in order)
        # over-strand runs d -> b when the slot at position 3 is where it enters
        sign = 1 if entering[(c, order[3])] else -1
        pd.append(Crossing(labels, sign))
    return PlanarDiagram(tuple(pd), loops=loops)


# ---------------------------------------------------------------------------
# PD codes


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.edges) != 4:
            raise DiagramError("a crossing has four incident edges")
        if self.sign not in (1, -1):
            raise DiagramError("crossing sign must be +1 or -1")


@dataclass(frozen=True)
class DiagramStats:
    k_plus: int
    k_minus: int
    s_plus: int
    s_minus: int

    @property
    def k(self) -> int:
        return self.k_plus + self.k_minus

    @property
    def w(self) -> int:
        return self.k_plus - self.k_minus


@dataclass(frozen=True)
class PlanarDiagram:
    """Crossing list plus a count of crossing-free circles."""

    crossings: tuple[Crossing, ...]
    loops: int = 0
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        counts: dict[int, int] = {}
        for x in self.crossings:
            for e in x.edges:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, n in counts.items() if n != 2]
        if bad:
            raise DiagramError(f"edges {sorted(bad)[:5]} do not appear exactly twice")
        if self.loops < 0:
            raise DiagramError("negative loop count")

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def edges(self) -> set[int]:
        return {e for x in self.crossings for e in x.edges}

    def to_text(self) -> str:
        lines = [f"X {a} {b} {c} {d} {'+' if x.sign > 0 else '-'}" for x in self.crossings for a, b, c, d in [x.edges]]
        lines += ["O"] * self.loops
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "PlanarDiagram":
        return parse_pd(text)

    def mirror(self) -> "PlanarDiagram":
        """Switch every crossing; the incoming under edge moves to the old over strand."""
        out = []
        for x in self.crossings:
            a, b, c, d = x.edges
            # old over runs d->b (sign +) or b->d (sign -); it is the new under strand
            out.append(Crossing((d, a, b, c) if x.sign > 0 else (b, c, d, a), -x.sign))
        return PlanarDiagram(tuple(out), loops=self.loops)

    def components(self) -> int:
        return count_components(self) + self.loops

    def smoothing_circles(self, a_smoothing: bool) -> int:
        """Circles after smoothing every crossing the same way.

        The t-weighted smoothing of ``X a b c d`` joins (a, b) and (c, d);
        the t^{-1}-weighted one joins (a, d) and (b, c).
        """
        uf = {e: e for e in self.edges()}
        for x in self.crossings:
            a, b, c, d = x.edges
            pairs = ((a, b), (c, d)) if a_smoothing else ((a, d), (b, c))
            for u, v in pairs:
                ru, rv = _uf_find(uf, u), _uf_find(uf, v)
                if ru != rv:
                    uf[ru] = rv
        roots = {_uf_find(uf, e) for e in uf}
        return len(roots) + self.loops


def _uf_find(uf, x):
    while uf[x] != x:
        uf[x] = uf[uf[x]]
        x = uf[x]
    return x


def count_components(pd: PlanarDiagram) -> int:
    """Link components: edges along a strand continue a -> c and b <-> d."""
    uf = {e: e for e in pd.edges()}
    for x in pd.crossings:
        a, b, c, d = x.edges
        for u, v in ((a, c), (b, d)):
            ru, rv = _uf_find(uf, u), _uf_find(uf, v)
            if ru != rv:
                uf[ru] = rv
    return len({_uf_find(uf, e) for e in uf})


def diagram_stats(pd: PlanarDiagram) -> DiagramStats:
    k_plus = sum(1 for x in pd.crossings if x.sign > 0)
    k_minus = len(pd.crossings) - k_plus
    return DiagramStats(k_plus, k_minus, pd.smoothing_circles(True), pd.smoothing_circles(False))


_PD_LINE = re.compile(r"X\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s*([+-])")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse ``X a b c d [+|-]`` lines; a bare ``O`` line adds a free circle."""
    crossings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "O":
            loops += 1
            continue
        m = _PD_LINE.fullmatch(line)
        if m is None:
            raise DiagramError(f"line {lineno}: cannot parse {raw!r}")
        a, b, c, d = (int(m.group(k)) for k in range(1, 5))
        crossings.append(Crossing((a, b, c, d), 1 if m.group(5) == "+" else -1))
    return PlanarDiagram(tuple(crossings), loops=loops)


def is_alternating(pd: PlanarDiagram) -> bool:
    """Walk each component and check that over and under passages alternate."""
    # position of edge e as incoming/outgoing under or over at each crossing
    passes: dict[int, list[tuple[str, bool]]] = {}
    for x in pd.crossings:
        a, b, c, d = x.edges
        over_in, over_out = (d, b) if x.sign > 0 else (b, d)
        passes.setdefault(a, []).append(("under", True))
        passes.setdefault(c, []).append(("under", False))
        passes.setdefault(over_in, []).append(("over", True))
        passes.setdefault(over_out, []).append(("over", False))
    # an edge leaves one crossing and enters the next: the two passages must differ
    for e, info in passes.items():
        kinds = {k for k, _ in info}
        if len(kinds) != 2:
            return False
    return True


# ---------------------------------------------------------------------------
# twist knots


def twist_knot_morse(m: int) -> MorseDiagram:
    """4-plat Morse word of the twist knot K_m.

    Two bottom cups, a vertical twist region between the middle strands
    (2m half twists for m > 0, -2m-1 for m < 0), a two-crossing clasp on the
    left pair, and caps joining the middle pair and then the outer pair.
    Over/under choices are fixed so that the diagram is alternating, the
    twist crossings are positive and the clasp is negative for m > 0.
    """
    if m == 0:
        raise ValueError("K_0 is the unknot; twist knots need m != 0")
    twists = 2 * m if m > 0 else -2 * m - 1
    events: list[Event] = [("cup", 0), ("cup", 2)]
    events += [("X", 1, False)] * twists
    events += [("X", 0, True)] * 2
    events += [("cap", 1), ("cap", 0)]
    return MorseDiagram(tuple(events))


def twist_knot_diagram(m: int) -> PlanarDiagram:
    pd = twist_knot_morse(m).to_pd()
    return PlanarDiagram(pd.crossings, loops=pd.loops, meta={"knot": f"K_{m}", "m": m})


def unknot_morse() -> MorseDiagram:
    return MorseDiagram((("cup", 0), ("cap", 0)))


def expected_twist_signs(m: int) -> tuple[int, int]:
    """(k_+, k_-) of the reduced alternating diagram of K_m."""
    if m > 0:
        return 2 * m, 2
    return 1 - 2 * m, 0
