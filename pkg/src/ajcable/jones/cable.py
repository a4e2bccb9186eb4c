"""(r,2)-cables: colored Jones values from the base knot, the first-order
identity linking them to odd colors, and degree bookkeeping for adequate
diagrams."""

from __future__ import annotations

from dataclasses import dataclass

from ..poly import MultiLaurent, poly_sum
from ..qtorus import LaurentSequence, QOperator
from .colored import colored_bracket_skein, framing_factor
from .diagram import DiagramStats, MorseDiagram, twist_knot_morse


def _check_odd(r: int):
    if r % 2 == 0:
        raise ValueError(f"r must be odd for the (r,2)-cable to be a knot, got {r}")


def cable_jones(base, r: int, n: int) -> MultiLaurent:
    """J_{K^{(r,2)}}(n) = t^{-2r(n^2-1)} sum_{i=1}^n (-1)^{r(n-i)} t^{2ri(i-1)} J_K(2i-1)."""
    _check_odd(r)
    if n < 1:
        raise ValueError("color must be positive")
    parts = []
    for i in range(1, n + 1):
        sign = -1 if (r * (n - i)) % 2 else 1
        parts.append(base(2 * i - 1).times_monomial({"t": 2 * r * i * (i - 1)}) * sign)
    return poly_sum(parts).times_monomial({"t": -2 * r * (n * n - 1)})


def cable_sequence(base: LaurentSequence, r: int) -> LaurentSequence:
    _check_odd(r)
    return LaurentSequence(lambda n: cable_jones(base, r, n), odd=True,
                           name=f"{base.name}^({r},2)")


def cable_divisor(r: int) -> QOperator:
    """M^r (L + t^{-2r} M^{-2r}), which carries the cable sequence to J(2n+1)."""
    _check_odd(r)
    return QOperator({
        1: MultiLaurent.monomial({"M": r}),
        0: MultiLaurent.monomial({"t": -2 * r, "M": -r}),
    })


def verify_cable_identity(base, r: int, N: int, cable=None) -> bool:
    """t^{2rn} J_c(n+1) + t^{-2r(n+1)} J_c(n) == J(2n+1) for n = 1..N."""
    _check_odd(r)
    if cable is None:
        cable = lambda n: cable_jones(base, r, n)  # noqa: E731
    for n in range(1, N + 1):
        lhs = cable(n + 1).times_monomial({"t": 2 * r * n}) + cable(n).times_monomial({"t": -2 * r * (n + 1)})
        if lhs != base(2 * n + 1):
            return False
    return True


# ---------------------------------------------------------------------------
# degrees


def adequate_degree_bounds(stats: DiagramStats, n: int) -> tuple[int, int]:
    """(d_-, d_+) of J_K(n) for an adequate diagram with the given statistics."""
    k, w = stats.k, stats.w
    d_plus = k * (n - 1) ** 2 + 2 * (n - 1) * stats.s_plus - w * (n * n - 1)
    d_minus = -k * (n - 1) ** 2 - 2 * (n - 1) * stats.s_minus - w * (n * n - 1)
    return d_minus, d_plus


@dataclass(frozen=True)
class CableDegree:
    """Which extreme t-degree of the cable is pinned down, and its value.

    ``side`` is ``"max"`` when r < -4 k_-, ``"min"`` when r > 4 k_+, and
    ``None`` when neither threshold holds (then ``value`` is None).
    """

    side: str | None
    value: int | None

    @property
    def applicable(self) -> bool:
        return self.side is not None


def cable_degree_side(stats: DiagramStats, r: int) -> str | None:
    _check_odd(r)
    if r < -4 * stats.k_minus:
        return "max"
    if r > 4 * stats.k_plus:
        return "min"
    return None


def cable_degree(stats: DiagramStats, r: int, n: int) -> CableDegree:
    """-2rn^2 + 2r on the side singled out by the thresholds, else inapplicable."""
    side = cable_degree_side(stats, r)
    if side is None:
        return CableDegree(None, None)
    return CableDegree(side, -2 * r * n * n + 2 * r)


# ---------------------------------------------------------------------------
# diagrammatic cable (small colors only)


def cable_morse(base: MorseDiagram, r: int) -> MorseDiagram:
    """2-parallel of ``base`` with r - 2w extra half twists between the two copies."""
    _check_odd(r)
    writhe = base.to_pd().writhe
    twists = r - 2 * writhe
    par = base.parallel(2).events
    if not par or par[0] != ("cup", 0) or par[1] != ("cup", 1):
        raise ValueError("expected the diagram to start with a cup at position 0")
    for flag in (True, False):
        extra = tuple(("X", 0, flag) for _ in range(abs(twists)))
        md = MorseDiagram(par[:2] + extra + par[2:])
        pd = md.to_pd()
        if pd.components() == 1 and pd.writhe == 4 * writhe + twists:
            return md
    raise RuntimeError("could not orient the cabling twists")


def cable_jones_diagrammatic(m: int, r: int, n: int) -> MultiLaurent:
    """J of the (r,2)-cable of K_m from its drawn diagram (n <= 2 is practical)."""
    md = cable_morse(twist_knot_morse(m), r)
    sign = -1 if (n - 1) % 2 else 1
    return colored_bracket_skein(md, n) * sign * framing_factor(n, md.to_pd().writhe)
