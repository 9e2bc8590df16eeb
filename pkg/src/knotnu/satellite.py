"""Twisted Whitehead doubles D+(K,t) and D-(K,t) as explicit diagrams.

Construction: every crossing of the companion becomes a 2x2 grid of crossings
(the blackboard parallel copy), the two parallel strands run antiparallel,
a twist region of ``t - writhe(K)`` full twists sits on one edge, and the band
is cut and closed by a two-crossing clasp right after the twist region.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .diagram import (
    DiagramError,
    PlanarDiagram,
    change_crossing,
    concordance_inverse,
)
from .portgraph import DiagramBuilder, PortGraph


class ClaspSign(IntEnum):
    POSITIVE = 1
    NEGATIVE = -1

    @classmethod
    def parse(cls, text) -> "ClaspSign":
        if isinstance(text, ClaspSign):
            return text
        if text in ("+", "+1", 1, "1", "pos", "positive"):
            return cls.POSITIVE
        if text in ("-", "-1", -1, "neg", "negative"):
            return cls.NEGATIVE
        raise ValueError(f"clasp sign must be + or -, got {text!r}")

    @property
    def symbol(self) -> str:
        return "+" if self > 0 else "-"


@dataclass(frozen=True)
class DoubleSpec:
    companion: PlanarDiagram
    t: int
    clasp: ClaspSign = ClaspSign.POSITIVE

    def __post_init__(self):
        object.__setattr__(self, "clasp", ClaspSign.parse(self.clasp))


# Orientation of the half twists: a positive full twist of the band
# (framing +1) is two crossings with this under axis.  Pinned by the
# startup self-test below.
_POSITIVE_TWIST_AXIS = 1


def _parallel_ports(b: DiagramBuilder, pg: PortGraph):
    """Lay down the 2x2 grids; return the copy ports of every companion port.

    For companion port ``(c, k)`` the value is the pair of builder ports in
    counterclockwise order around the crossing.
    """
    copies = {}
    for c in range(pg.n):
        # companion crossing seen with its under-strand horizontal:
        # port k0 west, k0+1 south, k0+2 east, k0+3 north
        k0 = pg.under_axis[c]
        g = {}
        for x in (-1, 1):
            for y in (-1, 1):
                g[(x, y)] = b.crossing(0)  # W, S, E, N; horizontal under
        W, S, E, N = 0, 1, 2, 3
        for y in (-1, 1):
            b.connect(g[(-1, y)][E], g[(1, y)][W])
        for x in (-1, 1):
            b.connect(g[(x, -1)][N], g[(x, 1)][S])
        sides = [
            (g[(-1, 1)][W], g[(-1, -1)][W]),
            (g[(-1, -1)][S], g[(1, -1)][S]),
            (g[(1, -1)][E], g[(1, 1)][E]),
            (g[(1, 1)][N], g[(-1, 1)][N]),
        ]
        for i, pair in enumerate(sides):
            copies[(c, (k0 + i) % 4)] = pair
    return copies


def twist_strip(b: DiagramBuilder, left, right, twists: int):
    """Run an upward strip through ``twists`` full twists; return its top."""
    axis = _POSITIVE_TWIST_AXIS if twists > 0 else 1 - _POSITIVE_TWIST_AXIS
    for _ in range(2 * abs(twists)):
        sw, se, ne, nw = b.crossing(axis)
        b.connect(left, sw)
        b.connect(right, se)
        left, right = nw, ne
    return left, right


def cut_parallel(b: DiagramBuilder, k: PlanarDiagram):
    """Blackboard parallel of ``k`` cut open on one edge.

    Returns ((l, r) below the cut, facing up; (l, r) above the cut, facing
    down), both as seen by a traveller moving upward through the cut.
    """
    pg = PortGraph.from_diagram(k)
    copies = _parallel_ports(b, pg)
    cut = min(copies)
    lower = upper = None
    done = set()
    for p, q in sorted(pg.partner.items()):
        if p in done:
            continue
        done.update((p, q))
        (p0, p1), (q0, q1) = copies[p], copies[q]
        if p == cut or q == cut:
            # seen from p the band leaves upward: p0 right, p1 left;
            # at q the band arrives from below: q0 left, q1 right
            lower, upper = (p1, p0), (q0, q1)
        else:
            b.connect(p0, q1)
            b.connect(p1, q0)
    return lower, upper


def knotted_strip(b: DiagramBuilder, left, right, k: PlanarDiagram):
    """Tie ``k`` into an upward strip (blackboard framing, writhe(k))."""
    if not k.crossings:
        return left, right
    (pl, pr), (ql, qr) = cut_parallel(b, k)
    # enter through the lower cut end with a U-turn, leave through the upper
    b.connect(left, pr)
    b.connect(right, pl)
    return qr, ql


def _band_and_clasp(b: DiagramBuilder, bottom, top, twists: int, clasp: int) -> None:
    """Fill the cut band between ``bottom`` and ``top``.

    ``bottom`` is (left, right) at the lower cut, ``top`` likewise at the
    upper cut.  Lower strands pass through ``|twists|`` full twists and are
    joined by a cap; upper strands are joined by a cup hooked through it.
    """
    left, right = twist_strip(b, *bottom, twists)
    # the clasp: cap arc horizontal (W-E), cup legs vertical (S-N)
    w1, s1, e1, n1 = b.crossing(1 if clasp > 0 else 0)
    w2, s2, e2, n2 = b.crossing(0 if clasp > 0 else 1)
    b.connect(left, w1)
    b.connect(e1, w2)
    b.connect(e2, right)
    b.connect(s1, s2)
    b.connect(n1, top[0])
    b.connect(n2, top[1])


def twisted_double(spec: DoubleSpec | PlanarDiagram, t: int | None = None, clasp=None) -> PlanarDiagram:
    """Diagram of D+-(K, t) with 4c + 2|t - w| + 2 crossings."""
    if not isinstance(spec, DoubleSpec):
        spec = DoubleSpec(spec, t, ClaspSign.parse(clasp if clasp is not None else "+"))
    k = spec.companion
    twists = spec.t - k.writhe()
    b = DiagramBuilder()
    if not k.crossings:
        lo_l, hi_l = b.wire()
        lo_r, hi_r = b.wire()
        # the wires are the far side of the annulus
        _band_and_clasp(b, (hi_l, hi_r), (lo_l, lo_r), twists, spec.clasp)
    else:
        lower, upper = cut_parallel(b, k)
        _band_and_clasp(b, lower, upper, twists, spec.clasp)
    sign = spec.clasp.symbol
    name = f"D{sign}({k.name or 'K'},{spec.t})"
    return b.diagram(name).relabeled(1)


def double_relation_witness(k: PlanarDiagram, t: int) -> tuple[PlanarDiagram, PlanarDiagram]:
    """(D-(-K, -t), -D+(K, t)); these should be the same knot."""
    left = twisted_double(DoubleSpec(concordance_inverse(k), -t, ClaspSign.NEGATIVE))
    right = concordance_inverse(twisted_double(DoubleSpec(k, t, ClaspSign.POSITIVE)))
    return left, right


@dataclass(frozen=True)
class TwistChange:
    """D(K,t) and D(K,t+1) related by one crossing change.

    ``changed`` is ``source`` with crossing ``index`` switched and is the
    same knot as ``target``.  The switched crossing is positive when the
    source is D(K,t) and negative when it is D(K,t+1), so in both cases
    passing from t to t+1 is a positive-to-negative change.
    """

    lower: PlanarDiagram
    upper: PlanarDiagram
    source: PlanarDiagram
    index: int
    changed: PlanarDiagram
    target: PlanarDiagram


def twist_crossing_change(k: PlanarDiagram, t: int, clasp=ClaspSign.POSITIVE) -> TwistChange:
    """Witness for D(K,t) -> D(K,t+1) when t - w and t + 1 - w are nonzero
    with the same sign.  The twist region is built right after the 4c grid
    crossings, so its first crossing has index 4c."""
    clasp = ClaspSign.parse(clasp)
    w = k.writhe()
    n, m = t - w, t + 1 - w
    if n == 0 or m == 0 or (n > 0) != (m > 0):
        raise DiagramError("t - w and t + 1 - w must be nonzero with equal sign")
    lower = twisted_double(DoubleSpec(k, t, clasp))
    upper = twisted_double(DoubleSpec(k, t + 1, clasp))
    index = 4 * len(k.crossings)
    # negative framing: lower has a positive twist crossing whose change
    # cancels a full twist; positive framing: the same from the upper side
    source, target = (lower, upper) if n < 0 else (upper, lower)
    return TwistChange(lower, upper, source, index, change_crossing(source, index), target)


def self_test() -> None:
    """Pin the clasp and twist conventions; raises AssertionError."""
    from .jones import jones_polynomial
    from .knots import knot_by_name

    unknot = PlanarDiagram.unknot()
    trefoil = jones_polynomial(knot_by_name("T2,3"))
    fig8 = jones_polynomial(knot_by_name("4_1"))
    assert jones_polynomial(twisted_double(DoubleSpec(unknot, 0))) == jones_polynomial(unknot)
    assert jones_polynomial(twisted_double(DoubleSpec(unknot, -1))) == trefoil, "clasp/twist convention"
    assert jones_polynomial(twisted_double(DoubleSpec(unknot, 1))) == fig8
