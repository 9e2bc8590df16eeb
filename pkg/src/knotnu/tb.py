"""Thurston-Bennequin numbers of front diagrams.

A front is read left to right as a list of events on numbered horizontal
strand positions (0 is the lowest):

    LCUSP i j   a left cusp opens two new strands at positions i, j = i+1
    RCUSP i j   the strands at positions i, i+1 meet in a right cusp
    X i j       the strands at positions i, i+1 cross

At a crossing the strand rising from i to i+1 has slope +1 and passes under.
tb is the writhe of the resulting diagram minus the number of right cusps.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .diagram import DiagramError, PlanarDiagram
from .portgraph import DiagramBuilder


class FrontError(DiagramError):
    pass


EVENTS = ("LCUSP", "RCUSP", "X")


@dataclass(frozen=True)
class FrontDiagram:
    events: tuple[tuple[str, int], ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple((k, int(i)) for k, i in self.events))
        self._check()

    def _check(self) -> None:
        width = 0
        for kind, i in self.events:
            if kind not in EVENTS:
                raise FrontError(f"unknown event {kind}")
            if kind == "LCUSP":
                if not 0 <= i <= width:
                    raise FrontError(f"LCUSP {i} {i + 1} outside 0..{width}")
                width += 2
            elif not 0 <= i < width - 1:
                raise FrontError(f"{kind} {i} {i + 1} needs strands at both positions (have {width})")
            elif kind == "RCUSP":
                width -= 2
        if width:
            raise FrontError(f"front does not close up ({width} strands left open)")
        if self.left_cusps != self.right_cusps:
            raise FrontError("cusp counts differ")

    @property
    def left_cusps(self) -> int:
        return sum(k == "LCUSP" for k, _ in self.events)

    @property
    def right_cusps(self) -> int:
        return sum(k == "RCUSP" for k, _ in self.events)

    @property
    def crossings(self) -> int:
        return sum(k == "X" for k, _ in self.events)

    def to_text(self) -> str:
        return "".join(f"{k} {i} {i + 1}\n" for k, i in self.events)

    def diagram(self) -> PlanarDiagram:
        """The front resolved into an oriented knot diagram."""
        b = DiagramBuilder()
        strands: list = []
        for kind, i in self.events:
            if kind == "LCUSP":
                lo, hi = b.wire()
                strands[i:i] = [lo, hi]
            elif kind == "RCUSP":
                b.connect(strands[i], strands[i + 1])
                del strands[i:i + 2]
            else:
                # ports ccw from the lower-left: SW, SE, NE, NW; the
                # rising strand SW -> NE is under
                sw, se, ne, nw = b.crossing(0)
                b.connect(strands[i], sw)
                b.connect(strands[i + 1], nw)
                strands[i], strands[i + 1] = se, ne
        try:
            return b.diagram(self.name).relabeled(1)
        except DiagramError as exc:
            raise FrontError(f"front is not a single closed component: {exc}") from None


def parse_front(text: str, name: str | None = None) -> FrontDiagram:
    events = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0].upper() not in EVENTS:
            raise FrontError(f"line {n}: expected 'LCUSP|RCUSP|X i j', got {raw!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise FrontError(f"line {n}: strand indices must be integers") from None
        if j != i + 1:
            raise FrontError(f"line {n}: events act on adjacent strands i, i+1")
        events.append((parts[0].upper(), i))
    return FrontDiagram(tuple(events), name)


def load_front(path: str | Path) -> FrontDiagram:
    p = Path(path)
    return parse_front(p.read_text(), p.stem)


def tb_of_front(front: FrontDiagram) -> int:
    return front.diagram().writhe() - front.right_cusps


@dataclass(frozen=True)
class TbCertificate:
    knot: str
    front: FrontDiagram
    tb: int
    exact: bool

    @property
    def bound(self) -> str:
        return "exact" if self.exact else "lower"


def _front(text: str, name: str) -> FrontDiagram:
    return parse_front(text, name)


BUILTIN_FRONTS: dict[str, list[FrontDiagram]] = {
    "unknot": [_front("LCUSP 0 1\nRCUSP 0 1\n", "unknot")],
    "T2,3": [_front(
        "LCUSP 0 1\nLCUSP 2 3\nX 1 2\nX 1 2\nX 1 2\nRCUSP 2 3\nRCUSP 0 1\n", "T2,3")],
    "-T2,3": [_front(
        "LCUSP 0 1\nLCUSP 0 1\nX 1 2\nX 1 2\nX 0 1\nX 0 1\nRCUSP 1 2\nRCUSP 0 1\n", "-T2,3")],
    "4_1": [_front(
        "LCUSP 0 1\nLCUSP 0 1\nX 1 2\nX 1 2\nX 0 1\nX 0 1\nX 0 1\nRCUSP 1 2\nRCUSP 0 1\n", "4_1")],
    "T2,5": [_front(
        "LCUSP 0 1\nLCUSP 0 1\n" + "X 1 2\n" * 5 + "RCUSP 0 1\nRCUSP 0 1\n", "T2,5")],
    "-T2,5": [_front(
        "LCUSP 0 1\nLCUSP 0 1\n" + "X 1 2\nX 1 2\nX 0 1\nX 0 1\n" * 2
        + "RCUSP 1 2\nRCUSP 0 1\n", "-T2,5")],
}

_NAMES = {"3_1": "T2,3", "5_1": "T2,5", "figure8": "4_1", "trefoil": "T2,3", "U": "unknot", "O": "unknot"}


def _key(name: str) -> str:
    neg = name.startswith("-")
    base = name[1:] if neg else name
    base = _NAMES.get(base, base)
    if base.startswith("T"):
        base = base.replace("_", ",")
    if base in ("unknot", "4_1"):
        return base
    return "-" + base if neg else base

# Known maximal values.  Only entries in this table are treated as exact.
EXACT_TB = {"unknot": -1, "T2,3": 1, "-T2,3": -6, "4_1": -3, "T2,5": 3, "-T2,5": -10}


def enumerate_fronts(max_crossings: int, max_cusp_pairs: int, max_width: int = 6):
    """Every event list within the limits that closes into one component."""

    def rec(ev, width, cusps, x):
        if ev and width == 0:
            f = FrontDiagram(tuple(ev))
            try:
                f.diagram()
            except FrontError:
                pass
            else:
                yield f
        if cusps < max_cusp_pairs and width + 2 <= max_width:
            for i in range(width + 1):
                ev.append(("LCUSP", i))
                yield from rec(ev, width + 2, cusps + 1, x)
                ev.pop()
        if width >= 2:
            if x < max_crossings:
                for i in range(width - 1):
                    ev.append(("X", i))
                    yield from rec(ev, width, cusps, x + 1)
                    ev.pop()
            for i in range(width - 1):
                ev.append(("RCUSP", i))
                yield from rec(ev, width - 2, cusps, x)
                ev.pop()

    yield from rec([], 0, 0, 0)


def tb_lower_bound(name: str) -> TbCertificate:
    key = _key(name)
    fronts = BUILTIN_FRONTS.get(key)
    if not fronts:
        raise KeyError(f"no stored front for {name!r}")
    best = max(fronts, key=tb_of_front)
    value = tb_of_front(best)
    return TbCertificate(key, best, value, EXACT_TB.get(key) == value)


def tb_value(name: str) -> int:
    """Exact TB from the table (falls back to the best stored front)."""
    key = _key(name)
    if key in EXACT_TB:
        return EXACT_TB[key]
    return tb_lower_bound(key).tb


def _mirror_name(name: str) -> str:
    return name[1:] if name.startswith("-") else "-" + name


@dataclass(frozen=True)
class DualityReport:
    knot: str
    tb: int
    tb_inverse: int
    exact: bool
    holds: bool


def check_tb_duality(name: str) -> DualityReport:
    """TB(K) + TB(-K) <= -1 from the stored fronts (-K is the concordance
    inverse; amphichiral knots pair with themselves)."""
    key = _key(name)
    other = key if key in ("unknot", "4_1") else _mirror_name(key)
    a, b = tb_lower_bound(key), tb_lower_bound(other)
    exact = a.exact and b.exact
    holds = a.tb + b.tb <= -1
    if exact and not holds:
        raise AssertionError(f"TB({key}) + TB({other}) = {a.tb + b.tb} > -1")
    return DualityReport(key, a.tb, b.tb, exact, holds)
