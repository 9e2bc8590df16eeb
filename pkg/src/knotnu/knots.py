"""Built-in benchmark knots and name lookup."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .diagram import (
    DiagramError,
    PlanarDiagram,
    concordance_inverse,
    connected_sum,
    mirror,
    parse_pd,
)
from .portgraph import DiagramBuilder


def braid_closure(word: Sequence[int], strands: int, name: str | None = None) -> PlanarDiagram:
    """Closure of a braid word; generator ``i`` (1-based) is a positive
    crossing of strands ``i`` and ``i+1``, ``-i`` its inverse."""
    b = DiagramBuilder()
    bottoms, current = [], []
    for _ in range(strands):
        lo, hi = b.wire()
        bottoms.append(lo)
        current.append(hi)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
        # ports counterclockwise: SW, SE, NE, NW; strands travel upward
        sw, se, ne, nw = b.crossing(under_axis=1 if g > 0 else 0)
        b.connect(current[i], sw)
        b.connect(current[i + 1], se)
        current[i], current[i + 1] = nw, ne
    for top, bottom in zip(current, bottoms):
        b.connect(top, bottom)
    return b.diagram(name).relabeled(1)


def torus_knot(p: int, q: int) -> PlanarDiagram:
    """Positive torus knot T(p,q) as the closure of (s1 ... s_{p-1})^q."""
    if p < 1 or q < 1:
        raise ValueError("torus knot parameters must be positive")
    word = list(range(1, p)) * q
    return braid_closure(word, p, f"T{p},{q}")


FIGURE_EIGHT = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)", "4_1")


def _builtin() -> dict[str, PlanarDiagram]:
    table = {"unknot": PlanarDiagram.unknot(), "4_1": FIGURE_EIGHT}
    for p, q in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 9)]:
        table[f"T{p},{q}"] = torus_knot(p, q)
    table["3_1"] = table["T2,3"]
    table["5_1"] = table["T2,5"]
    table["figure8"] = FIGURE_EIGHT
    return table


BUILTIN = _builtin()

ALIASES = {"trefoil": "T2,3", "U": "unknot", "O": "unknot"}


def knot_by_name(name: str) -> PlanarDiagram:
    """Resolve a built-in knot name.

    ``-K`` is the concordance inverse (mirror with reversed orientation),
    ``mK`` the plain mirror, and ``K#J`` a connected sum.  Torus knots are
    written ``T2,3`` or ``T2_3``.
    """
    name = name.strip()
    if "#" in name:
        parts = [knot_by_name(p) for p in name.split("#")]
        out = parts[0]
        for p in parts[1:]:
            out = connected_sum(out, p)
        return out.with_name(name)
    if name.startswith("-"):
        return concordance_inverse(knot_by_name(name[1:])).with_name(name)
    key = ALIASES.get(name, name).replace("_", ",") if name.startswith("T") else ALIASES.get(name, name)
    if key in BUILTIN:
        return BUILTIN[key]
    if key.startswith("m") and key[1:] in BUILTIN:
        return mirror(BUILTIN[key[1:]]).with_name(name)
    if key.startswith("T") and "," in key:
        try:
            p, q = (int(x) for x in key[1:].split(","))
        except ValueError:
            pass
        else:
            return torus_knot(p, q)
    raise DiagramError(f"unknown knot {name!r}")


def load_knot(spec: str) -> PlanarDiagram:
    """A file path holding PD text, or a built-in name."""
    path = Path(spec)
    if path.is_file():
        return parse_pd(path.read_text(), path.stem)
    return knot_by_name(spec)
