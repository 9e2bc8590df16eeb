"""Oriented knot diagrams stored as PD codes.

A crossing ``X(a, b, c, d)`` lists its four edge labels counterclockwise,
starting from the incoming under-strand, so the under-strand runs ``a -> c``
and the over-strand joins ``b`` and ``d``.  Edge directions (hence the
over-strand direction and the crossing sign) are inferred from the requirement
that every edge has exactly one head and one tail.

Sign convention: a crossing is positive when the over-strand runs ``d -> b``,
i.e. it passes from left to right as seen by a traveller on the under-strand.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed PD input or invalid diagram operations."""


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    @property
    def over_forward(self) -> bool:
        """True when the over-strand runs b -> d (negative crossing)."""
        return self.sign < 0

    def incoming(self) -> tuple[int, int]:
        a, b, c, d = self.edges
        return (a, b) if self.sign < 0 else (a, d)

    def outgoing(self) -> tuple[int, int]:
        a, b, c, d = self.edges
        return (c, d) if self.sign < 0 else (c, b)


def _infer_over_directions(tuples: Sequence[tuple[int, int, int, int]]) -> list[bool]:
    """Return, per crossing, whether the over-strand runs b -> d."""
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i, t in enumerate(tuples):
        for p, e in enumerate(t):
            occurrences.setdefault(e, []).append((i, p))

    direction: list[bool | None] = [None] * len(tuples)

    def role(i: int, p: int) -> str | None:
        # 'in' when the edge enters crossing i at position p
        if p == 0:
            return "in"
        if p == 2:
            return "out"
        if direction[i] is None:
            return None
        b_to_d = direction[i]
        if p == 1:
            return "in" if b_to_d else "out"
        return "out" if b_to_d else "in"

    def force(i: int, p: int, wanted: str) -> None:
        # p is 1 or 3: choose the over direction so position p has role `wanted`
        b_to_d = (p == 1) == (wanted == "in")
        if direction[i] is None:
            direction[i] = b_to_d
        elif direction[i] != b_to_d:
            raise DiagramError(f"inconsistent orientation at crossing {i + 1}")

    changed = True
    while changed:
        changed = False
        for e, occ in occurrences.items():
            (i1, p1), (i2, p2) = occ
            r1, r2 = role(i1, p1), role(i2, p2)
            if r1 is not None and r2 is not None:
                if r1 == r2:
                    raise DiagramError(f"edge {e} has two {r1!r} ends")
                continue
            if r1 is None and r2 is None:
                continue
            if r1 is None:
                force(i1, p1, "in" if r2 == "out" else "out")
            else:
                force(i2, p2, "in" if r1 == "out" else "out")
            changed = True
    if any(d is None for d in direction):
        raise DiagramError("diagram has a component that never passes under")
    return [bool(d) for d in direction]


@dataclass(frozen=True)
class PlanarDiagram:
    """A validated single-component oriented diagram."""

    crossings: tuple[Crossing, ...]
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_tuples(
        cls, tuples: Iterable[Sequence[int]], name: str | None = None
    ) -> "PlanarDiagram":
        tuples = [tuple(int(x) for x in t) for t in tuples]
        for t in tuples:
            if len(t) != 4:
                raise DiagramError(f"crossing {t} does not have four edges")
        n_edges = 2 * len(tuples)
        counts: dict[int, int] = {}
        for t in tuples:
            for e in t:
                counts[e] = counts.get(e, 0) + 1
        if set(counts) != set(range(1, n_edges + 1)) or any(c != 2 for c in counts.values()):
            bad = sorted(e for e, c in counts.items() if c != 2 or not 1 <= e <= n_edges)
            missing = sorted(set(range(1, n_edges + 1)) - set(counts))
            raise DiagramError(
                f"edge labels must be 1..{n_edges}, each used twice "
                f"(bad: {bad}, missing: {missing})"
            )
        b_to_d = _infer_over_directions(tuples) if tuples else []
        crossings = tuple(
            Crossing(t, -1 if bd else 1) for t, bd in zip(tuples, b_to_d)
        )
        diagram = cls(crossings, name)
        if tuples:
            cycle = diagram.edge_cycle(start=1)
            if len(cycle) != n_edges:
                raise DiagramError(
                    f"diagram has more than one component "
                    f"({len(cycle)} of {n_edges} edges reached from edge 1)"
                )
        return diagram

    @classmethod
    def unknot(cls) -> "PlanarDiagram":
        return cls((), "unknot")

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def tuples(self) -> list[tuple[int, int, int, int]]:
        return [c.edges for c in self.crossings]

    def signs(self) -> list[int]:
        return [c.sign for c in self.crossings]

    def head_map(self) -> dict[int, tuple[int, int]]:
        """edge -> (crossing index, position) where the edge ends."""
        heads = {}
        for i, c in enumerate(self.crossings):
            heads[c.edges[0]] = (i, 0)
            if c.sign < 0:
                heads[c.edges[1]] = (i, 1)
            else:
                heads[c.edges[3]] = (i, 3)
        return heads

    def successor(self) -> dict[int, int]:
        succ = {}
        out_pos = {0: 2, 1: 3, 3: 1}
        for e, (i, p) in self.head_map().items():
            succ[e] = self.crossings[i].edges[out_pos[p]]
        return succ

    def edge_cycle(self, start: int = 1) -> list[int]:
        succ = self.successor()
        cycle = [start]
        e = succ[start]
        while e != start and len(cycle) <= self.edge_count:
            cycle.append(e)
            e = succ[e]
        return cycle

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def relabeled(self, start: int | None = None) -> "PlanarDiagram":
        """Relabel edges 1..2n in traversal order starting at ``start``."""
        if not self.crossings:
            return self
        cycle = self.edge_cycle(start or min(e for c in self.crossings for e in c.edges))
        new = {e: k + 1 for k, e in enumerate(cycle)}
        return PlanarDiagram(
            tuple(Crossing(tuple(new[e] for e in c.edges), c.sign) for c in self.crossings),
            self.name,
        )

    def with_name(self, name: str | None) -> "PlanarDiagram":
        return PlanarDiagram(self.crossings, name)

    def pd_string(self) -> str:
        return " ".join("X({},{},{},{})".format(*c.edges) for c in self.crossings)

    def __str__(self):
        label = self.name or "diagram"
        return f"{label}: {self.pd_string() or '(0 crossings)'}"


_TERM = re.compile(r"X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_pd(text: str, name: str | None = None) -> PlanarDiagram:
    """Parse whitespace-separated ``X(a,b,c,d)`` terms; ``#`` starts a comment."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    tuples = []
    pos = 0
    for m in _TERM.finditer(body):
        if body[pos:m.start()].strip():
            raise DiagramError(f"unexpected text {body[pos:m.start()].strip()!r}")
        tuples.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if body[pos:].strip():
        raise DiagramError(f"unexpected text {body[pos:].strip()!r}")
    return PlanarDiagram.from_tuples(tuples, name)


def writhe(diagram: PlanarDiagram) -> int:
    return diagram.writhe()


def _flip(c: Crossing) -> Crossing:
    a, b, cc, d = c.edges
    # the over-strand becomes the under-strand; start from its incoming edge
    if c.sign > 0:
        return Crossing((d, a, b, cc), -1)
    return Crossing((b, cc, d, a), 1)


def mirror(diagram: PlanarDiagram) -> PlanarDiagram:
    """Change every crossing (reflection through the projection plane)."""
    name = f"mirror({diagram.name})" if diagram.name else None
    if not diagram.crossings:
        return PlanarDiagram((), diagram.name)
    return PlanarDiagram(tuple(_flip(c) for c in diagram.crossings), name)


def reverse(diagram: PlanarDiagram) -> PlanarDiagram:
    """Reverse the orientation; labels are renumbered along the new direction."""
    if not diagram.crossings:
        return diagram
    n = diagram.edge_count
    flipped = [
        Crossing(tuple(n + 1 - e for e in (c.edges[2], c.edges[3], c.edges[0], c.edges[1])), c.sign)
        for c in diagram.crossings
    ]
    name = f"reverse({diagram.name})" if diagram.name else None
    return PlanarDiagram(tuple(flipped), name)


def concordance_inverse(diagram: PlanarDiagram) -> PlanarDiagram:
    """-K: the mirror image with reversed orientation."""
    out = reverse(mirror(diagram))
    if diagram.name:
        out = out.with_name(f"-{diagram.name}")
    return out


def change_crossing(diagram: PlanarDiagram, index: int) -> PlanarDiagram:
    if not 0 <= index < len(diagram.crossings):
        raise DiagramError(f"crossing index {index} out of range")
    cs = list(diagram.crossings)
    cs[index] = _flip(cs[index])
    return PlanarDiagram(tuple(cs), diagram.name)


def connected_sum(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Cut edge 1 of each diagram and splice the ends crosswise."""
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    off = d1.edge_count
    t1 = [list(c.edges) for c in d1.crossings]
    t2 = [[e + off for e in c.edges] for c in d2.crossings]
    e1, f = 1, 1 + off
    i1, p1 = d1.head_map()[1]
    i2, p2 = d2.head_map()[1]
    t1[i1][p1] = f
    t2[i2][p2] = e1
    name = f"{d1.name}#{d2.name}" if d1.name and d2.name else None
    return PlanarDiagram.from_tuples(t1 + t2, name).relabeled(1)


def gauss_sequence(diagram: PlanarDiagram, start: int = 1) -> list[tuple[int, str, int]]:
    """Passages (crossing index, 'O'/'U', sign) met when travelling from ``start``."""
    if not diagram.crossings:
        return []
    heads = diagram.head_map()
    seq = []
    for e in diagram.edge_cycle(start):
        i, p = heads[e]
        seq.append((i, "U" if p in (0, 2) else "O", diagram.crossings[i].sign))
    return seq


def _serialize(seq: Sequence[tuple[int, str, int]]) -> str:
    numbering: dict[int, int] = {}
    parts = []
    for i, ou, s in seq:
        k = numbering.setdefault(i, len(numbering) + 1)
        parts.append(f"{ou}{k}{'+' if s > 0 else '-'}")
    return ",".join(parts)


def gauss_code(diagram: PlanarDiagram) -> str:
    """Signed Gauss code, e.g. ``O1+,U2+,O3+,U1+,O2+,U3+``."""
    return _serialize(gauss_sequence(diagram))


def canonical_gauss_code(diagram: PlanarDiagram) -> str:
    seq = gauss_sequence(diagram)
    if not seq:
        return ""
    return min(_serialize(seq[k:] + seq[:k]) for k in range(len(seq)))


def canonical_hash(diagram: PlanarDiagram) -> str:
    """Digest of the minimal rotation of the signed Gauss code.

    Stable under edge relabelling; not a knot invariant.
    """
    return hashlib.sha256(canonical_gauss_code(diagram).encode()).hexdigest()[:16]
