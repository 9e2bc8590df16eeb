"""Crossings as 4-valent vertices with counterclockwise ports.

This is the geometric layer underneath every diagram constructor: crossings
are created with an ``under_axis`` (0 when ports 0-2 carry the under-strand,
1 when ports 1-3 do), ports are wired together, and the result is traversed
into an oriented PD code.  Faces of the planar map and the Reidemeister
rewrites used by the fuzzer also live here.
"""

from __future__ import annotations

import random
from typing import Hashable

from .diagram import DiagramError, PlanarDiagram

Port = tuple[int, int]


class DiagramBuilder:
    """Incrementally wire crossings and plain strand pieces.

    Endpoints are opaque tokens.  ``crossing`` returns four port tokens in
    counterclockwise order; ``wire`` returns the two ends of an uncrossed
    strand piece; ``connect`` glues two endpoints.
    """

    def __init__(self):
        self.under_axis: list[int] = []
        self._link: dict[Hashable, Hashable] = {}
        self._wire_other: dict[Hashable, Hashable] = {}
        self._n_wires = 0

    def crossing(self, under_axis: int) -> tuple[Port, Port, Port, Port]:
        c = len(self.under_axis)
        self.under_axis.append(under_axis % 2)
        return (c, 0), (c, 1), (c, 2), (c, 3)

    def wire(self) -> tuple[Hashable, Hashable]:
        w = self._n_wires
        self._n_wires += 1
        a, b = ("w", w, 0), ("w", w, 1)
        self._wire_other[a] = b
        self._wire_other[b] = a
        return a, b

    def connect(self, x: Hashable, y: Hashable) -> None:
        if x in self._link or y in self._link:
            raise DiagramError(f"endpoint already connected: {x if x in self._link else y}")
        if x == y:
            raise DiagramError("cannot connect an endpoint to itself")
        self._link[x] = y
        self._link[y] = x

    def port_graph(self) -> "PortGraph":
        partner: dict[Port, Port] = {}
        for c in range(len(self.under_axis)):
            for k in range(4):
                start = (c, k)
                if start not in self._link:
                    raise DiagramError(f"port {start} left dangling")
                x = self._link[start]
                steps = 0
                while isinstance(x, tuple) and len(x) == 3 and x[0] == "w":
                    y = self._wire_other[x]
                    if y not in self._link:
                        raise DiagramError(f"wire end {y} left dangling")
                    x = self._link[y]
                    steps += 1
                    if steps > self._n_wires + 1:
                        raise DiagramError("closed loop of plain wire")
                partner[start] = x
        closed_wires = self._closed_wire_loops()
        pg = PortGraph(list(self.under_axis), partner)
        if closed_wires and pg.under_axis:
            raise DiagramError("diagram has an extra crossingless component")
        if closed_wires > 1:
            raise DiagramError("diagram has several crossingless components")
        return pg

    def _closed_wire_loops(self) -> int:
        seen = set()
        loops = 0
        for w in range(self._n_wires):
            a = ("w", w, 0)
            if a in seen:
                continue
            x, closed = a, False
            path = []
            while True:
                path.append(x)
                seen.add(x)
                y = self._wire_other[x]
                seen.add(y)
                if y not in self._link:
                    break
                z = self._link[y]
                if not (isinstance(z, tuple) and len(z) == 3 and z[0] == "w"):
                    break
                if z == a:
                    closed = True
                    break
                if z in seen:
                    break
                x = z
            loops += closed
        return loops

    def diagram(self, name: str | None = None) -> PlanarDiagram:
        return self.port_graph().to_diagram(name)


class PortGraph:
    """Compact crossing-port incidence: ``partner[(c, k)] = (c', k')``."""

    def __init__(self, under_axis: list[int], partner: dict[Port, Port]):
        self.under_axis = under_axis
        self.partner = partner

    @classmethod
    def from_diagram(cls, diagram: PlanarDiagram) -> "PortGraph":
        ends: dict[int, list[Port]] = {}
        for c, x in enumerate(diagram.crossings):
            for k, e in enumerate(x.edges):
                ends.setdefault(e, []).append((c, k))
        partner = {}
        for p, q in ends.values():
            partner[p] = q
            partner[q] = p
        return cls([0] * len(diagram.crossings), partner)

    def copy(self) -> "PortGraph":
        return PortGraph(list(self.under_axis), dict(self.partner))

    @property
    def n(self) -> int:
        return len(self.under_axis)

    def to_diagram(self, name: str | None = None) -> PlanarDiagram:
        n = self.n
        if n == 0:
            return PlanarDiagram((), name)
        labels: dict[Port, int] = {}
        entered_under: dict[int, int] = {}
        c, k = 0, (self.under_axis[0] + 2) % 4
        edge = 0
        while True:
            q = self.partner[(c, k)]
            if (c, k) in labels:
                break
            edge += 1
            labels[(c, k)] = edge
            labels[q] = edge
            c2, k2 = q
            if k2 % 2 == self.under_axis[c2]:
                entered_under[c2] = k2
            c, k = c2, (k2 + 2) % 4
        if edge != 2 * n:
            raise DiagramError(f"diagram has more than one component ({edge} of {2 * n} edges)")
        tuples = []
        for c in range(n):
            s = entered_under[c]
            tuples.append(tuple(labels[(c, (s + j) % 4)] for j in range(4)))
        return PlanarDiagram.from_tuples(tuples, name)

    def faces(self) -> list[list[Port]]:
        """Faces as cycles of leaving half-edges; the face lies on the left."""
        seen = set()
        out = []
        for c in range(self.n):
            for k in range(4):
                h = (c, k)
                if h in seen:
                    continue
                face = []
                while h not in seen:
                    seen.add(h)
                    face.append(h)
                    c2, k2 = self.partner[h]
                    h = (c2, (k2 - 1) % 4)
                out.append(face)
        return out

    def is_planar(self) -> bool:
        return self.n == 0 or len(self.faces()) == self.n + 2

    # -- Reidemeister rewrites -------------------------------------------

    def _connection(self, p: Port, q: Port) -> None:
        self.partner[p] = q
        self.partner[q] = p

    def _remove_crossings(self, doomed: set[int]) -> None:
        keep = [c for c in range(self.n) if c not in doomed]
        index = {c: i for i, c in enumerate(keep)}
        self.under_axis = [self.under_axis[c] for c in keep]
        self.partner = {
            (index[p[0]], p[1]): (index[q[0]], q[1])
            for p, q in self.partner.items()
            if p[0] in index and q[0] in index
        }

    def r1_add(self, port: Port, j: int, under_axis: int) -> None:
        """Put a kink on the edge leaving ``port``."""
        q = self.partner[port]
        x = self.n
        self.under_axis.append(under_axis % 2)
        self._connection((x, j % 4), (x, (j + 1) % 4))
        self._connection(port, (x, (j + 2) % 4))
        self._connection(q, (x, (j + 3) % 4))

    def r1_sites(self) -> list[tuple[int, int]]:
        return [
            (c, k)
            for c in range(self.n)
            for k in range(4)
            if self.partner[(c, k)] == (c, (k + 1) % 4)
        ]

    def r1_remove(self, c: int, k: int) -> None:
        a = self.partner[(c, (k + 2) % 4)]
        b = self.partner[(c, (k + 3) % 4)]
        if a[0] == c:
            # a crossing carrying two kinks is a whole one-crossing unknot
            self.under_axis, self.partner = [], {}
            return
        self._connection(a, b)
        self._remove_crossings({c})

    def r2_add(self, h1: Port, h2: Port, first_over: bool) -> None:
        """Push a finger of the edge leaving ``h1`` across the edge leaving
        ``h2``; both half-edges must border the same face."""
        p1, q1 = h1, self.partner[h1]
        p2, q2 = h2, self.partner[h2]
        x, y = self.n, self.n + 1
        axis = 1 if first_over else 0
        self.under_axis += [axis, axis]
        # X: S <- p1, E <- Y.W, N -> Y.N, W -> q2 ; Y: S -> q1, E <- p2
        self._connection(p1, (x, 0))
        self._connection((x, 2), (y, 2))
        self._connection((x, 1), (y, 3))
        self._connection((x, 3), q2)
        self._connection((y, 0), q1)
        self._connection((y, 1), p2)

    def r2_sites(self) -> list[tuple[Port, Port]]:
        sites = []
        for face in self.faces():
            if len(face) != 2:
                continue
            h1, h2 = face
            x, k1 = h1
            y, m1 = self.partner[h1]
            if x == y:
                continue
            over_x = self.under_axis[x] != k1 % 2
            over_y = self.under_axis[y] != m1 % 2
            if over_x == over_y:
                sites.append((h1, h2))
        return sites

    def r2_remove(self, h1: Port, h2: Port) -> bool:
        x, k1 = h1
        y, m1 = self.partner[h1]
        y2, k2 = h2
        x2, m2 = self.partner[h2]
        assert (y2, x2) == (y, x)
        a1 = self.partner[(x, (k1 + 2) % 4)]
        b1 = self.partner[(y, (m1 + 2) % 4)]
        a2 = self.partner[(y, (k2 + 2) % 4)]
        b2 = self.partner[(x, (m2 + 2) % 4)]
        if any(p[0] in (x, y) for p in (a1, b1, a2, b2)):
            return False
        self._connection(a1, b1)
        self._connection(a2, b2)
        self._remove_crossings({x, y})
        return True

    def r3_sites(self) -> list[list[Port]]:
        sites = []
        for face in self.faces():
            if len(face) != 3:
                continue
            cs = {h[0] for h in face}
            if len(cs) != 3:
                continue
            involved = {(c, k) for c in cs for k in range(4)}
            ok = True
            tops = []
            for h in face:
                c, k = h
                c2, k2 = self.partner[h]
                outer_a = self.partner[(c, (k + 2) % 4)]
                outer_b = self.partner[(c2, (k2 + 2) % 4)]
                if outer_a in involved or outer_b in involved:
                    ok = False
                    break
                over_a = self.under_axis[c] != k % 2
                over_b = self.under_axis[c2] != k2 % 2
                tops.append(over_a == over_b)
            if ok and any(tops):
                sites.append(face)
        return sites

    def r3(self, face: list[Port]) -> None:
        """Slide across the triangle: reverse the crossing order on each side."""
        rewires = []
        for c, k in face:
            c2, k2 = self.partner[(c, k)]
            p_in, p_out = (c, (k + 2) % 4), (c, k)
            q_in, q_out = (c2, k2), (c2, (k2 + 2) % 4)
            ext_start, ext_end = self.partner[p_in], self.partner[q_out]
            rewires.append((ext_start, q_in, q_out, p_in, p_out, ext_end))
        for ext_start, q_in, q_out, p_in, p_out, ext_end in rewires:
            self._connection(ext_start, q_in)
            self._connection(q_out, p_in)
            self._connection(p_out, ext_end)


def reidemeister_fuzz(
    diagram: PlanarDiagram,
    moves: int,
    rng: random.Random,
    max_crossings: int = 14,
) -> PlanarDiagram:
    """Apply ``moves`` random R1/R2/R3 rewrites, keeping the size bounded."""
    pg = PortGraph.from_diagram(diagram)
    for _ in range(moves):
        options = []
        if pg.n == 0:
            options.append("r1_add")
        else:
            if pg.n + 1 <= max_crossings:
                options.append("r1_add")
            if pg.n + 2 <= max_crossings:
                options.append("r2_add")
            options += ["r1_remove", "r2_remove", "r3", "r3"]
        kind = rng.choice(options)
        if kind == "r1_add":
            if pg.n == 0:
                pg = PortGraph([rng.randrange(2)], {})
                pg._connection((0, 0), (0, 1))
                pg._connection((0, 2), (0, 3))
            else:
                port = (rng.randrange(pg.n), rng.randrange(4))
                pg.r1_add(port, rng.randrange(4), rng.randrange(2))
        elif kind == "r1_remove":
            sites = pg.r1_sites()
            if sites:
                pg.r1_remove(*rng.choice(sites))
        elif kind == "r2_add":
            face = rng.choice(pg.faces())
            if len(face) >= 2:
                h1, h2 = rng.sample(face, 2)
                if pg.partner[h1] != h2:
                    pg.r2_add(h1, h2, rng.random() < 0.5)
        elif kind == "r2_remove":
            sites = pg.r2_sites()
            if sites:
                pg.r2_remove(*rng.choice(sites))
        else:
            sites = pg.r3_sites()
            if sites:
                pg.r3(rng.choice(sites))
        if not pg.is_planar():
            raise AssertionError(f"{kind} broke planarity")
    return pg.to_diagram(diagram.name)
