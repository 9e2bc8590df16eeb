"""Reference backend: the full cube of resolutions over Q[t], X^2 = t.

Each vertex of the cube is a smoothing; each circle carries ``1`` (q = +1)
or ``X`` (q = -1).  Merges and splits use

    m(1,1) = 1,  m(1,X) = m(X,1) = X,  m(X,X) = t
    D(1) = 1(x)X + X(x)1,  D(X) = X(x)X + t 1(x)1
"""

from __future__ import annotations

from dataclasses import dataclass

from ..diagram import PlanarDiagram
from ..jones import smoothing_arcs
from .complex import GradedComplex


def _circles(diagram: PlanarDiagram, state: int) -> dict[int, int]:
    """edge label -> circle index (indices ordered by smallest label)."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, c in enumerate(diagram.crossings):
        for x, y in smoothing_arcs(c.edges, bool(state >> i & 1)):
            parent[find(x)] = find(y)
    roots: dict[int, int] = {}
    out = {}
    for e in range(1, diagram.edge_count + 1):
        r = find(e)
        out[e] = roots.setdefault(r, len(roots))
    return out


def cube_complex(diagram: PlanarDiagram) -> GradedComplex:
    n = len(diagram.crossings)
    n_plus = sum(c.sign > 0 for c in diagram.crossings)
    n_minus = n - n_plus
    cx = GradedComplex()
    if n == 0:
        cx.add_generator(0, 1)
        cx.add_generator(0, -1)
        return cx

    circles = [_circles(diagram, v) for v in range(1 << n)]
    counts = [max(m.values()) + 1 for m in circles]
    base: list[int] = []
    # generator id = base[v] + labelling, bit j set <=> circle j carries X
    for v in range(1 << n):
        base.append(len(cx.h))
        weight = bin(v).count("1")
        k = counts[v]
        for lab in range(1 << k):
            x_count = bin(lab).count("1")
            cx.add_generator(weight - n_minus, (k - 2 * x_count) + weight + n_plus - 2 * n_minus)

    for v in range(1 << n):
        cv = circles[v]
        for i in range(n):
            if v >> i & 1:
                continue
            w = v | 1 << i
            sign = -1 if bin(v & ((1 << i) - 1)).count("1") % 2 else 1
            cw = circles[w]
            a, b, c, d = diagram.crossings[i].edges
            # carry untouched circles across by a representative label
            reps = {}
            for e, j in cv.items():
                reps.setdefault(j, e)
            c1, c2 = cv[a], cv[c]
            others = [(j, cw[e]) for j, e in reps.items() if j not in (c1, c2)]
            for lab in range(1 << counts[v]):
                src = base[v] + lab
                rest = 0
                for j, j2 in others:
                    if lab >> j & 1:
                        rest |= 1 << j2
                if c1 != c2:
                    x1, x2 = lab >> c1 & 1, lab >> c2 & 1
                    m = cw[a]
                    if x1 and x2:
                        cx.add_entry(src, base[w] + rest, sign)
                    else:
                        cx.add_entry(src, base[w] + (rest | (x1 | x2) << m), sign)
                else:
                    x = lab >> c1 & 1
                    m1, m2 = cw[a], cw[b]
                    if x:
                        cx.add_entry(src, base[w] + (rest | 1 << m1 | 1 << m2), sign)
                        cx.add_entry(src, base[w] + rest, sign)
                    else:
                        cx.add_entry(src, base[w] + (rest | 1 << m2), sign)
                        cx.add_entry(src, base[w] + (rest | 1 << m1), sign)
    return cx


@dataclass(frozen=True)
class FilteredCube:
    """Bookkeeping view of the cube of resolutions.

    ``circles[v]`` is the number of circles in smoothing ``v`` (bit i set when
    crossing i takes its 1-smoothing).  Generators at ``v`` are the
    ``2^circles[v]`` decorations by 1 and X.
    """

    diagram: PlanarDiagram
    circles: tuple[int, ...]

    @classmethod
    def of(cls, diagram: PlanarDiagram) -> "FilteredCube":
        n = len(diagram.crossings)
        if n == 0:
            return cls(diagram, (1,))
        return cls(diagram, tuple(max(_circles(diagram, v).values()) + 1 for v in range(1 << n)))

    @property
    def n_minus(self) -> int:
        return sum(c.sign < 0 for c in self.diagram.crossings)

    def homological_degree(self, v: int) -> int:
        return bin(v).count("1") - self.n_minus

    def generator_count(self, v: int) -> int:
        return 1 << self.circles[v]

    def total_generators(self) -> int:
        return sum(1 << k for k in self.circles)

    def complex(self) -> GradedComplex:
        return cube_complex(self.diagram)
