"""Alexander polynomial of a knot diagram via Fox calculus.

Arcs of the diagram are the Wirtinger generators.  Each crossing gives one
relation; its abelianised Fox derivatives form a row of the Alexander
matrix, and any first minor is the polynomial up to a unit ``+-x^k``.  The
result is normalised to be symmetric with positive constant term, so it is
directly comparable with the Seifert-matrix formula in :mod:`knotnu.seifert`.
"""

from __future__ import annotations

from .diagram import PlanarDiagram
from .polynomial import LaurentPolynomial

X = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.one()
ZERO = LaurentPolynomial()


def _arcs(diagram: PlanarDiagram) -> dict[int, int]:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in diagram.crossings:
        a, b, _, d = c.edges
        parent[find(b)] = find(d)
    roots: dict[int, int] = {}
    return {e: roots.setdefault(find(e), len(roots)) for e in range(1, diagram.edge_count + 1)}


def alexander_matrix(diagram: PlanarDiagram) -> list[list[LaurentPolynomial]]:
    arc = _arcs(diagram)
    n = len(diagram.crossings)
    rows = []
    for c in diagram.crossings:
        a, b, cc, _ = c.edges
        row = [ZERO] * n
        o, i, j = arc[b], arc[a], arc[cc]
        # positive: j = o i o^-1, negative: j = o^-1 i o (times x)
        if c.sign > 0:
            entries = [(o, ONE - X), (i, X), (j, -ONE)]
        else:
            entries = [(o, X - ONE), (i, ONE), (j, -X)]
        for k, v in entries:
            row[k] = row[k] + v
        rows.append(row)
    return rows


def determinant(matrix: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    """Fraction-free (Bareiss) elimination over Z[x^+-1]."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_divide(prev)
            m[i][k] = ZERO
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def alexander_polynomial(diagram: PlanarDiagram) -> LaurentPolynomial:
    """Symmetric Alexander polynomial with ``Delta(1) = 1``."""
    n = len(diagram.crossings)
    if n == 0:
        return ONE
    rows = alexander_matrix(diagram)
    minor = [r[1:] for r in rows[1:]]
    return symmetrize(determinant(minor))


def symmetrize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Shift and sign ``p`` so that it is palindromic about 0 with p(1) > 0."""
    if p.is_zero():
        return p
    lo, hi = p.min_degree(), p.max_degree()
    if (lo + hi) % 2:
        raise ValueError(f"{p} is not symmetric up to a unit")
    p = p.shift(-(lo + hi) // 2)
    if p.evaluate(1) < 0:
        p = -p
    return p
