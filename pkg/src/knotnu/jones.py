"""Kauffman bracket and Jones polynomial.

Variable convention: the bracket lives in ``A`` with ``<O> = 1`` and loop
value ``-A^2 - A^-2``; the Jones polynomial is returned in ``q = A^4``.  In the
classical variable this is ``q = t^-1``, so the positive (right-handed)
trefoil has ``V = q^-1 + q^-3 - q^-4``.
"""

from __future__ import annotations

from typing import Sequence

from .diagram import DiagramError, PlanarDiagram
from .polynomial import LaurentPolynomial

DEFAULT_BUDGET = 24

A = LaurentPolynomial.monomial(1)
LOOP = LaurentPolynomial({2: -1, -2: -1})


def smoothing_arcs(edges: Sequence[int], one: bool) -> tuple[tuple[int, int], tuple[int, int]]:
    """Arcs of the 0- (A-) or 1- (B-) smoothing of ``X(a,b,c,d)``."""
    a, b, c, d = edges
    if one:
        return (a, d), (b, c)
    return (a, b), (c, d)


def scan_order(diagram: PlanarDiagram) -> list[int]:
    """Greedy crossing order keeping the open boundary small."""
    remaining = list(range(len(diagram.crossings)))
    open_edges: set[int] = set()
    order = []
    while remaining:
        best = max(
            remaining,
            key=lambda i: (
                sum(e in open_edges for e in diagram.crossings[i].edges),
                -i,
            ),
        )
        remaining.remove(best)
        order.append(best)
        for e in diagram.crossings[best].edges:
            if e in open_edges:
                open_edges.remove(e)
            else:
                open_edges.add(e)
    return order


def _merge(partner: dict[int, int], arcs) -> tuple[dict[int, int], int]:
    partner = dict(partner)
    loops = 0
    for x, y in arcs:
        if x == y:
            loops += 1
            continue
        if partner.get(x) == y:
            del partner[x], partner[y]
            loops += 1
            continue
        ex = partner.pop(x, None)
        if ex is not None:
            del partner[ex]
        ey = partner.pop(y, None)
        if ey is not None:
            del partner[ey]
        # the open ends of the merged path
        end1 = x if ex is None else ex
        end2 = y if ey is None else ey
        partner[end1], partner[end2] = end2, end1
    return partner, loops


def _key(partner: dict[int, int]) -> frozenset:
    return frozenset((x, y) for x, y in partner.items() if x < y)


def kauffman_bracket(diagram: PlanarDiagram) -> LaurentPolynomial:
    """Normalised bracket ``<D>`` (unknot -> 1) by scanning crossings."""
    if not diagram.crossings:
        return LaurentPolynomial.one()
    states: dict[frozenset, LaurentPolynomial] = {frozenset(): LaurentPolynomial.one()}
    loop_powers = [LaurentPolynomial.one()]
    for i in scan_order(diagram):
        edges = diagram.crossings[i].edges
        new_states: dict[frozenset, LaurentPolynomial] = {}
        for key, poly in states.items():
            partner = {}
            for x, y in key:
                partner[x], partner[y] = y, x
            for one, weight in ((False, 1), (True, -1)):
                merged, loops = _merge(partner, smoothing_arcs(edges, one))
                while len(loop_powers) <= loops:
                    loop_powers.append(loop_powers[-1] * LOOP)
                term = poly.shift(weight) * loop_powers[loops]
                k = _key(merged)
                new_states[k] = new_states[k] + term if k in new_states else term
        states = new_states
    (total,) = states.values()
    return total.exact_divide(LOOP)


def bracket_state_sum(diagram: PlanarDiagram) -> LaurentPolynomial:
    """Brute-force sum over all 2^c smoothings (reference oracle)."""
    n = len(diagram.crossings)
    if n == 0:
        return LaurentPolynomial.one()
    total: dict[int, int] = {}
    loop_cache: dict[int, LaurentPolynomial] = {}
    for state in range(1 << n):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i, c in enumerate(diagram.crossings):
            one = bool(state >> i & 1)
            a_count += not one
            for x, y in smoothing_arcs(c.edges, one):
                parent[find(x)] = find(y)
        loops = len({find(e) for e in range(1, 2 * n + 1)})
        if loops not in loop_cache:
            loop_cache[loops] = LOOP ** (loops - 1)
        for k, v in loop_cache[loops].shift(a_count - (n - a_count)):
            total[k] = total.get(k, 0) + v
    return LaurentPolynomial(total)


def _normalise(diagram: PlanarDiagram, bracket: LaurentPolynomial) -> LaurentPolynomial:
    w = diagram.writhe()
    v = bracket.shift(-3 * w) * (-1 if w % 2 else 1)
    return v.divide_exponents(4)


def jones_polynomial(diagram: PlanarDiagram, budget: int = DEFAULT_BUDGET) -> LaurentPolynomial:
    """Jones polynomial in ``q = A^4`` (unknot -> 1)."""
    if len(diagram.crossings) > budget:
        raise DiagramError(f"{len(diagram.crossings)} crossings exceed the budget of {budget}")
    return _normalise(diagram, kauffman_bracket(diagram))


def jones_state_sum(diagram: PlanarDiagram) -> LaurentPolynomial:
    return _normalise(diagram, bracket_state_sum(diagram))
