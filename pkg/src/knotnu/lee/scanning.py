"""Optimized backend: tangle-by-tangle scanning in the dotted cobordism category.

Crossings are added one at a time.  The running complex has crossingless
tangles (planar matchings of the open boundary) as objects.  Morphisms between
two matchings ``a -> b`` are stored in the basis of dotted disks: the union
``a u b`` is a set of circles (cycles of the arc graph, plus closed loops),
every cobordism reduces by neck-cutting to one disk per circle with at most
one dot, and ``t`` (two dots) is tracked explicitly.  A morphism is a dict
``{(dot_mask, t_power): coefficient}``.

Relations used (Frobenius algebra Q[t][X]/(X^2 - t), counit picks X):
sphere = 0, dotted sphere = 1, handle = 2X, neck = 1(x)X + X(x)1.

After each crossing, closed loops are removed by delooping and every
isomorphism is cancelled by Gaussian elimination, so the complex stays close to
the size of the Khovanov homology of the partial tangle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from ..diagram import PlanarDiagram
from ..jones import scan_order, smoothing_arcs
from .complex import GradedComplex

# A matching is (arcs, loops): arcs a sorted tuple of sorted point pairs,
# loops the number of closed components.
Matching = tuple[tuple[tuple[int, int], ...], int]
Morphism = dict[tuple[int, int], object]

EMPTY: Matching = ((), 0)


def _add_into(acc: Morphism, key, coef) -> None:
    v = acc.get(key, 0) + coef
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


_CYCLE_CACHE: dict = {}


def _cycle_data(a: Matching, b: Matching):
    """Circles of ``a u b``.

    Returns (reps, index): ``reps[i]`` is one arc tag on circle ``i`` and
    ``index`` maps every tag (``('a', k)``, ``('b', k)``, ``('aL', k)``,
    ``('bL', k)``) to its circle.
    """
    key = (a, b)
    hit = _CYCLE_CACHE.get(key)
    if hit is not None:
        return hit
    at = {}
    for k, (x, y) in enumerate(a[0]):
        at[x] = k
        at[y] = k
    bt = {}
    for k, (x, y) in enumerate(b[0]):
        bt[x] = k
        bt[y] = k
    index: dict[tuple[str, int], int] = {}
    reps: list[tuple[str, int]] = []
    starts = sorted(at)
    for p in starts:
        k = at[p]
        if ("a", k) in index:
            continue
        ci = len(reps)
        reps.append(("a", k))
        # walk alternately along a-arcs and b-arcs
        point = p
        while True:
            ka = at[point]
            index[("a", ka)] = ci
            x, y = a[0][ka]
            point = y if point == x else x
            kb = bt[point]
            index[("b", kb)] = ci
            x, y = b[0][kb]
            point = y if point == x else x
            if point == p:
                break
    for k in range(a[1]):
        index[("aL", k)] = len(reps)
        reps.append(("aL", k))
    for k in range(b[1]):
        index[("bL", k)] = len(reps)
        reps.append(("bL", k))
    out = (reps, index)
    _CYCLE_CACHE[key] = out
    return out


def _distribution(n: int, parity: int) -> list[tuple[int, int]]:
    """Terms of the iterated coproduct of X^parity onto n circles.

    Returns (mask over the n circles, extra t power).
    """
    out = []
    total = parity + n - 1
    for size in range(n + 1):
        if (total - size) % 2:
            continue
        extra = (total - size) // 2
        for subset in combinations(range(n), size):
            m = 0
            for i in subset:
                m |= 1 << i
            out.append((m, extra))
    return out


_DIST_CACHE: dict = {}


def _dist(n: int, parity: int):
    key = (n, parity)
    if key not in _DIST_CACHE:
        _DIST_CACHE[key] = _distribution(n, parity)
    return _DIST_CACHE[key]


class _Plan:
    """How the disks of two glued morphisms combine into output circles.

    ``components`` lists, per connected piece of the glued surface, the dot
    masks selecting its disks in each input and the output circles it bounds,
    together with its genus.
    """

    __slots__ = ("components", "cache")

    def __init__(self, components):
        self.components = components
        self.cache: dict = {}

    def evaluate(self, m1: int, m2: int) -> list[tuple[int, int, int]]:
        key = (m1, m2)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        terms = [(0, 0, 1)]
        for sel1, sel2, outs, genus in self.components:
            dots = bin(m1 & sel1).count("1") + bin(m2 & sel2).count("1") + genus
            coef = 1 << genus
            base_t, parity = divmod(dots, 2)
            if not outs:
                if not parity:
                    terms = []
                    break
                local = [(0, base_t)]
            else:
                local = []
                for lm, extra in _dist(len(outs), parity):
                    gm = 0
                    for i, o in enumerate(outs):
                        if lm >> i & 1:
                            gm |= 1 << o
                    local.append((gm, base_t + extra))
            terms = [
                (m | lm, t + lt, c * coef) for m, t, c in terms for lm, lt in local
            ]
        self.cache[key] = terms
        return terms


def _apply_plan(plan: _Plan, f: Morphism, g: Morphism, scale=1) -> Morphism:
    out: Morphism = {}
    for (m1, t1), c1 in f.items():
        for (m2, t2), c2 in g.items():
            c12 = c1 * c2 * scale
            for m, t, c in plan.evaluate(m1, m2):
                _add_into(out, (m, t + t1 + t2), c12 * c)
    return out


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        while p.setdefault(x, x) != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


_VPLANS: dict = {}


def _vertical_plan(a: Matching, b: Matching, c: Matching) -> _Plan:
    key = (a, b, c)
    plan = _VPLANS.get(key)
    if plan is not None:
        return plan
    reps1, idx1 = _cycle_data(a, b)
    reps2, idx2 = _cycle_data(b, c)
    reps3, idx3 = _cycle_data(a, c)
    uf = _UnionFind()
    for i in range(len(reps1)):
        uf.find((1, i))
    for j in range(len(reps2)):
        uf.find((2, j))
    for k in range(len(b[0])):
        n1, n2 = (1, idx1[("b", k)]), (2, idx2[("a", k)])
        uf.union(n1, n2)
    for k in range(b[1]):
        uf.union((1, idx1[("bL", k)]), (2, idx2[("aL", k)]))
    comps: dict = {}
    for i in range(len(reps1)):
        comps.setdefault(uf.find((1, i)), [0, 0, [], 0, 0])
    for j in range(len(reps2)):
        comps.setdefault(uf.find((2, j)), [0, 0, [], 0, 0])
    for i in range(len(reps1)):
        rec = comps[uf.find((1, i))]
        rec[0] |= 1 << i
        rec[3] += 1
    for j in range(len(reps2)):
        rec = comps[uf.find((2, j))]
        rec[1] |= 1 << j
        rec[3] += 1
    for k in range(len(b[0])):
        comps[uf.find((1, idx1[("b", k)]))][4] += 1
    for o, tag in enumerate(reps3):
        kind, k = tag
        if kind == "a":
            node = (1, idx1[("a", k)])
        elif kind == "b":
            node = (2, idx2[("b", k)])
        elif kind == "aL":
            node = (1, idx1[("aL", k)])
        else:
            node = (2, idx2[("bL", k)])
        comps[uf.find(node)][2].append(o)
    components = []
    for sel1, sel2, outs, disks, arcs in comps.values():
        chi = disks - arcs
        genus2 = 2 - chi - len(outs)
        assert genus2 >= 0 and genus2 % 2 == 0, "non-orientable gluing"
        components.append((sel1, sel2, tuple(outs), genus2 // 2))
    plan = _Plan(components)
    _VPLANS[key] = plan
    return plan


def compose(f: Morphism, g: Morphism, a: Matching, b: Matching, c: Matching, scale=1) -> Morphism:
    """``g o f`` for ``f: a -> b`` and ``g: b -> c``."""
    if not f or not g:
        return {}
    return _apply_plan(_vertical_plan(a, b, c), f, g, scale)


def identity(m: Matching) -> Morphism:
    if m[1]:
        raise ValueError("identity is only stored for loop-free matchings")
    return {(0, 0): 1}


def _join(arcs: list[tuple[int, int, object]], glue: dict[int, int], rename: dict[int, int]):
    """Concatenate arcs through glued points.

    ``arcs`` are (p, q, tag); ``glue`` pairs interior points symmetrically.
    Returns (matching, provenance) where provenance lists, for each output arc
    then each output loop, the tag of one constituent arc.
    """
    at: dict[int, list[int]] = {}
    for k, (p, q, _) in enumerate(arcs):
        at.setdefault(p, []).append(k)
        at.setdefault(q, []).append(k)
    used = [False] * len(arcs)
    out_arcs = []
    for p in sorted(pt for pt in at if pt not in glue):
        k = at[p][0]
        if used[k]:
            continue
        start, point = p, p
        first_tag = arcs[k][2]
        while True:
            used[k] = True
            x, y, _ = arcs[k]
            point = y if point == x else x
            if point not in glue:
                break
            point = glue[point]
            k = at[point][0]
        a, b = rename.get(start, start), rename.get(point, point)
        out_arcs.append(((min(a, b), max(a, b)), first_tag))
    loops = []
    for k0 in range(len(arcs)):
        if used[k0]:
            continue
        loops.append(arcs[k0][2])
        k = k0
        point = arcs[k0][0]
        while not used[k]:
            used[k] = True
            x, y, _ = arcs[k]
            point = y if point == x else x
            point = glue[point]
            k = at[point][0]
    out_arcs.sort()
    matching = (tuple(a for a, _ in out_arcs), len(loops))
    provenance = [t for _, t in out_arcs] + loops
    return matching, provenance


class _HorizontalGluer:
    """Glue old-tangle morphisms to crossing-tangle morphisms for one crossing."""

    def __init__(self, edges: tuple[int, int, int, int], open_points: set[int]):
        self.edges = edges
        # crossing points are -1..-4 for positions a, b, c, d
        self.glue: dict[int, int] = {}
        self.rename: dict[int, int] = {}
        seen: dict[int, int] = {}
        for pos, e in enumerate(edges):
            pt = -(pos + 1)
            if e in open_points:
                self.glue[pt] = e
                self.glue[e] = pt
            elif e in seen:
                self.glue[pt] = seen[e]
                self.glue[seen[e]] = pt
            else:
                seen[e] = pt
                self.rename[pt] = e
        for pt, e in list(self.rename.items()):
            if pt in self.glue:
                del self.rename[pt]
        self.n_glued = len(self.glue) // 2
        a, b, c, d = -1, -2, -3, -4
        self.smoothings: list[Matching] = [
            (tuple(sorted((min(x, y), max(x, y)) for x, y in ((a, b), (c, d)))), 0),
            (tuple(sorted((min(x, y), max(x, y)) for x, y in ((a, d), (b, c)))), 0),
        ]
        self._objects: dict = {}
        self._plans: dict = {}

    def object(self, old: Matching, s: int):
        """Joined matching of an old object with smoothing ``s``, plus
        provenance (tags ('o', k) for old arcs, ('x', k) for crossing arcs)."""
        key = (old, s)
        hit = self._objects.get(key)
        if hit is None:
            arcs = [(p, q, ("o", k)) for k, (p, q) in enumerate(old[0])]
            arcs += [(p, q, ("x", k)) for k, (p, q) in enumerate(self.smoothings[s][0])]
            hit = _join(arcs, self.glue, self.rename)
            self._objects[key] = hit
        return hit

    def plan(self, a1: Matching, b1: Matching, s_src: int, s_tgt: int) -> _Plan:
        key = (a1, b1, s_src, s_tgt)
        plan = self._plans.get(key)
        if plan is not None:
            return plan
        a2, b2 = self.smoothings[s_src], self.smoothings[s_tgt]
        reps1, idx1 = _cycle_data(a1, b1)
        reps2, idx2 = _cycle_data(a2, b2)
        A, prov_a = self.object(a1, s_src)
        B, prov_b = self.object(b1, s_tgt)
        reps3, _ = _cycle_data(A, B)
        uf = _UnionFind()
        for i in range(len(reps1)):
            uf.find((1, i))
        for j in range(len(reps2)):
            uf.find((2, j))
        # which old / crossing circle contains a given point
        def circle_of_point(pt):
            if pt < 0:
                for k, (x, y) in enumerate(a2[0]):
                    if pt in (x, y):
                        return (2, idx2[("a", k)])
            else:
                for k, (x, y) in enumerate(a1[0]):
                    if pt in (x, y):
                        return (1, idx1[("a", k)])
            raise KeyError(pt)

        glued_pairs = [(p, q) for p, q in self.glue.items() if p < q]
        for p, q in glued_pairs:
            uf.union(circle_of_point(p), circle_of_point(q))
        comps: dict = {}
        for i in range(len(reps1)):
            rec = comps.setdefault(uf.find((1, i)), [0, 0, [], 0, 0])
            rec[0] |= 1 << i
            rec[3] += 1
        for j in range(len(reps2)):
            rec = comps.setdefault(uf.find((2, j)), [0, 0, [], 0, 0])
            rec[1] |= 1 << j
            rec[3] += 1
        for p, q in glued_pairs:
            comps[uf.find(circle_of_point(p))][4] += 1

        def node_of(tag, side):
            kind, k = tag
            if kind == "o":
                return (1, idx1[(side, k)])
            return (2, idx2[(side, k)])

        n_arcs_a, n_arcs_b = len(A[0]), len(B[0])
        for o, (kind, k) in enumerate(reps3):
            if kind == "a":
                node = node_of(prov_a[k], "a")
            elif kind == "aL":
                node = node_of(prov_a[n_arcs_a + k], "a")
            elif kind == "b":
                node = node_of(prov_b[k], "b")
            else:
                node = node_of(prov_b[n_arcs_b + k], "b")
            comps[uf.find(node)][2].append(o)
        components = []
        for sel1, sel2, outs, disks, arcs in comps.values():
            genus2 = 2 - (disks - arcs) - len(outs)
            assert genus2 >= 0 and genus2 % 2 == 0, "non-orientable gluing"
            components.append((sel1, sel2, tuple(outs), genus2 // 2))
        plan = _Plan(components)
        self._plans[key] = plan
        return plan


def _cap_cup(m: Matching):
    """Delooping maps for every loop of ``m`` at once.

    Yields (q shift, cap: m -> m', cup: m' -> m) for each of the 2^k summands.
    Dot on a cap sends the summand to shift +1, a dot on the cup to -1.
    """
    k = m[1]
    reps, idx = _cycle_data(m, (m[0], 0))
    loop_bits = [idx[("aL", i)] for i in range(k)]
    reps_up, idx_up = _cycle_data((m[0], 0), m)
    loop_bits_up = [idx_up[("bL", i)] for i in range(k)]
    out = []
    for choice in range(1 << k):
        shift = 0
        cap_mask = cup_mask = 0
        for i in range(k):
            if choice >> i & 1:
                shift += 1
                cap_mask |= 1 << loop_bits[i]
            else:
                shift -= 1
                cup_mask |= 1 << loop_bits_up[i]
        out.append((shift, {(cap_mask, 0): 1}, {(cup_mask, 0): 1}))
    return out


class CobordismComplex:
    """Complex over crossingless tangles; entries are dotted-disk morphisms."""

    def __init__(self):
        self.h: dict[int, int] = {}
        self.q: dict[int, int] = {}
        self.m: dict[int, Matching] = {}
        self.out: dict[int, dict[int, Morphism]] = {}
        self.inn: dict[int, dict[int, Morphism]] = {}
        self._next = 0

    def add(self, h: int, q: int, m: Matching) -> int:
        i = self._next
        self._next += 1
        self.h[i], self.q[i], self.m[i] = h, q, m
        self.out[i], self.inn[i] = {}, {}
        return i

    def add_entry(self, src: int, tgt: int, f: Morphism) -> None:
        if not f:
            return
        cur = self.out[src].get(tgt)
        if cur is None:
            cur = {}
        else:
            cur = dict(cur)
        for k, v in f.items():
            _add_into(cur, k, v)
        if cur:
            self.out[src][tgt] = cur
            self.inn[tgt][src] = cur
        else:
            self.out[src].pop(tgt, None)
            self.inn[tgt].pop(src, None)

    def remove(self, i: int) -> None:
        for y in self.out[i]:
            self.inn[y].pop(i, None)
        for x in self.inn[i]:
            self.out[x].pop(i, None)
        for d in (self.h, self.q, self.m, self.out, self.inn):
            del d[i]

    def __len__(self):
        return len(self.h)

    def _iso_coefficient(self, b: int, a: int):
        if self.m[a] != self.m[b] or self.q[a] != self.q[b]:
            return 0
        return self.out[b][a].get((0, 0), 0)

    def _cancel(self, b: int, a: int, c) -> None:
        ma = self.m[a]
        sources = [(x, f) for x, f in self.inn[a].items() if x != b]
        targets = [(y, g) for y, g in self.out[b].items() if y != a]
        scale = -c if c in (1, -1) else Fraction(-1) / c
        for x, f in sources:
            mx = self.m[x]
            for y, g in targets:
                corr = compose(f, g, mx, ma, self.m[y], scale)
                if corr:
                    self.add_entry(x, y, corr)
        self.remove(a)
        self.remove(b)

    def cancel_isomorphisms(self) -> None:
        changed = True
        while changed:
            changed = False
            for b in sorted(self.h, key=lambda i: (self.h[i], i)):
                if b not in self.h:
                    continue
                best = None
                for a in self.out[b]:
                    c = self._iso_coefficient(b, a)
                    if c:
                        cost = len(self.inn[a])
                        if best is None or cost < best[0]:
                            best = (cost, a, c)
                if best is not None:
                    self._cancel(b, best[1], best[2])
                    changed = True

    def deloop(self) -> None:
        for o in [i for i in self.h if self.m[i][1]]:
            m = self.m[o]
            flat = (m[0], 0)
            pieces = []
            for shift, cap, cup in _cap_cup(m):
                pieces.append((self.add(self.h[o], self.q[o] + shift, flat), cap, cup))
            for x, f in list(self.inn[o].items()):
                for new, cap, _ in pieces:
                    self.add_entry(x, new, compose(f, cap, self.m[x], m, flat))
            for y, g in list(self.out[o].items()):
                for new, _, cup in pieces:
                    self.add_entry(new, y, compose(cup, g, flat, m, self.m[y]))
            self.remove(o)


def _crossing_layout(sign: int):
    """(h, q) of the 0- and 1-smoothing for a crossing of the given sign."""
    if sign > 0:
        return [(0, 1), (1, 2)]
    return [(-1, -2), (0, -1)]


def scan_complex(diagram: PlanarDiagram, order: Iterable[int] | None = None) -> GradedComplex:
    """Reduced complex of ``diagram`` over Q[t], built crossing by crossing."""
    if not diagram.crossings:
        cx = GradedComplex()
        cx.add_generator(0, 1)
        cx.add_generator(0, -1)
        return cx
    order = list(order) if order is not None else scan_order(diagram)
    cur = CobordismComplex()
    cur.add(0, 0, EMPTY)
    open_points: set[int] = set()
    saddle = {(0, 0): 1}
    for ci in order:
        crossing = diagram.crossings[ci]
        gluer = _HorizontalGluer(crossing.edges, open_points)
        layout = _crossing_layout(crossing.sign)
        nxt = CobordismComplex()
        ids: dict[tuple[int, int], int] = {}
        for o in cur.h:
            for s in (0, 1):
                joined, _ = gluer.object(cur.m[o], s)
                hs, qs = layout[s]
                ids[(o, s)] = nxt.add(cur.h[o] + hs, cur.q[o] + qs, joined)
        for o in cur.h:
            mo = cur.m[o]
            for s in (0, 1):
                src = ids[(o, s)]
                for y, f in cur.out[o].items():
                    plan = gluer.plan(mo, cur.m[y], s, s)
                    nxt.add_entry(src, ids[(y, s)], _apply_plan(plan, f, identity(gluer.smoothings[s])))
            sign = -1 if cur.h[o] % 2 else 1
            plan = gluer.plan(mo, mo, 0, 1)
            nxt.add_entry(ids[(o, 0)], ids[(o, 1)], _apply_plan(plan, identity(mo), saddle, sign))
        for e in crossing.edges:
            if e in open_points:
                open_points.remove(e)
            else:
                open_points.add(e)
        # self-glued labels never became open
        for e in crossing.edges:
            if list(crossing.edges).count(e) == 2:
                open_points.discard(e)
        nxt.deloop()
        nxt.cancel_isomorphisms()
        cur = nxt

    cx = GradedComplex()
    index = {}
    for o in sorted(cur.h, key=lambda i: (cur.h[i], cur.q[i], i)):
        assert cur.m[o] == EMPTY
        index[o] = cx.add_generator(cur.h[o], cur.q[o])
    for o in cur.h:
        for y, f in cur.out[o].items():
            for (mask, tp), c in f.items():
                assert mask == 0
                if 4 * tp != cur.q[y] - cur.q[o]:
                    raise AssertionError("inhomogeneous entry in reduced complex")
                cx.add_entry(index[o], index[y], c)
    return cx
