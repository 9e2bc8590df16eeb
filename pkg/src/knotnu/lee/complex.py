"""Graded chain complexes of free Q[t]-modules with monomial differentials.

Generators carry a homological degree ``h`` and a quantum degree ``q``; the
deformation parameter ``t`` has quantum degree -4 and the differential has
degree 0, so an entry from generator ``i`` to generator ``j`` is
``c * t^k`` with ``k = (q_j - q_i) / 4``.  Only ``c`` is stored.

Setting ``t = 0`` gives Khovanov's complex, ``t = 1`` gives Lee's filtered
complex.  Cancelling every unit entry (``k = 0``) leaves a complex whose
generators are a basis of rational Khovanov homology; cancelling the
remaining entries in order of increasing ``k`` splits off torsion summands
and leaves the free part, whose two generators sit in degree ``h = 0`` at
``q = s - 1`` and ``q = s + 1``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction


class GradedComplex:
    def __init__(self):
        self.h: list[int] = []
        self.q: list[int] = []
        self.out: list[dict[int, object]] = []
        self.inn: list[dict[int, object]] = []
        self.alive: set[int] = set()
        self.torsion: Counter = Counter()

    def add_generator(self, h: int, q: int) -> int:
        i = len(self.h)
        self.h.append(h)
        self.q.append(q)
        self.out.append({})
        self.inn.append({})
        self.alive.add(i)
        return i

    def add_entry(self, src: int, tgt: int, coef) -> None:
        if not coef:
            return
        if self.h[tgt] != self.h[src] + 1:
            raise ValueError("differential must raise homological degree by one")
        if (self.q[tgt] - self.q[src]) % 4 or self.q[tgt] < self.q[src]:
            raise ValueError(
                f"entry {src}->{tgt} has q {self.q[src]} -> {self.q[tgt]}: "
                "not a non-negative power of t"
            )
        v = self.out[src].get(tgt, 0) + coef
        if v:
            self.out[src][tgt] = v
            self.inn[tgt][src] = v
        else:
            self.out[src].pop(tgt, None)
            self.inn[tgt].pop(src, None)

    def __len__(self) -> int:
        return len(self.alive)

    def entry_count(self) -> int:
        return sum(len(self.out[i]) for i in self.alive)

    def _cancel(self, b: int, a: int) -> None:
        """Split off the summand ``b -> a`` (Gaussian elimination)."""
        c = self.out[b][a]
        sources = [(x, f) for x, f in self.inn[a].items() if x != b]
        targets = [(y, g) for y, g in self.out[b].items() if y != a]
        unit = c == 1 or c == -1
        for x, f in sources:
            row = self.out[x]
            fc = f * c if unit else Fraction(f) / c
            for y, g in targets:
                v = row.get(y, 0) - fc * g
                if v:
                    row[y] = v
                    self.inn[y][x] = v
                else:
                    row.pop(y, None)
                    self.inn[y].pop(x, None)
        for v in (a, b):
            for y in self.out[v]:
                self.inn[y].pop(v, None)
            for x in self.inn[v]:
                self.out[x].pop(v, None)
            self.out[v] = {}
            self.inn[v] = {}
            self.alive.discard(v)

    def cancel_units(self) -> None:
        """Cancel every entry of t-degree zero."""
        pending = sorted(self.alive, key=lambda i: (self.h[i], self.q[i], i))
        while pending:
            again = []
            for b in pending:
                if b not in self.alive:
                    continue
                qb = self.q[b]
                best, cost = None, None
                for a in self.out[b]:
                    if self.q[a] == qb:
                        k = len(self.inn[a])
                        if cost is None or k < cost:
                            best, cost = a, k
                if best is not None:
                    self._cancel(b, best)
                    again.append(b)
            # sources whose unit targets were created by fill-in get another pass
            pending = [
                i for i in sorted(self.alive, key=lambda i: (self.h[i], self.q[i], i))
                if any(self.q[a] == self.q[i] for a in self.out[i])
            ]

    def has_unit_entries(self) -> bool:
        return any(self.q[a] == self.q[b] for b in self.alive for a in self.out[b])

    def graded_dimensions(self) -> dict[tuple[int, int], int]:
        """(h, q) -> number of surviving generators."""
        return dict(Counter((self.h[i], self.q[i]) for i in self.alive))

    def split_free_part(self) -> None:
        """Cancel all remaining entries by increasing t-power.

        The globally smallest power divides every entry in its row and
        column, so each step splits off a ``Q[t]/t^k`` torsion summand.
        """
        while True:
            best = None
            for b in self.alive:
                for a in self.out[b]:
                    k = (self.q[a] - self.q[b]) // 4
                    if best is None or k < best[0]:
                        best = (k, b, a)
                        if k == 0:
                            break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                return
            k, b, a = best
            if k:
                self.torsion[(self.h[a], self.q[a], k)] += 1
            self._cancel(b, a)

    def free_degrees(self) -> list[tuple[int, int]]:
        return sorted((self.h[i], self.q[i]) for i in self.alive)

    def d_squared_is_zero(self) -> bool:
        for x in self.alive:
            acc: dict[int, object] = {}
            for y, f in self.out[x].items():
                for z, g in self.out[y].items():
                    acc[z] = acc.get(z, 0) + f * g
            if any(acc.values()):
                return False
        return True
