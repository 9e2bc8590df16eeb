"""Band presentations of Seifert surfaces and their Seifert forms.

A genus-g surface is a disk with 2g bands attached along its top edge in
the order b0 b1 b0 b1 b2 b3 b2 b3 ...  A band record carries its framing and
the knot tied into it; ``clasps[i][j]`` (symmetric) counts signed clasps
between bands i and j.  In the band basis the Seifert form is

    A = diag(framings) + B + C

with B the standard plumbing block [[0, 1], [0, 0]] on each pair and C the
clasp matrix.  An optional unimodular ``basis`` P re-expresses the form as
P^T A P (another basis of H1 of the same surface), which is how matrices
whose antisymmetric part is not in standard form are realized.

The boundary is rendered with strips (pairs of parallel strands) that run
upward from the disk: framing twists and tied knots first, clasps next,
then the plumbing crossing of each pair, then caps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .alexander import determinant, symmetrize
from .diagram import DiagramError, PlanarDiagram, canonical_hash, connected_sum
from .polynomial import LaurentPolynomial
from .portgraph import DiagramBuilder
from .satellite import knotted_strip, twist_strip

Matrix = tuple[tuple[int, ...], ...]


class SeifertError(ValueError):
    pass


def _mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mul(a, b) -> Matrix:
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][x] * b[x][j] for x in range(m)) for j in range(k)) for i in range(n))


def _transpose(a) -> Matrix:
    return tuple(zip(*a)) if a else ()


def _det(a) -> Fraction:
    m = [[Fraction(x) for x in r] for r in a]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if m[r][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return det


def _inverse(a) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for k in range(n):
        p = next(r for r in range(k, n) if m[r][k])
        m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        m[k] = [x / piv for x in m[k]]
        for r in range(n):
            if r != k and m[r][k]:
                f = m[r][k]
                m[r] = [x - f * y for x, y in zip(m[r], m[k])]
    out = [[m[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for r in out for x in r):
        raise SeifertError("basis matrix is not unimodular")
    return _mat(out)


@dataclass(frozen=True)
class SeifertMatrix:
    entries: Matrix

    def __post_init__(self):
        rows = _mat(self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows) or n % 2:
            raise SeifertError("Seifert matrix must be square of even size")
        if abs(_det(self.antisymmetric())) != 1:
            raise SeifertError("A - A^T is not unimodular")

    @property
    def size(self) -> int:
        return len(self.entries)

    def antisymmetric(self) -> Matrix:
        a = self.entries
        return tuple(tuple(a[i][j] - a[j][i] for j in range(len(a))) for i in range(len(a)))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


UNKNOT = PlanarDiagram.unknot()


@dataclass(frozen=True)
class Band:
    framing: int
    knot: PlanarDiagram = UNKNOT
    knot_name: str = "unknot"

    def same_as(self, other: "Band") -> bool:
        return self.framing == other.framing and canonical_hash(self.knot) == canonical_hash(other.knot)


@dataclass(frozen=True)
class BandPresentation:
    bands: tuple[Band, ...]
    clasps: Matrix = ()
    basis: Matrix = ()

    def __post_init__(self):
        n = len(self.bands)
        if n % 2:
            raise SeifertError("a knot needs an even number of bands")
        clasps = _mat(self.clasps) if self.clasps else tuple((0,) * n for _ in range(n))
        if len(clasps) != n or any(len(r) != n for r in clasps):
            raise SeifertError("clasp matrix has the wrong size")
        for i in range(n):
            if clasps[i][i]:
                raise SeifertError("a band cannot clasp itself")
            for j in range(n):
                if clasps[i][j] != clasps[j][i]:
                    raise SeifertError("clasp matrix must be symmetric")
        basis = _mat(self.basis) if self.basis else _identity(n)
        if abs(_det(basis)) != 1:
            raise SeifertError("basis matrix is not unimodular")
        object.__setattr__(self, "bands", tuple(self.bands))
        object.__setattr__(self, "clasps", clasps)
        object.__setattr__(self, "basis", basis)

    @property
    def genus(self) -> int:
        return len(self.bands) // 2

    def band_matrix(self) -> Matrix:
        """Seifert form in the band basis (before ``basis``)."""
        n = len(self.bands)
        a = [[self.clasps[i][j] for j in range(n)] for i in range(n)]
        for i, band in enumerate(self.bands):
            a[i][i] = band.framing
        for k in range(0, n, 2):
            a[k][k + 1] += 1
        return _mat(a)

    def with_band(self, index: int, band: Band) -> "BandPresentation":
        if not 0 <= index < len(self.bands):
            raise IndexError(f"band index {index} out of range")
        bands = list(self.bands)
        bands[index] = band
        return replace(self, bands=tuple(bands))

    def to_text(self) -> str:
        lines = [f"B{i} framing={b.framing} knot={b.knot_name}" for i, b in enumerate(self.bands)]
        n = len(self.bands)
        for i in range(n):
            for j in range(i + 1, n):
                if self.clasps[i][j]:
                    lines.append(f"C {i} {j} {self.clasps[i][j]}")
        if self.basis != _identity(n):
            lines += ["P " + " ".join(map(str, r)) for r in self.basis]
        return "\n".join(lines) + "\n"


def parse_bands(text: str) -> BandPresentation:
    """Read ``B<i> framing=<int> knot=<name>``, ``C i j count`` and optional
    ``P`` basis rows.  Knot names are resolved by :func:`knotnu.knots.load_knot`."""
    from .knots import load_knot

    bands: dict[int, Band] = {}
    clasp_lines = []
    basis = []
    for raw in text.splitlines():
        # comments start with '#' at the line start or after whitespace;
        # knot names may contain '#' for connected sums
        line = re.split(r"(?:^|\s)#", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head.startswith("B") and head[1:].isdigit():
            fields = dict(item.split("=", 1) for item in rest)
            name = fields.get("knot", "unknot")
            try:
                framing = int(fields["framing"])
            except (KeyError, ValueError):
                raise SeifertError(f"bad band line: {raw!r}") from None
            bands[int(head[1:])] = Band(framing, load_knot(name), name)
        elif head == "C" and len(rest) == 3:
            clasp_lines.append(tuple(int(x) for x in rest))
        elif head == "P":
            basis.append([int(x) for x in rest])
        else:
            raise SeifertError(f"unrecognised line: {raw!r}")
    if sorted(bands) != list(range(len(bands))):
        raise SeifertError("bands must be numbered 0..n-1")
    n = len(bands)
    clasps = [[0] * n for _ in range(n)]
    for i, j, c in clasp_lines:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise SeifertError(f"bad clasp line C {i} {j} {c}")
        clasps[i][j] += c
        clasps[j][i] += c
    return BandPresentation(tuple(bands[i] for i in range(n)), _mat(clasps), _mat(basis) if basis else ())


def seifert_matrix(bp: BandPresentation) -> SeifertMatrix:
    p = bp.basis
    return SeifertMatrix(_mul(_mul(_transpose(p), bp.band_matrix()), p))


def _symplectic_basis(m: Matrix) -> Matrix:
    """Rows Q with Q M Q^T the standard block form [[0,1],[-1,0]]^g."""
    n = len(m)

    def form(x, y):
        return sum(x[i] * m[i][j] * y[j] for i in range(n) for j in range(n))

    pool = [list(r) for r in _identity(n)]
    out = []
    while pool:
        v = pool.pop(0)
        # Euclid on the pool so that exactly one vector pairs with v
        while True:
            live = [i for i, w in enumerate(pool) if form(v, w)]
            if not live:
                raise SeifertError("A - A^T is not unimodular")
            if len(live) == 1:
                break
            live.sort(key=lambda i: abs(form(v, pool[i])))
            i, j = live[0], live[1]
            f = form(v, pool[j]) // form(v, pool[i])
            pool[j] = [a - f * b for a, b in zip(pool[j], pool[i])]
        w = pool.pop(live[0])
        g = form(v, w)
        if abs(g) != 1:
            raise SeifertError("A - A^T is not unimodular")
        if g < 0:
            w = [-x for x in w]
        for k, u in enumerate(pool):
            a, b = form(u, w), form(u, v)
            pool[k] = [x - a * y + b * z for x, y, z in zip(u, v, w)]
        out += [v, w]
    return _mat(out)


def realize_matrix(a: SeifertMatrix | Sequence[Sequence[int]]) -> BandPresentation:
    """Unknotted bands whose Seifert form is exactly ``a``."""
    if not isinstance(a, SeifertMatrix):
        a = SeifertMatrix(_mat(a))
    n = a.size
    if n == 0:
        return BandPresentation(())
    q = _symplectic_basis(a.antisymmetric())
    model = _mul(_mul(q, a.entries), _transpose(q))
    p = _transpose(_inverse(q))
    bands = tuple(Band(model[i][i]) for i in range(n))
    clasps = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = model[j][i]
            clasps[i][j] = clasps[j][i] = c
    bp = BandPresentation(bands, _mat(clasps), p)
    assert seifert_matrix(bp) == a, "realization does not reproduce the matrix"
    return bp


def insert_trefoil(bp: BandPresentation, index: int, handedness: int = 1) -> BandPresentation:
    """Tie a trefoil into band ``index`` keeping its framing, hence the form."""
    from .knots import knot_by_name

    if not 0 <= index < len(bp.bands):
        raise IndexError(f"band index {index} out of range")
    if handedness not in (1, -1):
        raise ValueError("handedness must be +1 or -1")
    band = bp.bands[index]
    name = "T2,3" if handedness > 0 else "-T2,3"
    t = knot_by_name(name)
    knot = t if not band.knot.crossings else connected_sum(band.knot, t)
    label = name if band.knot_name == "unknot" else f"{band.knot_name}#{name}"
    return bp.with_band(index, Band(band.framing, knot, label))


def band_modify(bp: BandPresentation, index: int, new_band: Band) -> BandPresentation:
    return bp.with_band(index, new_band)


def band_trade_sequence(source: BandPresentation, target: BandPresentation) -> list[BandPresentation]:
    """Replace the bands of ``source`` by those of ``target`` one at a time.

    Each step swaps in one band record together with its clasp row and
    column (the clasp correction), so every step is a single band
    modification.  The list has one entry per differing band plus the
    source.
    """
    if seifert_matrix(source) != seifert_matrix(target):
        raise SeifertError("source and target have different Seifert matrices")
    if source.basis != target.basis or len(source.bands) != len(target.bands):
        raise SeifertError("source and target must use the same band basis")
    out = [source]
    cur = source
    n = len(source.bands)
    for i in range(n):
        same_clasps = all(cur.clasps[i][j] == target.clasps[i][j] for j in range(n))
        if cur.bands[i].same_as(target.bands[i]) and same_clasps:
            continue
        clasps = [list(r) for r in cur.clasps]
        for j in range(n):
            clasps[i][j] = clasps[j][i] = target.clasps[i][j]
        bands = list(cur.bands)
        bands[i] = target.bands[i]
        cur = BandPresentation(tuple(bands), _mat(clasps), cur.basis)
        out.append(cur)
    return out


def boundary_crossings(bp: BandPresentation) -> int:
    """Crossing count of :func:`boundary_diagram` without building it."""
    total = 0
    for b in bp.bands:
        total += 4 * len(b.knot.crossings) + 2 * abs(b.framing - b.knot.writhe())
    total += 4 * bp.genus
    n = len(bp.bands)
    order = _feet(bp.genus)
    first = {band: order.index(band) for band in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            c = bp.clasps[i][j]
            if c:
                gap = abs(first[j] - first[i]) - 1
                total += abs(c) * (8 + 8 * gap)
    return total


def _feet(g: int) -> list[int]:
    order = []
    for k in range(g):
        order += [2 * k, 2 * k + 1, 2 * k, 2 * k + 1]
    return order


class _Strips:
    """Upward strips; each entry is [band, left end, right end]."""

    def __init__(self, b: DiagramBuilder, bands: list[int]):
        self.b = b
        self.s = []
        lows = []
        for band in bands:
            ll, lu = b.wire()
            rl, ru = b.wire()
            self.s.append([band, lu, ru])
            lows.append((ll, rl))
        # the disk: adjacent feet joined below, outermost ends joined around
        for (_, r), (l2, _) in zip(lows, lows[1:]):
            b.connect(r, l2)
        b.connect(lows[0][0], lows[-1][1])

    def cross(self, i: int, left_over: bool) -> None:
        """Swap strips i and i+1 (4 crossings)."""
        b = self.b
        axis = 1 if left_over else 0  # SW-NE strand is the left strip
        A, B = self.s[i], self.s[i + 1]
        x1 = b.crossing(axis)
        x2 = b.crossing(axis)
        x3 = b.crossing(axis)
        x4 = b.crossing(axis)
        SW, SE, NE, NW = 0, 1, 2, 3
        b.connect(A[2], x1[SW])
        b.connect(B[1], x1[SE])
        b.connect(x1[NE], x2[SW])
        b.connect(B[2], x2[SE])
        b.connect(A[1], x3[SW])
        b.connect(x1[NW], x3[SE])
        b.connect(x3[NE], x4[SW])
        b.connect(x2[NW], x4[SE])
        self.s[i] = [B[0], x3[NW], x4[NW]]
        self.s[i + 1] = [A[0], x4[NE], x2[NE]]

    def cap(self, i: int) -> None:
        A, B = self.s[i], self.s[i + 1]
        assert A[0] == B[0]
        self.b.connect(A[2], B[1])
        self.b.connect(A[1], B[2])
        del self.s[i:i + 2]


# Over/under choice of the first pass of a clasp; pinned by the Alexander
# polynomial check in the tests.
_CLASP_LEFT_OVER = False


def boundary_diagram(bp: BandPresentation, budget: int | None = None) -> PlanarDiagram:
    if budget is not None and boundary_crossings(bp) > budget:
        raise DiagramError(f"{boundary_crossings(bp)} crossings exceed the budget of {budget}")
    if not bp.bands:
        return PlanarDiagram.unknot()
    b = DiagramBuilder()
    order = _feet(bp.genus)
    st = _Strips(b, order)
    for band, rec in enumerate(bp.bands):
        pos = order.index(band)
        strip = st.s[pos]
        l, r = knotted_strip(b, strip[1], strip[2], rec.knot)
        l, r = twist_strip(b, l, r, rec.framing - rec.knot.writhe())
        st.s[pos] = [band, l, r]
    n = len(bp.bands)
    for i in range(n):
        for j in range(i + 1, n):
            c = bp.clasps[i][j]
            for _ in range(abs(c)):
                pi = next(k for k, s in enumerate(st.s) if s[0] == i)
                pj = next(k for k, s in enumerate(st.s) if s[0] == j)
                lo, hi = min(pi, pj), max(pi, pj)
                # carry the left strip over everything up to its partner
                for k in range(lo, hi - 1):
                    st.cross(k, True)
                k = hi - 1
                # over on the way there, under on the way back: the
                # second pass has the strips swapped, so the same flag
                first = _CLASP_LEFT_OVER == (c > 0)
                st.cross(k, first)
                st.cross(k, first)
                for k in range(hi - 2, lo - 1, -1):
                    st.cross(k, False)
    for _ in range(bp.genus):
        # the leftmost pair: b' crosses over b so it reads b b b' b', then
        # both arches close and the next pair moves to the front
        st.cross(1, True)
        st.cap(0)
        st.cap(0)
    assert not st.s
    pg = b.port_graph()
    if not pg.is_planar():
        raise AssertionError("rendered boundary is not planar")
    return pg.to_diagram(f"dS(g={bp.genus})").relabeled(1)


def signature(a: SeifertMatrix | Sequence[Sequence[int]]) -> int:
    """Signature of A + A^T by symmetric elimination over the rationals."""
    rows = a.entries if isinstance(a, SeifertMatrix) else _mat(a)
    n = len(rows)
    m = [[Fraction(rows[i][j] + rows[j][i]) for j in range(n)] for i in range(n)]
    sig = 0
    k = 0
    while k < n:
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j]), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for r in m:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j]), None)
                if j is None:
                    k += 1
                    continue
                # add row/column j to k: new pivot 2 m[k][j]
                for c in range(n):
                    m[k][c] += m[j][c]
                for r in range(n):
                    m[r][k] += m[r][j]
        piv = m[k][k]
        sig += 1 if piv > 0 else -1
        for r in range(k + 1, n):
            f = m[r][k] / piv
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
                for c in range(k, n):
                    m[c][r] = m[r][c]
        k += 1
    return sig


def alexander(a: SeifertMatrix | Sequence[Sequence[int]]) -> LaurentPolynomial:
    """det(A - t A^T), symmetric with positive constant term."""
    rows = a.entries if isinstance(a, SeifertMatrix) else _mat(a)
    n = len(rows)
    t = LaurentPolynomial.monomial(1)
    mat = [
        [LaurentPolynomial({0: rows[i][j]}) - t * LaurentPolynomial({0: rows[j][i]}) for j in range(n)]
        for i in range(n)
    ]
    return symmetrize(determinant(mat))


def genus_of(bp: BandPresentation) -> int:
    return bp.genus


def double_presentation(k: PlanarDiagram, t: int, clasp: int = 1, name: str | None = None) -> BandPresentation:
    """Surface of D+(K,t) (clasp +1) or D-(K,t): a band along K with framing
    t plumbed to an unknotted band with framing -clasp."""
    return BandPresentation((Band(t, k, name or k.name or "K"), Band(-clasp)))


FIGURE_EIGHT_MATRIX = SeifertMatrix(((1, 1), (0, -1)))
TREFOIL_MATRIX = SeifertMatrix(((-1, 1), (0, -1)))
