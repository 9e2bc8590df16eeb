"""Khovanov homology, the Rasmussen invariant s, and nu = +-s/2.

Two backends produce the same chain complex over Q[t] up to homotopy:
``reference`` builds the whole cube (budget 12 crossings), ``optimized``
scans crossings with delooping and cancellation (budget 22).  From either
complex, cancelling the t^0 entries gives the rational Khovanov homology, and
splitting off Q[t]/t^k torsion leaves two free generators in homological
degree 0 at q = s - 1 and q = s + 1.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, asdict
from pathlib import Path

from ..diagram import DiagramError, PlanarDiagram, canonical_hash
from ..jones import jones_polynomial
from ..polynomial import LaurentPolynomial
from .complex import GradedComplex
from .cube import cube_complex
from .scanning import scan_complex

REFERENCE_BUDGET = 12
OPTIMIZED_BUDGET = 22
BACKENDS = ("reference", "optimized")


class BudgetExceeded(DiagramError):
    pass


class EngineError(AssertionError):
    """An internal consistency check failed (never expected)."""


def _pick_backend(diagram: PlanarDiagram, backend: str, budget: int | None) -> tuple[str, int]:
    if backend == "auto":
        backend = "optimized"
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    limit = budget if budget is not None else (
        REFERENCE_BUDGET if backend == "reference" else OPTIMIZED_BUDGET
    )
    n = len(diagram.crossings)
    if n > limit:
        raise BudgetExceeded(f"{n} crossings exceed the {backend} budget of {limit}")
    return backend, limit


def chain_complex(diagram: PlanarDiagram, backend: str = "auto", budget: int | None = None,
                  check_d2: bool = False) -> GradedComplex:
    backend, _ = _pick_backend(diagram, backend, budget)
    cx = cube_complex(diagram) if backend == "reference" else scan_complex(diagram)
    if check_d2 and not cx.d_squared_is_zero():
        raise EngineError("d o d != 0")
    return cx


@dataclass
class KhovanovTable:
    dims: dict[tuple[int, int], int]

    def euler_characteristic(self) -> LaurentPolynomial:
        terms: dict[int, int] = {}
        for (h, q), d in self.dims.items():
            terms[q] = terms.get(q, 0) + (-1 if h % 2 else 1) * d
        return LaurentPolynomial(terms)

    def total_rank(self) -> int:
        return sum(self.dims.values())

    def homological_degrees(self) -> list[int]:
        return sorted({h for h, _ in self.dims})

    def rows(self) -> list[tuple[int, int, int]]:
        return sorted((h, q, d) for (h, q), d in self.dims.items())


def jones_from_euler(chi: LaurentPolynomial) -> LaurentPolynomial:
    """Undo chi(q) = (q + 1/q) V(q^-2) to get V in the library variable."""
    v = chi.exact_divide(LaurentPolynomial({1: 1, -1: 1}))
    return v.divide_exponents(2).invert_variable()


def khovanov_homology(diagram: PlanarDiagram, field: str = "Q", backend: str = "auto",
                      budget: int | None = None) -> KhovanovTable:
    """Bigraded Betti numbers over the rationals."""
    if field.upper() not in ("Q", "QQ"):
        raise ValueError("only rational coefficients are supported")
    cx = chain_complex(diagram, backend, budget)
    cx.cancel_units()
    return KhovanovTable(cx.graded_dimensions())


def euler_matches_jones(diagram: PlanarDiagram, **kw) -> bool:
    table = khovanov_homology(diagram, **kw)
    return jones_from_euler(table.euler_characteristic()) == jones_polynomial(diagram)


@dataclass(frozen=True)
class InvariantReport:
    hash: str
    s: int
    nu: int
    q_min: int
    q_max: int
    crossings: int
    seconds: float
    backend: str
    sign: int
    name: str | None = None

    def as_row(self) -> dict:
        return asdict(self)

    def __str__(self):
        return (
            f"knot      {self.name or '-'}\nhash      {self.hash}\ns         {self.s}\n"
            f"nu        {self.nu}\nq_min     {self.q_min}\nq_max     {self.q_max}\n"
            f"crossings {self.crossings}\nbackend   {self.backend}\nseconds   {self.seconds:.3f}"
        )


def _raw_s(diagram: PlanarDiagram, backend: str, budget: int | None, check_d2: bool):
    backend, _ = _pick_backend(diagram, backend, budget)
    start = time.perf_counter()
    cx = chain_complex(diagram, backend, budget, check_d2)
    cx.cancel_units()
    cx.split_free_part()
    free = cx.free_degrees()
    if len(free) != 2 or free[0][0] != 0 or free[1][0] != 0 or free[1][1] - free[0][1] != 2:
        raise EngineError(f"Lee homology should be two classes at h=0, q=s+-1; got {free}")
    q_min, q_max = free[0][1], free[1][1]
    return (q_min + q_max) // 2, q_min, q_max, backend, time.perf_counter() - start


_SIGN: list[int] = []
_SIGN_LOCK = threading.Lock()


def nu_sign() -> int:
    """+1 or -1, fixed once so that nu(positive T(2,3)) = +1."""
    with _SIGN_LOCK:
        if not _SIGN:
            from ..knots import torus_knot

            s, *_ = _raw_s(torus_knot(2, 3), "reference", None, True)
            if s not in (2, -2):
                raise EngineError(f"s(T2,3) = {s}, expected +-2")
            _SIGN.append(1 if s > 0 else -1)
        return _SIGN[0]


class InvariantCache:
    """Thread-safe map canonical_hash -> (s, q_min, q_max, backend, seconds).

    With a path, earlier records are loaded and new ones appended as
    ``hash,s,nu,q_min,q_max,backend,seconds`` lines.  Equal keys always carry
    equal values, so concurrent writers cannot disagree.
    """

    def __init__(self, path: str | Path | None = None):
        self._lock = threading.Lock()
        self._data: dict[str, tuple] = {}
        self.path = Path(path) if path else None
        if self.path and self.path.exists():
            for line in self.path.read_text().splitlines():
                parts = line.strip().split(",")
                if len(parts) != 7 or parts[0] == "hash":
                    continue
                h, s, _nu, lo, hi, backend, secs = parts
                self._data[h] = (int(s), int(lo), int(hi), backend, float(secs))

    def get(self, key: str):
        with self._lock:
            return self._data.get(key)

    def put(self, key: str, value: tuple) -> None:
        with self._lock:
            fresh = key not in self._data
            self._data[key] = value
            if fresh and self.path:
                s, lo, hi, backend, secs = value
                new_file = not self.path.exists()
                with self.path.open("a") as fh:
                    if new_file:
                        fh.write("hash,s,nu,q_min,q_max,backend,seconds\n")
                    fh.write(f"{key},{s},{nu_sign() * s // 2},{lo},{hi},{backend},{secs:.4f}\n")

    def __len__(self):
        with self._lock:
            return len(self._data)

    def __contains__(self, key):
        with self._lock:
            return key in self._data


DEFAULT_CACHE = InvariantCache()


def s_invariant(diagram: PlanarDiagram, backend: str = "auto", budget: int | None = None,
                cache: InvariantCache | None = DEFAULT_CACHE, check_d2: bool = False) -> InvariantReport:
    _pick_backend(diagram, backend, budget)
    sign = nu_sign()
    key = canonical_hash(diagram)
    hit = cache.get(key) if cache is not None else None
    if hit is None or (backend != "auto" and hit[3] != backend):
        hit = _raw_s(diagram, backend, budget, check_d2)
        if cache is not None:
            cache.put(key, hit)
    s, q_min, q_max, used, secs = hit
    if s % 2:
        raise EngineError(f"s = {s} is odd")
    return InvariantReport(key, s, sign * s // 2, q_min, q_max, len(diagram.crossings),
                           secs, used, sign, diagram.name)


def nu(diagram: PlanarDiagram, **kw) -> int:
    return s_invariant(diagram, **kw).nu
