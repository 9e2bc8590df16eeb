"""Command line entry point: ``knotnu <verb> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .alexander import alexander_polynomial
from .diagram import DiagramError
from .jones import jones_polynomial
from .knots import knot_by_name, load_knot
from .lee.engine import OPTIMIZED_BUDGET, InvariantCache, s_invariant
from .satellite import ClaspSign, DoubleSpec, twisted_double
from .seifert import (
    FIGURE_EIGHT_MATRIX,
    SeifertError,
    SeifertMatrix,
    alexander,
    band_trade_sequence,
    boundary_diagram,
    insert_trefoil,
    parse_bands,
    realize_matrix,
    seifert_matrix,
    signature,
)
from .tb import check_tb_duality, load_front, tb_lower_bound, tb_of_front


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cache(args):
    return InvariantCache(args.cache) if args.cache else InvariantCache()


def cmd_s(args) -> int:
    d = load_knot(args.knot)
    rep = s_invariant(d, backend=args.backend, budget=args.budget, cache=_cache(args))
    if args.format == "csv":
        _write(args, "hash,s,nu,q_min,q_max,crossings,backend,seconds\n"
               f"{rep.hash},{rep.s},{rep.nu},{rep.q_min},{rep.q_max},{rep.crossings},"
               f"{rep.backend},{rep.seconds:.3f}\n")
    else:
        extra = ""
        if len(d.crossings) <= 24:
            extra = (f"\njones     {jones_polynomial(d).to_string('q')}"
                     f"\nalexander {alexander_polynomial(d).to_string('t')}")
        _write(args, f"{rep}{extra}\n")
    return 0


def cmd_double(args) -> int:
    k = load_knot(args.knot)
    d = twisted_double(DoubleSpec(k, args.t, ClaspSign.parse(args.clasp)))
    _write(args, f"# {d.name}: {len(d.crossings)} crossings\n{d.pd_string()}\n")
    return 0


def cmd_scan(args) -> int:
    scan = harness.scan_doubles(args.knot, range(args.t_from, args.t_to + 1), args.clasp,
                                budget=args.budget or OPTIMIZED_BUDGET, cache=_cache(args))
    _write(args, harness.emit_table(scan, args.format))
    return 0 if scan.monotone and scan.bounded else 1


def _bands_or_demo(path: str | None):
    if path:
        return parse_bands(Path(path).read_text())
    return realize_matrix(FIGURE_EIGHT_MATRIX)


def cmd_verify(args) -> int:
    budget = args.budget or OPTIMIZED_BUDGET
    cache = _cache(args)
    reports = []
    if args.what == "thm1":
        knots = [args.knot] if args.knot else ["unknot", "T2,3", "-T2,3", "4_1"]
        ts = [args.t] if args.t is not None else range(-3, 4)
        for k in knots:
            for t in ts:
                d = twisted_double(DoubleSpec(knot_by_name(k), t))
                if len(d.crossings) > budget:
                    continue
                reports.append(harness.check_theorem1(k, t, budget, cache))
    elif args.what == "thm2":
        knots = [args.knot] if args.knot else ["unknot", "T2,3"]
        for k in knots:
            reports.append(harness.check_theorem2_bounds(k, args.clasp, budget, cache))
    elif args.what == "cor5":
        import random

        rng = random.Random(args.seed)
        bp = _bands_or_demo(args.bands)
        for _ in range(args.samples):
            i = rng.randrange(len(bp.bands))
            mod = insert_trefoil(bp, i, rng.choice((1, -1)))
            try:
                reports.append(harness.check_corollary_band(bp, mod, budget, cache))
            except DiagramError as exc:
                print(f"skipped band {i}: {exc}", file=sys.stderr)
    else:
        matrix = FIGURE_EIGHT_MATRIX if not args.matrix else _parse_matrix(args.matrix)
        reports.append(harness.demo_realization(matrix, None, budget, cache))
    ok = all(r.verdict for r in reports)
    for r in reports:
        print(r)
    print(f"{args.what}: {'PASS' if ok else 'FAIL'} ({len(reports)} reports)")
    return 0 if ok and reports else 1


def cmd_tb(args) -> int:
    if args.front:
        f = load_front(args.front)
        d = f.diagram()
        print(f"tb {tb_of_front(f)}  writhe {d.writhe()}  right cusps {f.right_cusps}")
        print(d.pd_string())
        return 0
    cert = tb_lower_bound(args.knot)
    dual = check_tb_duality(args.knot)
    print(f"{cert.knot}: tb >= {cert.tb} ({cert.bound})")
    print(f"TB(K) + TB(-K) = {dual.tb + dual.tb_inverse} ({'ok' if dual.holds else 'violated'})")
    print(cert.front.to_text(), end="")
    return 0 if dual.holds else 1


def _parse_matrix(text: str) -> SeifertMatrix:
    rows = [[int(x) for x in r.replace(",", " ").split()] for r in text.split(";") if r.strip()]
    return SeifertMatrix(tuple(tuple(r) for r in rows))


def _describe(bp, budget, cache) -> str:
    d = boundary_diagram(bp)
    a = seifert_matrix(bp)
    lines = [bp.to_text().rstrip(), f"# seifert matrix {a}", f"# signature {signature(a)}",
             f"# alexander {alexander(a).to_string('t')}", f"# boundary {len(d.crossings)} crossings"]
    if len(d.crossings) <= budget:
        lines.append(f"# nu {s_invariant(d, budget=budget, cache=cache).nu}")
    return "\n".join(lines) + "\n"


def cmd_realize(args) -> int:
    budget = args.budget or OPTIMIZED_BUDGET
    bp = parse_bands(Path(args.bands).read_text()) if args.bands else realize_matrix(_parse_matrix(args.matrix))
    text = _describe(bp, budget, _cache(args))
    if args.pd:
        text += boundary_diagram(bp).pd_string() + "\n"
    _write(args, text)
    return 0


def cmd_trade(args) -> int:
    budget = args.budget or OPTIMIZED_BUDGET
    src = parse_bands(Path(args.source).read_text())
    tgt = parse_bands(Path(args.target).read_text())
    seq = band_trade_sequence(src, tgt)
    cache = _cache(args)
    for n, bp in enumerate(seq):
        print(f"## step {n}")
        print(_describe(bp, budget, cache), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="crossing budget")
    common.add_argument("--cache", default=None, help="append-only invariant cache file")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--format", choices=("csv", "svg", "text"), default="text")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="knotnu", description="Rasmussen-s based nu, twisted doubles, "
                                "band presentations and front TB numbers.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("s", parents=[common], help="s and nu of a knot")
    s.add_argument("--knot", required=True, help="PD file or built-in name")
    s.add_argument("--backend", choices=("auto", "reference", "optimized"), default="auto")
    s.set_defaults(func=cmd_s)

    d = sub.add_parser("double", parents=[common], help="PD code of D+-(K,t)")
    d.add_argument("--knot", required=True)
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--clasp", default="+", choices=("+", "-"))
    d.set_defaults(func=cmd_double)

    sc = sub.add_parser("scan", parents=[common], help="nu(D(K,t)) over a range of t")
    sc.add_argument("--knot", required=True)
    sc.add_argument("--from", dest="t_from", type=int, required=True)
    sc.add_argument("--to", dest="t_to", type=int, required=True)
    sc.add_argument("--clasp", default="+", choices=("+", "-"))
    sc.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", parents=[common], help="theorem checks")
    v.add_argument("what", choices=("thm1", "thm2", "cor5", "thm3"))
    v.add_argument("--knot", default=None)
    v.add_argument("--t", type=int, default=None)
    v.add_argument("--clasp", default="+", choices=("+", "-"))
    v.add_argument("--bands", default=None, help="band file for cor5")
    v.add_argument("--samples", type=int, default=4)
    v.add_argument("--matrix", default=None, help="rows separated by ';' for thm3")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tb", parents=[common], help="tb of a front or stored bound for a knot")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--front")
    g.add_argument("--knot")
    t.set_defaults(func=cmd_tb)

    r = sub.add_parser("realize", parents=[common], help="surface for a Seifert matrix or band file")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--bands")
    r.add_argument("--pd", action="store_true", help="also print the boundary PD code")
    r.set_defaults(func=cmd_realize)

    tr = sub.add_parser("trade", parents=[common], help="band trading sequence between two surfaces")
    tr.add_argument("--source", required=True)
    tr.add_argument("--target", required=True)
    tr.set_defaults(func=cmd_trade)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DiagramError, SeifertError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
