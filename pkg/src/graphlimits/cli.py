"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 budget or size guard, 4 internal
check failure.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .census import census, census_uncolored, tv_distance
from .coloring import misra_gries
from .errors import GraphLimitsError, InvalidInput
from .generators import generate_family
from .harness import SequenceSpec, run_convergence, run_ids, run_theorem2
from .io import (
    dump_json,
    format_coloring,
    format_graph,
    format_spectrum,
    read_census,
    read_coloring,
    read_graph,
)
from .isoperimetry import (
    DEFAULT_BUDGET,
    EnumerationStats,
    cheeger_exact,
    cheeger_sweep,
    enumerate_good_sets,
    isoperimetry_report,
    pack_exact,
)
from .spectral import ids_histogram, moment_from_census, moment_global, s_fraction, spectrum

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_CHECK = 0, 2, 3, 4


class CheckFailed(Exception):
    pass


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list]) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _load(args):
    g, mapping = read_graph(args.graph, remap=args.remap)
    if getattr(args, "coloring", None):
        col = read_coloring(args.coloring, g)
    else:
        col = misra_gries(g)
    return g, col, mapping


def _need_json(args) -> None:
    if args.format != "json":
        raise InvalidInput(f"--format {args.format} is not supported by '{args.command}'")


def cmd_gen(args) -> int:
    g, col = generate_family(args.family, args.size, args.d, args.seed)
    _emit(args, format_graph(g, f"{args.family} size={args.size} seed={args.seed}"))
    if args.coloring_out:
        Path(args.coloring_out).write_text(format_coloring(g, col))
    return EXIT_OK


def cmd_color(args) -> int:
    g, col, _ = _load(args)
    _emit(args, format_coloring(g, col))
    return EXIT_OK


def cmd_census(args) -> int:
    _need_json(args)
    g, col, mapping = _load(args)
    c = census_uncolored(g, args.r) if args.uncolored else census(g, col, args.r, workers=args.workers)
    if sum(c.counts.values()) != g.n:
        raise CheckFailed("census counts do not sum to n")
    obj = c.to_json()
    if mapping is not None:
        obj["vertex_map"] = mapping
    _emit(args, dump_json(obj))
    return EXIT_OK


def cmd_tv(args) -> int:
    _need_json(args)
    a, b = read_census(args.census_a), read_census(args.census_b)
    tv = tv_distance(a, b)
    _emit(args, dump_json({"tv": str(tv), "tv_float": float(tv)}))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g, _, _ = _load(args)
    m = spectrum(g, args.method)
    if args.format == "csv":
        _emit(args, format_spectrum(m.eigenvalues))
    else:
        hist = ids_histogram(m, args.bins)
        obj = hist.to_json()
        obj.update(eigensolver=m.method, clamped=m.clamped, spectral_gap=m.spectral_gap)
        _emit(args, dump_json(obj))
    return EXIT_OK


def cmd_moments(args) -> int:
    g, col, _ = _load(args)
    top = census(g, col, args.p)
    rows = []
    for p in range(args.p + 1):
        glob = moment_global(g, p)
        loc = moment_from_census(top.coarsen(p) if p < args.p else top, p)
        rows.append((p, glob, loc))
    if args.format == "csv":
        _emit(args, _csv([["p", "global", "local", "equal"]] + [[p, a, b, a == b] for p, a, b in rows]))
    else:
        _emit(args, dump_json([{"p": p, "global": str(a), "local": str(b), "equal": a == b} for p, a, b in rows]))
    if any(a != b for _, a, b in rows):
        raise CheckFailed("local and global moments differ")
    return EXIT_OK


def cmd_sfrac(args) -> int:
    _need_json(args)
    g, _, _ = _load(args)
    m = spectrum(g, args.method)
    out = {}
    for dl in args.delta:
        s = s_fraction(m, dl)
        out[str(dl)] = {"exact": str(s), "float": float(s)}
    _emit(args, dump_json({"n": g.n, "s_fraction": out}))
    return EXIT_OK


def cmd_cheeger(args) -> int:
    _need_json(args)
    g, _, _ = _load(args)
    if args.method == "exact":
        h, w = cheeger_exact(g)
    else:
        h, w = cheeger_sweep(g)
    _emit(args, dump_json({"method": args.method, "h": str(h), "h_float": float(h), "witness": list(w.vertices)}))
    return EXIT_OK


def cmd_goodsets(args) -> int:
    _need_json(args)
    g, _, _ = _load(args)
    stats = EnumerationStats()
    sets = list(enumerate_good_sets(g, args.eps, args.k, budget=args.budget, strict=False, stats=stats))
    status = "ok" if stats.complete else "budget_exceeded"
    _emit(
        args,
        dump_json(
            {
                "eps": str(args.eps),
                "k": args.k,
                "n": g.n,
                "count": len(sets),
                "sets": [s.to_json() for s in sets],
                "status": status,
                "visited": stats.visited,
            }
        ),
    )
    return EXIT_OK if stats.complete else EXIT_GUARD


def cmd_pack(args) -> int:
    _need_json(args)
    g, _, _ = _load(args)
    rep = isoperimetry_report(g, args.eps, args.k, budget=args.budget)
    obj = rep.to_json()
    if args.exact:
        fam = pack_exact(g, args.eps, args.k, budget=args.budget)
        obj.update(
            m_norm=str(fam.m_norm),
            m_count=fam.count,
            family=[list(s.vertices) for s in fam.sets],
            packing="exact",
        )
    else:
        obj["packing"] = "greedy"
    _emit(args, dump_json(obj))
    return EXIT_OK if rep.status == "ok" else EXIT_GUARD


def _spec(args) -> SequenceSpec:
    if args.paths:
        return SequenceSpec("from_files", d=args.d, seed=args.seed, paths=tuple(args.paths))
    if not args.family or not args.sizes:
        raise InvalidInput("give --family and --sizes, or --paths")
    return SequenceSpec(args.family, tuple(args.sizes), args.d, args.seed)


def cmd_converge(args) -> int:
    _need_json(args)
    _emit(args, dump_json(run_convergence(_spec(args), args.r, workers=args.workers)))
    return EXIT_OK


def cmd_ids(args) -> int:
    _need_json(args)
    rep = run_ids(_spec(args), args.bins, args.p, deltas=tuple(args.delta), workers=args.workers)
    _emit(args, dump_json(rep))
    if not rep["moments_agree"]:
        raise CheckFailed("local and global moments differ")
    return EXIT_OK


def cmd_thm2(args) -> int:
    rep = run_theorem2(
        _spec(args), args.delta[0], args.eps, args.k, budget=args.budget, workers=args.workers
    )
    if args.format == "csv":
        rows = [["n", "s", "h_cover", "m_norm", "m_count", "status"]]
        for m in rep["members"]:
            rows.append([m["n"], m["s"]["exact"], m["h_cover"]["exact"], m["m_norm"]["exact"], m["m_count"], m["status"]])
        _emit(args, _csv(rows))
    else:
        _emit(args, dump_json(rep))
    return EXIT_OK


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphlimits", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--d", type=int, default=None, help="degree bound")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=None)

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph", help="graph file ('n m d' header, then 'u v' lines)")
    graph_in.add_argument("--coloring", help="coloring file ('u v c' lines); default Misra-Gries")
    graph_in.add_argument("--remap", action="store_true", help="treat vertex tokens as labels")

    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--family", choices=("cycle", "torus2d", "random_regular", "binary_tree", "random_bounded", "complete"))
    seq.add_argument("--sizes", type=int, nargs="+")
    seq.add_argument("--paths", nargs="+", help="graph files (family from_files)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a family member")
    p.add_argument("--family", required=True, choices=("cycle", "torus2d", "random_regular", "binary_tree", "random_bounded", "complete"))
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--coloring-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("color", parents=[common, graph_in], help="Misra-Gries edge coloring")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("census", parents=[common, graph_in], help="rooted ball census")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--uncolored", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("tv", parents=[common], help="TV distance of two census files")
    p.add_argument("census_a")
    p.add_argument("census_b")
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("spectrum", parents=[common, graph_in], help="Laplacian spectrum")
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--method", choices=("auto", "jacobi", "lapack"), default="auto")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("moments", parents=[common, graph_in], help="exact moments, global and local")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("sfrac", parents=[common, graph_in], help="fraction of eigenvalues <= delta")
    p.add_argument("--delta", type=float, nargs="+", required=True)
    p.add_argument("--method", choices=("auto", "jacobi", "lapack"), default="auto")
    p.set_defaults(func=cmd_sfrac)

    p = sub.add_parser("cheeger", parents=[common, graph_in], help="Cheeger constant")
    p.add_argument("--method", choices=("exact", "sweep"), default="exact")
    p.set_defaults(func=cmd_cheeger)

    for name, func, helptext in (
        ("goodsets", cmd_goodsets, "enumerate good sets"),
        ("pack", cmd_pack, "disjoint packing of good sets"),
    ):
        p = sub.add_parser(name, parents=[common, graph_in], help=helptext)
        p.add_argument("--eps", type=_fraction, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "pack":
            p.add_argument("--exact", action="store_true", help="maximum-cardinality packing")
        p.set_defaults(func=func)

    p = sub.add_parser("converge", parents=[common, seq], help="census convergence along a sequence")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("ids", parents=[common, seq], help="spectral measures along a sequence")
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--p", type=int, default=6)
    p.add_argument("--delta", type=float, nargs="+", default=[0.5])
    p.set_defaults(func=cmd_ids)

    p = sub.add_parser("thm2", parents=[common, seq], help="small eigenvalues vs good-set packings")
    p.add_argument("--delta", type=float, nargs=1, required=True)
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_thm2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GraphLimitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
