"""Command-line interface.

Subcommands: lines, color, verify, search, chi-b, map-ap, export-cnf.
Exit codes: 0 success, 1 a requested expectation failed, 2 usage errors.
All outputs are stable under fixed inputs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cnf as cnf_mod
from .colorings import (
    Coloring,
    anti_latin_square,
    c33_base,
    halving_coloring,
    lift_coloring,
    read_coloring,
    write_coloring,
)
from .cube import (
    CubeShape,
    LinePattern,
    ap_embed,
    ap_hypergraph,
    iter_lines,
    line_count,
    line_hypergraph,
    line_points,
    line_ranks,
)
from .hypergraph import read_hypergraph, write_hypergraph
from .search import (
    SearchOptions,
    SearchStatus,
    chi_b_search,
    exists_balanced_rainbow_free,
)
from .verify import is_balanced, verify_report


def _default_threads() -> int:
    env = os.environ.get("HJCUBE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _add_threads_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker threads (output is identical for any count)")


def _add_hypergraph_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cube", nargs=2, type=int, metavar=("T", "N"),
                   help="line hypergraph of the cube C_T^N")
    g.add_argument("--hypergraph", metavar="PATH", help="hypergraph file")
    g.add_argument("--ap", nargs=2, type=int, metavar=("N", "T"),
                   help="t-term arithmetic progressions on [1, N]")


def _load_hypergraph(args):
    if args.cube:
        t, n = args.cube
        return line_hypergraph(CubeShape(t, n), args.kind)
    if args.hypergraph:
        return read_hypergraph(args.hypergraph)
    n, t = args.ap
    return ap_hypergraph(n, t)


def _parse_point(text: str, t: int) -> tuple:
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    if t > 10:
        raise ValueError("digit-string points need t <= 10; use commas")
    return tuple(int(ch) for ch in text)


def _point_str(p, t: int) -> str:
    return "".join(str(d) for d in p) if t <= 10 else ",".join(str(d) for d in p)


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    elif human:
        print(human)


def _cmd_lines(args) -> int:
    shape = CubeShape(args.t, args.n)
    if args.count:
        _emit(args, str(line_count(shape, args.kind)),
              {"t": args.t, "n": args.n, "kind": args.kind,
               "count": line_count(shape, args.kind)})
        return 0
    if args.hypergraph_out:
        h = line_hypergraph(shape, args.kind)
        write_hypergraph(h, args.hypergraph_out)
        _emit(args, f"wrote {h.vertex_count} vertices, {h.edge_count} edges to {args.hypergraph_out}",
              {"t": args.t, "n": args.n, "kind": args.kind,
               "vertices": h.vertex_count, "edges": h.edge_count,
               "path": args.hypergraph_out})
        return 0
    codes = []
    for i, lp in enumerate(iter_lines(shape, args.kind)):
        if args.limit is not None and i >= args.limit:
            break
        codes.append(lp.code())
    if args.json:
        print(json.dumps({"t": args.t, "n": args.n, "kind": args.kind,
                          "patterns": codes}, indent=2))
    else:
        for code in codes:
            print(code)
    return 0


def _build_coloring(args) -> Coloring:
    name = args.construction
    if name == "c33":
        return c33_base()
    if name == "anti-latin":
        if args.t is None:
            raise ValueError("anti-latin needs --t")
        return anti_latin_square(args.t)
    if args.t is None or args.n is None:
        raise ValueError(f"{name} needs --t and --n")
    shape = CubeShape(args.t, args.n)
    if name == "halving":
        return halving_coloring(shape, allow_degenerate=args.allow_degenerate)
    if name == "lift":
        return lift_coloring(shape)
    raise ValueError(f"unknown construction {name!r}")


def _grid_text(c: Coloring) -> str:
    t, n = c.shape.t, c.shape.n
    if n == 1:
        return " ".join(str(x) for x in c.colors)
    if n == 2:
        return "\n".join(
            " ".join(str(x) for x in c.colors[i * t:(i + 1) * t]) for i in range(t)
        )
    raise ValueError("grid output needs n <= 2")


def _classes_text(c: Coloring) -> str:
    from .cube import unrank

    t = c.shape.t
    words = {color: [] for color in range(c.k)}
    for r, color in enumerate(c.colors):
        words[color].append(_point_str(unrank(r, c.shape), t))
    return "\n".join(
        f"class {color}: " + " ".join(words[color]) for color in range(c.k)
    )


def _cmd_color(args) -> int:
    c = _build_coloring(args)
    if args.out:
        write_coloring(c, args.out)
    if args.grid:
        text = _grid_text(c)
    elif args.classes:
        text = _classes_text(c)
    elif args.out:
        text = f"wrote {c.num_vertices} entries, k={c.k} to {args.out}"
    else:
        import io

        buf = io.StringIO()
        write_coloring(c, buf)
        text = buf.getvalue().rstrip("\n")
    payload = {"t": c.shape.t, "n": c.shape.n, "k": c.k, "colors": list(c.colors)}
    if args.out:
        payload["path"] = args.out
    _emit(args, text, payload)
    return 0


def _cmd_verify(args) -> int:
    c = read_coloring(args.file)
    report = verify_report(c, args.kind, threads=args.threads)
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text())
    failures = []
    if args.expect_balanced and not report.balanced:
        failures.append("expected a balanced coloring")
    if args.expect_rainbow_free and report.rainbow_line_count > 0:
        failures.append(f"expected rainbow-free, found {report.rainbow_line_count} rainbow lines")
    for msg in failures:
        print(f"expectation failed: {msg}", file=sys.stderr)
    return 1 if failures else 0


def _search_opts(args) -> SearchOptions:
    return SearchOptions(
        symmetry_fix_first_vertex=not args.no_symmetry,
        node_limit=args.node_limit,
        threads=args.threads,
    )


def _witness_out(args, witness: "Coloring | None") -> None:
    if args.witness_out and witness is not None:
        if args.cube:
            import dataclasses

            t, n = args.cube
            witness = dataclasses.replace(witness, shape=CubeShape(t, n))
        write_coloring(witness, args.witness_out)


def _cmd_search(args) -> int:
    h = _load_hypergraph(args)
    outcome = exists_balanced_rainbow_free(h, args.k, _search_opts(args))
    _witness_out(args, outcome.witness)
    payload = outcome.to_dict()
    payload["k"] = args.k
    _emit(args, outcome.status.value, payload)
    return 0


def _cmd_chi_b(args) -> int:
    h = _load_hypergraph(args)
    opts = _search_opts(args)
    trace = []
    value = None
    witness = None
    for k, outcome in chi_b_search(h, opts):
        trace.append({"k": k, "status": outcome.status.value,
                      "nodes_explored": outcome.nodes_explored})
        if outcome.status is SearchStatus.WITNESS_FOUND:
            value, witness = k, outcome.witness
        elif outcome.status is SearchStatus.NODE_LIMIT_REACHED:
            print(f"node limit reached at k={k}", file=sys.stderr)
            return 1
    if value is None:
        print("no balanced rainbow-free coloring for any k", file=sys.stderr)
        return 1
    _witness_out(args, witness)
    _emit(args, str(value),
          {"value": value, "witness": list(witness.colors), "trace": trace})
    return 0


def _cmd_map_ap(args) -> int:
    shape = CubeShape(args.t, args.n)
    if args.point:
        p = _parse_point(args.point, args.t)
        _emit(args, str(ap_embed(p, shape)), {"image": ap_embed(p, shape)})
        return 0
    if args.line:
        lp = LinePattern.from_code(args.line)
        images = [r + 1 for r in line_ranks(lp, shape)]
        _emit(args, " ".join(str(x) for x in images), {"images": images})
        return 0
    c = read_coloring(args.coloring)
    if c.shape != shape:
        raise ValueError(f"coloring file is for shape {c.shape}, not {shape}")
    pairs = [[i + 1, col] for i, col in enumerate(c.colors)]
    if args.json:
        print(json.dumps({"images": pairs}, indent=2))
    else:
        for i, col in pairs:
            print(f"{i} {col}")
    return 0


def _cmd_export_cnf(args) -> int:
    h = _load_hypergraph(args)
    num_vars, num_clauses = cnf_mod.export_cnf(h, args.k, args.out)
    _emit(args, f"wrote p cnf {num_vars} {num_clauses} to {args.out}",
          {"vars": num_vars, "clauses": num_clauses, "path": args.out})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hjcube",
        description="Balanced rainbow-free colorings of cubes C_t^n: "
                    "enumerate lines, build colorings, verify, search, export SAT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lines", help="enumerate or count lines of a cube")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["geometric", "combinatorial"],
                   default="geometric")
    p.add_argument("--count", action="store_true", help="print the count only")
    p.add_argument("--limit", type=int, help="stop after this many patterns")
    p.add_argument("--hypergraph-out", metavar="PATH",
                   help="write the line hypergraph file instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lines)

    p = sub.add_parser("color", help="construct a coloring")
    p.add_argument("--construction", required=True,
                   choices=["halving", "lift", "c33", "anti-latin"])
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--grid", action="store_true",
                   help="render as a grid (n <= 2)")
    p.add_argument("--classes", action="store_true",
                   help="list the words of each color class")
    p.add_argument("--allow-degenerate", action="store_true",
                   help="permit the single-color halving coloring at t=2")
    p.add_argument("--out", metavar="PATH", help="write the coloring file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("verify", help="verify a coloring file")
    p.add_argument("--file", required=True, metavar="PATH")
    p.add_argument("--kind", choices=["geometric", "combinatorial"],
                   default="geometric")
    p.add_argument("--expect-balanced", action="store_true")
    p.add_argument("--expect-rainbow-free", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_threads_flag(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search",
                       help="decide existence of a balanced rainbow-free k-coloring")
    _add_hypergraph_source(p)
    p.add_argument("--kind", choices=["geometric", "combinatorial"],
                   default="geometric")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--no-symmetry", action="store_true",
                   help="disable fixing the first vertex's color")
    p.add_argument("--witness-out", metavar="PATH")
    p.add_argument("--json", action="store_true")
    _add_threads_flag(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("chi-b", help="balanced upper chromatic number")
    _add_hypergraph_source(p)
    p.add_argument("--kind", choices=["geometric", "combinatorial"],
                   default="geometric")
    p.add_argument("--node-limit", type=int)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--witness-out", metavar="PATH")
    p.add_argument("--json", action="store_true")
    _add_threads_flag(p)
    p.set_defaults(func=_cmd_chi_b)

    p = sub.add_parser("map-ap", help="map points, lines, or colorings into [1, t^n]")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", help="digits, e.g. 12 or 1,2")
    g.add_argument("--line", help="pattern code, e.g. F,B or =2,F")
    g.add_argument("--coloring", metavar="PATH", help="coloring file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_map_ap)

    p = sub.add_parser("export-cnf", help="write a DIMACS CNF for the search problem")
    _add_hypergraph_source(p)
    p.add_argument("--kind", choices=["geometric", "combinatorial"],
                   default="geometric")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_export_cnf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
