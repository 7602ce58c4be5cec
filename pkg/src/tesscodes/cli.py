"""Command-line entry point: census tables, builds, analysis, validation, distance."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import census as C
from .homology import HomologyError, bombin_bounds, homology, min_triangles_nontrivial
from .hypergraph import (
    BuildError, Hypergraph, PlacementInfeasible, build_bombin, build_family1, build_family2,
    build_family3, build_family4, build_sarvepalli_even, build_thm5, load_hypergraph,
    serialize_hypergraph, validate_hypergraph,
)
from .pauli import PauliError, analyze_code, loop_operator, support_links, syndrome_order
from .surface_map import (
    SUPPORTED_TORI, MapError, load_map, serialize_map, square_torus, torus_tessellation,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONSISTENT = 0, 2, 3, 4
EXIT_PLACEMENT, EXIT_MISMATCH = 5, 6


class UsageError(Exception):
    pass


class InputError(Exception):
    """Unreadable or malformed input file."""


def _genus_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError as exc:
        raise UsageError(f"bad genus range {text!r}") from exc


def _cells(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        m, n = int(a), int(b)
    except ValueError as exc:
        raise UsageError(f"bad cell spec {text!r}; use MxN") from exc
    if m < 1 or n < 1:
        raise UsageError("cell counts must be positive")
    return m, n


def _emit(rows: list[dict[str, str]], kv: bool, out) -> None:
    if kv:
        for r in rows:
            print(" ".join(f"{k}={v}" for k, v in r.items()), file=out)
        return
    if not rows:
        return
    keys = list(rows[0])
    print("\t".join(keys), file=out)
    for r in rows:
        print("\t".join(r[k] for k in keys), file=out)


# ---------------------------------------------------------------- census


def cmd_census(args, out) -> int:
    fam = args.family
    if fam in ("1", "2", "3", "4"):
        lo, hi = C.GENUS_RANGE[fam]
        genera = _genus_range(args.genus) if args.genus else range(lo, hi + 1)
        rows = []
        for r in C.emit_table(fam, genera):
            f = r.fields()
            p = r.params
            if p.n != p.k + p.r + p.s:
                return EXIT_INCONSISTENT
            if r.alt is None:
                f["code"] = p.bracket()
            else:
                f["code"] = p.bracket()
                f["code2"] = r.alt.bracket()
            rows.append(f)
        _emit(rows, args.kv, out)
        return EXIT_OK
    if fam in ("thm5", "thm6"):
        if args.edges is None or args.chi is None:
            raise UsageError(f"family {fam} needs --edges and --chi")
        fn = C.params_thm5 if fam == "thm5" else C.params_thm6
        p = fn(args.edges, args.chi, args.bipartite)
    elif fam == "bombin":
        if None in (args.vstar, args.fstar, args.chi):
            raise UsageError("family bombin needs --vstar, --fstar and --chi")
        p = C.params_bombin(args.vstar, args.fstar, args.chi)
    else:
        raise UsageError(f"unknown family {fam!r}")
    row = {"family": fam, "s": str(p.s), "n": str(p.n), "k": str(p.k), "r": str(p.r),
           "code": p.bracket(), "flags": ",".join(p.flags) or "-"}
    _emit([row], args.kv, out)
    return EXIT_OK


# ---------------------------------------------------------------- build


def _source(args):
    if args.torus and args.map:
        raise UsageError("give either --torus or --map, not both")
    if args.torus:
        cls = tuple(int(x) for x in args.torus.split(","))
        key = ",".join(map(str, cls))
        if args.family == "thm5":
            raise UsageError("family thm5 takes --square MxN or --map")
        if key not in SUPPORTED_TORI:
            raise UsageError(f"unsupported torus class {key}; choose from {', '.join(SUPPORTED_TORI)}")
        return torus_tessellation(cls, *_cells(args.cells))
    if args.square:
        return square_torus(*_cells(args.square)), {}
    if args.map:
        try:
            return load_map(Path(args.map).read_text())
        except (OSError, MapError) as exc:
            raise InputError(f"{args.map}: {exc}") from exc
    raise UsageError("need a source: --torus CLASS --cells MxN, --square MxN or --map FILE")


def build_from_args(args) -> tuple[Hypergraph, object, dict]:
    m, col = _source(args)
    fam = args.family
    if fam == "1":
        h = build_family1(m, col)
    elif fam == "2":
        h = build_family2(m, col)
    elif fam == "3":
        h = build_family3(m, col)
    elif fam == "4":
        h = build_family4(m)
    elif fam == "bombin":
        h = build_bombin(m, col)
    elif fam == "sarvepalli":
        red = [f for f in range(m.F) if col.get(f) == "R"]
        h = build_sarvepalli_even(m, col, red, args.attach)
    elif fam == "thm5":
        h = build_thm5(m)
    else:
        raise UsageError(f"unknown family {fam!r}")
    return h, m, col


def cmd_build(args, out) -> int:
    h, m, col = build_from_args(args)
    text = serialize_hypergraph(h)
    if args.output:
        Path(args.output).write_text(text)
    if args.map_out:
        Path(args.map_out).write_text(serialize_map(m, col or None))
    rep = validate_hypergraph(h)
    row = {"family": h.meta.get("family", "?"), "qubits": str(h.n), "E2": str(h.E2),
           "E3": str(h.E3), "cycles": str(len(h.registry)), "valid": "yes" if rep.ok else "no"}
    _emit([row], args.kv, out)
    if not args.kv:
        for ln in rep.lines():
            print(ln, file=out)
    if not args.output:
        out.write(text)
    return EXIT_OK if rep.ok else EXIT_INVALID


# ---------------------------------------------------------------- analyze / validate / distance


def _load(path: str) -> Hypergraph:
    try:
        return load_hypergraph(Path(path).read_text())
    except (OSError, BuildError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_validate(args, out) -> int:
    h = _load(args.file)
    rep = validate_hypergraph(h)
    for ln in rep.lines():
        print(ln, file=out)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_analyze(args, out) -> int:
    h = _load(args.file)
    rep = validate_hypergraph(h)
    if not rep.ok:
        for ln in rep.lines():
            print(ln, file=out)
        return EXIT_INVALID
    a = analyze_code(h)
    formula = C.formula_params(h.meta)
    l = None
    if h.cuts and not args.no_distance:
        try:
            l = min_triangles_nontrivial(h, budget=args.budget).triangles
        except HomologyError:
            l = None
    d = "d" if l is None else f"d<={l}"
    agree = "n/a" if formula is None else ("yes" if formula.key() == a.params() else "no")
    row = {"code": f"[[{a.n},{a.k},{a.r},{d}]]", "n": str(a.n), "s": str(a.s),
           "dimG": str(a.dim_gauge), "r": str(a.r), "k": str(a.k),
           "l": "?" if l is None else str(l), "agree": agree}
    if formula is not None:
        row["formula"] = f"n={formula.n},s={formula.s},r={formula.r},k={formula.k}"
    if args.syndrome:
        bad = []
        for c in h.registry:
            if not c.generator:
                continue
            W = loop_operator(h, c.edges)
            res = syndrome_order(W, support_links(h, c.edges))
            if not res.feasible:
                bad.append(c.tag)
        row["syndrome"] = "all" if not bad else "fail:" + ",".join(bad)
    if args.kv:
        _emit([row], True, out)
    else:
        print(f"{row['code']} s={a.s} dimG={a.dim_gauge} agree={agree}", file=out)
        for k in ("n", "s", "dimG", "r", "k", "l", "formula", "syndrome"):
            if k in row:
                print(f"  {k}: {row[k]}", file=out)
    return EXIT_INCONSISTENT if agree == "no" else EXIT_OK


def cmd_distance(args, out) -> int:
    h = _load(args.file)
    dec = homology(h)
    rep = min_triangles_nontrivial(h, budget=args.budget, dec=dec)
    rows = [{"h1": str(dec.h1_dim), "l": str(rep.triangles)}]
    if args.dual_map:
        try:
            m, _ = load_map(Path(args.dual_map).read_text())
        except (OSError, MapError) as exc:
            raise InputError(f"{args.dual_map}: {exc}") from exc
        d_T, d_L = bombin_bounds(h, m)
        rows[0].update({"d_T": str(d_T), "d_L": str(d_L)})
    _emit(rows, args.kv, out)
    print(rep.row(), file=out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tesscodes",
                                description="Topological subsystem codes from coloured tessellations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="closed-form parameter tables")
    c.add_argument("--family", required=True)
    c.add_argument("--genus", help="G or A..B")
    c.add_argument("--edges", type=int)
    c.add_argument("--chi", type=int)
    c.add_argument("--bipartite", action="store_true")
    c.add_argument("--vstar", type=int)
    c.add_argument("--fstar", type=int)
    c.add_argument("--kv", action="store_true", help="key=value rows")
    c.set_defaults(func=cmd_census)

    b = sub.add_parser("build", help="construct a hypergraph")
    b.add_argument("--family", required=True,
                   choices=["1", "2", "3", "4", "bombin", "sarvepalli", "thm5"])
    b.add_argument("--torus", help="colour class sizes, e.g. 6,12,4")
    b.add_argument("--cells", default="2x2")
    b.add_argument("--square", help="square-lattice torus MxN (thm5 source)")
    b.add_argument("--map", help=".tessmap input")
    b.add_argument("--attach", default="B", choices=["B", "G"])
    b.add_argument("-o", "--output")
    b.add_argument("--map-out", help="also write the source map")
    b.add_argument("--kv", action="store_true")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="group ranks and code parameters")
    a.add_argument("file")
    a.add_argument("--syndrome", action="store_true", help="check link orderings for generators")
    a.add_argument("--no-distance", action="store_true")
    a.add_argument("--budget", type=int, default=2_000_000)
    a.add_argument("--kv", action="store_true")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("validate", help="check (H1)-(H5)")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("distance", help="triangle bound and, for Bombín builds, d_L")
    d.add_argument("file")
    d.add_argument("--dual-map", help="source .tessmap of a Bombín build")
    d.add_argument("--budget", type=int, default=2_000_000)
    d.add_argument("--kv", action="store_true")
    d.set_defaults(func=cmd_distance)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PlacementInfeasible as exc:
        print(f"error: {exc}: {', '.join(exc.cycles)}", file=sys.stderr)
        return EXIT_PLACEMENT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BuildError, MapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (C.CensusError, PauliError, HomologyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
