"""Command-line front end.

Subcommands: analyze | hodge-s | hodge-mirror | verify | dual-complex |
curve-check | gen | report.  Input is a JSON document

    {"dim": D, "vertices": [[int, ...], ...],
     "triangulation": [[[int, ...], ...], ...]}   (triangulation optional)

where triangulation cells list lattice points by coordinates, so cells may
use non-vertex lattice points.  Exit codes: 0 pass, 1 parse error, 2
unsupported regime (no interior point / non-smooth), 3 triangulation
failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .hodge_mirror import (
    curve_hh_check,
    mirror_context,
    mirror_hodge_table,
    stratum_depth_check,
    verify_main_theorem,
)
from .hodge_s import HodgeFormulaError, hodge_diamond_S
from .lattice import GeometryError, LatticePolytope
from .mirror import dual_intersection_complex
from .subdivide import (
    DeltaPrimeEmpty,
    TriangulationError,
    is_star_like,
    standard_triangulation,
    triangulation_from_cells,
)
from .toric import (
    NonSmoothError,
    delta_prime_and_kodaira,
    reflexivity_and_minkowski_check,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_REGIME = 2
EXIT_TRIANGULATION = 3
EXIT_VERIFY = 4


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------

def builtin_polytope(spec):
    """Builtin generators: 'rectangle g=2', 'dilated-simplex dim=4 k=3',
    'square n=4'."""
    parts = spec.split()
    if not parts:
        raise ParseError("empty builtin spec")
    name = parts[0]
    kv = {}
    for p in parts[1:]:
        if "=" not in p:
            raise ParseError(f"malformed builtin parameter {p!r}")
        k, v = p.split("=", 1)
        try:
            kv[k] = int(v)
        except ValueError:
            raise ParseError(f"non-integer builtin parameter {p!r}")
    if name == "rectangle":
        g = kv.get("g")
        if g is None or g < 1:
            raise ParseError("rectangle needs g>=1")
        verts = [(0, 0), (g + 1, 0), (0, 2), (g + 1, 2)]
    elif name == "dilated-simplex":
        dim, k = kv.get("dim"), kv.get("k")
        if not dim or not k:
            raise ParseError("dilated-simplex needs dim= and k=")
        verts = [tuple(0 for _ in range(dim))]
        verts += [tuple(k if j == t else 0 for j in range(dim))
                  for t in range(dim)]
    elif name == "square":
        n = kv.get("n")
        if not n:
            raise ParseError("square needs n=")
        verts = [(0, 0), (n, 0), (0, n), (n, n)]
    else:
        raise ParseError(f"unknown builtin {name!r}")
    return {"dim": len(verts[0]), "vertices": [list(v) for v in verts]}


def parse_input(document):
    """Validate a polytope document; returns (LatticePolytope,
    Triangulation or None)."""
    if not isinstance(document, dict):
        raise ParseError("input document must be a JSON object")
    if "vertices" not in document:
        raise ParseError("input document lacks 'vertices'")
    verts = document["vertices"]
    if not isinstance(verts, list) or not verts:
        raise ParseError("'vertices' must be a nonempty list")
    dims = set()
    pts = []
    for v in verts:
        if not isinstance(v, list) or not all(
                isinstance(x, int) for x in v):
            raise ParseError(f"non-integral vertex {v!r}")
        dims.add(len(v))
        pts.append(tuple(v))
    if len(dims) != 1:
        raise ParseError("vertices of mixed dimension")
    if "dim" in document and document["dim"] != dims.pop():
        raise ParseError("stated dim does not match the vertices")
    try:
        P = LatticePolytope(pts)
    except GeometryError as e:
        raise ParseError(str(e))
    tri = None
    if document.get("triangulation") is not None:
        tri = parse_triangulation(P, document["triangulation"])
    return P, tri


def parse_triangulation(P, cells):
    if not isinstance(cells, list) or not cells:
        raise ParseError("'triangulation' must be a nonempty list of cells")
    parsed = []
    for c in cells:
        if not isinstance(c, list):
            raise ParseError("each triangulation cell must list its points")
        cell = []
        for v in c:
            if not isinstance(v, list) or not all(
                    isinstance(x, int) for x in v):
                raise ParseError(f"non-integral point {v!r} in triangulation")
            if len(v) != P.ambient_dim:
                raise ParseError("triangulation point of wrong dimension")
            cell.append(tuple(v))
        parsed.append(cell)
    tri = triangulation_from_cells(P, parsed)
    rep = is_star_like(tri, P)
    if not rep.ok:
        raise TriangulationError(
            f"supplied triangulation rejected: {rep.reason} "
            f"(witness {list(rep.witness)})",
            simplex=rep.witness)
    tri.regularity = rep.regularity
    return tri


def load_order(P, spec):
    from .subdivide import ORDER_STRATEGIES, order_points
    if spec is None or spec == "lex":
        return None
    if spec in ORDER_STRATEGIES:
        return order_points(P, spec)
    if spec.startswith("file:"):
        with open(spec[5:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return [tuple(p) for p in data]
    raise ParseError(f"unknown order {spec!r}")


def obtain_triangulation(P, tri, order_spec):
    if tri is not None:
        return tri
    order = load_order(P, order_spec)
    return standard_triangulation(P, order=order, require_interior=False)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def table_entries(table):
    out = []
    for p in range(table.d + 1):
        for q in range(table.d + 1):
            out.append([p, q, table.h(p, q),
                        table.provenance.get((p, q), "")])
    return out


def triangulation_doc(tri):
    return [[list(v) for v in s] for s in tri.sorted_simplices()]


def dual_complex_doc(gamma):
    simplices = []
    for s, mult in sorted(gamma.simplices.items(),
                          key=lambda kv: (len(kv[0]),
                                          sorted(map(str, kv[0])))):
        verts = sorted((list(v) if isinstance(v, tuple) else v for v in s),
                       key=str)
        simplices.append([verts, mult])
    doc = {
        "vertices": [list(v) if isinstance(v, tuple) else v
                     for v in gamma.vertices],
        "simplices": simplices,
        "topology": gamma.topology,
        "dimension": gamma.dimension,
        "euler_characteristic": gamma.euler_characteristic,
    }
    if gamma.curve_components is not None:
        doc["curve_components"] = gamma.curve_components
        doc["curve_betti1"] = gamma.curve_betti1
    return doc


def format_diamond(table, title):
    lines = [title]
    d = table.d
    width = max(len(str(v)) for v in table.entries.values()) + 2
    for p in range(d, -1, -1):
        row = "".join(str(table.h(p, q)).rjust(width)
                      for q in range(d + 1))
        lines.append(row)
    lines.append("(rows p = %d..0, columns q = 0..%d)" % (d, d))
    return "\n".join(lines)


def emit(payload, args, text_renderer):
    if args.format == "json":
        out = json.dumps(payload, sort_keys=True, indent=2)
    else:
        out = text_renderer(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def load_polytope(args):
    if getattr(args, "builtin", None):
        doc = builtin_polytope(args.builtin)
    elif getattr(args, "input", None):
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
    else:
        raise ParseError("no input: pass --input PATH or --builtin SPEC")
    P, tri = parse_input(doc)
    if tri is None and getattr(args, "triangulation", None):
        with open(args.triangulation, "r", encoding="utf-8") as fh:
            tdoc = json.load(fh)
        if isinstance(tdoc, dict):
            tdoc = tdoc.get("triangulation")
        tri = parse_triangulation(P, tdoc)
    return P, tri


def cmd_gen(args):
    doc = builtin_polytope(args.spec)
    out = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return EXIT_OK


def cmd_analyze(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    reflex = reflexivity_and_minkowski_check(P)
    tri = obtain_triangulation(P, tri, args.order)
    rep = is_star_like(tri, P)
    payload = {
        "ambient_dim": P.ambient_dim,
        "hypersurface_dim": analysis.hypersurface_dim,
        "vertices": [list(v) for v in P.vertices],
        "n_lattice_points": P.n_lattice_points(),
        "n_interior_points": P.n_lattice_points("interior"),
        "smooth": True,
        "kodaira": analysis.kodaira_label,
        "delta_prime": None if analysis.delta_prime is None else
            [list(v) for v in analysis.delta_prime.vertices],
        "reflexive": reflex.reflexive,
        "nef_anticanonical": reflex.nef_anticanonical,
        "minkowski_decomposition_holds": reflex.minkowski_holds,
        "triangulation": triangulation_doc(tri),
        "triangulation_cells": len(tri.maximal_simplices),
        "star_like": rep.ok,
        "regularity": rep.regularity,
        "normalized_volume": P.normalized_volume(),
    }

    def render(pl):
        lines = ["polytope analysis",
                 f"  ambient dim      {pl['ambient_dim']}",
                 f"  hypersurface d   {pl['hypersurface_dim']}",
                 f"  lattice points   {pl['n_lattice_points']}"
                 f" ({pl['n_interior_points']} interior)",
                 f"  kodaira          {pl['kodaira']}",
                 f"  reflexive        {pl['reflexive']}",
                 f"  -K nef           {pl['nef_anticanonical']}",
                 f"  Minkowski Delta = Delta_K + Delta'   "
                 f"{pl['minkowski_decomposition_holds']}",
                 f"  triangulation    {pl['triangulation_cells']} standard"
                 f" simplices, star-like={pl['star_like']}"
                 f" ({pl['regularity']})"]
        return "\n".join(lines)

    emit(payload, args, render)
    return EXIT_OK


def cmd_hodge_s(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    table = hodge_diamond_S(P, tri)
    payload = {
        "d": table.d,
        "kodaira": analysis.kodaira_label,
        "hodge_S": table_entries(table),
    }
    emit(payload, args,
         lambda pl: format_diamond(table, "Hodge diamond of S"))
    return EXIT_OK


def cmd_hodge_mirror(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    ctx = mirror_context(analysis, tri)
    table = mirror_hodge_table(ctx)
    payload = {
        "d": table.d,
        "kodaira": analysis.kodaira_label,
        "hodge_mirror": table_entries(table),
    }
    emit(payload, args,
         lambda pl: format_diamond(table, "Hodge table of the mirror"))
    return EXIT_OK


def cmd_verify(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    ctx = mirror_context(analysis, tri)
    rep = verify_main_theorem(analysis, tri, ctx)
    depth = stratum_depth_check(analysis, tri, ctx)
    checks = {
        "main_theorem": {
            "entries": [[p, q, bool(v)]
                        for (p, q), v in sorted(rep.entry_results.items())],
            "passed": rep.passed,
        },
        "euler_cross": {
            "entries": [[p, bool(v)]
                        for p, v in sorted(rep.euler_results.items())],
            "passed": all(rep.euler_results.values()),
        },
        "depth": {
            "kodaira": depth.kodaira,
            "max_level": depth.max_level,
            "expected": depth.expected,
            "passed": depth.passed,
        },
    }
    overall = rep.passed and depth.passed
    if args.independence:
        from .subdivide import alternative_triangulation
        name, tri2 = alternative_triangulation(P, tri)
        if tri2 is None:
            checks["triangulation_independence"] = {
                "distinct_triangulations": False,
                "tables_equal": True,
                "passed": True,
                "note": "no distinct pulling triangulation found",
            }
        else:
            ctx2 = mirror_context(analysis, tri2)
            t1 = mirror_hodge_table(ctx)
            t2 = mirror_hodge_table(ctx2)
            same = t1.entries == t2.entries
            checks["triangulation_independence"] = {
                "distinct_triangulations": True,
                "order": name,
                "tables_equal": same,
                "passed": same,
            }
            overall = overall and same
    payload = {
        "d": rep.d,
        "hodge_S": table_entries(rep.table_S),
        "hodge_mirror": table_entries(rep.table_mirror),
        "kodaira": analysis.kodaira_label,
        "checks": checks,
        "passed": overall,
    }

    def render(pl):
        lines = []
        for p, q, v in pl["checks"]["main_theorem"]["entries"]:
            lines.append(
                f"h^{{{p},{q}}}(S) = h^{{{rep.d - p},{q}}}(mirror): "
                + ("PASS" if v else "FAIL"))
        for p, v in pl["checks"]["euler_cross"]["entries"]:
            lines.append(f"e^{p}(S) = (-1)^d e^{rep.d - p}(mirror): "
                         + ("PASS" if v else "FAIL"))
        dd = pl["checks"]["depth"]
        lines.append(
            f"stratum depth {dd['max_level']} = kappa + 2 = "
            f"{dd['expected']}: " + ("PASS" if dd["passed"] else "FAIL"))
        if "triangulation_independence" in pl["checks"]:
            ti = pl["checks"]["triangulation_independence"]
            lines.append("triangulation independence: "
                         + ("PASS" if ti["passed"] else "FAIL"))
        lines.append("overall: " + ("PASS" if pl["passed"] else "FAIL"))
        return "\n".join(lines)

    emit(payload, args, render)
    return EXIT_OK if overall else EXIT_VERIFY


def cmd_dual_complex(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    gamma = dual_intersection_complex(analysis, tri)
    payload = {"dual_complex": dual_complex_doc(gamma)}

    def render(pl):
        dc = pl["dual_complex"]
        lines = [f"dual intersection complex: {dc['topology']} of dimension "
                 f"{dc['dimension']} (chi = {dc['euler_characteristic']})"]
        if "curve_components" in dc:
            lines.append(f"  mirror curve components: "
                         f"{dc['curve_components']}")
            lines.append(f"  graph first Betti number: {dc['curve_betti1']}")
        for s, m in dc["simplices"]:
            lines.append(f"  simplex {s} x{m}")
        return "\n".join(lines)

    emit(payload, args, render)
    return EXIT_OK


def cmd_curve_check(args):
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    ctx = mirror_context(analysis, tri)
    rep = curve_hh_check(analysis, tri, ctx)
    payload = {
        "genus": rep.genus,
        "components": rep.components,
        "graph_betti1": rep.graph_betti1,
        "hochschild": rep.hochschild,
        "mirror_cohomology": rep.mirror_cohomology,
        "euler_chain": {k: bool(v) for k, v in rep.euler_chain.items()},
        "passed": rep.passed,
    }

    def render(pl):
        lines = [f"genus g = {pl['genus']}",
                 f"mirror components = {pl['components']} (3g-3 = "
                 f"{3 * pl['genus'] - 3})",
                 f"graph genus = {pl['graph_betti1']}",
                 f"HH^* of the curve: {pl['hochschild']}",
                 f"H^* of the mirror: {pl['mirror_cohomology']}"]
        for k, v in pl["euler_chain"].items():
            lines.append(f"  {k}: " + ("PASS" if v else "FAIL"))
        lines.append("overall: " + ("PASS" if pl["passed"] else "FAIL"))
        return "\n".join(lines)

    emit(payload, args, render)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_report(args):
    from .report import write_report
    P, tri = load_polytope(args)
    analysis = delta_prime_and_kodaira(P)
    tri = obtain_triangulation(P, tri, args.order)
    files = write_report(analysis, tri, args.outdir)
    for f in files:
        print(f)
    return EXIT_OK


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="lgmirror",
        description="Hodge numbers of toric hypersurfaces and their "
                    "Landau-Ginzburg mirrors, from lattice data")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_tri=True):
        p.add_argument("--input", help="polytope JSON document ('-' = stdin)")
        p.add_argument("--builtin",
                       help="builtin generator, e.g. 'rectangle g=2'")
        if with_tri:
            p.add_argument("--triangulation",
                           help="JSON file with triangulation cells")
            p.add_argument("--order", default="lex",
                           help="pulling order: lex | revlex | sumlex | revsumlex | colex | revcolex | file:PATH")
        p.add_argument("--format", choices=("table", "json"),
                       default="table")
        p.add_argument("--out", help="write output to this path")

    for name, fn in (("analyze", cmd_analyze), ("hodge-s", cmd_hodge_s),
                     ("hodge-mirror", cmd_hodge_mirror),
                     ("dual-complex", cmd_dual_complex),
                     ("curve-check", cmd_curve_check)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--independence", action="store_true",
                   help="also compare mirror tables across two pulling "
                        "orders")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen")
    p.add_argument("spec", help="e.g. 'rectangle g=2', "
                                "'dilated-simplex dim=4 k=3', 'square n=4'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("report")
    common(p)
    p.add_argument("--outdir", required=True,
                   help="directory for CSV tables and figures")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (DeltaPrimeEmpty, NonSmoothError) as e:
        print(f"unsupported regime: {e}", file=sys.stderr)
        return EXIT_REGIME
    except TriangulationError as e:
        print(f"triangulation failure: {e}", file=sys.stderr)
        print("hint: retry with --order revlex or --order file:PATH",
              file=sys.stderr)
        return EXIT_TRIANGULATION
    except HodgeFormulaError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
