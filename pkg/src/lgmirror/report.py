"""Report rendering: delimited tables plus figures.

The ``report`` subcommand writes, into a target directory,

  hodge_s.csv / hodge_mirror.csv   one row per (p, q) entry with provenance
  checks.csv                       one row per verification check
  hodge_diamonds.png               both diamonds side by side
  euler_profile.png                e^p of both sides (the cross-identity)
  triangulation.png                Delta, P_* and the triangulation (2d only)

All output is deterministic: no timestamps, fixed figure sizes, fixed
ordering.  matplotlib is imported lazily so the computational core never
depends on it.
"""

from __future__ import annotations

import csv
import os

from .hodge_mirror import (
    ep_mirror,
    mirror_context,
    mirror_hodge_table,
    stratum_depth_check,
    verify_main_theorem,
)
from .hodge_s import ep_S, hodge_diamond_S
from .subdivide import DeltaPrimeEmpty, pstar


def _matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def write_report(analysis, tri, outdir):
    """Run the full pipeline and render tables + figures; returns the list
    of files written."""
    os.makedirs(outdir, exist_ok=True)
    P = analysis.delta
    d = analysis.hypersurface_dim
    files = []

    table_S = hodge_diamond_S(P, tri)
    mirror_available = analysis.delta_prime is not None
    ctx = None
    table_F = None
    if mirror_available:
        ctx = mirror_context(analysis, tri)
        table_F = mirror_hodge_table(ctx)

    path = os.path.join(outdir, "hodge_s.csv")
    _write_table_csv(path, table_S)
    files.append(path)
    if table_F is not None:
        path = os.path.join(outdir, "hodge_mirror.csv")
        _write_table_csv(path, table_F)
        files.append(path)

    checks = []
    if mirror_available:
        rep = verify_main_theorem(analysis, tri, ctx)
        for (p, q), ok in sorted(rep.entry_results.items()):
            checks.append((f"main_theorem h^{{{p},{q}}}", ok))
        for p, ok in sorted(rep.euler_results.items()):
            checks.append((f"euler_cross e^{p}", ok))
        depth = stratum_depth_check(analysis, tri, ctx)
        checks.append((f"stratum_depth {depth.max_level} == "
                       f"{depth.expected}", depth.passed))
    else:
        checks.append(("mirror_side",
                       "refused: no interior lattice point"))
    path = os.path.join(outdir, "checks.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "result"])
        for name, ok in checks:
            w.writerow([name, ok])
    files.append(path)

    files.append(_figure_diamonds(outdir, table_S, table_F))
    files.append(_figure_euler(outdir, analysis, tri, ctx, d))
    if P.ambient_dim == 2:
        files.append(_figure_triangulation(outdir, analysis, tri))
    return files


def _write_table_csv(path, table):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "q", "value", "provenance"])
        for p in range(table.d + 1):
            for q in range(table.d + 1):
                w.writerow([p, q, table.h(p, q),
                            table.provenance.get((p, q), "")])


def _draw_diamond(ax, table, title):
    d = table.d
    for p in range(d + 1):
        for q in range(d + 1):
            x = q - p
            y = p + q
            ax.text(x, y, str(table.h(p, q)), ha="center", va="center",
                    fontsize=14)
    ax.set_xlim(-d - 1, d + 1)
    ax.set_ylim(-1, 2 * d + 1)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")


def _figure_diamonds(outdir, table_S, table_F):
    plt = _matplotlib()
    ncols = 2 if table_F is not None else 1
    fig, axes = plt.subplots(1, ncols, figsize=(4 * ncols, 4))
    if ncols == 1:
        axes = [axes]
    _draw_diamond(axes[0], table_S, "hypersurface")
    if table_F is not None:
        _draw_diamond(axes[1], table_F, "mirror")
    path = os.path.join(outdir, "hodge_diamonds.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _figure_euler(outdir, analysis, tri, ctx, d):
    plt = _matplotlib()
    ps = list(range(d + 1))
    e_s = [ep_S(analysis.delta, tri, p) for p in ps]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    width = 0.38
    ax.bar([p - width / 2 for p in ps], e_s, width, label="e^p(S)")
    if ctx is not None:
        e_f = [(-1) ** d * ep_mirror(ctx, d - p) for p in ps]
        ax.bar([p + width / 2 for p in ps], e_f, width,
               label="(-1)^d e^{d-p}(mirror)")
    ax.set_xticks(ps)
    ax.set_xlabel("p")
    ax.axhline(0, color="black", linewidth=0.6)
    ax.legend(frameon=False)
    ax.set_title("Euler profiles (must agree)")
    fig.tight_layout()
    path = os.path.join(outdir, "euler_profile.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _figure_triangulation(outdir, analysis, tri):
    plt = _matplotlib()
    P = analysis.delta
    fig, ax = plt.subplots(figsize=(5, 4))
    for s in tri.sorted_simplices():
        xs = [v[0] for v in s] + [s[0][0]]
        ys = [v[1] for v in s] + [s[0][1]]
        ax.plot(xs, ys, color="#888888", linewidth=0.8, zorder=1)
    try:
        _, star = pstar(P)
        for cell in star.maximal_cells:
            verts = _cycle_order(cell)
            xs = [v[0] for v in verts] + [verts[0][0]]
            ys = [v[1] for v in verts] + [verts[0][1]]
            ax.plot(xs, ys, color="#1f77b4", linewidth=1.8, zorder=2)
    except DeltaPrimeEmpty:
        pass
    pts = P.lattice_points()
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=18,
               color="black", zorder=3)
    interior = P.lattice_points("interior")
    if interior:
        ax.scatter([p[0] for p in interior], [p[1] for p in interior],
                   s=42, color="#d62728", zorder=4, label="interior")
        ax.legend(frameon=False)
    ax.set_aspect("equal")
    ax.set_title("triangulation (grey) over the canonical subdivision "
                 "(blue)")
    fig.tight_layout()
    path = os.path.join(outdir, "triangulation.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _cycle_order(cell):
    """Vertices of a 2d cell in boundary order (small cells only)."""
    verts = list(cell.vertices)
    if len(verts) <= 3:
        return verts
    cx = sum(v[0] for v in verts) / len(verts)
    cy = sum(v[1] for v in verts) / len(verts)
    import math
    return sorted(verts, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
