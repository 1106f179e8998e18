"""The canonical decomposition P_* of Delta, star-like standard
triangulations, and the fans Sigma, Sigma_*, Sigma-check.

P_* is the projection of the lower faces of the lift that places boundary
lattice points at height 0 and interior ones at height -1.  Triangulations
are built by regular pulling refinements of P_* at all lattice points of
Delta; pulling refinements of a regular subdivision are regular, so the
construction itself certifies star-likeness.  Unimodularity of the
resulting simplices is order-sensitive in dimension >= 3 and is verified
cell by cell; failures carry the offending simplex so the caller can retry
with a different order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .intlinalg import det, dot, vsub
from .lattice import (
    Cone,
    Fan,
    GeometryError,
    LatticePolytope,
    cone_over,
    dual_cone,
    is_standard_cone,
)


class DeltaPrimeEmpty(GeometryError):
    """Delta has no interior lattice point; the mirror-side pipeline and
    P_* are undefined in this regime."""


class TriangulationError(GeometryError):
    def __init__(self, message, simplex=None, determinant=None):
        super().__init__(message)
        self.simplex = simplex
        self.determinant = determinant


class PolyhedralComplex:
    """A polyhedral complex stored by its maximal cells."""

    def __init__(self, maximal_cells):
        self.maximal_cells = list(maximal_cells)
        self._cells = None
        self._cell_poly = {}

    def cell_polytope(self, vertex_set):
        key = frozenset(vertex_set)
        if key not in self._cell_poly:
            self._cell_poly[key] = LatticePolytope(sorted(key))
        return self._cell_poly[key]

    def cells(self):
        """All cells as {frozenset(vertices): dim}; closed under faces."""
        if self._cells is None:
            out = {}
            for c in self.maximal_cells:
                for fs, d in c.faces().items():
                    out[fs] = d
            self._cells = out
        return self._cells

    def cells_of_dim(self, k):
        return [fs for fs, d in self.cells().items() if d == k]

    def vertices(self):
        out = set()
        for fs, d in self.cells().items():
            if d == 0:
                out.update(fs)
        return sorted(out)

    def smallest_cell_containing(self, points):
        """The carrier cell of a point set, or None if not covered."""
        points = [tuple(p) for p in points]
        best = None
        for fs, d in self.cells().items():
            if best is not None and d >= best[1]:
                continue
            poly = self.cell_polytope(fs)
            if all(poly.contains(p) for p in points):
                best = (fs, d)
        return None if best is None else best[0]

    def __len__(self):
        return len(self.maximal_cells)


@dataclass
class LiftedHull:
    base: LatticePolytope
    lift: dict                   # lattice point -> 0 / -1
    lower_faces: list            # vertex sets of the lifted lower facets
    complex: PolyhedralComplex   # P_*


def pstar(P):
    """The canonical subdivision P_* of a full-dimensional polytope with
    interior lattice points (refuses otherwise)."""
    if P.dim != P.ambient_dim:
        raise GeometryError("P_* needs a full-dimensional polytope")
    interior = set(P.lattice_points("interior"))
    if not interior:
        raise DeltaPrimeEmpty("Delta has no interior lattice point")
    lift = {}
    lifted = []
    for m in P.lattice_points():
        h = -1 if m in interior else 0
        lift[m] = h
        lifted.append(m + (h,))
    hull = LatticePolytope(lifted)
    lower = []
    cells = []
    for hs, fs in zip(hull.facets(),
                      (frozenset(v for v in hull.vertices if h.is_tight(v))
                       for h in hull.facets())):
        if hs.normal[-1] > 0:
            lower.append(fs)
            cells.append(LatticePolytope([v[:-1] for v in fs]))
    complex_ = PolyhedralComplex(cells)
    lifted_hull = LiftedHull(P, lift, lower, complex_)
    _check_pstar(P, lifted_hull)
    return lifted_hull, complex_


def _check_pstar(P, lh):
    # the lower hull evaluated at lattice points must reproduce the lift
    for m, h in lh.lift.items():
        found = None
        for fs in lh.lower_faces:
            cell = [v[:-1] for v in fs]
            poly = LatticePolytope(cell)
            if poly.contains(m):
                # linear interpolation on the lower facet
                val = _lower_value(fs, m)
                if found is None or val < found:
                    found = val
        if found != h:
            raise GeometryError(
                f"lift mismatch at {m}: lower hull gives {found}, "
                f"expected {h}")
    # Lemma-style trichotomy: each cell is in the boundary, in Delta', or
    # meets Delta' without being contained in it
    dp = P.interior_hull()
    for fs in lh.complex.cells():
        poly = lh.complex.cell_polytope(fs)
        in_boundary = any(
            all(hs.is_tight(v) for v in fs) for hs in P.facets())
        in_dp = all(dp.contains(v) for v in fs)
        meets = any(dp.contains(v) for v in fs) or \
            _polys_intersect(poly, dp)
        if not (in_boundary or in_dp or meets):
            raise GeometryError(
                f"P_* trichotomy violated at cell {sorted(fs)}")


def _lower_value(lifted_face, m):
    """Value at m of the affine function through a lifted lower facet."""
    pts = sorted(lifted_face)
    base = pts[0]
    from .intlinalg import solve_rational
    diffs = [vsub(p, base) for p in pts[1:]]
    n = len(base) - 1
    A = [[d[i] for d in diffs] for i in range(n)]
    x = solve_rational(A, list(vsub(m + (0,), base))[:-1])
    if x is None:
        return None
    val = Fraction(base[-1])
    for c, dvec in zip(x, diffs):
        val += c * dvec[-1]
    return val


def _polys_intersect(a, b):
    """Do two lattice polytopes intersect?  Exact LP feasibility."""
    from .lpsolve import maximize
    n = a.ambient_dim
    rows = []
    rhs = []
    for poly in (a, b):
        for hs in poly.facets():
            rows.append([-x for x in hs.normal])
            rhs.append(hs.offset)
        for eq, val in poly.affine_hull_equations():
            rows.append(list(eq))
            rhs.append(val)
            rows.append([-x for x in eq])
            rhs.append(-val)
    res = maximize([0] * n, rows, rhs)
    return res.status == "optimal"


def trivial_complex(P):
    """The trivial subdivision {Delta}; the base complex when Delta' is
    empty (only the hypersurface side of the pipeline applies then)."""
    return PolyhedralComplex([P])


@dataclass
class Triangulation:
    """A triangulation of Delta into lattice simplices, with certificates.

    ``regularity`` is one of "pulling-construction" (built here by regular
    pulling refinements), "lp-verified" (an exact strictly-convex lifting
    was found), or "asserted" (caller-supplied certificate, recorded as
    such in outputs).
    """

    polytope: LatticePolytope
    complex: PolyhedralComplex
    base: str                    # "pstar" | "trivial"
    regularity: str
    pulling_order: tuple = ()
    standard_checked: bool = False

    @property
    def maximal_simplices(self):
        return [tuple(sorted(c.vertices)) for c in self.complex.maximal_cells]

    def sorted_simplices(self):
        return sorted(self.maximal_simplices)

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self.polytope == other.polytope
                and self.sorted_simplices() == other.sorted_simplices())


def _pull(cells, v):
    """One pulling refinement step at the point v."""
    out = []
    for cell in cells:
        if not cell.contains(v):
            out.append(cell)
            continue
        if len(cell.vertices) == cell.dim + 1 and v in cell.vertices:
            out.append(cell)  # simplex already coned at v
            continue
        replaced = False
        for fs in cell.faces_of_dim(cell.dim - 1):
            facet = cell.face_polytope(fs)
            if facet.contains(v):
                continue
            out.append(LatticePolytope(sorted(fs | {v})))
            replaced = True
        if not replaced:
            # v is the unique point of a 0-dim cell
            out.append(cell)
    return out


def standard_triangulation(P, order=None, require_interior=True):
    """Star-like standard triangulation by pulling all lattice points.

    order: explicit sequence of lattice points (must enumerate all of
    them), or None for ascending lexicographic.  When Delta has no
    interior point, P_* degenerates to the trivial subdivision and the
    result is a plain regular standard triangulation (the mirror pipeline
    will still refuse such polytopes).
    """
    pts = P.lattice_points()
    if order is None:
        order = list(pts)
    else:
        order = [tuple(p) for p in order]
        if sorted(order) != sorted(pts):
            raise TriangulationError(
                "pulling order must enumerate the lattice points of Delta "
                f"exactly once ({len(order)} given, {len(pts)} expected)")
    try:
        _, base = pstar(P)
        base_tag = "pstar"
    except DeltaPrimeEmpty:
        if require_interior:
            raise
        base = trivial_complex(P)
        base_tag = "trivial"
    cells = list(base.maximal_cells)
    for v in order:
        cells = _pull(cells, v)
    for cell in cells:
        if len(cell.vertices) != cell.dim + 1 or cell.dim != P.dim:
            raise TriangulationError(
                "pulling did not reach a full triangulation",
                simplex=tuple(cell.vertices))
    tri = Triangulation(P, PolyhedralComplex(cells), base_tag,
                        "pulling-construction", tuple(order))
    check_standard(tri)
    return tri


ORDER_STRATEGIES = {
    "lex": lambda pts: sorted(pts),
    "revlex": lambda pts: sorted(pts, reverse=True),
    "sumlex": lambda pts: sorted(pts, key=lambda p: (sum(p), p)),
    "revsumlex": lambda pts: sorted(pts, key=lambda p: (-sum(p), p)),
    "colex": lambda pts: sorted(pts, key=lambda p: tuple(reversed(p))),
    "revcolex": lambda pts: sorted(pts, key=lambda p: tuple(reversed(p)),
                                   reverse=True),
}


def order_points(P, name):
    if name not in ORDER_STRATEGIES:
        raise TriangulationError(f"unknown pulling order {name!r}")
    return ORDER_STRATEGIES[name](P.lattice_points())


def alternative_triangulation(P, primary):
    """A standard triangulation distinct from ``primary``, found by trying
    the named pulling orders; (name, tri), or (None, None) when every
    strategy reproduces the primary triangulation."""
    for name in ("revlex", "sumlex", "revsumlex", "colex", "revcolex"):
        try:
            tri = standard_triangulation(P, order=order_points(P, name),
                                          require_interior=False)
        except TriangulationError:
            continue
        if tri.sorted_simplices() != primary.sorted_simplices():
            return name, tri
    return None, None


def simplex_determinant(simplex):
    verts = sorted(simplex)
    return det([list(vsub(v, verts[0])) for v in verts[1:]])


def check_standard(tri):
    """Every maximal simplex must be unimodular; the witness determinant
    rides along on failure."""
    for s in tri.maximal_simplices:
        d = simplex_determinant(s)
        if abs(d) != 1:
            raise TriangulationError(
                f"non-standard simplex {list(s)} (determinant {d}); "
                "retry with a different pulling order",
                simplex=s, determinant=d)
    total = len(tri.maximal_simplices)
    vol = tri.polytope.normalized_volume()
    if total != vol:
        raise TriangulationError(
            f"triangulation has {total} unimodular cells but Delta has "
            f"normalized volume {vol}")
    tri.standard_checked = True
    return True


@dataclass
class StarLikeReport:
    ok: bool
    reason: str = ""
    witness: tuple = ()
    regularity: str = ""


def is_star_like(tri, P, search_certificate=True):
    """Is the triangulation a regular refinement of P_* by standard
    simplices?

    For triangulations built here, regularity holds by construction.  For
    user-supplied ones an exact rational lifting is searched: heights per
    cell with equality at shared vertices and a strict kink across every
    interior wall (local strict convexity implies global on a convex
    domain).
    """
    if tri.polytope != P:
        return StarLikeReport(False, "triangulation is not of this polytope")
    simplices = tri.sorted_simplices()
    n = P.dim
    # simplices, covering, unimodularity
    volume = 0
    for s in simplices:
        if len(s) != n + 1:
            return StarLikeReport(False, "cell is not a full-dim simplex", s)
        d = simplex_determinant(s)
        if d == 0:
            return StarLikeReport(False, "degenerate cell", s)
        if abs(d) != 1:
            return StarLikeReport(False,
                                  f"non-standard simplex (det {d})", s)
        volume += abs(d)
        for v in s:
            if not P.contains(v):
                return StarLikeReport(False, "cell leaves Delta", s)
    if volume != P.normalized_volume():
        return StarLikeReport(
            False, f"cells cover volume {volume} of "
            f"{P.normalized_volume()}")
    # facet pairing: interior facets twice, boundary facets once
    from collections import Counter
    facet_count = Counter()
    for s in simplices:
        for i in range(len(s)):
            facet_count[frozenset(s[:i] + s[i + 1:])] += 1
    for f, c in facet_count.items():
        on_boundary = any(all(hs.is_tight(v) for v in f)
                          for hs in P.facets())
        expected = 1 if on_boundary else 2
        if c != expected:
            return StarLikeReport(
                False, f"facet pairing violated (seen {c}, expected "
                f"{expected})", tuple(sorted(f)))
    # refinement of P_*
    try:
        _, base = pstar(P)
    except DeltaPrimeEmpty:
        base = trivial_complex(P)
    for s in simplices:
        if base.smallest_cell_containing(s) is None:
            return StarLikeReport(
                False, "cell not contained in any cell of P_*", s)
    # regularity
    if tri.regularity == "pulling-construction":
        return StarLikeReport(True, regularity="pulling-construction")
    if not search_certificate:
        return StarLikeReport(True, regularity="asserted")
    ok = _regularity_lp(simplices, n)
    if not ok:
        return StarLikeReport(False, "no strictly convex lifting exists")
    return StarLikeReport(True, regularity="lp-verified")


def _regularity_lp(simplices, n):
    """Exact feasibility of a strictly convex cell-wise affine lifting."""
    nv = n + 1  # affine function per cell: (a_1..a_n, b)
    idx = {s: i for i, s in enumerate(simplices)}
    nvar = nv * len(simplices)

    def row_for(i, point, sign=1):
        row = [0] * nvar
        for k in range(n):
            row[nv * i + k] = sign * point[k]
        row[nv * i + n] = sign
        return row

    A_eq = []
    b_eq = []
    # shared-vertex equalities along a chain per vertex
    incident = {}
    for s in simplices:
        for v in s:
            incident.setdefault(v, []).append(idx[s])
    for v, cells in incident.items():
        for i, j in zip(cells, cells[1:]):
            r = row_for(i, v)
            r2 = row_for(j, v, sign=-1)
            A_eq.append([x + y for x, y in zip(r, r2)])
            b_eq.append(0)
    # strict kink across interior walls
    facet_owner = {}
    A_lt = []
    b_lt = []
    for s in simplices:
        for i in range(len(s)):
            f = frozenset(s[:i] + s[i + 1:])
            if f in facet_owner:
                j = facet_owner[f]
                other = simplices[j]
                w = next(v for v in other if v not in f)
                # l_i(w) < l_j(w): value on the far vertex must exceed the
                # continuation from this side
                r = row_for(idx[s], w)
                r2 = row_for(j, w, sign=-1)
                A_lt.append([x + y for x, y in zip(r, r2)])
                b_lt.append(0)
            else:
                facet_owner[f] = idx[s]
    from .lpsolve import feasible_strict
    ok, _ = feasible_strict(A_eq, b_eq, A_lt, b_lt)
    return ok


def triangulation_from_cells(P, cell_vertex_lists, regularity="unknown"):
    """Build a Triangulation object from explicit cells (user input)."""
    cells = [LatticePolytope([tuple(v) for v in c])
             for c in cell_vertex_lists]
    try:
        pstar(P)
        base_tag = "pstar"
    except DeltaPrimeEmpty:
        base_tag = "trivial"
    return Triangulation(P, PolyhedralComplex(cells), base_tag, regularity)


@dataclass
class FanSystem:
    sigma: Cone
    sigma_check: Cone
    Sigma: Fan
    Sigma_star: Fan
    Sigma_check: Fan
    cone_of_cell: dict       # frozenset(cell verts) -> Cone of Sigma


def fans_from_data(P, tri):
    """Sigma (over the triangulation), Sigma_* (over P_*), and the star
    subdivision Sigma-check of the dual cone along the ray rho = (0,..,1).

    Every cone of Sigma and Sigma-check must be standard.
    """
    sigma = cone_over(P)
    sigma_check = dual_cone(sigma)
    n = P.ambient_dim + 1
    cone_of_cell = {}
    max_cones = []
    for s in tri.maximal_simplices:
        c = Cone([v + (1,) for v in s], n)
        if not is_standard_cone(c):
            raise TriangulationError(
                f"cone over simplex {list(s)} is not standard", simplex=s)
        cone_of_cell[frozenset(s)] = c
        max_cones.append(c)
    Sigma = Fan(max_cones, n)
    try:
        _, base = pstar(P)
        star_cells = base.maximal_cells
    except DeltaPrimeEmpty:
        star_cells = [P]
    Sigma_star = Fan([Cone([v + (1,) for v in c.vertices], n)
                      for c in star_cells], n)
    # refinement: every Sigma cone lies in exactly one maximal Sigma_* cone
    for c in max_cones:
        houses = [cs for cs in Sigma_star.maximal_cones
                  if all(cs.contains(g) for g in c.generators)]
        if len(houses) != 1:
            raise GeometryError(
                "Sigma does not refine Sigma_* cleanly "
                f"(cone sits in {len(houses)} cells)")
    rho = tuple([0] * P.ambient_dim + [1])
    check_max = []
    for hs in sigma_check.facets():
        tight = [g for g in sigma_check.generators if dot(hs.normal, g) == 0]
        c = Cone(tight + [rho], n)
        if not is_standard_cone(c):
            raise GeometryError(
                f"star subdivision of the dual cone is singular at "
                f"{list(c.generators)}")
        check_max.append(c)
    Sigma_check = Fan(check_max, n)
    if len(check_max) != len(P.vertices):
        raise GeometryError(
            "Sigma-check should have one maximal cone per vertex of Delta")
    return FanSystem(sigma, sigma_check, Sigma, Sigma_star, Sigma_check,
                     cone_of_cell)
