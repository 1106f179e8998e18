"""Exact lattice geometry: polytopes, cones, fans.

All coordinates are integers and all predicates are decided by integer or
rational arithmetic, so results are exact at any coordinate size.  The
convex-hull engine is a double-description computation on the
homogenization cone; faces are identified by their vertex sets.

Scale expectations: ambient dimension <= 8 and a few hundred points.  The
enumeration of lattice points scans an axis-aligned bounding box and
filters by the facet inequalities, which is O(prod(box) * #facets); fine
at desk scale, hopeless beyond it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .intlinalg import (
    det,
    dot,
    integer_kernel,
    primitive,
    rank,
    saturated_row_basis,
    solve_integer,
    solve_rational,
    vadd,
    vsub,
)


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


# ---------------------------------------------------------------------------
# double description: rays of {x : <a,x> >= 0 for a in ineqs}
# ---------------------------------------------------------------------------

def _initial_simplicial(ineqs, n):
    """Pick n independent inequalities and build the dual basis rays."""
    chosen = []
    for a in ineqs:
        if rank(chosen + [a]) > len(chosen):
            chosen.append(a)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        return None, None
    # rays r_j with <chosen_i, r_j> = 0 for i != j and > 0 for i == j
    rays = []
    for j in range(n):
        rows = [chosen[i] for i in range(n) if i != j]
        kern = integer_kernel(rows)
        assert len(kern) == 1
        r = kern[0]
        s = dot(chosen[j], r)
        assert s != 0
        if s < 0:
            r = tuple(-x for x in r)
        rays.append(primitive(r))
    return chosen, rays


def dd_extreme_rays(ineqs, n):
    """Extreme rays of the pointed cone {x in R^n : <a,x> >= 0 for all a}.

    Raises GeometryError when the cone is not pointed (contains a line).
    Returns primitive integer generators, sorted.
    """
    ineqs = [tuple(a) for a in ineqs]
    if rank(ineqs) < n:
        raise GeometryError("cone contains a line; not pointed")
    chosen, rays = _initial_simplicial(ineqs, n)
    processed = list(chosen)
    remaining = [a for a in ineqs if a not in chosen]
    for a in remaining:
        vals = [dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(a)
            continue
        plus = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        minus = [r for r, v in zip(rays, vals) if v < 0]
        new = []
        for rp in plus:
            for rm in minus:
                # adjacency: tight inequalities common to both span rank n-2
                tight = [q for q in processed
                         if dot(q, rp) == 0 and dot(q, rm) == 0]
                if rank(tight) != n - 2:
                    continue
                comb = vsub(
                    tuple(dot(a, rp) * x for x in rm),
                    tuple(dot(a, rm) * x for x in rp),
                )
                new.append(primitive(comb))
        rays = plus + zero + list(dict.fromkeys(new))
        processed.append(a)
    return sorted(set(rays))


def cone_facets_from_rays(gens, n):
    """Facet normals of cone(gens) inside its linear span.

    For a full-dimensional cone the facet normals live in the ambient dual
    space; for a lower-dimensional cone they are returned together with the
    equations of the span: (facet_normals, span_equations).
    """
    gens = [tuple(g) for g in gens]
    span_eqs = integer_kernel(gens)  # <e, x> = 0 on the span
    r = n - len(span_eqs)
    if r == 0:
        return [], span_eqs
    # work inside the span using a saturated basis
    basis = saturated_row_basis(gens)
    local = [_coords_in_basis(g, basis) for g in gens]
    if r == 1:
        signs = {1 if q[0] > 0 else -1 for q in local}
        if len(signs) == 2:
            return [], span_eqs  # a line; no supporting facet
        normals_local = [(signs.pop(),)]
    else:
        normals_local = dd_extreme_rays(local, r)
    # lift local normals n_loc (acting on coordinates) to ambient functionals
    normals = [_lift_functional(nl, basis) for nl in normals_local]
    return normals, span_eqs


def _coords_in_basis(v, basis):
    """Coordinates of v in terms of an integral basis of a saturated lattice."""
    A = [[basis[j][i] for j in range(len(basis))] for i in range(len(v))]
    x = solve_integer(A, list(v))
    if x is None:
        raise GeometryError("point not in the sublattice spanned by basis")
    return tuple(x)


def _lift_functional(n_loc, basis):
    """Ambient integer functional restricting to n_loc on the given basis."""
    A = [list(b) for b in basis]
    x = solve_integer(A, list(n_loc))
    if x is None:
        # the basis is saturated, so a rational solution can be scaled; this
        # should not happen, but fail loudly if it does
        raise GeometryError("cannot lift functional to the ambient lattice")
    return tuple(x)


# ---------------------------------------------------------------------------
# half spaces
# ---------------------------------------------------------------------------

class HalfSpace:
    """{m : <normal, m> >= -offset} with primitive integer normal."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        if not any(normal):
            raise GeometryError("half-space normal must be nonzero")
        normal = tuple(normal)
        if primitive(normal) != normal:
            raise GeometryError("half-space normal must be primitive")
        self.normal = normal
        self.offset = offset

    def contains(self, point, strict=False):
        v = dot(self.normal, point) + self.offset
        return v > 0 if strict else v >= 0

    def is_tight(self, point):
        return dot(self.normal, point) + self.offset == 0

    def __repr__(self):
        return f"HalfSpace({self.normal}, {self.offset})"

    def __eq__(self, other):
        return (self.normal, self.offset) == (other.normal, other.offset)

    def __hash__(self):
        return hash((self.normal, self.offset))


# ---------------------------------------------------------------------------
# lattice polytopes
# ---------------------------------------------------------------------------

class LatticePolytope:
    """Convex hull of finitely many integer points, possibly of lower
    dimension than its ambient space.

    Faces are polytopes in their own right; interiors, facets and lattice
    data of a lower-dimensional polytope are taken relative to its affine
    hull, with the induced (saturated) lattice structure.
    """

    def __init__(self, points):
        points = [tuple(int(x) for x in p) for p in points]
        if not points:
            raise GeometryError("empty point set")
        dims = {len(p) for p in points}
        if len(dims) != 1:
            raise DimensionMismatch("points of mixed ambient dimension")
        self.ambient_dim = dims.pop()
        pts = sorted(set(points))
        self._base = pts[0]
        diffs = [vsub(p, self._base) for p in pts[1:]]
        self._basis = saturated_row_basis(diffs) if diffs else []
        self.dim = len(self._basis)
        # local coordinates (full-dimensional model in Z^dim)
        self._local = [self._to_local(p) for p in pts]
        self._local_facets = self._compute_local_facets()
        vert_idx = self._extreme_indices(pts)
        self.vertices = tuple(pts[i] for i in vert_idx)
        self._vertices_local = tuple(self._local[i] for i in vert_idx)
        self._faces_cache = None
        self._facets_global = None
        self._lattice_cache = {}

    # -- construction helpers ------------------------------------------------

    def _to_local(self, p):
        if self.dim == 0:
            return ()
        return _coords_in_basis(vsub(p, self._base), self._basis)

    def _from_local(self, q):
        p = self._base
        for c, b in zip(q, self._basis):
            p = vadd(p, tuple(c * x for x in b))
        return p

    def _compute_local_facets(self):
        """Facets of the full-dimensional local model as (normal, offset)."""
        if self.dim == 0:
            return []
        lifted = [q + (1,) for q in self._local]
        normals = dd_extreme_rays(lifted, self.dim + 1)
        # each facet normal (n, c) of the homogenization cone gives the
        # polytope inequality <n, x> + c >= 0
        return [(tuple(n[:-1]), n[-1]) for n in normals]

    def _extreme_indices(self, pts):
        if self.dim == 0:
            return [0]
        out = []
        for i, q in enumerate(self._local):
            tight = [n for n, c in self._local_facets if dot(n, q) + c == 0]
            if rank(tight) == self.dim:
                out.append(i)
        return out

    # -- basic protocol -------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, LatticePolytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return (f"LatticePolytope(dim={self.dim}, "
                f"vertices={list(self.vertices)})")

    def vertex_set(self):
        return frozenset(self.vertices)

    # -- membership -----------------------------------------------------------

    def contains(self, point, strict=False):
        """Membership; strict means the relative interior."""
        point = tuple(point)
        if len(point) != self.ambient_dim:
            raise DimensionMismatch("point/polytope dimension mismatch")
        d = vsub(point, self._base)
        if self._basis:
            A = [[self._basis[j][i] for j in range(len(self._basis))]
                 for i in range(self.ambient_dim)]
            x = solve_rational(A, list(d))
            if x is None:
                return False
            q = x
        else:
            if any(d):
                return False
            q = ()
        for n, c in self._local_facets:
            v = sum(Fraction(ni) * qi for ni, qi in zip(n, q)) + c
            if strict and v <= 0:
                return False
            if not strict and v < 0:
                return False
        return True

    # -- facets ----------------------------------------------------------------

    def facets(self):
        """Global HalfSpace list; the polytope is their intersection cut by
        its affine hull."""
        if self._facets_global is None:
            out = []
            for n_loc, c in self._local_facets:
                n = _lift_functional(n_loc, self._basis)
                off = c - dot(n, self._base)
                out.append(HalfSpace(n, off))
            self._facets_global = out
        return self._facets_global

    def affine_hull_equations(self):
        """Integer equations <a, x> = b cutting out the affine hull."""
        eqs = integer_kernel(self._basis) if self._basis else \
            [tuple(1 if i == j else 0 for i in range(self.ambient_dim))
             for j in range(self.ambient_dim)]
        return [(a, dot(a, self._base)) for a in eqs]

    # -- face lattice ------------------------------------------------------------

    def faces(self):
        """All nonempty faces as a dict {frozenset(vertices): dim}.

        Includes the polytope itself; the empty face is left out.
        """
        if self._faces_cache is None:
            verts = self.vertices
            if self.dim == 0:
                self._faces_cache = {frozenset(verts): 0}
            else:
                facet_sets = []
                for n, c in self._local_facets:
                    s = frozenset(
                        v for v, q in zip(verts, self._vertices_local)
                        if dot(n, q) + c == 0)
                    facet_sets.append(s)
                found = {frozenset(verts)}
                frontier = set(facet_sets)
                found |= frontier
                while frontier:
                    nxt = set()
                    for f in frontier:
                        for g in facet_sets:
                            h = f & g
                            if h and h not in found:
                                nxt.add(h)
                    found |= nxt
                    frontier = nxt
                cache = {}
                for s in found:
                    pts = sorted(s)
                    d = rank([vsub(p, pts[0]) for p in pts[1:]])
                    cache[s] = d
                self._faces_cache = cache
        return self._faces_cache

    def faces_of_dim(self, k):
        return [s for s, d in self.faces().items() if d == k]

    def face_polytope(self, vertex_set):
        return LatticePolytope(sorted(vertex_set))

    def proper_faces(self):
        full = frozenset(self.vertices)
        return {s: d for s, d in self.faces().items() if s != full}

    def facet_subpolytopes(self):
        return [self.face_polytope(s) for s in self.faces_of_dim(self.dim - 1)]

    def minimal_face_containing(self, points):
        """Smallest face containing all the given points (the carrier).

        Returns the face's vertex frozenset; None if some point lies
        outside the polytope.  Computed as the intersection of the facets
        tight on every point.
        """
        points = [tuple(p) for p in points]
        for p in points:
            if not self.contains(p):
                return None
        if self.dim == 0:
            return frozenset(self.vertices)
        tight_all = [hs for hs in self.facets()
                     if all(hs.is_tight(p) for p in points)]
        if not tight_all:
            return frozenset(self.vertices)
        return frozenset(v for v in self.vertices
                         if all(hs.is_tight(v) for hs in tight_all))

    # -- lattice points -----------------------------------------------------------

    def lattice_points(self, mode="all", dilation=1):
        """Lattice points of dilation * P; 'interior' = relative interior."""
        if mode not in ("all", "interior"):
            raise GeometryError(f"unknown mode {mode!r}")
        if dilation < 1:
            raise GeometryError("dilation must be a positive integer")
        key = (mode, dilation)
        if key not in self._lattice_cache:
            self._lattice_cache[key] = self._enumerate(mode, dilation)
        return self._lattice_cache[key]

    def _enumerate(self, mode, j):
        if self.dim == 0:
            p = tuple(j * x for x in self._base)
            return [p]
        los = []
        his = []
        for i in range(self.dim):
            cs = [j * q[i] for q in self._vertices_local]
            los.append(min(cs))
            his.append(max(cs))
        strict = (mode == "interior")
        out = []
        for q in itertools.product(*[range(lo, hi + 1)
                                     for lo, hi in zip(los, his)]):
            ok = True
            for n, c in self._local_facets:
                v = dot(n, q) + j * c
                if (v <= 0) if strict else (v < 0):
                    ok = False
                    break
            if ok:
                base = tuple(j * x for x in self._base)
                p = base
                for cc, b in zip(q, self._basis):
                    p = vadd(p, tuple(cc * x for x in b))
                out.append(p)
        return sorted(out)

    def n_lattice_points(self, mode="all", dilation=1):
        return len(self.lattice_points(mode, dilation))

    def interior_hull(self):
        """Convex hull of the interior lattice points, or None if empty."""
        pts = self.lattice_points("interior")
        if not pts:
            return None
        return LatticePolytope(pts)

    def fan_triangulation(self):
        """Triangulation into simplices (vertex tuples) by recursively
        coning the first vertex over the facets avoiding it.  Uses only the
        polytope's own vertices; cells need not be unimodular."""
        if len(self.vertices) == self.dim + 1:
            return [self.vertices]
        apex = self.vertices[0]
        out = []
        for fs in self.faces_of_dim(self.dim - 1):
            if apex in fs:
                continue
            for s in self.face_polytope(fs).fan_triangulation():
                out.append(s + (apex,))
        return out

    def normalized_volume(self):
        """dim! * volume w.r.t. the lattice induced on the affine hull."""
        if self.dim == 0:
            return 0
        total = 0
        for simplex in self.fan_triangulation():
            loc = [self._to_local(v) for v in simplex]
            m = [list(vsub(q, loc[0])) for q in loc[1:]]
            total += abs(det(m))
        return total

    def translate(self, v):
        return LatticePolytope([vadd(p, v) for p in self.vertices])

    def dilate(self, k):
        return LatticePolytope([tuple(k * x for x in p)
                                for p in self.vertices])


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

class Cone:
    """Rational polyhedral cone with primitive irredundant generators."""

    def __init__(self, generators, ambient_dim=None, _skip_reduce=False):
        gens = [tuple(int(x) for x in g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise GeometryError("ambient dimension required for zero cone")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise DimensionMismatch("generators of mixed dimension")
        gens = [primitive(g) for g in gens if any(g)]
        gens = sorted(set(gens))
        self.ambient_dim = ambient_dim
        self.dim = rank(gens)
        if not _skip_reduce:
            gens = self._irredundant(gens)
        self.generators = tuple(gens)
        self._facets = None
        self._span_eqs = None
        self._faces_cache = None

    def _irredundant(self, gens):
        if len(gens) <= 1:
            return gens
        facets, span = cone_facets_from_rays(gens, self.ambient_dim)
        if not facets:
            # simplicial inside its span, or a half-space-like degenerate;
            # test redundancy by extremality inside the span instead
            keep = []
            for g in gens:
                others = [h for h in gens if h != g]
                if not others or rank(others) < rank(gens) or \
                        not _in_cone_rational(g, others):
                    keep.append(g)
            return keep
        keep = []
        for g in gens:
            tight = [f for f in facets if dot(f, g) == 0]
            if rank(tight + list(span)) >= self.ambient_dim - 1:
                keep.append(g)
        self._facets = facets
        self._span_eqs = span
        return keep

    def _ensure_facets(self):
        if self._facets is None:
            self._facets, self._span_eqs = cone_facets_from_rays(
                list(self.generators), self.ambient_dim)
        return self._facets, self._span_eqs

    def facets(self):
        """Half-spaces through the origin cutting the cone in its span."""
        facets, _ = self._ensure_facets()
        return [HalfSpace(f, 0) for f in facets]

    def span_equations(self):
        _, span = self._ensure_facets()
        return list(span)

    def is_strictly_convex(self):
        if not self.generators:
            return True
        # strictly convex iff no nonzero x with both x and -x in the cone;
        # equivalently the generators admit a strictly positive functional
        from .lpsolve import feasible_strict
        A_lt = [[-g[i] for i in range(self.ambient_dim)]
                for g in self.generators]
        b_lt = [0] * len(self.generators)
        ok, _ = feasible_strict([], [], A_lt, b_lt)
        return ok

    def contains(self, point, strict=False):
        point = tuple(point)
        facets, span = self._ensure_facets()
        for a in span:
            if dot(a, point) != 0:
                return False
        for f in facets:
            v = dot(f, point)
            if strict and v <= 0:
                return False
            if not strict and v < 0:
                return False
        return True

    def faces(self):
        """All faces as dict {frozenset(generator tuples): dim}, including
        the cone itself and, when strictly convex, the zero face (empty
        frozenset, dim 0... recorded with dim = 0 rank)."""
        if self._faces_cache is None:
            facets, _ = self._ensure_facets()
            gens = self.generators
            if not facets:
                # simplicial: faces = subsets of generators
                cache = {}
                for r in range(len(gens) + 1):
                    for sub in itertools.combinations(gens, r):
                        cache[frozenset(sub)] = rank(list(sub))
                self._faces_cache = cache
            else:
                facet_sets = []
                for f in facets:
                    s = frozenset(g for g in gens if dot(f, g) == 0)
                    facet_sets.append(s)
                found = {frozenset(gens)}
                frontier = set(facet_sets)
                found |= frontier
                while frontier:
                    nxt = set()
                    for a in frontier:
                        for b in facet_sets:
                            c = a & b
                            if c not in found:
                                nxt.add(c)
                    found |= nxt
                    frontier = nxt
                found.add(frozenset())
                self._faces_cache = {s: rank(list(s)) for s in found}
        return self._faces_cache

    def __eq__(self, other):
        return (isinstance(other, Cone)
                and self.ambient_dim == other.ambient_dim
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.ambient_dim, self.generators))

    def __repr__(self):
        return f"Cone(dim={self.dim}, generators={list(self.generators)})"


def _in_cone_rational(v, gens):
    """Is v a nonnegative rational combination of gens?  (exact LP)"""
    from .lpsolve import maximize
    n = len(v)
    k = len(gens)
    # find lambda >= 0 with sum lambda_i g_i = v: feasibility LP
    A = []
    b = []
    for i in range(n):
        A.append([gens[j][i] for j in range(k)])
        b.append(v[i])
        A.append([-gens[j][i] for j in range(k)])
        b.append(-v[i])
    for j in range(k):
        row = [0] * k
        row[j] = -1
        A.append(row)
        b.append(0)
    res = maximize([0] * k, A, b)
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------

class Fan:
    """A fan stored by its maximal cones; faces are generated on demand.

    No attempt is made to verify fan axioms for arbitrary input; the
    constructors in this package only build fans from face-to-face
    complexes, where the axioms hold by construction.
    """

    def __init__(self, maximal_cones, ambient_dim):
        self.ambient_dim = ambient_dim
        self.maximal_cones = list(maximal_cones)

    def all_cones(self):
        seen = {}
        for c in self.maximal_cones:
            for fs, d in c.faces().items():
                key = fs
                if key not in seen:
                    seen[key] = Cone(sorted(fs), self.ambient_dim) if fs \
                        else Cone([], self.ambient_dim)
        return list(seen.values())

    def rays(self):
        out = set()
        for c in self.maximal_cones:
            out.update(c.generators)
        return sorted(out)

    def locate(self, point):
        """A maximal cone containing the point, or None."""
        for c in self.maximal_cones:
            if c.contains(point):
                return c
        return None


# ---------------------------------------------------------------------------
# module operations (the public surface of lattice_core)
# ---------------------------------------------------------------------------

def convex_hull_and_faces(points):
    """Convex hull with facets and full face lattice."""
    return LatticePolytope(points)


def lattice_points(P, mode="all", dilation=1):
    return P.lattice_points(mode, dilation)


def dual_cone(C):
    """The dual cone {n : <n, m> >= 0 for all m in C}.

    Requires a strictly convex full-dimensional input (so the dual is too);
    the zero cone is rejected since its dual is the whole space.
    """
    if not C.generators:
        raise GeometryError("zero cone: dual is the full space")
    if C.dim < C.ambient_dim:
        raise GeometryError(
            "cone is not full-dimensional; its dual contains lines "
            "(non-strict) and is not representable here")
    if not C.is_strictly_convex():
        raise GeometryError("cone is not strictly convex")
    gens = dd_extreme_rays(list(C.generators), C.ambient_dim)
    return Cone(gens, C.ambient_dim, _skip_reduce=True)


def is_standard_cone(C):
    """True iff the generators extend to a basis of the lattice.

    Decided by elementary divisors: the generator matrix must have full
    row rank equal to the generator count with all divisors 1.
    """
    gens = list(C.generators)
    if not gens:
        return True
    from .intlinalg import elementary_divisors
    divs = elementary_divisors([list(g) for g in gens])
    return len(divs) == len(gens) and all(d == 1 for d in divs)


def cone_over(P):
    """Cone({(rm, r)}) in one higher dimension; generators (v, 1) primitive-
    normalized."""
    gens = [p + (1,) for p in P.vertices]
    return Cone(gens, P.ambient_dim + 1)


def minkowski_sum(P, Q):
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("Minkowski sum needs equal ambient dims")
    pts = [vadd(p, q) for p in P.vertices for q in Q.vertices]
    return LatticePolytope(pts)
