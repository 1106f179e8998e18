"""The mirror side of the combinatorics: the shifted dual cone hull, the
Newton data of the potential, the face duality with P_*, the projection
maps from faces of Delta to faces of Delta', the dual intersection complex
of the central fibre, and per-cell stratum profiles.

The unbounded polyhedron sigma-check-o (the convex hull of the nonzero
lattice points of the dual cone) is never enumerated pointwise; it is
handled through its inequality description as the Newton polyhedron of the
0/-1 lift, with vertices and recession rays obtained by homogenization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlinalg import dot, rank, vsub
from .lattice import (
    Cone,
    GeometryError,
    LatticePolytope,
    cone_over,
    dd_extreme_rays,
    dual_cone,
)
from .subdivide import DeltaPrimeEmpty, PolyhedralComplex, pstar


@dataclass(frozen=True)
class PolyhedronFace:
    """A face of sigma-check-o: which vertices and recession rays lie on
    it.  Bounded iff no rays."""

    vertex_idx: frozenset
    ray_idx: frozenset
    dim: int

    @property
    def bounded(self):
        return not self.ray_idx


@dataclass
class MirrorData:
    analysis: object                # PolytopeAnalysis of Delta
    sigma: Cone
    sigma_check: Cone
    rho: tuple
    inequalities: list              # (normal in N-bar, rhs) : <n, x> >= rhs
    o_vertices: list                # integral vertices of sigma-check-o
    o_rays: list                    # recession ray generators (= sigma-check)
    o_faces: list                   # PolyhedronFace, proper nonempty faces
    duality: dict                   # frozenset(P_* cell verts) -> face index
    delta_check_0: LatticePolytope
    delta_check: LatticePolytope
    w_monomials: list               # rho and one lifted normal per facet

    point_ineq: dict = field(default_factory=dict)  # m -> ((m,1), -h(m))

    def dual_face(self, cell_vertices):
        return self.o_faces[self.duality[frozenset(cell_vertices)]]

    def monomials_on_dual_face(self, cell_vertices):
        """The w-monomials lying on the face of sigma-check-o dual to the
        given P_* cell; their count decides whether the hypersurface meets
        the corresponding stratum."""
        conds = [self.point_ineq[m] for m in cell_vertices]
        return [u for u in self.w_monomials
                if all(dot(nrm, u) == r for nrm, r in conds)]


def build_mirror_data(analysis, pstar_complex=None):
    """Assemble the mirror combinatorics (requires Delta' nonempty)."""
    P = analysis.delta
    if analysis.delta_prime is None:
        raise DeltaPrimeEmpty(
            "mirror side undefined: Delta has no interior lattice point")
    if pstar_complex is None:
        _, pstar_complex = pstar(P)
    n = P.ambient_dim
    nbar = n + 1
    sigma = cone_over(P)
    sigma_check = dual_cone(sigma)
    rho = tuple([0] * n + [1])

    # sigma-check-o = Newton polyhedron of the 0/-1 lift h_*:
    #   <(v,1), x> >= 0 for boundary vertices of P_*,
    #   <(v,1), x> >= 1 for vertices of Delta'
    ineqs = []
    for v in P.vertices:
        ineqs.append((v + (1,), 0))
    for v in analysis.delta_prime.vertices:
        ineqs.append((v + (1,), 1))
    hom = [tuple(nrm) + (-r,) for nrm, r in ineqs]
    hom.append(tuple([0] * nbar + [1]))
    rays = dd_extreme_rays(hom, nbar + 1)
    o_vertices = []
    o_rays = []
    for ray in rays:
        if ray[-1] > 0:
            if ray[-1] != 1:
                raise GeometryError(
                    "sigma-check-o has a non-integral vertex; the lift is "
                    "inconsistent")
            o_vertices.append(ray[:-1])
        else:
            o_rays.append(ray[:-1])
    if set(o_rays) != set(sigma_check.generators):
        raise GeometryError(
            "recession cone of sigma-check-o differs from the dual cone")
    o_vertices.sort()
    o_rays.sort()

    # faces via facet-incidence closure on (vertices, rays)
    inc = []
    for nrm, r in ineqs:
        vs = frozenset(i for i, u in enumerate(o_vertices)
                       if dot(nrm, u) == r)
        rs = frozenset(j for j, w in enumerate(o_rays) if dot(nrm, w) == 0)
        inc.append((vs, rs))
    whole = (frozenset(range(len(o_vertices))), frozenset(range(len(o_rays))))
    found = {whole}
    frontier = {pair for pair in inc if pair[0]}
    found |= frontier
    while frontier:
        nxt = set()
        for a in frontier:
            for b in inc:
                c = (a[0] & b[0], a[1] & b[1])
                if c[0] and c not in found:
                    nxt.add(c)
        found |= nxt
        frontier = nxt
    found.discard(whole)
    o_faces = []
    for vs, rs in found:
        pts = [o_vertices[i] for i in sorted(vs)]
        dirs = [vsub(p, pts[0]) for p in pts[1:]] + \
               [o_rays[j] for j in sorted(rs)]
        o_faces.append(PolyhedronFace(vs, rs, rank(dirs)))

    # duality with P_*: cell tau -> face where all its lift inequalities
    # are tight
    tight_of_point = {}
    lift = {m: (-1 if analysis.delta_prime.contains(m) else 0)
            for m in P.lattice_points()}
    for m in P.lattice_points():
        nrm = m + (1,)
        rhs = -lift[m]
        vs = frozenset(i for i, u in enumerate(o_vertices)
                       if dot(nrm, u) == rhs)
        rs = frozenset(j for j, w in enumerate(o_rays) if dot(nrm, w) == 0)
        tight_of_point[m] = (vs, rs)
    face_index = {(f.vertex_idx, f.ray_idx): i for i, f in enumerate(o_faces)}
    duality = {}
    for cell_vs in pstar_complex.cells():
        vs = frozenset(range(len(o_vertices)))
        rs = frozenset(range(len(o_rays)))
        for m in cell_vs:
            mv, mr = tight_of_point[m]
            vs &= mv
            rs &= mr
        key = (vs, rs)
        if key not in face_index:
            raise GeometryError(
                f"P_* cell {sorted(cell_vs)} has no dual face")
        duality[frozenset(cell_vs)] = face_index[key]
    if len(set(duality.values())) != len(duality) or \
            len(duality) != len(o_faces):
        raise GeometryError(
            "P_* / sigma-check-o duality is not a bijection "
            f"({len(duality)} cells, {len(o_faces)} proper faces)")
    d = analysis.hypersurface_dim
    for cell_vs, fi in duality.items():
        cdim = pstar_complex.cells()[frozenset(cell_vs)]
        if cdim + o_faces[fi].dim != d + 1:
            raise GeometryError(
                f"duality dimension mismatch at cell {sorted(cell_vs)}")

    # Newton polytope of the potential w, and the compactifying polytope
    facet_lifts = [hs.normal + (hs.offset,) for hs in P.facets()]
    delta_check_0 = LatticePolytope([rho] + facet_lifts)
    delta_check = LatticePolytope([tuple([0] * nbar), rho] + facet_lifts)
    dp_dim = analysis.delta_prime.dim
    want = d + 2 if dp_dim > 0 else d + 1
    if delta_check_0.dim != want:
        raise GeometryError(
            f"dim of the potential's Newton polytope is {delta_check_0.dim},"
            f" expected {want}")
    point_ineq = {m: (m + (1,), -lift[m]) for m in P.lattice_points()}
    md = MirrorData(analysis, sigma, sigma_check, rho, ineqs,
                    o_vertices, o_rays, o_faces, duality,
                    delta_check_0, delta_check, [rho] + facet_lifts,
                    point_ineq)
    _check_anti_isomorphism(pstar_complex, md)
    _check_dual_simplex_dims(analysis, md)
    return md


def _check_anti_isomorphism(pstar_complex, md):
    cells = list(pstar_complex.cells())
    for a in cells:
        fa = md.o_faces[md.duality[frozenset(a)]]
        for b in cells:
            fb = md.o_faces[md.duality[frozenset(b)]]
            a_in_b = a <= b
            fb_in_fa = (fb.vertex_idx <= fa.vertex_idx
                        and fb.ray_idx <= fa.ray_idx)
            if a_in_b != fb_in_fa:
                raise GeometryError(
                    "P_* / sigma-check-o duality is not inclusion-reversing"
                    f" at {sorted(a)} vs {sorted(b)}")


def _check_dual_simplex_dims(analysis, md):
    """Structural form of the boundary-subdivision dimension count: the
    hull of rho and the lifted normals of the facets through a proper face
    tau is a simplex of dimension d + 1 - dim tau."""
    P = analysis.delta
    d = analysis.hypersurface_dim
    for fs, fdim in P.proper_faces().items():
        gens = [hs.normal + (hs.offset,) for hs in P.facets()
                if all(hs.is_tight(v) for v in fs)]
        if len(gens) != d + 1 - fdim:
            raise GeometryError(
                f"face {sorted(fs)} lies on {len(gens)} facets, expected "
                f"{d + 1 - fdim} (non-simple polytope?)")
        simplex = LatticePolytope([md.rho] + gens)
        if simplex.dim != d + 1 - fdim:
            raise GeometryError(
                f"dual simplex at face {sorted(fs)} has dim {simplex.dim}")


# ---------------------------------------------------------------------------
# projection maps p^1, p^2, p
# ---------------------------------------------------------------------------

@dataclass
class ProjectionMaps:
    """p1: proper faces of Delta -> middle cells of P_*; p2: middle cells
    -> faces of Delta'; p = p2 o p1 extended by p(Delta) = Delta'.  All
    keys and values are vertex frozensets of the respective polytopes."""

    p1: dict
    p2: dict
    p: dict
    delta_vertices: frozenset
    dp_vertices: frozenset
    face_dims: dict        # Delta face vs -> dim (incl. Delta itself)
    dp_face_dims: dict     # Delta' face vs -> dim (incl. Delta')

    def preimages(self, dp_face_vs):
        return [f for f, img in self.p.items() if img == dp_face_vs]


def p_maps(analysis, pstar_complex=None):
    P = analysis.delta
    dp = analysis.delta_prime
    if dp is None:
        raise DeltaPrimeEmpty("p maps need a nonempty Delta'")
    if pstar_complex is None:
        _, pstar_complex = pstar(P)
    interior = set(P.lattice_points("interior"))

    p1 = {}
    p2 = {}
    for cell_vs, cdim in pstar_complex.cells().items():
        bd = [v for v in cell_vs if v not in interior]
        ins = [v for v in cell_vs if v in interior]
        if not bd or not ins:
            continue  # boundary cell or cell inside Delta'
        bd_face = P.minimal_face_containing(bd)
        if bd_face is None or \
                LatticePolytope(bd).vertex_set() != \
                frozenset(P.face_polytope(bd_face).vertices):
            raise GeometryError(
                f"middle cell {sorted(cell_vs)} does not cap a face of "
                "Delta")
        dp_face = dp.minimal_face_containing(ins)
        if dp_face is None or \
                LatticePolytope(ins).vertex_set() != \
                frozenset(dp.face_polytope(dp_face).vertices):
            raise GeometryError(
                f"middle cell {sorted(cell_vs)} does not cap a face of "
                "Delta'")
        if bd_face in p1:
            raise GeometryError(
                f"two middle cells over the same face {sorted(bd_face)}")
        p1[bd_face] = frozenset(cell_vs)
        p2[frozenset(cell_vs)] = dp_face

    proper = P.proper_faces()
    if set(p1) != set(proper):
        missing = set(proper) - set(p1)
        raise GeometryError(
            f"p1 is not a bijection; unmatched faces {sorted(map(sorted, missing))}")

    pmap = {f: p2[p1[f]] for f in p1}
    pmap[frozenset(P.vertices)] = frozenset(dp.vertices)

    # cross-check against the explicit half-space description
    for f, fdim in proper.items():
        conds = [(hs.normal, -hs.offset + 1) for hs in P.facets()
                 if all(hs.is_tight(v) for v in f)]
        hit = frozenset(v for v in dp.vertices
                        if all(dot(nrm, v) == val for nrm, val in conds))
        if hit != pmap[f]:
            raise GeometryError(
                f"p({sorted(f)}) differs between the P_* route "
                f"{sorted(pmap[f])} and the half-space route {sorted(hit)}")
    face_dims = dict(proper)
    face_dims[frozenset(P.vertices)] = P.dim
    dp_face_dims = dict(dp.faces())
    for f, img in pmap.items():
        if face_dims[f] < dp_face_dims[img]:
            raise GeometryError(
                f"dim p(tau) exceeds dim tau at {sorted(f)}")
    # p surjects onto faces of Delta' of dim < dim Delta
    targets = {vs for vs, dd in dp_face_dims.items() if dd < P.dim}
    if not targets <= set(pmap.values()):
        raise GeometryError("p misses a face of Delta'")
    return ProjectionMaps(p1, p2, pmap, frozenset(P.vertices),
                          frozenset(dp.vertices), face_dims, dp_face_dims)


# ---------------------------------------------------------------------------
# dual intersection complex
# ---------------------------------------------------------------------------

@dataclass
class DualIntersectionComplex:
    vertices: list            # lattice points of Delta' plus the marker "u"
    simplices: dict           # frozenset of vertices -> multiplicity
    topology: str             # "ball" | "sphere"
    dimension: int
    euler_characteristic: int
    curve_components: int | None = None   # only for d = 1
    curve_betti1: int | None = None


def dual_intersection_complex(analysis, tri):
    P = analysis.delta
    dp = analysis.delta_prime
    if dp is None:
        raise DeltaPrimeEmpty("dual complex needs a nonempty Delta'")
    d = analysis.hypersurface_dim
    dp_points = set(dp.lattice_points())
    cells_in_dp = {fs: cd for fs, cd in tri.complex.cells().items()
                   if set(fs) <= dp_points}
    dp_dim = dp.dim
    # relative boundary of Delta' (its own facets); empty for a point
    dp_facets = dp.facets() if dp.dim > 0 else []

    def in_rel_boundary(fs):
        return any(all(hs.is_tight(v) for v in fs) for hs in dp_facets)

    u = "u"
    simplices = {frozenset([u]): 1}
    for fs in cells_in_dp:
        simplices[frozenset(fs)] = 1
    if dp_dim <= d - 1:
        topology, dim_out = "ball", dp_dim + 1
        for fs in cells_in_dp:
            simplices[frozenset(fs) | {u}] = 1
    elif dp_dim == d:
        topology, dim_out = "sphere", d + 1
        for fs in cells_in_dp:
            simplices[frozenset(fs) | {u}] = 1 if in_rel_boundary(fs) else 2
    elif dp_dim == d + 1:
        topology, dim_out = "sphere", d + 1
        for fs in cells_in_dp:
            if in_rel_boundary(fs):
                simplices[frozenset(fs) | {u}] = 1
    else:
        raise GeometryError("impossible interior-hull dimension")
    chi = 0
    for s, mult in simplices.items():
        k = len(s) - 1
        chi += mult * (-1) ** k
    expected = 1 if topology == "ball" else 1 + (-1) ** (d + 1)
    if chi != expected:
        raise GeometryError(
            f"dual complex Euler characteristic {chi}, expected {expected}")
    comp = None
    b1 = None
    if d == 1:
        comp = sum(m for s, m in simplices.items() if len(s) == 2)
        tcount = sum(m for s, m in simplices.items() if len(s) == 3)
        b1 = 2 * tcount - comp + 1
    verts = sorted(dp_points) + [u]
    return DualIntersectionComplex(verts, simplices, topology, dim_out,
                                   chi, comp, b1)


# ---------------------------------------------------------------------------
# stratum profiles
# ---------------------------------------------------------------------------

@dataclass
class StratumProfile:
    cell: tuple               # sorted vertices of tau
    dim: int
    pstar_cell: frozenset
    pstar_dim: int
    delta_face: frozenset
    delta_face_dim: int
    in_boundary: bool         # tau inside the boundary of Delta
    meets_delta_prime: bool   # tau intersects Delta'
    in_delta_prime: bool
    in_boundary_delta_prime: bool   # boundary taken in the topology of Delta
    w0_nonempty: bool         # does the hypersurface meet the open stratum
    # Cor-handlebody data, only for boundary cells: (handlebody dim, torus
    # rank) for general t and for t = 0; None marks an empty stratum
    fiber_general: tuple | None = None
    fiber_zero: tuple | None = None


@dataclass
class StratumData:
    profiles: dict            # frozenset(cell) -> StratumProfile
    y_tor: dict               # k -> list of (omega vs, [cells tau >= omega])
    y_ntor: dict              # k -> list of (omega vs, [cells tau >= omega])
    max_nonempty_level: int


def stratum_profiles(analysis, tri, pstar_complex=None, mirror=None):
    P = analysis.delta
    dp = analysis.delta_prime
    if dp is None:
        raise DeltaPrimeEmpty("stratum profiles need a nonempty Delta'")
    if pstar_complex is None:
        _, pstar_complex = pstar(P)
    if mirror is None:
        mirror = build_mirror_data(analysis, pstar_complex)
    d = analysis.hypersurface_dim
    dp_points = set(dp.lattice_points())
    dp_full = dp.dim == P.dim
    dp_facets = dp.facets() if dp.dim > 0 else []
    full_face = frozenset(P.vertices)

    profiles = {}
    for fs, cdim in tri.complex.cells().items():
        verts = sorted(fs)
        star_cell = pstar_complex.smallest_cell_containing(verts)
        if star_cell is None:
            raise GeometryError(f"cell {verts} escapes P_*")
        star_dim = pstar_complex.cells()[star_cell]
        delta_face = P.minimal_face_containing(verts)
        dfd = P.dim if delta_face == full_face else \
            P.faces()[delta_face]
        in_boundary = delta_face != full_face
        in_dp = set(verts) <= dp_points
        if dp_full:
            in_bdp = in_dp and any(
                all(hs.is_tight(v) for v in verts) for hs in dp_facets)
        else:
            in_bdp = in_dp
        monos = mirror.monomials_on_dual_face(star_cell)
        w0_nonempty = len(monos) >= 2
        fiber_general = None
        fiber_zero = None
        if in_boundary:
            codim = d + 1 - star_dim
            torus_rank = star_dim - cdim
            fiber_general = (codim - 1, torus_rank) if codim >= 1 else None
            fiber_zero = (codim - 2, torus_rank + 1) if codim >= 2 else None
        profiles[fs] = StratumProfile(
            tuple(verts), cdim, star_cell, star_dim, delta_face, dfd,
            in_boundary, not in_boundary, in_dp, in_bdp, w0_nonempty,
            fiber_general, fiber_zero)

    # Y^k decomposition: toric part from cells of P inside Delta' of
    # dimension k-1; nontoric part Y^{k-1}_tor cap W_0
    cells_in_dp = {fs: profiles[fs].dim for fs in profiles
                   if profiles[fs].in_delta_prime}
    members = {}
    for omega in cells_in_dp:
        members[omega] = [fs for fs in profiles if omega <= fs]
    y_tor = {}
    y_ntor = {}
    levels = set()
    for omega, taus in members.items():
        k = cells_in_dp[omega] + 1
        y_tor.setdefault(k, []).append((omega, taus))
        levels.add(k)
        y_ntor.setdefault(k + 1, []).append((omega, taus))
    max_level = 0
    for k, pieces in y_tor.items():
        if pieces:
            max_level = max(max_level, k)
    for k, pieces in y_ntor.items():
        for omega, taus in pieces:
            if any(profiles[t].w0_nonempty for t in taus):
                max_level = max(max_level, k)
                break
    return StratumData(profiles, y_tor, y_ntor, max_level)
