"""Normal fans, piecewise linear support functions, and the interior-hull
analysis of a polytope: Delta', Kodaira dimension, reflexivity, nefness of
the anticanonical class, and the Minkowski decomposition Delta = Delta_K +
Delta'.

Everything assumes the ambient toric variety of Delta is smooth (every
normal cone standard); the analysis entry point enforces this and names an
offending cone otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .intlinalg import dot, solve_rational, vsub
from .lattice import (
    Cone,
    Fan,
    GeometryError,
    LatticePolytope,
    dual_cone,
    is_standard_cone,
    minkowski_sum,
)


class NonSmoothError(GeometryError):
    """The polytope's toric variety is singular; carries the bad cone."""

    def __init__(self, cone, face):
        self.cone = cone
        self.face = face
        super().__init__(
            f"normal cone at face {sorted(face)} is not standard: "
            f"generators {list(cone.generators)}")


@dataclass
class NormalFanData:
    """A complete normal fan together with its face correspondence."""

    polytope: LatticePolytope
    fan: Fan
    cone_of_face: dict  # frozenset(vertices of face) -> Cone
    walls: list         # (edge vertexset, vertex a, vertex b)

    def maximal_cone_at_vertex(self, v):
        return self.cone_of_face[frozenset([v])]

    def rays(self):
        return self.fan.rays()


def normal_fan(P):
    """Normal fan of a full-dimensional polytope, with the inclusion-
    reversing bijection between faces and cones.

    The cone at a face is generated by the primitive inward normals of the
    facets containing that face; dim(face) + dim(cone) = ambient dim.
    """
    if P.dim != P.ambient_dim:
        raise GeometryError("normal fan needs a full-dimensional polytope")
    facet_list = P.facets()
    facet_verts = []
    for hs in facet_list:
        facet_verts.append(frozenset(v for v in P.vertices if hs.is_tight(v)))
    cone_of_face = {}
    for fs, d in P.faces().items():
        normals = [hs.normal for hs, fv in zip(facet_list, facet_verts)
                   if fs <= fv]
        cone_of_face[fs] = Cone(normals, P.ambient_dim) if normals \
            else Cone([], P.ambient_dim)
    maximal = [cone_of_face[frozenset([v])] for v in P.vertices]
    walls = []
    for fs in P.faces_of_dim(1):
        a, b = sorted(fs)[:2] if len(fs) == 2 else (None, None)
        if a is None:
            verts = sorted(fs)
            a, b = verts[0], verts[-1]
        walls.append((fs, a, b))
    fan = Fan(maximal, P.ambient_dim)
    data = NormalFanData(P, fan, cone_of_face, walls)
    _check_normal_fan(data)
    return data


def _check_normal_fan(data):
    P = data.polytope
    n = P.ambient_dim
    for fs, d in P.faces().items():
        c = data.cone_of_face[fs]
        if d + c.dim != n:
            raise GeometryError(
                f"normal fan correspondence broken at face {sorted(fs)}: "
                f"dim {d} + cone dim {c.dim} != {n}")


class PLFunction:
    """Piecewise linear function on a complete simplicial fan, specified by
    its values on the primitive ray generators.

    On each maximal cone the ray values are extended linearly; the
    constructor verifies this is consistent (the function is well defined).
    """

    def __init__(self, fan_data, ray_values):
        self.fan_data = fan_data
        self.ray_values = {tuple(r): Fraction(v)
                           for r, v in ray_values.items()}
        rays = set(fan_data.rays())
        if rays != set(self.ray_values):
            raise GeometryError("ray values do not match the fan's rays")
        self._linear_reps = {}
        for v in fan_data.polytope.vertices:
            cone = fan_data.maximal_cone_at_vertex(v)
            rep = self._linear_rep(cone)
            self._linear_reps[cone.generators] = rep

    def _linear_rep(self, cone):
        rays = list(cone.generators)
        A = [list(r) for r in rays]
        b = [self.ray_values[r] for r in rays]
        m = solve_rational(A, b)
        if m is None:
            raise GeometryError(
                "ray values do not extend linearly on a maximal cone")
        # consistency on non-simplicial cones is implied by solvability
        for r, val in zip(rays, b):
            assert sum(Fraction(x) * y for x, y in zip(r, m)) == val
        return m

    def value(self, n):
        n = tuple(n)
        cone = self.fan_data.fan.locate(n)
        if cone is None:
            raise GeometryError(f"{n} not in the fan support")
        m = self._linear_reps[cone.generators]
        return sum(Fraction(x) * y for x, y in zip(n, m))

    def is_convex(self, strict=False):
        """Convexity (as a max of linear functions) across every wall."""
        for fs, va, vb in self.fan_data.walls:
            ca = self.fan_data.maximal_cone_at_vertex(va)
            cb = self.fan_data.maximal_cone_at_vertex(vb)
            ma = self._linear_reps[ca.generators]
            for r in cb.generators:
                if r in ca.generators:
                    continue
                lin = sum(Fraction(x) * y for x, y in zip(r, ma))
                actual = self.ray_values[r]
                if strict and lin >= actual:
                    return False
                if not strict and lin > actual:
                    return False
        return True

    def plus(self, other):
        vals = {r: self.ray_values[r] + other.ray_values[r]
                for r in self.ray_values}
        return PLFunction(self.fan_data, vals)

    def newton_polytope(self):
        return newton_polytope_of_pl(self)


def support_function(P, fan_data=None):
    """phi_Delta(n) = -inf <n, Delta>, strictly convex on the normal fan."""
    if fan_data is None:
        fan_data = normal_fan(P)
    vals = {}
    for r in fan_data.rays():
        vals[r] = -min(dot(r, v) for v in P.vertices)
    return PLFunction(fan_data, vals)


def anticanonical_function(fan_data):
    """PL function with value 1 on every ray (representing -K)."""
    return PLFunction(fan_data, {r: 1 for r in fan_data.rays()})


def canonical_function(fan_data):
    """phi_K: value -1 on every ray."""
    return PLFunction(fan_data, {r: -1 for r in fan_data.rays()})


def newton_polytope_of_pl(phi):
    """{m : phi(n) + <n, m> >= 0 for all n}, cut on the rays.

    Returns a LatticePolytope, or None when the polytope is empty.  On a
    complete fan the result is always bounded.
    """
    n = phi.fan_data.polytope.ambient_dim
    # homogenize: {(m, s) : <r, m> + phi(r) s >= 0, s >= 0}, cleared to ints
    ineqs = []
    for r, val in phi.ray_values.items():
        den = val.denominator
        ineqs.append(tuple(den * x for x in r) + (val.numerator,))
    ineqs.append(tuple([0] * n + [1]))
    from .lattice import dd_extreme_rays
    rays = dd_extreme_rays(ineqs, n + 1)
    verts = []
    for ray in rays:
        if ray[-1] > 0:
            if any(x % ray[-1] for x in ray[:-1]):
                raise GeometryError(
                    "Newton polytope has a non-integral vertex")
            verts.append(tuple(x // ray[-1] for x in ray[:-1]))
        else:
            raise GeometryError("Newton polyhedron is unbounded")
    if not verts:
        return None
    return LatticePolytope(verts)


@dataclass
class PolytopeAnalysis:
    delta: LatticePolytope
    normal: NormalFanData
    phi_delta: PLFunction
    delta_prime: LatticePolytope | None
    kodaira: int | None      # None encodes minus infinity (Delta' empty)
    smooth: bool
    hypersurface_dim: int    # d = dim Delta - 1
    prop_identity_checked: bool = field(default=False)

    @property
    def kodaira_label(self):
        return "-infinity" if self.kodaira is None else str(self.kodaira)


def check_smooth(fan_data):
    """Every normal cone standard; raises NonSmoothError otherwise."""
    P = fan_data.polytope
    for v in P.vertices:
        c = fan_data.maximal_cone_at_vertex(v)
        if not is_standard_cone(c):
            raise NonSmoothError(c, frozenset([v]))


def delta_prime_and_kodaira(P):
    """Interior hull, Kodaira dimension and the identity
    Newton(phi_Delta + phi_K) = Delta'.

    Requires P smooth (the identity genuinely fails otherwise).
    """
    fan_data = normal_fan(P)
    check_smooth(fan_data)
    phi = support_function(P, fan_data)
    if not phi.is_convex(strict=True):
        raise GeometryError("support function is not strictly convex "
                            "(hull computation is inconsistent)")
    dp = P.interior_hull()
    d = P.dim - 1
    kodaira = None if dp is None else min(dp.dim, d)
    # Newton(phi + phi_K) must equal the interior hull exactly
    phi_kd = phi.plus(canonical_function(fan_data))
    nw = newton_polytope_of_pl(phi_kd)
    ok = (nw is None and dp is None) or (
        nw is not None and dp is not None
        and set(nw.lattice_points()) == set(dp.lattice_points()))
    if not ok:
        raise GeometryError(
            "interior hull does not match Newton(phi_Delta + phi_K)")
    return PolytopeAnalysis(P, fan_data, phi, dp, kodaira, True, d,
                            prop_identity_checked=True)


@dataclass
class ReflexivityReport:
    reflexive: bool
    nef_anticanonical: bool
    minkowski_holds: bool | None   # None when Delta' is empty
    delta_k: LatticePolytope | None
    delta_k_reflexive: bool | None


def polar_dual(P, center):
    """{n : <n, m - center> >= -1 for m in P}; may have rational vertices,
    in which case None is returned (not a lattice polytope)."""
    n = P.ambient_dim
    ineqs = []
    for v in P.vertices:
        w = vsub(v, center)
        ineqs.append(tuple(w) + (1,))
    ineqs.append(tuple([0] * n + [1]))
    from .lattice import dd_extreme_rays
    rays = dd_extreme_rays(ineqs, n + 1)
    verts = []
    for ray in rays:
        if ray[-1] <= 0:
            raise GeometryError("polar dual unbounded (center not interior?)")
        if any(x % ray[-1] for x in ray[:-1]):
            return None
        verts.append(tuple(x // ray[-1] for x in ray[:-1]))
    return LatticePolytope(verts)


def reflexivity_and_minkowski_check(P):
    """Reflexivity, nefness of -K, and the decomposition Delta = Delta_K
    + Delta' when -K is nef (Minkowski summand check)."""
    analysis = delta_prime_and_kodaira(P)
    fan_data = analysis.normal
    interior = P.lattice_points("interior")
    reflexive = False
    if len(interior) == 1:
        pd = polar_dual(P, interior[0])
        reflexive = pd is not None
    phi_nef = analysis.phi_delta.plus(canonical_function(fan_data))
    nef = phi_nef.is_convex(strict=False)
    minkowski_holds = None
    delta_k = None
    delta_k_reflexive = None
    if nef:
        delta_k = newton_polytope_of_pl(anticanonical_function(fan_data))
        if delta_k is not None:
            dk_interior = delta_k.lattice_points("interior")
            delta_k_reflexive = (
                len(dk_interior) == 1
                and polar_dual(delta_k, dk_interior[0]) is not None)
        if analysis.delta_prime is not None and delta_k is not None:
            minkowski_holds = (
                minkowski_sum(delta_k, analysis.delta_prime) == P)
    return ReflexivityReport(reflexive, nef, minkowski_holds,
                             delta_k, delta_k_reflexive)
