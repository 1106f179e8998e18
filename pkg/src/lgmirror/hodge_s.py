"""Hodge numbers of the hypersurface from lattice data.

The generating identities, with Delta(tau) the minimal face of Delta
containing a cell tau of the triangulation:

  (-1)^p e^p(S) = - sum_{faces tau of Delta} (-1)^{dim tau} C(dim tau, p+1)
                  + sum_{cells tau}          (-1)^{dim tau}
                                             C(dim Delta(tau) - dim tau, p+1)

and, above the middle row (2p > d),

  h^{p,p}(S)   = (-1)^{p+1} sum_{faces} (-1)^{dim tau} C(dim tau, p+1)
  h^{p,d-p}(S) = sum_{cells} (-1)^{d-p+dim tau}
                             C(dim Delta(tau) - dim tau, p+1)

with everything else pinned by the Lefschetz vanishing (h^{p,q} = 0 unless
p = q or p + q = d), Poincare duality, and, on the middle row of even d,
the single surviving term of the alternating Euler sum.

Binomials follow the kill convention: C(n, k) = 0 whenever k < 0, k > n
or n < 0, which makes every sum finite exactly as written.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .lattice import GeometryError, LatticePolytope


class HodgeFormulaError(GeometryError):
    """A Hodge formula produced an impossible value (negative entry or an
    inconsistency between independent routes)."""


def binom(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# cell bookkeeping shared by both pipelines
# ---------------------------------------------------------------------------

class CellIndex:
    """Dimensions and carrier faces for every cell of a triangulation."""

    def __init__(self, P, tri):
        self.polytope = P
        self.tri = tri
        self.cell_dims = dict(tri.complex.cells())
        full = frozenset(P.vertices)
        face_dims = dict(P.faces())
        self.carrier = {}
        self.carrier_dim = {}
        for fs in self.cell_dims:
            car = P.minimal_face_containing(sorted(fs))
            if car is None:
                raise GeometryError(f"cell {sorted(fs)} escapes Delta")
            self.carrier[fs] = car
            self.carrier_dim[fs] = P.dim if car == full else face_dims[car]
        self.face_dims = face_dims  # includes Delta itself

    def cells(self):
        return self.cell_dims.items()

    def faces(self):
        return self.face_dims.items()


def ell_star_phi(omega, i, tri=None, cell_index=None):
    """phi_i of a face: two independent evaluations, which must agree.

    Direct route: (-1)^i sum_{j>=1} (-1)^j C(dim omega + 1, i - j)
    l*(j omega), with l* the relative-interior lattice point count of the
    dilation.  Triangulation route: over cells of the triangulation inside
    omega but not inside its relative boundary,
    (-1)^{i + dim tau + 1} C(dim omega - dim tau, dim omega + 1 - i).
    """
    w = omega.dim
    direct = 0
    for j in range(max(1, i - w - 1), i + 1):
        direct += (-1) ** j * binom(w + 1, i - j) * \
            omega.n_lattice_points("interior", j)
    direct *= (-1) ** i
    if tri is None and cell_index is None:
        return direct
    ci = cell_index
    omega_facets = omega.facets() if omega.dim > 0 else []
    via_cells = 0
    for fs, cdim in (ci.cells() if ci else tri.complex.cells().items()):
        if not all(omega.contains(v) for v in fs):
            continue
        if omega_facets and any(
                all(hs.is_tight(v) for v in fs) for hs in omega_facets):
            continue  # cell inside the relative boundary
        via_cells += (-1) ** (i + cdim + 1) * binom(w - cdim, w + 1 - i)
    if direct != via_cells:
        raise HodgeFormulaError(
            f"phi_{i} disagreement on face of dim {w}: direct {direct}, "
            f"triangulation {via_cells}")
    return direct


# ---------------------------------------------------------------------------
# e^p and the diamond
# ---------------------------------------------------------------------------

def ep_S(P, tri, p, cell_index=None):
    """The p-th Hodge-Deligne Euler characteristic of the hypersurface."""
    ci = cell_index or CellIndex(P, tri)
    s_faces = 0
    for fs, fdim in ci.faces():
        s_faces += (-1) ** fdim * binom(fdim, p + 1)
    s_cells = 0
    for fs, cdim in ci.cells():
        s_cells += (-1) ** cdim * binom(ci.carrier_dim[fs] - cdim, p + 1)
    return (-1) ** p * (-s_faces + s_cells)


def hpq_upper_S(P, tri, p, cell_index=None):
    """h^{p,p} and h^{p,d-p} for 2p > d."""
    d = P.dim - 1
    if 2 * p <= d:
        raise HodgeFormulaError("hpq_upper_S needs 2p > d")
    ci = cell_index or CellIndex(P, tri)
    s_faces = 0
    for fs, fdim in ci.faces():
        s_faces += (-1) ** fdim * binom(fdim, p + 1)
    h_pp = (-1) ** (p + 1) * s_faces
    h_pd = 0
    for fs, cdim in ci.cells():
        h_pd += (-1) ** (d - p + cdim) * \
            binom(ci.carrier_dim[fs] - cdim, p + 1)
    return {"h_pp": h_pp, "h_p_dminus_p": h_pd}


@dataclass
class HodgeTable:
    d: int
    entries: dict                  # (p, q) -> int
    provenance: dict = field(default_factory=dict)

    def h(self, p, q):
        return self.entries.get((p, q), 0)

    def euler_p(self, p):
        return (-1) ** p * sum((-1) ** q * self.h(p, q)
                               for q in range(self.d + 1))

    def rows(self):
        return [[self.h(p, q) for q in range(self.d + 1)]
                for p in range(self.d + 1)]

    def validate(self, poincare=True, conjugation=True):
        d = self.d
        for (p, q), v in self.entries.items():
            if v < 0:
                raise HodgeFormulaError(f"negative entry h^{{{p},{q}}} = {v}")
            if v and p != q and p + q != d:
                raise HodgeFormulaError(
                    f"vanishing pattern violated at ({p},{q})")
        for p in range(d + 1):
            for q in range(d + 1):
                if poincare and self.h(p, q) != self.h(d - p, d - q):
                    raise HodgeFormulaError(
                        f"Poincare duality fails at ({p},{q})")
                if conjugation and self.h(p, q) != self.h(q, p):
                    raise HodgeFormulaError(
                        f"conjugation symmetry fails at ({p},{q})")
        return True


def hodge_diamond_S(P, tri, cell_index=None):
    """The full Hodge table of the hypersurface (d >= 1)."""
    d = P.dim - 1
    if d < 1:
        raise HodgeFormulaError("hodge_diamond_S needs dim Delta >= 2")
    ci = cell_index or CellIndex(P, tri)
    entries = {}
    prov = {}
    for p in range(d + 1):
        for q in range(d + 1):
            if p != q and p + q != d:
                entries[(p, q)] = 0
                prov[(p, q)] = "lefschetz-zero"
    for p in range(d + 1):
        if 2 * p > d:
            up = hpq_upper_S(P, tri, p, ci)
            entries[(p, p)] = up["h_pp"]
            prov[(p, p)] = "upper-diagonal"
            if p != d - p:
                entries[(p, d - p)] = up["h_p_dminus_p"]
                prov[(p, d - p)] = "upper-antidiagonal"
        elif 2 * p == d:
            entries[(p, p)] = ep_S(P, tri, p, ci)
            prov[(p, p)] = "derived-middle"
    for p in range(d + 1):
        if 2 * p < d:
            entries[(p, p)] = entries[(d - p, d - p)]
            prov[(p, p)] = "poincare-dual"
            if p != d - p:
                entries[(p, d - p)] = entries[(d - p, p)]
                prov[(p, d - p)] = "conjugation"
    table = HodgeTable(d, entries, prov)
    table.validate()
    for p in range(d + 1):
        if table.euler_p(p) != ep_S(P, tri, p, ci):
            raise HodgeFormulaError(
                f"table/e^p inconsistency at p={p}")
    return table


def euler_profile_S(P, tri, cell_index=None):
    """e^p(S) for p = 0..d, straight from the cell sums."""
    d = P.dim - 1
    ci = cell_index or CellIndex(P, tri)
    return {p: ep_S(P, tri, p, ci) for p in range(d + 1)}
