"""Hodge numbers of the Landau-Ginzburg mirror from the strata of the
central fibre.

Two routes feed the final table.  The diagonal above the middle comes from
the closed cell sum

  h^{p,p}(mirror) = (-1)^{d-p} sum_{cells tau} (-1)^{dim tau}
                    C(dim Delta(tau) - dim tau, p+1),   2p > d.

The Euler profile comes from the normal-crossings strata: with Y^k the
k-fold intersection locus of the components of the central fibre,

  e^p(mirror) = sum_{i,j>=0} (-1)^{i+j} e^{p-i}(Y^{2+i+j}),

where each Y^k decomposes into torus orbits of the exceptional divisors
and their hypersurface sections, whose Hodge-Deligne numbers are binomial
expressions in the cell dimensions (handlebody x torus pieces, with a
correction term on cells inside the boundary of the interior hull).  The
two routes share no formula, which is what makes the final

  e^p(S) = (-1)^d e^{d-p}(mirror)

comparison a genuine cross-check of the whole machine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hodge_s import (
    CellIndex,
    HodgeFormulaError,
    HodgeTable,
    binom,
    ep_S,
    hodge_diamond_S,
)
from .mirror import (
    build_mirror_data,
    dual_intersection_complex,
    p_maps,
    stratum_profiles,
)
from .subdivide import DeltaPrimeEmpty, pstar


def ep_torus(n, p):
    """e^p of the n-torus: (-1)^{p+n} C(n, p); off-diagonal e^{p,q} = 0."""
    return (-1) ** (p + n) * binom(n, p)


def ep_handlebody_torus(k, l, p):
    """e^{p,p} of (k-handlebody) x (l-torus); e^{p,q} = 0 for p != q.

    A k-handlebody is a general hyperplane section of the (k+1)-torus.
    """
    return (-1) ** (p + k + l) * (binom(k + l + 1, p + 1) - binom(l, p + 1))


@dataclass
class MirrorContext:
    """Everything the mirror-side formulas consume, built once."""

    analysis: object
    tri: object
    pstar_complex: object
    mirror_data: object
    maps: object
    strata: object
    cell_index: CellIndex

    @property
    def d(self):
        return self.analysis.hypersurface_dim


def mirror_context(analysis, tri):
    if analysis.delta_prime is None:
        raise DeltaPrimeEmpty(
            "mirror Hodge numbers are undefined: Delta has no interior "
            "lattice point (negative Kodaira dimension regime)")
    _, ps = pstar(analysis.delta)
    md = build_mirror_data(analysis, ps)
    maps = p_maps(analysis, ps)
    strata = stratum_profiles(analysis, tri, ps, md)
    ci = CellIndex(analysis.delta, tri)
    return MirrorContext(analysis, tri, ps, md, maps, strata, ci)


# ---------------------------------------------------------------------------
# strata Euler characteristics
# ---------------------------------------------------------------------------

def ep_torus_orbit(ctx, cell, p):
    """e^p of the open torus orbit of a cell."""
    dim_tau = ctx.strata.profiles[cell].dim
    return ep_torus(ctx.d + 1 - dim_tau, p)


def ep_orbit_cap_w0(ctx, cell, p):
    """e^p of (torus orbit of tau) intersected with the strict transform
    of the central hypersurface component; requires tau to meet the
    interior hull."""
    pr = ctx.strata.profiles[cell]
    if not pr.meets_delta_prime:
        raise HodgeFormulaError(
            "orbit-cap-W0 formula applies only to cells meeting Delta'")
    d = ctx.d
    if pr.pstar_dim == d + 1:
        return 0  # the ambient orbit over a full cell misses W0 entirely
    dim_tau = pr.dim
    main = (-1) ** (d - dim_tau) * (
        binom(d + 1 - dim_tau, p + 1)
        - binom(pr.pstar_dim - dim_tau, p + 1))
    a_term = 0
    if pr.in_boundary_delta_prime:
        for face in ctx.maps.preimages(pr.pstar_cell):
            fdim = ctx.maps.face_dims[face]
            a_term += (-1) ** (pr.pstar_dim - dim_tau + d + 1 - fdim) * (
                binom(fdim - dim_tau, p + 1)
                - binom(pr.pstar_dim - dim_tau, p + 1))
    return (-1) ** p * (main + a_term)


def ep_Y(ctx, k, p):
    """e^p of the normalized k-fold intersection locus Y^k (k >= 2)."""
    total = 0
    for omega, taus in ctx.strata.y_tor.get(k, []):
        for t in taus:
            total += ep_torus_orbit(ctx, t, p)
    for omega, taus in ctx.strata.y_ntor.get(k, []):
        for t in taus:
            total += ep_orbit_cap_w0(ctx, t, p)
    return total


def ep_mirror(ctx, p):
    """e^p of the mirror pair via the weight-spectral-sequence profile."""
    if p < 0:
        return 0
    levels = set(ctx.strata.y_tor) | set(ctx.strata.y_ntor)
    if not levels:
        return 0
    kmax = max(levels)
    total = 0
    for i in range(0, p + 1):
        for j in range(0, kmax - 1):
            k = 2 + i + j
            if k > kmax:
                break
            total += (-1) ** (i + j) * ep_Y(ctx, k, p - i)
    return total


def ep_Ytor_closed_form(ctx, p):
    """e^{p,p} of the union of exceptional toric components, closed form:
    (-1)^{d+1-p} sum over cells off the boundary of Delta."""
    total = 0
    for fs, cdim in ctx.cell_index.cells():
        pr = ctx.strata.profiles[fs]
        if pr.in_boundary:
            continue
        total += (-1) ** cdim * binom(ctx.cell_index.carrier_dim[fs] - cdim,
                                      p)
    return (-1) ** (ctx.d + 1 - p) * total


def ep_Ytor_orbit_sum(ctx, p):
    """Same quantity via the torus-orbit decomposition of the components
    (the inclusion-exclusion over cells inside Delta')."""
    total = 0
    for fs, pr in ctx.strata.profiles.items():
        if not pr.in_delta_prime:
            continue
        for tau in ctx.strata.profiles:
            if fs <= tau:
                total += (-1) ** pr.dim * ep_torus_orbit(ctx, tau, p)
    return total


# ---------------------------------------------------------------------------
# the mirror Hodge table
# ---------------------------------------------------------------------------

def hpp_mirror_upper(ctx, p):
    """Diagonal mirror Hodge number for 2p > d, from the cell sum."""
    d = ctx.d
    if 2 * p <= d:
        raise HodgeFormulaError("hpp_mirror_upper needs 2p > d")
    total = 0
    for fs, cdim in ctx.cell_index.cells():
        total += (-1) ** cdim * binom(ctx.cell_index.carrier_dim[fs] - cdim,
                                      p + 1)
    return (-1) ** (d - p) * total


def mirror_hodge_table(ctx):
    """Assemble h^{p,q} of the mirror pair.

    Vanishing off the diagonal and antidiagonal; the upper diagonal from
    the cell sum; the lower diagonal by Poincare duality; the antidiagonal
    from e^p = h^{p,p} + (-1)^d h^{p,d-p} (the only surviving terms of the
    alternating sum).
    """
    d = ctx.d
    if d < 1:
        raise HodgeFormulaError("mirror table needs d >= 1")
    entries = {}
    prov = {}
    for p in range(d + 1):
        for q in range(d + 1):
            if p != q and p + q != d:
                entries[(p, q)] = 0
                prov[(p, q)] = "vanishing"
    ep_cache = {p: ep_mirror(ctx, p) for p in range(d + 1)}
    for p in range(d + 1):
        if 2 * p > d:
            entries[(p, p)] = hpp_mirror_upper(ctx, p)
            prov[(p, p)] = "upper-diagonal"
        elif 2 * p == d:
            entries[(p, p)] = ep_cache[p]
            prov[(p, p)] = "derived-middle"
    for p in range(d + 1):
        if 2 * p < d:
            entries[(p, p)] = entries[(d - p, d - p)]
            prov[(p, p)] = "poincare-dual"
    for p in range(d + 1):
        if p != d - p:
            entries[(p, d - p)] = (-1) ** d * (ep_cache[p] - entries[(p, p)])
            prov[(p, d - p)] = "derived-antidiagonal"
    table = HodgeTable(d, entries, prov)
    # conjugation symmetry h^{p,q} = h^{q,p} is not part of the mirror
    # package; Poincare duality and positivity are
    table.validate(poincare=True, conjugation=False)
    for p in range(d + 1):
        if table.euler_p(p) != ep_cache[p]:
            raise HodgeFormulaError(f"mirror table/e^p mismatch at p={p}")
    return table


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------

@dataclass
class TheoremReport:
    d: int
    table_S: HodgeTable
    table_mirror: HodgeTable
    entry_results: dict          # (p, q) -> bool for h^{pq}(S) = h^{d-p,q}(F)
    euler_results: dict          # p -> bool for e^p(S) = (-1)^d e^{d-p}(F)
    passed: bool


def verify_main_theorem(analysis, tri, ctx=None):
    """h^{p,q}(S) = h^{d-p,q}(mirror) entrywise, plus the independent
    Euler-profile identity with the two sides computed through disjoint
    pipelines."""
    P = analysis.delta
    ctx = ctx or mirror_context(analysis, tri)
    d = ctx.d
    table_S = hodge_diamond_S(P, tri, ctx.cell_index)
    table_F = mirror_hodge_table(ctx)
    entry_results = {}
    for p in range(d + 1):
        for q in range(d + 1):
            entry_results[(p, q)] = (
                table_S.h(p, q) == table_F.h(d - p, q))
    euler_results = {}
    for p in range(d + 1):
        lhs = ep_S(P, tri, p, ctx.cell_index)
        rhs = (-1) ** d * ep_mirror(ctx, d - p)
        euler_results[p] = lhs == rhs
    passed = all(entry_results.values()) and all(euler_results.values())
    return TheoremReport(d, table_S, table_F, entry_results, euler_results,
                         passed)


@dataclass
class CurveReport:
    genus: int
    components: int
    graph_betti1: int
    hochschild: dict             # HH^0, HH^1, HH^2 of the curve
    mirror_cohomology: dict      # H^0, H^1, H^2 of the singular mirror
    euler_chain: dict            # the lattice-combinatorics identities
    passed: bool


def curve_hh_check(analysis, tri, ctx=None):
    """Curve-level evidence: the mirror of a genus-g curve has g
    independent 1-cycles in its component graph and 3g - 3 components.

    The counting identities are checked in the form appropriate to the
    dimension of the interior hull (Pick's theorem only applies when the
    hull is two-dimensional).
    """
    d = analysis.hypersurface_dim
    if d != 1:
        raise HodgeFormulaError("curve check needs d = 1")
    dp = analysis.delta_prime
    if dp is None:
        raise DeltaPrimeEmpty("curve check needs an interior lattice point")
    g = len(analysis.delta.lattice_points("interior"))
    if g < 2:
        raise HodgeFormulaError("curve check needs genus >= 2")
    gamma = dual_intersection_complex(analysis, tri)
    comp = gamma.curve_components
    b1 = gamma.curve_betti1
    dp_points = set(dp.lattice_points())
    cells_in_dp = {fs: cd for fs, cd in tri.complex.cells().items()
                   if set(fs) <= dp_points}
    e = sum(1 for cd in cells_in_dp.values() if cd == 1)
    f = sum(1 for cd in cells_in_dp.values() if cd == 2)
    i_rel = dp.n_lattice_points("interior")
    b_rel = dp.n_lattice_points() - i_rel
    chain = {}
    chain["chi(Delta') = 1"] = (b_rel + i_rel) - e + f == 1
    if dp.dim == 2:
        chain["area = f/2"] = dp.normalized_volume() == f
        chain["Pick"] = dp.normalized_volume() == 2 * i_rel + b_rel - 2
        chain["components = e + b"] = comp == e + b_rel
    else:
        chain["area = f/2"] = f == 0
        chain["components = e + b + 2i"] = comp == e + b_rel + 2 * i_rel
    chain["components = 3g - 3"] = comp == 3 * g - 3
    chain["graph genus = g"] = b1 == g
    hochschild = {"HH0": 1, "HH1": g, "HH2": 3 * g - 3}
    mirror_cohomology = {"H0": 1, "H1": b1, "H2": comp}
    passed = all(chain.values())
    return CurveReport(g, comp, b1, hochschild, mirror_cohomology, chain,
                       passed)


@dataclass
class DepthReport:
    kodaira: int
    max_level: int
    expected: int
    passed: bool


def stratum_depth_check(analysis, tri, ctx=None):
    """max{k : Y^k nonempty} must equal kappa(S) + 2."""
    ctx = ctx or mirror_context(analysis, tri)
    kappa = analysis.kodaira
    expected = kappa + 2
    got = ctx.strata.max_nonempty_level
    return DepthReport(kappa, got, expected, got == expected)
