"""Exact rational polytopes: hulls, facets, duals, lattice points, QGF certificates.

All arithmetic is over Fraction; there is no floating point anywhere in this
module.  Facet normals are stored as primitive integer vectors with the
offset carrying the scale.  Vertex/facet conversion runs the double
description method on the homogenization cone, which is practical for the
dense low-dimensional polytopes handled here (roughly m <= 6).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction as Q

from .linalg import (
    dot,
    is_zero,
    mat_inverse,
    mat_transpose,
    matvec,
    primitive,
    qvec,
    rank,
    rref,
    solve,
    vadd,
    vscale,
    vsub,
)

Point = tuple[Q, ...]


class PolytopeError(ValueError):
    pass


class DegenerateError(PolytopeError):
    """Input does not span the full ambient dimension."""


def point(coords) -> Point:
    return qvec(coords)


@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space {u : <u, normal> + offset >= 0}."""

    normal: tuple[Q, ...]
    offset: Q

    def __post_init__(self):
        if is_zero(self.normal):
            raise PolytopeError("half-space normal must be nonzero")
        object.__setattr__(self, "normal", qvec(self.normal))
        object.__setattr__(self, "offset", Q(self.offset))

    def value(self, p) -> Q:
        return dot(p, self.normal) + self.offset

    def contains(self, p) -> bool:
        return self.value(p) >= 0

    def on_boundary(self, p) -> bool:
        return self.value(p) == 0


def halfspace(normal, offset) -> HalfSpace:
    return HalfSpace(qvec(normal), Q(offset))


# ---------------------------------------------------------------------------
# Double description on cones


def _tight_rank_ok(constraints, zset, d):
    rows = [constraints[i] for i in zset]
    return rank(rows) >= d - 1 if rows else d <= 1


def _dd_extreme_rays(constraints: list[tuple[Q, ...]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of {x in R^d : a.x >= 0 for all a}, for pointed cones.

    Starts from a simplicial subcone on d independent constraints and adds the
    rest incrementally; adjacency is decided combinatorially on tight sets.
    """
    M, pivots = rref([list(c) for c in constraints])
    if len(pivots) < d:
        raise DegenerateError("constraint normals do not span; cone is not pointed")
    # pick d rows forming an invertible matrix
    chosen: list[int] = []
    for i, c in enumerate(constraints):
        if len(chosen) == d:
            break
        if rank([constraints[j] for j in chosen] + [c]) > len(chosen):
            chosen.append(i)
    A = [constraints[i] for i in chosen]
    Ainv = mat_inverse(A)
    rays = []
    for j in range(d):
        col = tuple(Ainv[i][j] for i in range(d))
        rays.append(primitive(col))
    tight = []
    for r in rays:
        tight.append({i for i in chosen if dot(constraints[i], r) == 0})
    processed = set(chosen)
    for idx, a in enumerate(constraints):
        if idx in processed:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            for i in zero:
                tight[i].add(idx)
            processed.add(idx)
            continue
        new_rays = []
        new_tight = []
        for ip in pos:
            for im in neg:
                common = tight[ip] & tight[im]
                adjacent = True
                for k in range(len(rays)):
                    if k != ip and k != im and common <= tight[k]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = vsub(vscale(vals[ip], rays[im]), vscale(vals[im], rays[ip]))
                vec = primitive(vec)
                if vec not in new_rays:
                    new_rays.append(vec)
                    new_tight.append(common | {idx})
        keep_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        keep_tight = [set(tight[i]) for i in pos] + [tight[i] | {idx} for i in zero]
        rays = keep_rays + new_rays
        tight = keep_tight + new_tight
        processed.add(idx)
    return rays


def vertices_from_facets(halves: list[HalfSpace], m: int) -> list[Point]:
    """Vertex set of a bounded intersection of half-spaces (exact)."""
    constraints = [tuple(h.normal) + (h.offset,) for h in halves]
    constraints.append(tuple([Q(0)] * m + [Q(1)]))
    rays = _dd_extreme_rays(constraints, m + 1)
    verts = []
    for r in rays:
        t = r[m]
        if t == 0:
            raise PolytopeError("half-space intersection is unbounded")
        verts.append(tuple(Q(x, t) for x in r[:m]))
    return sorted(set(verts))


def facets_from_points(points: list[Point], m: int) -> list[HalfSpace]:
    """Facet half-spaces (primitive integer inward normals) of conv(points)."""
    c = vscale(Q(1, len(points)), tuple(sum(col, Q(0)) for col in zip(*points)))
    # a point equal to the centroid is interior and adds no dual constraint
    dual_halves = [HalfSpace(vsub(p, c), Q(1)) for p in points if not is_zero(vsub(p, c))]
    dual_verts = vertices_from_facets(dual_halves, m)
    facets = []
    for y in dual_verts:
        n = primitive(y)
        scale = next(a / b for a, b in zip(y, n) if b != 0)
        beta = (dot(c, y) - 1) / scale
        facets.append(HalfSpace(qvec(n), -beta))
    return sorted(set(facets), key=lambda h: (h.normal, h.offset))


# ---------------------------------------------------------------------------
# Polytopes


@dataclass(frozen=True)
class RationalPolytope:
    """Rational polytope by minimal V-representation.

    For full-dimensional polytopes the facet list (primitive integer inward
    normals) is computed eagerly.  Lower-dimensional and empty results from
    slicing keep an explicit `dim` tag and an internal full-dimensional chart
    for membership tests; their `facets` is None.
    """

    vertices: tuple[Point, ...]
    ambient_dim: int
    dim: int
    facets: tuple[HalfSpace, ...] | None = None
    _chart: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def is_empty(self) -> bool:
        return self.dim < 0

    @property
    def is_full_dim(self) -> bool:
        return self.dim == self.ambient_dim

    def require_full_dim(self):
        if not self.is_full_dim:
            raise DegenerateError(
                f"operation needs a full-dimensional polytope (dim {self.dim} in R^{self.ambient_dim})"
            )

    def contains(self, p) -> bool:
        p = qvec(p)
        if self.is_empty:
            return False
        if self.is_full_dim:
            return all(f.contains(p) for f in self.facets)
        if self.dim == 0:
            return p == self.vertices[0]
        p0, basis, inner = self._chart
        coords = _affine_coords(p0, basis, p)
        return coords is not None and inner.contains(coords)

    def contains_strictly(self, p) -> bool:
        p = qvec(p)
        return self.is_full_dim and all(f.value(p) > 0 for f in self.facets)

    def translate(self, t) -> "RationalPolytope":
        t = qvec(t)
        verts = tuple(vadd(v, t) for v in self.vertices)
        if self.is_full_dim:
            facets = tuple(HalfSpace(f.normal, f.offset - dot(t, f.normal)) for f in self.facets)
            return RationalPolytope(verts, self.ambient_dim, self.dim, facets)
        return hull_any(verts, self.ambient_dim)

    def scale(self, c) -> "RationalPolytope":
        c = Q(c)
        if c <= 0:
            raise PolytopeError("scale factor must be positive")
        verts = tuple(vscale(c, v) for v in self.vertices)
        if self.is_full_dim:
            facets = tuple(HalfSpace(f.normal, c * f.offset) for f in self.facets)
            return RationalPolytope(verts, self.ambient_dim, self.dim, facets)
        return hull_any(verts, self.ambient_dim)

    def linear_image(self, A) -> "RationalPolytope":
        """Image under an invertible linear map; vertices and facets transform
        directly (normals by the inverse transpose), no hull recomputation."""
        verts = tuple(sorted(matvec(A, v) for v in self.vertices))
        if not self.is_full_dim:
            return hull_any(verts, self.ambient_dim)
        Ainv_t = mat_transpose(mat_inverse(A))
        facets = []
        for f in self.facets:
            n = matvec(Ainv_t, f.normal)
            prim = primitive(n)
            c = next(a / b for a, b in zip(n, prim) if b != 0)
            facets.append(HalfSpace(qvec(prim), f.offset / c))
        facets.sort(key=lambda h: (h.normal, h.offset))
        return RationalPolytope(verts, self.ambient_dim, self.dim, tuple(facets))

    def bounding_box(self) -> list[tuple[Q, Q]]:
        return [(min(v[i] for v in self.vertices), max(v[i] for v in self.vertices)) for i in range(self.ambient_dim)]

    def __eq__(self, other):
        return (
            isinstance(other, RationalPolytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))


def _affine_coords(p0, basis, p):
    """Coordinates of p in the affine chart p0 + span(basis), or None."""
    diff = vsub(p, p0)
    if not basis:
        return () if is_zero(diff) else None
    A = [tuple(b[i] for b in basis) for i in range(len(p0))]
    return solve(A, diff)


def hull(points, ambient_dim: int | None = None) -> RationalPolytope:
    """Convex hull of full-dimension-spanning points: minimal V-rep plus facets."""
    pts = sorted({qvec(p) for p in points})
    if not pts:
        raise DegenerateError("no points given")
    m = ambient_dim if ambient_dim is not None else len(pts[0])
    if any(len(p) != m for p in pts):
        raise PolytopeError("points of mixed dimension")
    if rank([vsub(p, pts[0]) for p in pts[1:]]) < m:
        raise DegenerateError("points do not span the full dimension")
    facets = facets_from_points(pts, m)
    # a point is a vertex exactly when its tight facet normals span everything
    verts = []
    for p in pts:
        tight = [f.normal for f in facets if f.value(p) == 0]
        if len(tight) >= m and rank(tight) == m:
            verts.append(p)
    return RationalPolytope(tuple(verts), m, m, tuple(facets))


def hull_any(points, ambient_dim: int) -> RationalPolytope:
    """Hull that tolerates lower-dimensional and empty input (dim tag set)."""
    pts = sorted({qvec(p) for p in points})
    if not pts:
        return RationalPolytope((), ambient_dim, -1, None)
    p0 = pts[0]
    diffs = [vsub(p, p0) for p in pts[1:]]
    dim = rank(diffs) if diffs else 0
    if dim == ambient_dim:
        return hull(pts, ambient_dim)
    if dim == 0:
        return RationalPolytope((p0,), ambient_dim, 0, None)
    basis = _independent_subset(diffs, dim)
    inner_pts = [_affine_coords(p0, basis, p) for p in pts]
    inner = hull(inner_pts, dim)
    verts = tuple(sorted(vadd(p0, _combine(basis, c)) for c in inner.vertices))
    return RationalPolytope(verts, ambient_dim, dim, None, _chart=(p0, basis, inner))


def _independent_subset(vecs, target):
    basis = []
    for v in vecs:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
        if len(basis) == target:
            break
    return basis


def _combine(basis, coeffs):
    out = tuple(Q(0) for _ in basis[0])
    for c, b in zip(coeffs, basis):
        out = vadd(out, vscale(c, b))
    return out


def polar_dual(P: RationalPolytope) -> RationalPolytope:
    """Polar dual {v : <u,v> + 1 >= 0 for u in P}; needs 0 strictly interior.

    Equals the hull of the vectors v_i from the unique presentation of P as an
    intersection of half-spaces {<u, v_i> + 1 >= 0}.
    """
    P.require_full_dim()
    if not P.contains_strictly([Q(0)] * P.ambient_dim):
        raise PolytopeError("polar dual needs the origin strictly inside")
    duals = [vscale(Q(1) / f.offset, f.normal) for f in P.facets]
    return hull(duals, P.ambient_dim)


def is_supporting(h: HalfSpace, P: RationalPolytope) -> bool:
    """True iff P lies in the half-space and touches its boundary hyperplane."""
    if P.is_empty:
        return False
    vals = [h.value(v) for v in P.vertices]
    return all(v >= 0 for v in vals) and min(vals) == 0


def lattice_points(P: RationalPolytope, q: int = 1) -> list[Point]:
    """All points of (1/q)Z^m inside P, by exact bounding-box enumeration."""
    if q < 1:
        raise PolytopeError("q must be a positive integer")
    if P.is_empty:
        return []
    ranges = []
    for lo, hi in P.bounding_box():
        ranges.append(range(math.ceil(lo * q), math.floor(hi * q) + 1))
    out = []
    for combo in itertools.product(*ranges):
        p = tuple(Q(k, q) for k in combo)
        if P.contains(p):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# Q-Gorenstein Fano certification


@dataclass(frozen=True)
class QGFCertificate:
    """Certified center, size, and combinatorial dual of a QGF polytope.

    For every facet <u, n_F> >= beta_F (primitive integer inward normal) the
    center satisfies <u0, n_F> - beta_F = size; the combinatorial dual is the
    hull of the raw facet normals.
    """

    center: Point
    size: int
    dual_vertices: tuple[tuple[int, ...], ...]
    dual: RationalPolytope


def qgf_solve(P: RationalPolytope) -> tuple[QGFCertificate | None, str]:
    """(certificate, diagnostic) for the Q-Gorenstein Fano property.

    Writes each facet as <u, n_F> >= beta_F with primitive integer inward
    normal and solves <u0, n_F> = beta_F + nu exactly; certifies only when nu
    is a positive integer.
    """
    P.require_full_dim()
    m = P.ambient_dim
    rows = []
    rhs = []
    norms = []
    for f in P.facets:
        n = tuple(int(x) for x in f.normal)
        beta = -f.offset
        rows.append(qvec(n) + (Q(-1),))
        rhs.append(beta)
        norms.append(n)
    if rank(rows) < m + 1:
        return None, "facet normals do not pin a unique center and size"
    sol = solve(rows, rhs)
    if sol is None:
        return None, "no common center: facet offsets are incompatible"
    center, nu = sol[:m], sol[m]
    if nu <= 0:
        return None, f"solved size {nu} is not positive"
    if nu.denominator != 1:
        return None, f"solved size {nu} is not an integer"
    dual = hull(norms, m)
    cert = QGFCertificate(tuple(center), int(nu), tuple(sorted(norms)), dual)
    for n, beta in zip(norms, rhs):
        assert dot(cert.center, n) - beta == cert.size
    return cert, "ok"


def qgf_certificate(P: RationalPolytope) -> QGFCertificate | None:
    cert, _ = qgf_solve(P)
    return cert


# ---------------------------------------------------------------------------
# Slicing


@dataclass(frozen=True)
class SliceResult:
    """Section P ∩ H and the two closed halves, each with its own dim tag."""

    section: RationalPolytope
    plus: RationalPolytope
    minus: RationalPolytope


def crossing_points(P: RationalPolytope, h: HalfSpace) -> list[Point]:
    """Points where the boundary hyperplane of h meets segments between
    vertices of P on strictly opposite sides.

    For full-dimensional P only true edges are used (pairs whose common tight
    facet normals have rank m-1); otherwise all pairs, whose extra interior
    crossings are harmless to downstream hulls and membership tests.
    """
    vals = {v: h.value(v) for v in P.vertices}
    use_edges = P.is_full_dim
    tightsets = {}
    if use_edges:
        tightsets = {
            v: frozenset(i for i, f in enumerate(P.facets) if f.value(v) == 0) for v in P.vertices
        }
    out = []
    m = P.ambient_dim
    for u, v in itertools.combinations(P.vertices, 2):
        a, b = vals[u], vals[v]
        if not ((a > 0 > b) or (b > 0 > a)):
            continue
        if use_edges:
            common = tightsets[u] & tightsets[v]
            if len(common) < m - 1 or rank([P.facets[i].normal for i in common]) != m - 1:
                continue
        t = a / (a - b)
        out.append(vadd(u, vscale(t, vsub(v, u))))
    return out


def slice_polytope(P: RationalPolytope, h: HalfSpace) -> SliceResult:
    """Exact intersection of P with the hyperplane and both closed half-spaces.

    Piece vertices are the original vertices on the matching side plus the
    edge-hyperplane crossing points.
    """
    m = P.ambient_dim
    if P.is_empty:
        empty = RationalPolytope((), m, -1, None)
        return SliceResult(empty, empty, empty)
    vals = {v: h.value(v) for v in P.vertices}
    on = [v for v in P.vertices if vals[v] == 0]
    plus_pts = [v for v in P.vertices if vals[v] >= 0]
    minus_pts = [v for v in P.vertices if vals[v] <= 0]
    crossings = crossing_points(P, h)
    section = hull_any(on + crossings, m)
    plus = hull_any(plus_pts + crossings, m)
    minus = hull_any(minus_pts + crossings, m)
    return SliceResult(section, plus, minus)


# ---------------------------------------------------------------------------
# Exact volume (ambient dimension <= 3)


def volume(P: RationalPolytope) -> Q:
    """Exact volume; 0 for lower-dimensional bodies.  Supports m <= 3."""
    if P.is_empty or not P.is_full_dim:
        return Q(0)
    m = P.ambient_dim
    if m == 1:
        xs = [v[0] for v in P.vertices]
        return max(xs) - min(xs)
    if m == 2:
        ring = _polygon_cycle(P)
        a = Q(0)
        for p, q in zip(ring, ring[1:] + ring[:1]):
            a += p[0] * q[1] - q[0] * p[1]
        return abs(a) / 2
    if m == 3:
        apex = P.vertices[0]
        total = Q(0)
        for f in P.facets:
            if f.value(apex) == 0:
                continue
            fverts = [v for v in P.vertices if f.on_boundary(v)]
            ring = _facet_cycle(P, f, fverts)
            for b, c in zip(ring[1:], ring[2:]):
                u1 = vsub(ring[0], apex)
                u2 = vsub(b, apex)
                u3 = vsub(c, apex)
                det = (
                    u1[0] * (u2[1] * u3[2] - u2[2] * u3[1])
                    - u1[1] * (u2[0] * u3[2] - u2[2] * u3[0])
                    + u1[2] * (u2[0] * u3[1] - u2[1] * u3[0])
                )
                total += abs(det)
        return total / 6
    raise PolytopeError("exact volume implemented for ambient dimension <= 3")


def _polygon_cycle(P: RationalPolytope) -> list[Point]:
    """Vertices of a 2D polytope in boundary order (walk the facet graph)."""
    edges = {}
    for f in P.facets:
        tight = [v for v in P.vertices if f.on_boundary(v)]
        if len(tight) == 2:
            edges.setdefault(tight[0], []).append(tight[1])
            edges.setdefault(tight[1], []).append(tight[0])
    start = P.vertices[0]
    ring = [start]
    prev = None
    while True:
        nxts = [w for w in edges[ring[-1]] if w != prev]
        prev = ring[-1]
        ring.append(nxts[0])
        if ring[-1] == start:
            return ring[:-1]


def _facet_cycle(P: RationalPolytope, f: HalfSpace, fverts: list[Point]) -> list[Point]:
    """Vertices of a 3D facet in boundary order (edges = shared second facet)."""
    if len(fverts) == 3:
        return fverts
    adj = {v: [] for v in fverts}
    for u, v in itertools.combinations(fverts, 2):
        common = [
            g
            for g in P.facets
            if g != f and g.on_boundary(u) and g.on_boundary(v)
        ]
        if common:
            adj[u].append(v)
            adj[v].append(u)
    start = fverts[0]
    ring = [start]
    prev = None
    while True:
        nxts = [w for w in adj[ring[-1]] if w != prev]
        prev = ring[-1]
        ring.append(nxts[0])
        if ring[-1] == start:
            return ring[:-1]
