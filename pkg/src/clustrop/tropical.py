"""Tropicalized cluster mutations on points, graded point sets, and polytopes,
plus the distinguishing-certificate pipeline built on them.

The tropical map in direction k fixes the hyperplane u_k = 0 and acts by one
unimodular linear map on each side; images of polytopes are therefore checked
for convexity rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .linalg import dot, mat_inverse, mat_transpose, matvec, qvec
from .mutation import ExtendedExchangeMatrix, FrozenIndexError, _pos
from .polytopes import (
    Point,
    QGFCertificate,
    RationalPolytope,
    crossing_points,
    halfspace,
    hull,
    hull_any,
    lattice_points,
    qgf_solve,
)


class TropicalError(ValueError):
    pass


class PreconditionError(TropicalError):
    """A named precondition failed; `which` identifies it."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"precondition {which} failed" + (f": {detail}" if detail else ""))


def _check_direction(eps: ExtendedExchangeMatrix, k: int):
    if k in eps.frozen:
        raise FrozenIndexError(f"tropical mutation at frozen label {k}")
    if k not in eps.cols:
        raise TropicalError(f"unknown label {k}")


def trop_mutate_point(eps: ExtendedExchangeMatrix, k: int, u) -> Point:
    """Piecewise-linear mutation: u_k flips sign, u_j picks up [±eps_{k,j}]_+ u_k
    depending on the sign of u_k."""
    _check_direction(eps, k)
    u = qvec(u)
    if len(u) != len(eps.cols):
        raise TropicalError("point dimension does not match column count")
    ki = eps.col_index(k)
    uk = u[ki]
    row = eps.row(k)
    out = []
    for j, (label, uj) in enumerate(zip(eps.cols, u)):
        if j == ki:
            out.append(-uk)
        elif uk >= 0:
            out.append(uj + _pos(row[j]) * uk)
        else:
            out.append(uj + _pos(-row[j]) * uk)
    return tuple(out)


@dataclass(frozen=True)
class GradedPointSet:
    """Finite set of (level, integer point) pairs, levels positive, duplicates
    collapsed; a desk-scale shadow of a graded semigroup."""

    elements: frozenset[tuple[int, tuple[int, ...]]]

    @classmethod
    def of(cls, pairs) -> "GradedPointSet":
        elems = set()
        for level, pt in pairs:
            level = int(level)
            if level <= 0:
                raise TropicalError(f"level {level} must be positive")
            elems.add((level, tuple(int(x) for x in pt)))
        return cls(frozenset(elems))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, pair):
        return pair in self.elements

    def sorted(self):
        return sorted(self.elements)


def trop_mutate_graded(S: GradedPointSet, eps: ExtendedExchangeMatrix, k: int) -> GradedPointSet:
    """Level-preserving mutation of every stored point; bijective on the set."""
    out = []
    for level, pt in S.elements:
        img = trop_mutate_point(eps, k, pt)
        if any(x.denominator != 1 for x in img):
            raise TropicalError("tropical image of an integer point must be integral")
        out.append((level, tuple(int(x) for x in img)))
    res = GradedPointSet.of(out)
    assert len(res) == len(S)
    return res


def saturation_probe(S: GradedPointSet, window: int = 8) -> list[tuple[int, tuple[int, tuple[int, ...]]]]:
    """Divisibility counterexamples (n, x) with n*x stored but x missing,
    for 2 <= n <= window.  An empty list is evidence at this scale, not a proof."""
    if window < 1:
        raise TropicalError("window must be >= 1")
    violations = []
    for level, pt in S.sorted():
        for n in range(2, window + 1):
            if level % n:
                continue
            if any(c % n for c in pt):
                continue
            x = (level // n, tuple(c // n for c in pt))
            if x not in S:
                violations.append((n, x))
    return violations


# ---------------------------------------------------------------------------
# Polytope mutation


def branch_matrices(eps: ExtendedExchangeMatrix, k: int):
    """The two linear maps of the tropical mutation: A on {u_k >= 0}, B on
    {u_k <= 0}.  Both are unimodular and agree on the wall u_k = 0."""
    _check_direction(eps, k)
    n = len(eps.cols)
    ki = eps.col_index(k)
    row = eps.row(k)
    A = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    B = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    for j in range(n):
        if j == ki:
            A[j][ki] = Q(-1)
            B[j][ki] = Q(-1)
        else:
            A[j][ki] = Q(_pos(row[j]))
            B[j][ki] = Q(_pos(-row[j]))
    return tuple(map(tuple, A)), tuple(map(tuple, B))


@dataclass(frozen=True)
class TropImage:
    """Image of a polytope under one tropical mutation.

    convex=True carries the image polytope; otherwise both piece images are
    returned so callers can refuse explicitly."""

    convex: bool
    polytope: RationalPolytope | None
    plus_image: RationalPolytope | None
    minus_image: RationalPolytope | None

    def piece_vertices(self):
        pieces = [p for p in (self.plus_image, self.minus_image) if p is not None and not p.is_empty]
        if self.convex:
            pieces = [self.polytope]
        return [v for p in pieces for v in p.vertices]


def trop_mutate_polytope(eps: ExtendedExchangeMatrix, k: int, P: RationalPolytope) -> TropImage:
    """Map the two slices of P at u_k = 0 by the matching linear branches; if
    the union of the images is convex (union equals hull, decided exactly)
    return the hull, otherwise both pieces with the non-convexity flag."""
    _check_direction(eps, k)
    P.require_full_dim()
    m = P.ambient_dim
    if m != len(eps.cols):
        raise TropicalError("polytope ambient dimension does not match column count")
    ki = eps.col_index(k)
    wall = halfspace([1 if i == ki else 0 for i in range(m)], 0)
    A, B = branch_matrices(eps, k)
    vals = [wall.value(v) for v in P.vertices]
    if all(v >= 0 for v in vals):
        img = P.linear_image(A)
        return TropImage(True, img, img, None)
    if all(v <= 0 for v in vals):
        img = P.linear_image(B)
        return TropImage(True, img, None, img)
    crossings = crossing_points(P, wall)
    plus_pts = [v for v, val in zip(P.vertices, vals) if val >= 0] + crossings
    minus_pts = [v for v, val in zip(P.vertices, vals) if val <= 0] + crossings
    plus_img_pts = [matvec(A, p) for p in plus_pts]
    minus_img_pts = [matvec(B, p) for p in minus_pts]
    H = hull(plus_img_pts + minus_img_pts, m)
    # half-space descriptions of the true piece images, by facet transform
    in_plus_img = _image_membership(P, wall, A, keep_sign=+1)
    in_minus_img = _image_membership(P, wall, B, keep_sign=-1)
    # A sends {u_k >= 0} into {u_k <= 0} and B the other way around; the union
    # is convex iff each closed half of the hull lands inside the right piece,
    # checked on the half's vertex candidates (hull vertices plus crossings)
    candidates = list(H.vertices) + crossing_points(H, wall)
    convex = True
    for c in candidates:
        side = wall.value(c)
        if side <= 0 and not in_plus_img(c):
            convex = False
            break
        if side >= 0 and not in_minus_img(c):
            convex = False
            break
    if convex:
        return TropImage(True, H, None, None)
    plus_img = hull_any(plus_img_pts, m)
    minus_img = hull_any(minus_img_pts, m)
    return TropImage(False, None, plus_img, minus_img)


def _image_membership(P: RationalPolytope, wall, M, keep_sign: int):
    """Membership test for the image under branch matrix M of the wall-bounded
    slice of P: transform P's facets plus the side constraint by M."""
    Minv_t = mat_transpose(mat_inverse(M))
    halves = [(matvec(Minv_t, f.normal), f.offset) for f in P.facets]
    side_normal = tuple(keep_sign * x for x in wall.normal)
    halves.append((matvec(Minv_t, side_normal), Q(0)))

    def contains(p):
        return all(dot(p, n) + off >= 0 for n, off in halves)

    return contains


@dataclass(frozen=True)
class CenterReport:
    """Fixedness of a point under every mutable tropical direction."""

    fixed: bool
    violations: tuple[tuple[int, Q], ...]  # (direction, offending coordinate)


def center_fixedness(eps: ExtendedExchangeMatrix, u0) -> CenterReport:
    """True iff u0 has coordinate 0 at every mutable label; cross-checked
    against the direct fixed-point computation in each direction."""
    u0 = qvec(u0)
    violations = []
    for k in eps.mutable:
        coord = u0[eps.col_index(k)]
        fixed_direct = trop_mutate_point(eps, k, u0) == u0
        assert fixed_direct == (coord == 0), "fixed-point check disagrees with coordinate test"
        if coord != 0:
            violations.append((k, coord))
    return CenterReport(not violations, tuple(violations))


@dataclass(frozen=True)
class PreservationReport:
    """QGF data before and after one convex tropical mutation."""

    initial: QGFCertificate
    image: RationalPolytope
    mutated: QGFCertificate


def qgf_preservation_check(eps: ExtendedExchangeMatrix, k: int, P: RationalPolytope) -> PreservationReport:
    """Check that a QGF polytope with tropical-fixed center stays QGF of the
    same size with the mutated center.  Each precondition failure is raised
    individually as PreconditionError."""
    cert, msg = qgf_solve(P)
    if cert is None:
        raise PreconditionError("qgf", msg)
    rep = center_fixedness(eps, cert.center)
    if not rep.fixed:
        raise PreconditionError("center_fixed", f"violations at {rep.violations}")
    image = trop_mutate_polytope(eps, k, P)
    if not image.convex:
        raise PreconditionError("convex_image", "tropical image is not convex")
    cert2, msg2 = qgf_solve(image.polytope)
    if cert2 is None:
        raise PreconditionError("mutated_qgf", msg2)
    expected_center = trop_mutate_point(eps, k, cert.center)
    if cert2.size != cert.size or cert2.center != expected_center:
        raise AssertionError(
            f"QGF data not preserved: size {cert.size}->{cert2.size}, center {cert.center}->{cert2.center}"
        )
    return PreservationReport(cert, image.polytope, cert2)


@dataclass(frozen=True)
class SupportCheck:
    holds: bool
    witness: Point | None

    def __bool__(self):
        return self.holds


def _unit(n: int, i: int) -> tuple[Q, ...]:
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def supporting_halfspace_lemma(
    eps: ExtendedExchangeMatrix, r: int, s: int, P: RationalPolytope
) -> SupportCheck:
    """Verify that {u_s - eps_{r,s} u_r >= 0} supports P, under the stated
    preconditions (origin inside, P and its r-mutation inside {u_s >= 0},
    eps_{r,s} <= 0).  Returns the exact tightness witness."""
    _check_direction(eps, r)
    n = len(eps.cols)
    si = eps.col_index(s)
    ri = eps.col_index(r)
    origin = tuple(Q(0) for _ in range(n))
    if not P.contains(origin):
        raise PreconditionError("origin", "0 not in the polytope")
    hs = halfspace(_unit(n, si), 0)
    if not all(hs.contains(v) for v in P.vertices):
        raise PreconditionError("halfspace", f"polytope not contained in u_{s} >= 0")
    entry = eps.entry(r, s)
    if entry > 0:
        raise PreconditionError("entry_sign", f"eps_({r},{s}) = {entry} > 0")
    image = trop_mutate_polytope(eps, r, P)
    if not all(hs.contains(v) for v in image.piece_vertices()):
        raise PreconditionError("image_halfspace", f"mutated polytope not contained in u_{s} >= 0")
    normal = [Q(0)] * n
    normal[si] = Q(1)
    normal[ri] = Q(-entry)
    support = halfspace(normal, 0)
    vals = [support.value(v) for v in P.vertices]
    holds = all(v >= 0 for v in vals)
    witness = None
    if holds:
        witness = next((v for v, val in zip(P.vertices, vals) if val == 0), origin)
    return SupportCheck(holds, witness)


# ---------------------------------------------------------------------------
# Families and the distinguishing certificate


@dataclass(frozen=True)
class Stage:
    seq: tuple[int, ...]
    r: int
    s: int


@dataclass(frozen=True)
class FamilySpec:
    """Initial matrix and polytope plus nested mutation stages, each naming a
    (row, column) pair to monitor."""

    matrix: ExtendedExchangeMatrix
    polytope: RationalPolytope
    stages: tuple[Stage, ...]

    def __post_init__(self):
        if self.polytope.ambient_dim != len(self.matrix.cols):
            raise TropicalError("polytope dimension does not match matrix columns")
        prev: tuple[int, ...] = ()
        for st in self.stages:
            if st.seq[: len(prev)] != prev:
                raise TropicalError(f"stage sequence {st.seq} does not extend {prev}")
            prev = st.seq
            if st.r in self.matrix.frozen:
                raise TropicalError(f"stage pair row {st.r} is frozen")
            if st.s not in self.matrix.cols:
                raise TropicalError(f"stage pair column {st.s} unknown")
            for k in st.seq:
                if k in self.matrix.frozen:
                    raise TropicalError(f"stage sequence mutates frozen label {k}")


@dataclass(frozen=True)
class StageRecord:
    seq: tuple[int, ...]
    r: int
    s: int
    entry: int | None
    entry_nonpositive: bool
    cond_polytope: bool
    cond_image: bool
    qgf_ok: bool
    size_ok: bool
    center_ok: bool
    a_s: Q | None
    q: int | None
    lower_bound: int | None
    segment_count: int | None
    dual_count: int | None
    valid: bool
    notes: tuple[str, ...]


@dataclass(frozen=True)
class DistinguishCertificate:
    """Machine-checked record of the infinitely-many-tori criterion at desk scale.

    Global flags cover the initial polytope; each stage record carries the
    monitored matrix entry, both half-space conditions, and the verified dual
    lattice count against the 1 - entry lower bound."""

    origin_ok: bool
    initial_qgf: bool
    center: Point | None
    size: int | None
    center_fixed: bool
    q: int | None
    stages: tuple[StageRecord, ...]
    counts_strictly_increasing: bool
    pairwise_distinct: bool
    notes: tuple[str, ...]

    @property
    def all_stages_valid(self) -> bool:
        return all(st.valid for st in self.stages)


def distinguish_certificate(family: FamilySpec, enumeration_cap: int = 2_000_000) -> DistinguishCertificate:
    """Replay the family and certify the distinguishing criterion stage by stage.

    Per stage: records eps_{r,s}, checks both half-space conditions, computes
    q from size/a_s in lowest terms, verifies the dual lattice points along
    the monitored segment, and counts all dual points in (1/q)Z^J.  Failed
    conditions are recorded per stage; enumeration infeasibility is reported,
    never silently skipped.
    """
    eps = family.matrix
    P = family.polytope
    n = len(eps.cols)
    notes: list[str] = []
    origin = tuple(Q(0) for _ in range(n))
    origin_ok = P.contains(origin)
    cert, msg = qgf_solve(P)
    initial_qgf = cert is not None
    center = cert.center if cert else None
    size = cert.size if cert else None
    if not initial_qgf:
        notes.append(f"initial polytope not QGF: {msg}")
    center_fixed = False
    if cert:
        rep = center_fixedness(eps, cert.center)
        center_fixed = rep.fixed
        if not rep.fixed:
            notes.append(f"center not tropical-fixed: violations {rep.violations}")

    records: list[StageRecord] = []
    cur_eps, cur_P = eps, P
    done: tuple[int, ...] = ()
    blocked: str | None = None
    for st in family.stages:
        st_notes: list[str] = []
        if blocked is None:
            for k in st.seq[len(done):]:
                img = trop_mutate_polytope(cur_eps, k, cur_P)
                if not img.convex:
                    blocked = f"non-convex tropical image at direction {k} after {done}"
                    break
                cur_P = img.polytope
                cur_eps = cur_eps.mutate(k)
                done = done + (k,)
        if blocked is not None:
            records.append(
                StageRecord(st.seq, st.r, st.s, None, False, False, False, False, False, False,
                            None, None, None, None, None, False, (f"replay blocked: {blocked}",))
            )
            continue

        entry = cur_eps.entry(st.r, st.s)
        entry_np = entry <= 0
        if not entry_np:
            st_notes.append(f"entry {entry} is positive; lower bound not applicable")
        si = cur_eps.col_index(st.s)
        hs = halfspace(_unit(n, si), 0)
        cond2 = all(hs.contains(v) for v in cur_P.vertices)
        img = trop_mutate_polytope(cur_eps, st.r, cur_P)
        cond3 = all(hs.contains(v) for v in img.piece_vertices())
        if not cond2:
            st_notes.append(f"polytope leaves the half-space u_{st.s} >= 0")
        if not cond3:
            st_notes.append(f"mutated polytope leaves the half-space u_{st.s} >= 0")

        scert, smsg = qgf_solve(cur_P)
        qgf_ok = scert is not None
        size_ok = bool(scert and cert and scert.size == cert.size)
        center_ok = bool(scert and cert and scert.center == cert.center)
        if not qgf_ok:
            st_notes.append(f"stage polytope not QGF: {smsg}")
        a_s = q = lower = seg_count = dual_count = None
        if scert and cert:
            if not size_ok:
                st_notes.append(f"size changed: {cert.size} -> {scert.size}")
            if not center_ok:
                st_notes.append(f"center moved: {cert.center} -> {scert.center}")
            a_s = dot(cert.center, _unit(n, si))
            if a_s == 0:
                st_notes.append(f"a_s = <u0, e_{st.s}> is zero; segment scaling undefined")
            else:
                frac = Q(cert.size) / a_s
                p_num, q = frac.numerator, frac.denominator
                lower = 1 - min(entry, 0)
                e_s = _unit(n, si)
                e_r = _unit(n, cur_eps.col_index(st.r))
                start = tuple(frac * x for x in e_s)
                step = tuple(Q(1, q) * x for x in e_r)
                count_on_seg = abs(p_num) * abs(min(entry, 0))
                sign = 1 if p_num >= 0 else -1
                seg_pts = [
                    tuple(a + sign * j * b for a, b in zip(start, step))
                    for j in range(count_on_seg + 1)
                ]
                seg_count = sum(1 for ppt in seg_pts if scert.dual.contains(ppt))
                if seg_count < len(seg_pts):
                    st_notes.append(
                        f"only {seg_count}/{len(seg_pts)} segment points inside the dual"
                    )
                box = scert.dual.bounding_box()
                cells = 1
                for lo, hi in box:
                    cells *= int((hi - lo) * q) + 1
                if cells > enumeration_cap:
                    st_notes.append(
                        f"dual enumeration infeasible: {cells} candidate cells exceed cap {enumeration_cap}"
                    )
                else:
                    dual_count = len(lattice_points(scert.dual, q))
        conditions_hold = bool(
            entry_np and cond2 and cond3 and qgf_ok and size_ok and center_ok
            and a_s is not None and a_s != 0
        )
        if conditions_hold and seg_count is not None and seg_count < lower:
            # with every condition satisfied the dual provably contains
            # the whole segment; a miss here is an implementation bug
            raise AssertionError(
                f"segment verification failed on a condition-satisfying stage: {seg_count} < {lower}"
            )
        valid = bool(
            conditions_hold
            and dual_count is not None
            and lower is not None
            and seg_count is not None
            and seg_count >= lower
            and dual_count >= lower
        )
        records.append(
            StageRecord(st.seq, st.r, st.s, entry, entry_np, cond2, cond3, qgf_ok, size_ok,
                        center_ok, a_s, q, lower, seg_count, dual_count, valid, tuple(st_notes))
        )

    qs = {rec.q for rec in records if rec.q is not None}
    global_q = qs.pop() if len(qs) == 1 else None
    if global_q is None and records:
        notes.append("stages do not share a single q; counts are not comparable")
    counts = [rec.dual_count for rec in records]
    increasing = (
        bool(records)
        and all(rec.valid for rec in records)
        and global_q is not None
        and all(a is not None and b is not None and a < b for a, b in zip(counts, counts[1:]))
    )
    distinct = increasing and origin_ok and initial_qgf and center_fixed
    return DistinguishCertificate(
        origin_ok, initial_qgf, center, size, center_fixed, global_q,
        tuple(records), increasing, distinct, tuple(notes),
    )
