import random
from fractions import Fraction as Q

import pytest

from clustrop.mutation import FrozenIndexError, exchange_matrix
from clustrop.polytopes import hull, qgf_certificate
from clustrop.tropical import (
    FamilySpec,
    GradedPointSet,
    PreconditionError,
    Stage,
    TropicalError,
    center_fixedness,
    distinguish_certificate,
    qgf_preservation_check,
    saturation_probe,
    supporting_halfspace_lemma,
    trop_mutate_graded,
    trop_mutate_point,
    trop_mutate_polytope,
)


def eps_row(row, frozen=(2,)):
    return exchange_matrix([1, 2], frozen, [1, 1], [row])


EPS = eps_row([0, -2])


def test_point_map_branches():
    assert trop_mutate_point(EPS, 1, (-1, 3)) == (1, 1)
    assert trop_mutate_point(EPS, 1, (1, 3)) == (-1, 3)
    assert trop_mutate_point(EPS, 1, (0, 7)) == (0, 7)


def test_point_map_rejects_frozen():
    with pytest.raises(FrozenIndexError):
        trop_mutate_point(EPS, 2, (1, 1))


def test_point_map_dimension_check():
    with pytest.raises(TropicalError):
        trop_mutate_point(EPS, 1, (1, 2, 3))


def test_point_map_is_bijective_with_tropical_inverse():
    rng = random.Random(31)
    for _ in range(1000):
        n_mut = rng.randint(1, 3)
        n_fr = rng.randint(0, 2)
        cols = list(range(1, n_mut + n_fr + 1))
        d = [1] * len(cols)
        omega = [[0] * n_mut for _ in range(n_mut)]
        for i in range(n_mut):
            for j in range(i + 1, n_mut):
                w = rng.randint(-3, 3)
                omega[i][j], omega[j][i] = w, -w
        rows = [omega[i] + [rng.randint(-3, 3) for _ in range(n_fr)] for i in range(n_mut)]
        eps = exchange_matrix(cols, cols[n_mut:], d, rows)
        k = rng.choice(eps.mutable)
        u = tuple(Q(rng.randint(-8, 8), rng.choice([1, 2, 3])) for _ in cols)
        v = trop_mutate_point(eps, k, u)
        assert trop_mutate_point(eps.mutate(k), k, v) == u


def test_integer_points_stay_integer():
    rng = random.Random(32)
    eps = eps_row([0, -2])
    for _ in range(200):
        u = (rng.randint(-5, 5), rng.randint(-5, 5))
        v = trop_mutate_point(eps, 1, u)
        assert all(x.denominator == 1 for x in v)


def test_graded_set_levels_and_cardinality():
    S = GradedPointSet.of([(1, (2, -1)), (2, (0, 3)), (1, (2, -1))])
    assert len(S) == 2
    with pytest.raises(TropicalError):
        GradedPointSet.of([(0, (1, 1))])


def test_graded_mutation_round_trip():
    rng = random.Random(33)
    pts = [(rng.randint(1, 4), (rng.randint(-5, 5), rng.randint(-5, 5))) for _ in range(30)]
    S = GradedPointSet.of(pts)
    T = trop_mutate_graded(S, EPS, 1)
    assert len(T) == len(S)
    assert {lvl for lvl, _ in T.elements} <= {lvl for lvl, _ in S.elements}
    back = trop_mutate_graded(T, EPS.mutate(1), 1)
    assert back == S


def test_saturation_probe_detects_missing_half():
    S = GradedPointSet.of([(2, (2,))])
    assert saturation_probe(S, window=2) == [(2, (1, (1,)))]
    closed = GradedPointSet.of([(1, (1,)), (2, (2,))])
    assert saturation_probe(closed, window=4) == []


def test_saturation_violation_count_preserved_by_mutation():
    rng = random.Random(34)
    for _ in range(100):
        pts = [(rng.choice([1, 2, 4]), (rng.randint(-4, 4) * 2, rng.randint(-4, 4))) for _ in range(12)]
        S = GradedPointSet.of(pts)
        before = len(saturation_probe(S, window=4))
        T = trop_mutate_graded(S, EPS, 1)
        assert len(saturation_probe(T, window=4)) == before


def test_polytope_single_branch_when_one_sided():
    P = hull([(1, 0), (2, 0), (1, 5), (2, 5)])  # u_1 >= 1 > 0
    img = trop_mutate_polytope(EPS, 1, P)
    assert img.convex
    assert img.polytope.vertices == hull([(-1, 0), (-2, 0), (-1, 5), (-2, 5)]).vertices


def test_polytope_two_branch_example_and_inverse():
    P = hull([(0, 0), (-1, 2), (1, 0), (1, 2)])
    img = trop_mutate_polytope(EPS, 1, P)
    assert img.convex
    assert set(img.polytope.vertices) == {(Q(-1), Q(0)), (Q(-1), Q(2)), (Q(0), Q(2)), (Q(1), Q(0))}
    back = trop_mutate_polytope(EPS.mutate(1), 1, img.polytope)
    assert back.convex and back.polytope == P


def test_polytope_nonconvex_image_returns_pieces():
    # wide symmetric square folds into two wedges
    eps = eps_row([0, -2])
    P = hull([(2, 2), (2, -2), (-2, 2), (-2, -2)])
    img = trop_mutate_polytope(eps, 1, P)
    assert not img.convex
    assert img.polytope is None
    assert img.plus_image is not None and img.minus_image is not None
    # the two pieces sit on opposite sides of the wall
    assert all(v[0] <= 0 for v in img.plus_image.vertices)
    assert all(v[0] >= 0 for v in img.minus_image.vertices)


def test_center_fixedness_conditions():
    eps3 = exchange_matrix([1, 2, 3], [3], [1, 1, 1], [[0, 1, -2], [-1, 0, -2]])
    assert center_fixedness(eps3, (0, 0, 5)).fixed
    rep = center_fixedness(eps3, (0, 1, 5))
    assert not rep.fixed and rep.violations == ((2, 1),)


def test_center_fixedness_equivalence_randomized():
    rng = random.Random(35)
    eps3 = exchange_matrix([1, 2, 3], [3], [1, 1, 1], [[0, 1, -2], [-1, 0, -2]])
    for _ in range(1000):
        u0 = tuple(Q(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(3))
        rep = center_fixedness(eps3, u0)  # internal assert compares both conditions
        direct = all(trop_mutate_point(eps3, k, u0) == u0 for k in eps3.mutable)
        assert rep.fixed == direct


def test_qgf_preservation_trivial_row():
    eps = eps_row([0, 0])
    P = hull([(1, 1), (1, -1), (-1, 1), (-1, -1)]).translate((0, 1))
    report = qgf_preservation_check(eps, 1, P)
    assert report.initial.size == report.mutated.size == 1
    assert report.mutated.center == report.initial.center == (0, 1)


def test_qgf_preservation_rejects_non_qgf_input():
    eps = eps_row([0, -2])
    bad = hull([(1, 2), (1, -2), (-1, 2), (-1, -2)])
    with pytest.raises(PreconditionError) as err:
        qgf_preservation_check(eps, 1, bad)
    assert err.value.which == "qgf"


def test_qgf_preservation_rejects_moving_center():
    eps = eps_row([0, -2])
    P = hull([(1, 1), (1, -1), (-1, 1), (-1, -1)]).translate((1, 0))
    with pytest.raises(PreconditionError) as err:
        qgf_preservation_check(eps, 1, P)
    assert err.value.which == "center_fixed"


def test_supporting_halfspace_lemma_2d_instance():
    P = hull([(0, 0), (-1, 2), (1, 0), (1, 2)])
    chk = supporting_halfspace_lemma(EPS, 1, 2, P)
    assert chk.holds
    assert chk.witness in P.vertices or chk.witness == (0, 0)


def test_supporting_halfspace_lemma_zero_entry_reduces_to_hypothesis():
    eps = eps_row([0, 0])
    P = hull([(0, 0), (1, 0), (0, 1)])
    chk = supporting_halfspace_lemma(eps, 1, 2, P)
    assert chk.holds


def test_supporting_halfspace_lemma_precondition_failures():
    P_neg = hull([(0, 0), (1, -1), (1, 1), (-1, 0)])
    with pytest.raises(PreconditionError) as err:
        supporting_halfspace_lemma(EPS, 1, 2, P_neg)
    assert err.value.which == "halfspace"
    P = hull([(0, 0), (-1, 2), (1, 0), (1, 2)])
    with pytest.raises(PreconditionError) as err2:
        supporting_halfspace_lemma(eps_row([0, 2]), 1, 2, P)
    assert err2.value.which == "entry_sign"


def family_fixture():
    eps = exchange_matrix([1, 2, 3], [3], [1, 1, 1], [[0, 1, -2], [-1, 0, -2]])
    P = hull([(0, 0, 0), (-1, 0, 2), (0, 2, 2), (Q(5, 3), Q(-4, 3), 2)])
    return eps, P


def test_family_spec_validation():
    eps, P = family_fixture()
    with pytest.raises(TropicalError):
        FamilySpec(eps, P, (Stage((1,), 1, 3), Stage((2,), 1, 3)))  # not nested
    with pytest.raises(TropicalError):
        FamilySpec(eps, P, (Stage((), 3, 3),))  # frozen row
    with pytest.raises(TropicalError):
        FamilySpec(eps, P, (Stage((3,), 1, 3),))  # mutating frozen label


def test_distinguish_certificate_two_stages():
    eps, P = family_fixture()
    cert = distinguish_certificate(FamilySpec(eps, P, (Stage((), 1, 3), Stage((1,), 2, 3))))
    assert cert.origin_ok and cert.initial_qgf and cert.center_fixed
    assert cert.center == (0, 0, 1) and cert.size == 1 and cert.q == 1
    entries = [st.entry for st in cert.stages]
    assert entries == [-2, -4]
    assert [st.lower_bound for st in cert.stages] == [3, 5]
    assert [st.segment_count for st in cert.stages] == [3, 5]
    assert all(st.valid for st in cert.stages)
    assert cert.counts_strictly_increasing and cert.pairwise_distinct


def test_distinguish_certificate_marks_invalid_stage():
    eps, P = family_fixture()
    # monitor a mutable column: a_s = 0 there, so the stage must be invalid
    cert = distinguish_certificate(FamilySpec(eps, P, (Stage((), 1, 1),)))
    st = cert.stages[0]
    assert not st.valid
    assert any("a_s" in note for note in st.notes)
    assert not cert.pairwise_distinct


def test_distinguish_certificate_condition_violation_recorded():
    eps, _ = family_fixture()
    # shift the polytope so it leaves the u_3 >= 0 half-space
    P = hull([(0, 0, 0), (-1, 0, 2), (0, 2, 2), (Q(5, 3), Q(-4, 3), 2)]).translate((0, 0, -Q(1, 2)))
    cert = distinguish_certificate(FamilySpec(eps, P, (Stage((), 1, 3),)))
    st = cert.stages[0]
    assert not st.cond_polytope and not st.valid
