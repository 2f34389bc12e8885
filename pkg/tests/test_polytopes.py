from fractions import Fraction as Q

import pytest

from clustrop.polytopes import (
    DegenerateError,
    PolytopeError,
    halfspace,
    hull,
    hull_any,
    is_supporting,
    lattice_points,
    polar_dual,
    qgf_certificate,
    qgf_solve,
    slice_polytope,
    volume,
)


def square(r=1):
    return hull([(r, r), (r, -r), (-r, r), (-r, -r)])


def test_hull_square_facets():
    P = square()
    assert len(P.vertices) == 4
    assert len(P.facets) == 4
    normals = sorted(tuple(map(int, f.normal)) for f in P.facets)
    assert normals == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert all(f.offset == 1 for f in P.facets)


def test_hull_drops_interior_and_non_vertices():
    P = hull([(0, 0), (1, 0), (0, 1), (1, 1), (Q(1, 2), 2), (Q(1, 2), Q(1, 2))])
    assert len(P.vertices) == 5
    assert (Q(1, 2), Q(1, 2)) not in P.vertices


def test_hull_rejects_degenerate_input():
    with pytest.raises(DegenerateError):
        hull([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateError):
        hull([(1, 2)])


def test_hull_any_tags_dimension():
    seg = hull_any([(0, 0), (2, 2), (1, 1)], 2)
    assert seg.dim == 1 and seg.vertices == ((Q(0), Q(0)), (Q(2), Q(2)))
    assert seg.contains((1, 1)) and not seg.contains((1, 0))
    pt = hull_any([(3, 4)], 2)
    assert pt.dim == 0
    assert hull_any([], 2).is_empty


def test_polar_dual_square_is_diamond():
    D = polar_dual(square())
    assert D.vertices == hull([(1, 0), (0, 1), (-1, 0), (0, -1)]).vertices


def test_polar_dual_of_big_square():
    D = polar_dual(square(2))
    assert set(D.vertices) == {(Q(1, 2), Q(0)), (Q(-1, 2), Q(0)), (Q(0), Q(1, 2)), (Q(0), Q(-1, 2))}


def test_double_dual_identity():
    for P in [square(), hull([(2, 0), (0, 3), (-1, -1)]), hull([(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1), (-1, -1, -1)])]:
        assert polar_dual(polar_dual(P)) == P


def test_polar_dual_needs_interior_origin():
    with pytest.raises(PolytopeError):
        polar_dual(hull([(0, 0), (1, 0), (0, 1)]))


def test_is_supporting():
    P = square()
    assert is_supporting(halfspace((-1, 0), 1), P)  # facet x <= 1
    assert is_supporting(halfspace((-1, -1), 2), P)  # touches only the corner
    assert not is_supporting(halfspace((1, 0), 5), P)  # contains but never touches
    assert not is_supporting(halfspace((1, 0), -3), P)  # cuts the square


def test_lattice_points_counts():
    assert len(lattice_points(square(), 1)) == 9
    diamond_half = hull([(Q(1, 2), 0), (0, Q(1, 2)), (Q(-1, 2), 0), (0, Q(-1, 2))])
    assert len(lattice_points(diamond_half, 2)) == 5
    shifted = hull([(Q(3, 4), Q(3, 4)), (Q(5, 4), Q(3, 4)), (Q(3, 4), Q(5, 4)), (Q(5, 4), Q(5, 4))])
    assert lattice_points(shifted, 1) == [(Q(1), Q(1))]


def test_qgf_certificates_figure_pair():
    cert = qgf_certificate(square(2))
    assert cert is not None
    assert cert.center == (0, 0) and cert.size == 2
    assert qgf_certificate(hull([(1, 2), (1, -2), (-1, 2), (-1, -2)])) is None


def test_qgf_reflexive_square():
    cert = qgf_certificate(square())
    assert cert.size == 1
    assert set(cert.dual_vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_qgf_dual_has_primitive_integer_vertices():
    cert = qgf_certificate(square(2))
    scaled = cert.dual
    for v in scaled.vertices:
        assert all(x.denominator == 1 for x in v)
        from math import gcd

        g = 0
        for x in v:
            g = gcd(g, int(x))
        assert g == 1


def test_qgf_off_center_and_rational_size():
    # translate: center follows
    P = square(2).translate((1, 3))
    cert = qgf_certificate(P)
    assert cert.center == (1, 3) and cert.size == 2
    # rational common offset: size 1/2 is not a positive integer
    cert2, msg = qgf_solve(square(2).scale(Q(1, 4)))
    assert cert2 is None and "not an integer" in msg


def test_slice_square_in_half():
    res = slice_polytope(square(), halfspace((1, 0), 0))
    assert res.section.dim == 1
    assert res.section.vertices == ((Q(0), Q(-1)), (Q(0), Q(1)))
    assert res.plus.vertices == ((Q(0), Q(-1)), (Q(0), Q(1)), (Q(1), Q(-1)), (Q(1), Q(1)))


def test_slice_triangle_crossings():
    tri = hull([(0, 0), (2, 0), (0, 2)])
    res = slice_polytope(tri, halfspace((-1, 0), 1))  # hyperplane x = 1
    assert set(res.section.vertices) == {(Q(1), Q(0)), (Q(1), Q(1))}
    assert volume(res.plus) + volume(res.minus) == volume(tri) == 2


def test_slice_missing_hyperplane():
    P = square()
    res = slice_polytope(P, halfspace((1, 0), 10))
    assert res.plus == P and res.minus.is_empty and res.section.is_empty


def test_volume_3d_additivity():
    cube = hull([(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)])
    assert volume(cube) == 8
    res = slice_polytope(cube, halfspace((1, 1, 1), -3))
    assert volume(res.plus) + volume(res.minus) == 8


def test_rounding_free_membership():
    P = hull([(Q(1, 3), 0), (0, Q(1, 3)), (Q(-1, 3), 0), (0, Q(-1, 3))])
    assert P.contains((Q(1, 6), Q(1, 6)))
    assert not P.contains((Q(1, 6), Q(1, 5)))


def test_hrep_vrep_round_trip():
    P = hull([(2, 0), (0, 3), (-1, -1), (1, 2)])
    from clustrop.polytopes import vertices_from_facets

    assert tuple(vertices_from_facets(list(P.facets), 2)) == P.vertices
