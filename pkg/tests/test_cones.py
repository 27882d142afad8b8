import pytest

from toric.cones import (
    RationalCone, double_description, dual_cone, free_action_values, positive_hull,
    smallest_face_containing,
)
from toric.errors import InvalidInputError, PointOutsideCone

SQUARE = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]


def test_positive_hull_drops_redundant_generators():
    cone = positive_hull([(1, 0), (0, 1), (1, 1), (2, 0)])
    assert cone.extremal_rays() == [(1, 0), (0, 1)]
    assert cone.facets == [(1, 0), (0, 1)]
    assert cone.equations == []


def test_cone_equality_ignores_generator_choice():
    assert positive_hull([(1, 0), (0, 1)]) == positive_hull([(2, 0), (0, 3), (1, 1)])
    assert positive_hull([(1, 0), (0, 1)]) != positive_hull([(1, 0), (1, 1)])


def test_cone_over_square():
    cone = positive_hull(SQUARE)
    pred = cone.predicates()
    assert pred.strictly_convex
    assert pred.full_dimensional
    assert not pred.simplicial
    assert pred.n_rays == 4
    assert cone.f_vector() == (1, 4, 4, 1)
    assert len(cone.facets) == 4
    assert cone.extremal_rays() == [(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)]


def test_dual_of_dual():
    cone = positive_hull(SQUARE)
    assert dual_cone(dual_cone(cone)) == cone
    dual = dual_cone(cone)
    for g in cone.extremal_rays():
        assert all(sum(a * b for a, b in zip(g, chi)) >= 0 for chi in dual.extremal_rays())


def test_half_plane_has_lineality():
    cone = positive_hull([(1, 0), (-1, 0), (0, 1)])
    pred = cone.predicates()
    assert not pred.strictly_convex
    assert pred.lineality_rank == 1
    assert cone.lineality_basis == [(1, 0)]
    assert cone.extremal_rays() == [(0, 1)]
    assert cone.facets == [(0, 1)]
    assert cone.f_vector() == (1, 1)
    split = cone.split_lineality()
    assert split.u == 1
    product = [[sum(split.Q[i][k] * split.Qinv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert product == [[1, 0], [0, 1]]
    assert split.quotient((5, 0)) == (0,)


def test_lower_dimensional_cone():
    cone = positive_hull([(1, 0, 0), (0, 1, 0)])
    assert cone.equations == [(0, 0, 1)]
    assert cone.dimension == 2
    assert not cone.predicates().full_dimensional
    assert cone.contains((3, 4, 0))
    assert not cone.contains((1, 1, 1))
    assert cone.contains_interior((1, 1, 0))
    assert not cone.contains_interior((1, 0, 0))


def test_double_description_of_orthant():
    lines, rays = double_description([(1, 0), (0, 1)], 2)
    assert lines == []
    assert sorted(rays) == [(0, 1), (1, 0)]


def test_smallest_face_containing():
    cone = positive_hull([(1, 0), (0, 1)])
    face = smallest_face_containing(cone, [(1, 0)])
    assert face.dimension == 1
    assert cone.face_generators(face) == [(1, 0)]
    assert smallest_face_containing(cone, [(1, 1)]).dimension == 2
    assert smallest_face_containing(cone, [(2, 0), (0, 3)]).dimension == 2
    with pytest.raises(PointOutsideCone):
        smallest_face_containing(cone, [(-1, 0)])


def test_face_order_is_inclusion():
    cone = positive_hull(SQUARE)
    faces = cone.face_poset()
    apex, whole = faces[0], faces[-1]
    assert apex.dimension == 0 and whole.dimension == 3
    assert all(apex <= f and f <= whole for f in faces)
    ray = cone.ray_face(0)
    assert ray.dimension == 1
    assert ray < whole
    assert not whole <= ray


def test_unimodular():
    assert positive_hull([(1, 0), (0, 1)]).is_unimodular()
    assert not positive_hull([(1, 0), (1, 2)]).is_unimodular()
    assert not positive_hull(SQUARE).is_unimodular()


def test_free_action_values():
    dual = dual_cone(positive_hull([(1, 0), (0, 1)]))
    values = free_action_values(dual, (1, 1))
    assert values.values == (1, 1)
    assert values.all_ones
    assert not free_action_values(dual, (2, 1)).all_ones


def test_invalid_cones():
    with pytest.raises(InvalidInputError):
        positive_hull([])
    with pytest.raises(InvalidInputError):
        RationalCone([(1, 0), (1, 0, 0)])
    with pytest.raises(InvalidInputError):
        positive_hull([(1, 0)]).contains((1, 0, 0))
