from fractions import Fraction
from itertools import combinations

import pytest

from gptlab.errors import EmptyStateSet, NotAStateVertex, NotGenerating, NotNormalized
from gptlab.geometry import (
    VPolytope,
    affine_hull,
    dimension,
    intersect_with_affine,
)
from gptlab.kernel import rank_of_vectors, vec_zero, vector
from gptlab.models import polygon_base, simplex_model
from gptlab.statespace import (
    Classification,
    Effect,
    build,
    certain_face,
    classify,
    complementary,
    effect_polytope,
    impossible_face,
    is_pure,
    lift,
    pure_effects,
    subnormalized,
    unanimity_face,
    validate_measurement,
)

from conftest import zoo_small

F = Fraction


def test_build_square_model():
    vertices = [
        vector([1, 1, 1]),
        vector([-1, 1, 1]),
        vector([1, -1, 1]),
        vector([-1, -1, 1]),
    ]
    space = build(3, vector([0, 0, 1]), vertices)
    assert space.dim == 3 and space.num_states == 4
    assert classify(space) is Classification.DISCRETE_NONCLASSICAL


def test_build_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        build(2, vector([1, 1]), [vector([1, 1])])  # evaluates to 2


def test_build_rejects_nongenerating():
    with pytest.raises(NotGenerating):
        build(3, vector([0, 0, 1]), [vector([0, 0, 1]), vector([1, 0, 1])])


def test_build_rejects_empty():
    with pytest.raises(EmptyStateSet):
        build(1, vector([1]), [])


def test_lift_examples():
    square = lift(
        VPolytope.from_points(
            [vector([0, 0]), vector([1, 0]), vector([0, 1]), vector([1, 1])]
        )
    )
    assert square.dim == 3 and square.num_states == 4

    point = lift(VPolytope.from_points([vector([])]))
    assert point.dim == 1 and point.num_states == 1
    assert classify(point) is Classification.CLASSICAL

    pent = lift(polygon_base(5))
    assert pent.dim == 3 and pent.num_states == 5


def test_subnormalized(square, trit):
    assert len(subnormalized(square).vertices) == 5
    single = simplex_model(1)
    sub = subnormalized(single)
    assert sub.vertices == ((F(0),), (F(1),))
    tetra = subnormalized(trit)
    assert len(tetra.vertices) == 4 and dimension(tetra) == 3


def test_effect_polytope_inequality_counts(square, trit):
    assert len(effect_polytope(square).ineqs) == 8
    assert len(effect_polytope(trit).ineqs) == 6
    single = simplex_model(1)
    from gptlab.geometry import h_to_v

    interval = h_to_v(effect_polytope(single))
    assert interval.vertices == ((F(0),), (F(1),))


def test_pure_effect_counts_frozen_from_oracle(square, pentagon, trit):
    """Counts computed first with the independent sympy enumerator."""
    from oracles import effect_vertex_count

    assert effect_vertex_count(square) == 6
    assert effect_vertex_count(trit) == 8
    assert effect_vertex_count(pentagon) == 12

    assert len(pure_effects(square)) == 6
    assert len(pure_effects(trit)) == 8
    assert len(pure_effects(pentagon)) == 12


def test_pure_effects_contain_zero_and_unit(square, pentagon, trit, pyramid):
    for space in (square, pentagon, trit, pyramid):
        functionals = {e.functional for e in pure_effects(space)}
        assert vec_zero(space.dim) in functionals
        assert space.unit_effect in functionals


def test_pure_effect_extremality_rank(square, pentagon, pyramid):
    for space in (square, pentagon, pyramid):
        for f in pure_effects(space):
            tight = [
                v for v in space.states.vertices if f(v) == 0 or f(v) == 1
            ]
            assert rank_of_vectors(tight) == space.dim


def _edge_effects(space):
    return [
        f
        for f in pure_effects(space)
        if dimension(certain_face(space, f)) == dimension(space.states) - 1
    ]


def test_certain_face_examples(square):
    unit = Effect(square.unit_effect)
    assert certain_face(square, unit) == square.states
    zero = Effect(vec_zero(3))
    assert certain_face(square, zero).is_empty
    edge = _edge_effects(square)[0]
    face = certain_face(square, edge)
    assert len(face.vertices) == 2 and dimension(face) == 1


def test_impossible_face_examples(square, pentagon):
    unit = Effect(square.unit_effect)
    assert impossible_face(square, unit).is_empty
    for f in _edge_effects(square):
        assert len(impossible_face(square, f).vertices) == 2  # opposite edge
    for f in _edge_effects(pentagon):
        assert len(impossible_face(pentagon, f).vertices) == 1  # opposite vertex


def test_complementary(square):
    unit = Effect(square.unit_effect)
    assert complementary(square, unit).functional == vec_zero(3)
    edge = _edge_effects(square)[0]
    assert complementary(square, complementary(square, edge)) == edge
    comp = complementary(square, edge)
    assert certain_face(square, comp) == impossible_face(square, edge)


def test_complementary_preserves_purity_on_zoo():
    for _, space in zoo_small():
        pure_set = {f.functional for f in pure_effects(space)}
        complements = {complementary(space, Effect(f)).functional for f in pure_set}
        assert complements == pure_set


def test_certain_and_impossible_faces_are_faces(square, pentagon, pyramid):
    """Both distinguished faces satisfy F = aff(F) cap states."""
    for space in (square, pentagon, pyramid):
        for f in pure_effects(space):
            for face in (certain_face(space, f), impossible_face(space, f)):
                if face.is_empty:
                    continue
                assert (
                    intersect_with_affine(space.states, affine_hull(face.vertices))
                    == face
                )


def test_nonzero_pure_effects_have_states(square, pentagon, trit, pyramid):
    for space in (square, pentagon, trit, pyramid):
        for f in pure_effects(space):
            if any(x != 0 for x in f.functional):
                assert not certain_face(space, f).is_empty


def test_unanimity_face_of_edge(square):
    edge = _edge_effects(square)[0]
    face = certain_face(square, edge)
    segment = unanimity_face(square, face.vertices)
    assert set(segment.vertices) == {square.unit_effect, edge.functional}


def test_unanimity_face_of_everything_is_unit(square):
    only_unit = unanimity_face(square, square.states.vertices)
    assert only_unit.vertices == (square.unit_effect,)


def test_unanimity_face_of_nothing_is_all_effects(square):
    every = unanimity_face(square, ())
    assert set(every.vertices) == {f.functional for f in pure_effects(square)}


def test_unanimity_face_rejects_non_vertices(square):
    with pytest.raises(NotAStateVertex):
        unanimity_face(square, (vec_zero(3),))


def test_unanimity_faces_are_faces_of_effect_polytope():
    """Faces of the effect body, for all vertex subsets of size <= 3."""
    from gptlab.geometry import VPolytope as VP

    for _, space in zoo_small():
        if space.dim > 3:
            continue
        effect_body = VP.from_extreme(
            space.dim, tuple(f.functional for f in pure_effects(space))
        )
        verts = space.states.vertices
        subsets = [()] + [
            s for size in (1, 2, 3) for s in combinations(verts, size)
        ]
        for subset in subsets[:12]:
            face = unanimity_face(space, subset)
            got = intersect_with_affine(effect_body, affine_hull(face.vertices))
            assert got == face


def test_classify(square, trit):
    assert classify(trit) is Classification.CLASSICAL
    assert classify(square) is Classification.DISCRETE_NONCLASSICAL
    assert classify(simplex_model(4)) is Classification.CLASSICAL


def test_origin_outside_affine_hulls(square, pentagon):
    for space in (square, pentagon):
        verts = space.states.vertices
        subsets = [verts] + [list(s) for s in combinations(verts, 2)]
        for subset in subsets:
            assert not affine_hull(tuple(subset)).contains(vec_zero(space.dim))


def test_validate_measurement(square):
    edge = _edge_effects(square)[0]
    comp = complementary(square, edge)
    assert validate_measurement(square, [edge, comp])
    assert not validate_measurement(square, [edge, edge])


def test_purity_predicate(square):
    assert is_pure(square, Effect(square.unit_effect))
    assert is_pure(square, Effect(vec_zero(3)))
    # the barycentric half-unit effect is interior, not extreme
    half_unit = Effect(tuple(x / 2 for x in square.unit_effect))
    assert not is_pure(square, half_unit)
