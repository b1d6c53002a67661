from fractions import Fraction

import pytest

from gptlab.errors import GptlabError
from gptlab.geometry import dimension, is_simplex, reduce_to_vertices
from gptlab.kernel import rank_of_vectors, vec_dot, vector
from gptlab.models import (
    TooFewVertices,
    ZOO,
    polygon,
    polygon_base,
    simplex_model,
    square_pyramid,
    zoo_model,
    zoo_reference,
)
from gptlab.postulate import check_classicality_equivalence, facet_pure_effect
from gptlab.statespace import (
    Classification,
    Effect,
    certain_face,
    classify,
    impossible_face,
    pure_effects,
    state_facets,
)

F = Fraction


def test_polygon_vertices_on_unit_circle():
    for n in range(3, 10):
        base = polygon_base(n)
        assert len(base.vertices) == n
        for x, y in base.vertices:
            assert x * x + y * y == 1


def test_polygon_is_exactly_convex():
    # all generated points survive extremality reduction unchanged
    for n in (3, 5, 8):
        base = polygon_base(n)
        assert reduce_to_vertices(base.vertices) == base


def test_polygon_four_is_the_exact_diamond():
    base = polygon_base(4)
    assert set(base.vertices) == {
        (F(1), F(0)),
        (F(0), F(1)),
        (F(-1), F(0)),
        (F(0), F(-1)),
    }


def test_polygon_mirror_symmetry():
    for n in (5, 6, 7):
        verts = set(polygon_base(n).vertices)
        assert {(x, -y) for x, y in verts} == verts


def test_polygon_models():
    assert classify(polygon(3)) is Classification.CLASSICAL
    square = polygon(4)
    assert square.num_states == 4
    assert classify(square) is Classification.DISCRETE_NONCLASSICAL
    pent = polygon(5)
    assert pent.num_states == 5
    assert len(pure_effects(pent)) == 12  # frozen from the enumeration oracle


def test_polygon_rejects_small_n():
    with pytest.raises(TooFewVertices):
        polygon(2)


def test_simplex_models():
    bit = simplex_model(2)
    assert bit.num_states == 2 and dimension(bit.states) == 1
    trit = simplex_model(3)
    assert classify(trit) is Classification.CLASSICAL
    single = simplex_model(1)
    assert single.num_states == 1 and single.dim == 1


def test_square_pyramid_model(pyramid):
    from gptlab.geometry import is_pyramid_over_all_facets

    assert is_pyramid_over_all_facets(pyramid.states) == (False, None)
    assert classify(pyramid) is Classification.DISCRETE_NONCLASSICAL
    kinds = sorted(len(face.vertices) for face in state_facets(pyramid))
    assert kinds == [3, 3, 3, 3, 4]  # four triangles and the square base


def _nosignaling_extremality_oracle(space):
    """Each claimed vertex uniquely maximizes a game functional.

    Local boxes maximize agreement with their own deterministic strategy
    (value 4); PR variants maximize their own parity game (value 4 versus at
    most 3 for every other box).  Unique maximization certifies extremality
    without any convex-hull computation.
    """
    verts = space.states.vertices
    # recover the 8 Collins-Gisin coordinates (last coordinate is the lift)
    def score_against_strategy(v, a0, a1, b0, b1):
        # sum over xy of p(a_x, b_y | x y)
        alice, bob = (a0, a1), (b0, b1)
        total = F(0)
        for x in (0, 1):
            for y in (0, 1):
                pa0, pb0 = v[x], v[2 + y]
                p00 = v[4 + 2 * x + y]
                table = {
                    (0, 0): p00,
                    (0, 1): pa0 - p00,
                    (1, 0): pb0 - p00,
                    (1, 1): 1 - pa0 - pb0 + p00,
                }
                total += table[(alice[x], bob[y])]
        return total

    def parity_score(v, alpha, beta, gamma):
        # sum over xy of p(a xor b = xy xor alpha x xor beta y xor gamma)
        total = F(0)
        for x in (0, 1):
            for y in (0, 1):
                pa0, pb0 = v[x], v[2 + y]
                p00 = v[4 + 2 * x + y]
                p_equal = 1 - pa0 - pb0 + 2 * p00  # p(a == b)
                target = (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma
                total += p_equal if target == 0 else 1 - p_equal
        return total

    functionals = []
    for a0 in (0, 1):
        for a1 in (0, 1):
            for b0 in (0, 1):
                for b1 in (0, 1):
                    functionals.append(
                        lambda v, a0=a0, a1=a1, b0=b0, b1=b1: score_against_strategy(
                            v, a0, a1, b0, b1
                        )
                    )
    for alpha in (0, 1):
        for beta in (0, 1):
            for gamma in (0, 1):
                functionals.append(
                    lambda v, a=alpha, b=beta, g=gamma: parity_score(v, a, b, g)
                )
    certified = 0
    for functional in functionals:
        scores = [functional(v) for v in verts]
        top = max(scores)
        assert top == 4
        if scores.count(top) == 1:
            certified += 1
    return certified


def test_nosignaling_model(nosignaling):
    assert nosignaling.num_states == 24
    assert nosignaling.dim == 9
    assert dimension(nosignaling.states) == 8
    assert classify(nosignaling) is Classification.DISCRETE_NONCLASSICAL
    # independent extremality certificates: every box uniquely wins its game
    assert _nosignaling_extremality_oracle(nosignaling) == 24


def test_nosignaling_obstruction_exists_by_dimension_mismatch(nosignaling):
    """A certified obstruction on the no-signaling polytope, by arithmetic.

    The effect assigning 1 - p(11|00) is pure; its certain face is the
    corresponding positivity facet (16 boxes) and its impossible face is the
    3-dimensional set of local boxes answering (1,1) on inputs (0,0).  The
    face dimensions sum to 10 > dim - 1 = 7, so no fixing transformation can
    exist; the model therefore cannot satisfy the fixing postulate, matching
    its non-classical classification (no large LP required).
    """
    from gptlab.postulate import dimension_condition
    from gptlab.statespace import is_pure

    f = Effect(vector([1, 0, 1, 0, -1, 0, 0, 0, 0]))
    assert is_pure(nosignaling, f)
    face = certain_face(nosignaling, f)
    assert len(face.vertices) == 16
    assert dimension(face) == dimension(nosignaling.states) - 1
    anti = impossible_face(nosignaling, f)
    assert len(anti.vertices) == 4 and dimension(anti) == 3
    assert not dimension_condition(nosignaling, f)


def test_nosignaling_dimension_matches_sympy():
    from oracles import sympy_rank

    space = zoo_model("nosignaling_2222")
    base = space.states.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, base)) for v in space.states.vertices[1:]]
    assert sympy_rank(diffs) == 8


def test_every_zoo_model_validates():
    models = [polygon(n) for n in range(3, 8)] + [
        simplex_model(k) for k in range(1, 5)
    ] + [square_pyramid()]
    for space in models:
        assert rank_of_vectors(space.states.vertices) == space.dim
        for v in space.states.vertices:
            assert vec_dot(space.unit_effect, v) == 1
        assert dimension(space.states) == space.dim - 1


def test_polygon_has_n_facets_with_effects():
    for n in range(3, 9):
        space = polygon(n)
        faces = state_facets(space)
        assert len(faces) == n
        for face in faces:
            f = facet_pure_effect(space, face)
            assert certain_face(space, f) == face


def test_classicality_equivalence_across_zoo():
    for n in range(3, 8):
        assert check_classicality_equivalence(polygon(n))
    for k in range(1, 5):
        assert check_classicality_equivalence(simplex_model(k))
    assert check_classicality_equivalence(square_pyramid())


def test_simplex_implies_pyramidal_over_zoo():
    from gptlab.geometry import is_pyramid_over_all_facets

    models = [polygon(n) for n in range(3, 8)] + [
        simplex_model(k) for k in range(2, 5)
    ] + [square_pyramid()]
    for space in models:
        if is_simplex(space.states):
            assert is_pyramid_over_all_facets(space.states)[0]


def test_zoo_reference_parsing():
    assert zoo_reference("zoo:polygon:4").num_states == 4
    assert zoo_reference("zoo:square_pyramid").num_states == 5
    with pytest.raises(GptlabError):
        zoo_reference("zoo:polygon")  # missing parameter
    with pytest.raises(GptlabError):
        zoo_reference("zoo:unknown:3")
    with pytest.raises(GptlabError):
        zoo_reference("zoo:polygon:x")
    with pytest.raises(GptlabError):
        zoo_model("simplex", 0)
    assert set(ZOO) == {"polygon", "simplex", "square_pyramid", "nosignaling_2222"}
