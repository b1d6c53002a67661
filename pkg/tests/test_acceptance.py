"""Acceptance suite: one test per criterion, each printing a PASS line.

Every expected value is exact; comparisons are rational equality with zero
tolerance throughout.  Run with ``pytest -s tests/test_acceptance.py`` to see
the per-criterion lines.
"""

import json
import random
import subprocess
import sys

import pytest

from gptlab.disturbance import (
    BoundNotApplicable,
    Norm,
    check_image_dimension_bound,
    check_positive_disturbance,
    constructive_disturbance_bound,
    min_disturbance,
    sample_transformations,
)
from gptlab.geometry import (
    affine_hull,
    contains,
    conv_union,
    dimension,
    facets,
    h_to_v,
    intersect_with_affine,
    is_pyramid_over_all_facets,
    is_simplex,
    v_to_h,
)
from gptlab.models import nosignaling_2222, polygon, simplex_model, square_pyramid
from gptlab.postulate import (
    DimensionMismatch,
    Fails,
    TransformationWitness,
    check_classicality_equivalence,
    check_postulate,
    dimension_condition,
    facet_pure_effect,
    find_fixing_transformation,
    shape_condition,
    validate_witness,
)
from gptlab.report import build_report, verify_report
from gptlab.serialize import dumps_canonical
from gptlab.statespace import (
    Classification,
    certain_face,
    classify,
    impossible_face,
    pure_effects,
    state_facets,
)

from conftest import random_vpolytope


def _passed(criterion: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS")


def _facet_effects(space):
    return [facet_pure_effect(space, face) for face in state_facets(space)]


def test_criterion_1_square_gbit_reproduction():
    space = polygon(4)
    assert len(pure_effects(space)) == 6
    effects = _facet_effects(space)
    assert len(effects) == 4
    for f in effects:
        outcome = find_fixing_transformation(space, f)
        assert outcome == DimensionMismatch(1, 1, 2)
    for norm in (Norm.MAX_ABS, Norm.SUM_ABS):
        for f in effects:
            assert min_disturbance(space, f, norm).epsilon > 0
    _passed("1 (square/gbit reproduction)")


def test_criterion_2_pentagon_reproduction():
    space = polygon(5)
    effects = _facet_effects(space)
    assert len(effects) == 5
    for f in effects:
        assert dimension_condition(space, f)
        shape = shape_condition(space, f)
        assert isinstance(shape, Fails)
        witness = shape.witness_point
        joined = conv_union(certain_face(space, f), impossible_face(space, f))
        slice_poly = intersect_with_affine(
            space.states, affine_hull(joined.vertices)
        )
        assert contains(slice_poly, witness)
        assert not contains(joined, witness)
        assert min_disturbance(space, f, Norm.MAX_ABS).epsilon > 0
    _passed("2 (pentagon reproduction)")


def test_criterion_3_classical_reproduction():
    for k in range(1, 6):
        space = simplex_model(k)
        for f in _facet_effects(space):
            outcome = find_fixing_transformation(space, f)
            assert isinstance(outcome, TransformationWitness)
            assert validate_witness(space, outcome)
            assert min_disturbance(space, f, Norm.MAX_ABS).epsilon == 0
    _passed("3 (classical reproduction)")


def test_criterion_4_classicality_sweep():
    sweep = (
        [polygon(n) for n in range(3, 10)]
        + [simplex_model(k) for k in range(1, 6)]
        + [square_pyramid()]
    )
    for space in sweep:
        assert check_classicality_equivalence(space)
        states = space.states
        if dimension(states) >= 1:
            all_feasible = check_postulate(space).all_feasible
            pyramidal, _ = is_pyramid_over_all_facets(states)
            if all_feasible:
                assert pyramidal
            if pyramidal:
                assert is_simplex(states)
    assert classify(nosignaling_2222()) is Classification.DISCRETE_NONCLASSICAL
    _passed("4 (classicality equivalence sweep)")


def test_criterion_5_positive_disturbance_sweep():
    nonclassical = [polygon(n) for n in range(4, 10)] + [square_pyramid()]
    for space in nonclassical:
        assert space.dim <= 4
        assert classify(space) is Classification.DISCRETE_NONCLASSICAL
        assert check_positive_disturbance(space, Norm.MAX_ABS)
        for f in _facet_effects(space):
            epsilon = min_disturbance(space, f, Norm.MAX_ABS).epsilon
            feasible = isinstance(
                find_fixing_transformation(space, f), TransformationWitness
            )
            assert (epsilon == 0) == feasible
    _passed("5 (positive disturbance sweep)")


def test_criterion_6_constructive_bound():
    space = polygon(5)
    for f in _facet_effects(space):
        bound = constructive_disturbance_bound(space, f, Norm.MAX_ABS)
        assert not isinstance(bound, BoundNotApplicable)
        epsilon = min_disturbance(space, f, Norm.MAX_ABS).epsilon
        assert bound > 0 and epsilon >= bound
    _passed("6 (constructive lower bound)")


def test_criterion_7_image_dimension_sampling():
    for space in (polygon(4), polygon(5), simplex_model(3)):
        for f in _facet_effects(space):
            for t in sample_transformations(space, f, 20, seed=0):
                assert check_image_dimension_bound(space, f, t)
    _passed("7 (image-dimension bound sampling)")


def test_criterion_8_geometry_oracle_equivalence():
    rng = random.Random(20240)
    for _ in range(50):
        poly = random_vpolytope(rng, max_dim=4, max_vertices=8)
        assert h_to_v(v_to_h(poly)) == poly
        for face in facets(poly):
            assert intersect_with_affine(poly, affine_hull(face.vertices)) == face
    _passed("8 (geometry oracle equivalence)")


def test_criterion_9_certificate_soundness():
    models = (
        [(f"polygon:{n}", polygon(n)) for n in range(3, 7)]
        + [(f"simplex:{k}", simplex_model(k)) for k in range(1, 5)]
        + [("square_pyramid", square_pyramid())]
    )
    for name, space in models:
        doc, _ = build_report(space, name)
        encoded = dumps_canonical(doc)
        failures = verify_report(json.loads(encoded))
        assert failures == [], (name, failures)
    _passed("9 (certificate soundness)")


@pytest.mark.parametrize("ref", ["zoo:polygon:4", "zoo:simplex:3", "zoo:polygon:5"])
def test_criterion_10_determinism(ref):
    cmd = [sys.executable, "-m", "gptlab.cli", "report", ref, "--json", "-"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == second.returncode
    assert first.returncode in (0, 1)
    assert first.stdout == second.stdout
    assert first.stdout  # nonempty report
    _passed(f"10 (byte-identical reports: {ref})")
