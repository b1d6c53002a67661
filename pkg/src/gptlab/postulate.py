"""Existence of measurement transformations that fix an effect's certain face.

For a pure effect f the question is whether some positive linear map T with
unit_effect . T = f leaves every state of the certain face invariant.  The
question is an exact LP feasibility problem over the entries of T.  On
success the witness matrix is returned; on failure the obstruction is
classified geometrically:

* dimension mismatch -- the certain and impossible faces are jointly too
  large, forcing T to be identity and zero on overlapping subspaces;
* shape mismatch -- the affine slice through both faces meets the state set
  outside their convex hull, so some state must be mapped out of the
  subnormalized body;
* otherwise the raw Farkas dual of the LP is returned.

The classicality check ties this to the global geometry: feasibility on all
state facets is equivalent to the state set being a simplex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAFacet, NotPure
from .geometry import (
    VPolytope,
    affine_hull,
    contains,
    conv_union,
    dimension,
    intersect_with_affine,
    is_pyramid_over_all_facets,
    is_simplex,
)
from .kernel import Matrix, Vector, ONE, ZERO
from .lp import Feasible, Infeasible, LinCon, LpProblem, Optimal, lp_solve
from .statespace import (
    Classification,
    Effect,
    StateSpace,
    certain_face,
    classify,
    impossible_face,
    in_subnormalized,
    is_pure,
    pure_effects,
    state_facets,
    subnormalized_facets,
)


@dataclass(frozen=True)
class TransformationWitness:
    """A matrix satisfying all three conditions of the fixing postulate."""

    effect: Effect
    matrix: Matrix


@dataclass(frozen=True)
class DimensionMismatch:
    dim_certain: int
    dim_impossible: int
    dim_states: int


@dataclass(frozen=True)
class ShapeMismatch:
    witness_point: Vector


@dataclass(frozen=True)
class LpInfeasibleCertificate:
    farkas_ineq: Vector
    farkas_eq: Vector


ObstructionCertificate = DimensionMismatch | ShapeMismatch | LpInfeasibleCertificate


@dataclass(frozen=True)
class PostulateEntry:
    face: VPolytope
    effect: Effect
    outcome: TransformationWitness | ObstructionCertificate


@dataclass(frozen=True)
class PostulateReport:
    entries: tuple[PostulateEntry, ...]

    @property
    def all_feasible(self) -> bool:
        return all(
            isinstance(e.outcome, TransformationWitness) for e in self.entries
        )


class ShapeCondition:
    """Outcome holder for the affine-slice shape criterion."""


@dataclass(frozen=True)
class Holds(ShapeCondition):
    pass


@dataclass(frozen=True)
class Fails(ShapeCondition):
    witness_point: Vector


@dataclass(frozen=True)
class NotApplicable(ShapeCondition):
    pass


def _require_pure(space: StateSpace, f: Effect) -> None:
    if not is_pure(space, f):
        raise NotPure(f"{f.functional} is not a pure effect of this space")


def dimension_condition(space: StateSpace, f: Effect) -> bool:
    """dim(certain face) + dim(impossible face) <= dim(states) - 1.

    Necessary for a fixing transformation to exist: T must restrict to the
    identity on the span of the certain face and to zero on the span of the
    impossible face, which forces those spans to intersect trivially.
    """
    _require_pure(space, f)
    return (
        dimension(certain_face(space, f)) + dimension(impossible_face(space, f))
        <= dimension(space.states) - 1
    )


def shape_condition(space: StateSpace, f: Effect) -> ShapeCondition:
    """Whether the affine slice through both faces meets only their hull.

    Only decided when the impossible face has at most one vertex (the case
    the classicality argument needs); with two or more vertices the
    criterion is NotApplicable.  On failure, returns a vertex of the slice
    that lies outside the convex hull of the two faces.
    """
    _require_pure(space, f)
    certain = certain_face(space, f)
    impossible = impossible_face(space, f)
    if len(impossible.vertices) >= 2:
        return NotApplicable()
    hull_union = conv_union(certain, impossible)
    slice_poly = intersect_with_affine(
        space.states, affine_hull(hull_union.vertices)
    )
    if slice_poly == hull_union:
        return Holds()
    witness = next(
        v for v in slice_poly.vertices if not contains(hull_union, v)
    )
    return Fails(witness)


def transformation_constraints(
    space: StateSpace, f: Effect, fix_face: VPolytope | None = None
) -> tuple[tuple[LinCon, ...], tuple[LinCon, ...]]:
    """LP rows over the dim x dim entries of T, row-major.

    Equalities: unit_effect . T = f, plus T w = w for each vertex w of
    ``fix_face`` (linearity extends the fixing to the whole face).
    Inequalities: facet(T v) <= rhs for every facet of the subnormalized body
    and every state vertex v, which is exactly positivity plus normalization.
    """
    d = space.dim
    nvars = d * d

    def entry(i: int, j: int) -> int:
        return i * d + j

    eqs: list[LinCon] = []
    for j in range(d):
        row = [ZERO] * nvars
        for i in range(d):
            row[entry(i, j)] = space.unit_effect[i]
        eqs.append((tuple(row), f.functional[j]))
    if fix_face is not None:
        for w in fix_face.vertices:
            for i in range(d):
                row = [ZERO] * nvars
                for j in range(d):
                    row[entry(i, j)] = w[j]
                eqs.append((tuple(row), w[i]))

    ineqs: list[LinCon] = []
    for v in space.states.vertices:
        for a, b in subnormalized_facets(space):
            row = [ZERO] * nvars
            for i in range(d):
                if a[i]:
                    for j in range(d):
                        row[entry(i, j)] = a[i] * v[j]
            ineqs.append((tuple(row), b))
    return tuple(ineqs), tuple(eqs)


def _matrix_from_point(point: Vector, d: int) -> Matrix:
    return Matrix(tuple(tuple(point[i * d : (i + 1) * d]) for i in range(d)))


def validate_witness(space: StateSpace, w: TransformationWitness) -> bool:
    """Re-check the three defining conditions by exact arithmetic alone."""
    t = w.matrix
    d = space.dim
    induced = tuple(
        sum((space.unit_effect[i] * t.rows[i][j] for i in range(d)), ZERO)
        for j in range(d)
    )
    if induced != w.effect.functional:
        return False
    for v in certain_face(space, w.effect).vertices:
        if t.apply(v) != v:
            return False
    return all(in_subnormalized(space, t.apply(v)) for v in space.states.vertices)


def find_fixing_transformation(
    space: StateSpace, f: Effect
) -> TransformationWitness | ObstructionCertificate:
    """Decide the fixing postulate for one pure effect.

    Returns a validated witness when the LP is feasible.  Otherwise the
    obstruction is reported as a dimension mismatch when the dimension
    condition fails, as a shape mismatch when the shape condition fails, and
    as the raw Farkas dual of the feasibility system in the remaining cases.
    """
    _require_pure(space, f)
    if all(x == 0 for x in f.functional):
        raise NotPure("the zero effect has an empty certain face; nothing to fix")
    if f.functional == space.unit_effect:
        return TransformationWitness(f, Matrix.identity(space.dim))

    face = certain_face(space, f)
    ineqs, eqs = transformation_constraints(space, f, fix_face=face)
    outcome = lp_solve(LpProblem(space.dim * space.dim, None, ineqs, eqs))
    if isinstance(outcome, Feasible):
        witness = TransformationWitness(f, _matrix_from_point(outcome.point, space.dim))
        assert validate_witness(space, witness)
        return witness
    assert isinstance(outcome, Infeasible)
    if not dimension_condition(space, f):
        return DimensionMismatch(
            dimension(certain_face(space, f)),
            dimension(impossible_face(space, f)),
            dimension(space.states),
        )
    shape = shape_condition(space, f)
    if isinstance(shape, Fails):
        return ShapeMismatch(shape.witness_point)
    return LpInfeasibleCertificate(outcome.farkas_ineq, outcome.farkas_eq)


def facet_pure_effect(space: StateSpace, face: VPolytope) -> Effect:
    """The unique pure effect whose certain face is the given state facet.

    The facet pins the effect on a hyperplane through the origin's
    complement; the one remaining degree of freedom is fixed by minimizing
    the value at a state vertex outside the facet, which lands on the pure
    endpoint of the segment of effects that are certain on the facet.
    """
    if face not in state_facets(space):
        raise NotAFacet("the given face is not a facet of the state set")
    outside = next(v for v in space.states.vertices if v not in face.vertices)
    eqs = tuple((w, ONE) for w in face.vertices)
    ineqs: list[LinCon] = []
    for v in space.states.vertices:
        ineqs.append((v, ONE))
        ineqs.append((tuple(-x for x in v), ZERO))
    objective = tuple(-x for x in outside)  # maximize -g(outside)
    outcome = lp_solve(LpProblem(space.dim, objective, tuple(ineqs), eqs))
    assert isinstance(outcome, Optimal)
    effect = Effect(outcome.point)
    assert is_pure(space, effect)
    assert certain_face(space, effect) == face
    return effect


def check_postulate(space: StateSpace, all_pure: bool = False) -> PostulateReport:
    """Run the fixing-transformation check per facet (or per pure effect).

    Default mode: one entry per state facet, using its unique pure effect.
    With ``all_pure`` every nonzero pure effect is checked instead (the zero
    effect has an empty certain face and is excluded).
    """
    entries: list[PostulateEntry] = []
    if all_pure:
        for f in pure_effects(space):
            if all(x == 0 for x in f.functional):
                continue
            outcome = find_fixing_transformation(space, f)
            entries.append(PostulateEntry(certain_face(space, f), f, outcome))
    else:
        for face in state_facets(space):
            f = facet_pure_effect(space, face)
            outcome = find_fixing_transformation(space, f)
            entries.append(PostulateEntry(face, f, outcome))
    return PostulateReport(tuple(entries))


def check_classicality_equivalence(space: StateSpace) -> bool:
    """Feasibility on every facet holds iff the theory is classical.

    Also checks the two geometric steps the equivalence factors through:
    all-feasible implies the state set is pyramidal over every facet, and
    that property implies it is a simplex.
    """
    report = check_postulate(space)
    all_feasible = report.all_feasible
    classical = classify(space) is Classification.CLASSICAL
    if all_feasible != classical:
        return False
    if dimension(space.states) < 1:
        return is_simplex(space.states)
    pyramidal, _ = is_pyramid_over_all_facets(space.states)
    if all_feasible and not pyramidal:
        return False
    if pyramidal and not is_simplex(space.states):
        return False
    return True
