"""Minimal disturbance of effect-inducing transformations, as an exact LP.

For a pure effect f, the transformations inducing f (positive maps T with
unit_effect . T = f) always exist; the disturbance of one of them is the
largest norm change it causes on the certain face of f.  Under a polyhedral
norm the min-max

    epsilon = min over T inducing f of  max over certain states of |T w - w|

is an exact linear program: the inner maximum of a convex function over a
polytope is attained at a vertex, so finitely many linearized norm bounds
suffice.  epsilon = 0 exactly when a fixing transformation exists.

Also provided: the constructive lower bound for the case of a one-point
impossible face (built from the unique linear map fixing the certain face
and annihilating the impossible one), an image-dimension bound satisfied by
every transformation inducing f, and a seeded sampler of the transformation
set for property checks.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyCertainFace,
    IsClassical,
    NotAFacet,
    NotInTransformationSet,
    NotPure,
)
from .geometry import dimension
from .kernel import (
    Matrix,
    Vector,
    ONE,
    ZERO,
    independent_subset,
    solve_linear,
    vec_sub,
    vec_zero,
)
from .lp import LinCon, LpProblem, Optimal, lp_solve
from .postulate import facet_pure_effect, transformation_constraints
from .statespace import (
    Classification,
    Effect,
    StateSpace,
    certain_face,
    classify,
    impossible_face,
    in_subnormalized,
    is_pure,
    state_facets,
)


class Norm(enum.Enum):
    """Polyhedral norms on state coordinates; both linearize exactly."""

    MAX_ABS = "linf"
    SUM_ABS = "l1"


def norm_value(norm: Norm, x: Vector) -> Fraction:
    if norm is Norm.MAX_ABS:
        return max((abs(c) for c in x), default=ZERO)
    return sum((abs(c) for c in x), ZERO)


@dataclass(frozen=True)
class DisturbanceResult:
    effect: Effect
    norm: Norm
    epsilon: Fraction
    minimizer: Matrix
    witness_state: Vector


def in_transformation_set(space: StateSpace, f: Effect, t: Matrix) -> bool:
    """Exact check that t is positive and induces f."""
    d = space.dim
    induced = tuple(
        sum((space.unit_effect[i] * t.rows[i][j] for i in range(d)), ZERO)
        for j in range(d)
    )
    if induced != f.functional:
        return False
    return all(in_subnormalized(space, t.apply(v)) for v in space.states.vertices)


def _require_in_tf(space: StateSpace, f: Effect, t: Matrix) -> None:
    if not in_transformation_set(space, f, t):
        raise NotInTransformationSet(
            "matrix is not a positive map inducing the effect"
        )


def collapse_map(space: StateSpace, f: Effect, target: Vector) -> Matrix:
    """T(state) = f(state) * target: always induces f for a state vertex target.

    Witnesses that the transformation set is never empty.
    """
    d = space.dim
    rows = tuple(
        tuple(target[i] * f.functional[j] for j in range(d)) for i in range(d)
    )
    return Matrix(rows)


def disturbance(space: StateSpace, f: Effect, t: Matrix, norm: Norm) -> Fraction:
    """Largest norm change of t on the certain face of f.

    Evaluated at the face's vertices: the norm of (t - id) applied to a state
    is convex in the state, so the maximum over the face is attained there.
    """
    if not is_pure(space, f):
        raise NotPure(f"{f.functional} is not a pure effect of this space")
    face = certain_face(space, f)
    if face.is_empty:
        raise EmptyCertainFace("the effect is certain on no state")
    _require_in_tf(space, f, t)
    return max(norm_value(norm, vec_sub(t.apply(w), w)) for w in face.vertices)


def _norm_rows(
    norm: Norm,
    nvars: int,
    coeff_rows: list[list[Fraction]],
    shift: Vector,
    bound_col: int,
    aux_base: int,
) -> tuple[list[LinCon], int]:
    """Rows enforcing |coeff_rows . x - shift| <= x[bound_col] in the norm.

    coeff_rows[i] gives the linear expression for coordinate i.  Returns the
    rows and the number of auxiliary variables consumed (starting at
    aux_base; only the one-norm needs them).
    """
    rows: list[LinCon] = []
    d = len(shift)
    if norm is Norm.MAX_ABS:
        for i in range(d):
            pos = list(coeff_rows[i])
            pos[bound_col] = -ONE
            rows.append((tuple(pos), shift[i]))
            neg = [-c for c in coeff_rows[i]]
            neg[bound_col] = -ONE
            rows.append((tuple(neg), -shift[i]))
        return rows, 0
    for i in range(d):
        pos = list(coeff_rows[i])
        pos[aux_base + i] = -ONE
        rows.append((tuple(pos), shift[i]))
        neg = [-c for c in coeff_rows[i]]
        neg[aux_base + i] = -ONE
        rows.append((tuple(neg), -shift[i]))
    total = [ZERO] * nvars
    for i in range(d):
        total[aux_base + i] = ONE
    total[bound_col] = -ONE
    rows.append((tuple(total), ZERO))
    return rows, d


def min_disturbance(space: StateSpace, f: Effect, norm: Norm) -> DisturbanceResult:
    """Exact minimum of the disturbance over all transformations inducing f.

    Variables are the matrix entries plus the disturbance bound (plus
    one-norm auxiliaries); the optimum is attained because the feasible set
    is nonempty (collapse maps) and the bound is at most any feasible
    disturbance.
    """
    if not is_pure(space, f):
        raise NotPure(f"{f.functional} is not a pure effect of this space")
    face = certain_face(space, f)
    if face.is_empty:
        raise EmptyCertainFace("the effect is certain on no state")
    d = space.dim
    n_matrix = d * d
    bound_col = n_matrix
    aux_per_vertex = d if norm is Norm.SUM_ABS else 0
    nvars = n_matrix + 1 + aux_per_vertex * len(face.vertices)

    base_ineqs, base_eqs = transformation_constraints(space, f, fix_face=None)
    ineqs: list[LinCon] = [
        (a + (ZERO,) * (nvars - n_matrix), b) for a, b in base_ineqs
    ]
    eqs: tuple[LinCon, ...] = tuple(
        (a + (ZERO,) * (nvars - n_matrix), b) for a, b in base_eqs
    )
    aux_base = n_matrix + 1
    for w in face.vertices:
        coeff_rows = []
        for i in range(d):
            row = [ZERO] * nvars
            for j in range(d):
                row[i * d + j] = w[j]
            coeff_rows.append(row)
        rows, used = _norm_rows(norm, nvars, coeff_rows, w, bound_col, aux_base)
        ineqs.extend(rows)
        aux_base += used

    objective = tuple(
        -ONE if k == bound_col else ZERO for k in range(nvars)
    )
    outcome = lp_solve(LpProblem(nvars, objective, tuple(ineqs), eqs))
    assert isinstance(outcome, Optimal)
    epsilon = -outcome.value
    minimizer = Matrix(
        tuple(tuple(outcome.point[i * d : (i + 1) * d]) for i in range(d))
    )
    achieved = disturbance(space, f, minimizer, norm)
    assert achieved == epsilon
    witness = next(
        w
        for w in face.vertices
        if norm_value(norm, vec_sub(minimizer.apply(w), w)) == epsilon
    )
    return DisturbanceResult(f, norm, epsilon, minimizer, witness)


def distance_to_subnormalized(space: StateSpace, x: Vector, norm: Norm) -> Fraction:
    """Exact norm distance from x to the subnormalized body, by LP."""
    verts = space.states.vertices
    k = len(verts)
    bound_col = k
    aux = space.dim if norm is Norm.SUM_ABS else 0
    nvars = k + 1 + aux
    ineqs: list[LinCon] = []
    for j in range(k):
        row = [ZERO] * nvars
        row[j] = -ONE
        ineqs.append((tuple(row), ZERO))
    total = [ZERO] * nvars
    for j in range(k):
        total[j] = ONE
    ineqs.append((tuple(total), ONE))
    coeff_rows = []
    for i in range(space.dim):
        row = [ZERO] * nvars
        for j in range(k):
            row[j] = -verts[j][i]
        coeff_rows.append(row)
    rows, _ = _norm_rows(norm, nvars, coeff_rows, tuple(-c for c in x), bound_col, k + 1)
    ineqs.extend(rows)
    objective = tuple(-ONE if i == bound_col else ZERO for i in range(nvars))
    outcome = lp_solve(LpProblem(nvars, objective, tuple(ineqs), ()))
    assert isinstance(outcome, Optimal)
    return -outcome.value


@dataclass(frozen=True)
class BoundNotApplicable:
    """The impossible face is not a single point, so the construction is void."""


def annihilating_extension(space: StateSpace, f: Effect) -> Matrix:
    """The unique linear map fixing the certain face and killing the
    one-point impossible face.

    Defined when the certain face is a facet of the state set and the
    impossible face is a single vertex: the certain face's span plus that
    vertex spans everything, so the two conditions determine the map.
    """
    face = certain_face(space, f)
    anti = impossible_face(space, f)
    assert len(anti.vertices) == 1
    d = space.dim
    span_idx = independent_subset(face.vertices)
    span_vectors = [face.vertices[i] for i in span_idx]
    assert len(span_vectors) == d - 1
    columns = span_vectors + [anti.vertices[0]]
    images = span_vectors + [vec_zero(d)]
    # Row i of the map solves  columns^T . row_i = (image of each column)_i.
    system = Matrix(tuple(columns))
    rows = []
    for i in range(d):
        target = tuple(img[i] for img in images)
        sol = solve_linear(system, target)
        assert sol is not None and sol.is_unique
        rows.append(sol.particular)
    return Matrix(tuple(rows))


def constructive_disturbance_bound(
    space: StateSpace, f: Effect, norm: Norm
) -> Fraction | BoundNotApplicable:
    """Closed-form positive lower bound on the minimal disturbance.

    Applicable when the impossible face is a single point.  Build the unique
    linear map L fixing the certain face and annihilating that point; if L
    keeps every state inside the subnormalized body it is itself a valid
    fixing transformation and the bound is zero.  Otherwise pick the state
    vertex whose image lies farthest outside, expand it affinely over a
    spanning vertex subset of the certain face plus the impossible point,
    and return distance / ((dim - 1) * max |coefficient|), the largest
    disturbance that could still keep that image inside.
    """
    if not is_pure(space, f):
        raise NotPure(f"{f.functional} is not a pure effect of this space")
    face = certain_face(space, f)
    if face not in state_facets(space):
        raise NotAFacet("the bound needs the certain face to be a state facet")
    anti = impossible_face(space, f)
    if len(anti.vertices) != 1:
        return BoundNotApplicable()
    lmap = annihilating_extension(space, f)
    outside = [
        v for v in space.states.vertices if not in_subnormalized(space, lmap.apply(v))
    ]
    if not outside:
        return ZERO
    best_tau = None
    best_dist = ZERO
    for tau in outside:
        dist = distance_to_subnormalized(space, lmap.apply(tau), norm)
        if dist > best_dist:
            best_tau, best_dist = tau, dist
    assert best_tau is not None
    span_idx = independent_subset(face.vertices)
    points = [face.vertices[i] for i in span_idx] + [anti.vertices[0]]
    coords_matrix = Matrix(tuple(points)).transpose()
    sol = solve_linear(coords_matrix, best_tau)
    assert sol is not None and sol.is_unique
    alphas = sol.particular
    assert sum(alphas) == 1
    alpha_max = max(abs(a) for a in alphas[:-1])
    return best_dist / ((space.dim - 1) * alpha_max)


def check_image_dimension_bound(space: StateSpace, f: Effect, t: Matrix) -> bool:
    """dim(T(certain face)) <= dim - dim(impossible face) - 2.

    Holds for every transformation inducing f: the impossible face's span is
    annihilated and the certain face's image stays on the normalization
    hyperplane, which cannot contain the origin.
    """
    if not is_pure(space, f):
        raise NotPure(f"{f.functional} is not a pure effect of this space")
    _require_in_tf(space, f, t)
    face = certain_face(space, f)
    anti = impossible_face(space, f)
    if face.is_empty or anti.is_empty:
        raise EmptyCertainFace("both the certain and impossible face must be nonempty")
    if space.dim <= 1:
        raise NotPure("the bound needs a nontrivial space")
    image_dim = dimension([t.apply(w) for w in face.vertices])
    return image_dim <= space.dim - dimension(anti) - 2


def check_positive_disturbance(space: StateSpace, norm: Norm) -> bool:
    """Some facet effect of a non-classical theory has positive minimal
    disturbance; raises IsClassical on simplex state sets."""
    if classify(space) is Classification.CLASSICAL:
        raise IsClassical("the theory is classical; every facet effect is fixable")
    for face in state_facets(space):
        f = facet_pure_effect(space, face)
        if min_disturbance(space, f, norm).epsilon > 0:
            return True
    return False


def sample_transformations(
    space: StateSpace, f: Effect, count: int, seed: int = 0
) -> tuple[Matrix, ...]:
    """Seeded sample of vertices of the transformation set, via LPs with
    random rational objectives.  Reproducible for a fixed seed."""
    rng = random.Random(seed)
    d = space.dim
    nvars = d * d
    ineqs, eqs = transformation_constraints(space, f, fix_face=None)
    samples = []
    for _ in range(count):
        objective = tuple(
            Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(nvars)
        )
        outcome = lp_solve(LpProblem(nvars, objective, ineqs, eqs))
        assert isinstance(outcome, Optimal), "the transformation set is compact"
        samples.append(
            Matrix(tuple(tuple(outcome.point[i * d : (i + 1) * d]) for i in range(d)))
        )
    return tuple(samples)
