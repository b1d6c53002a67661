"""Abstract state spaces: states, effects and their distinguished faces.

A state space is a triple (ambient dimension, unit effect, state polytope).
Effects live in explicit dual coordinates against the standard basis, so
evaluating an effect at a state is a dot product.  The effect polytope is the
dual order interval 0 <= f(state) <= 1: its extreme points are the pure
effects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    EmptyStateSet,
    NotAStateVertex,
    NotGenerating,
    NotNormalized,
)
from .geometry import (
    HPolytope,
    VPolytope,
    dimension,
    facets,
    h_to_v,
    is_simplex,
    reduce_to_vertices,
    v_to_h,
)
from .kernel import (
    Vector,
    ONE,
    ZERO,
    rank_of_vectors,
    vec_dot,
    vec_scale,
    vec_sub,
    vec_zero,
)

LinCon = tuple[Vector, Fraction]


class Classification(enum.Enum):
    CLASSICAL = "Classical"
    DISCRETE_NONCLASSICAL = "DiscreteNonClassical"


@dataclass(frozen=True)
class StateSpace:
    """Validated state space; construct through ``build`` or ``lift``."""

    dim: int
    unit_effect: Vector
    states: VPolytope

    @property
    def num_states(self) -> int:
        return len(self.states.vertices)


@dataclass(frozen=True)
class Effect:
    """A linear functional with values in [0, 1] on every state."""

    functional: Vector

    def __call__(self, state: Vector) -> Fraction:
        return vec_dot(self.functional, state)


def build(dim: int, unit_effect: Vector, vertices: Sequence[Vector]) -> StateSpace:
    """Validate and canonicalize a state space.

    Checks, in order: nonempty state set, normalization of every vertex under
    the unit effect, and that the states span the ambient space (so the state
    cone is generating).  The vertex list is reduced to its extreme points.
    """
    if not vertices:
        raise EmptyStateSet("a state space needs at least one state")
    for v in vertices:
        if len(v) != dim:
            raise NotNormalized(f"state {v} does not live in dimension {dim}")
        value = vec_dot(unit_effect, v)
        if value != 1:
            raise NotNormalized(f"unit effect evaluates to {value} at state {v}")
    states = reduce_to_vertices(tuple(vertices))
    if rank_of_vectors(states.vertices) != dim:
        raise NotGenerating(
            f"states span rank {rank_of_vectors(states.vertices)} < dim {dim}"
        )
    space = StateSpace(dim, tuple(unit_effect), states)
    assert dimension(states) == dim - 1
    return space


def lift(base: VPolytope) -> StateSpace:
    """Embed a polytope as the state set at height one.

    Appends coordinate 1 to every vertex; the unit effect reads off the last
    coordinate.  This is the canonical way to make a state space out of a
    plain convex body.
    """
    if base.is_empty:
        raise EmptyStateSet("cannot lift an empty polytope")
    dim = base.ambient_dim + 1
    vertices = [v + (ONE,) for v in base.vertices]
    unit = vec_zero(base.ambient_dim) + (ONE,)
    return build(dim, unit, vertices)


@lru_cache(maxsize=None)
def subnormalized(space: StateSpace) -> VPolytope:
    """conv(states u {0}): all downscalings of states by factors in [0, 1].

    The vertex set is exactly the state vertices plus the origin: the unit
    effect is 1 on every state and 0 at the origin, so neither side can
    absorb the other; no reduction is needed.
    """
    origin = vec_zero(space.dim)
    return VPolytope.from_extreme(space.dim, space.states.vertices + (origin,))


@lru_cache(maxsize=None)
def subnormalized_facets(space: StateSpace) -> tuple[LinCon, ...]:
    """Facet inequalities of the subnormalized body (full-dimensional)."""
    h = v_to_h(subnormalized(space))
    assert not h.eqs, "subnormalized body must be full-dimensional"
    return h.ineqs


def in_subnormalized(space: StateSpace, x: Vector) -> bool:
    """Exact membership in the subnormalized body, by facet arithmetic."""
    return all(vec_dot(a, x) <= b for a, b in subnormalized_facets(space))


def subnormalized_decomposition(
    space: StateSpace, x: Vector
) -> tuple[Fraction, ...] | None:
    """Coefficients over the state vertices writing x as a subconvex
    combination (nonnegative, total at most one), or None when x is outside.

    The returned coefficients are an arithmetic-checkable membership
    certificate for the subnormalized body.
    """
    from .lp import Feasible, LpProblem, lp_solve
    from .kernel import unit_vector, vec_scale

    verts = space.states.vertices
    k = len(verts)
    ineqs: list[LinCon] = [
        (vec_scale(Fraction(-1), unit_vector(k, j)), ZERO) for j in range(k)
    ]
    ineqs.append(((ONE,) * k, ONE))
    eqs = tuple(
        (tuple(v[i] for v in verts), x[i]) for i in range(space.dim)
    )
    outcome = lp_solve(LpProblem(k, None, tuple(ineqs), eqs))
    if isinstance(outcome, Feasible):
        return outcome.point
    return None


@lru_cache(maxsize=None)
def effect_polytope(space: StateSpace) -> HPolytope:
    """Dual description of all effects: 0 <= f(v) <= 1 per state vertex."""
    ineqs: list[LinCon] = []
    for v in space.states.vertices:
        ineqs.append((v, ONE))
        ineqs.append((vec_scale(Fraction(-1), v), ZERO))
    return HPolytope(space.dim, tuple(ineqs))


@lru_cache(maxsize=None)
def pure_effects(space: StateSpace) -> tuple[Effect, ...]:
    """Extreme points of the effect polytope, in canonical order.

    Always contains the zero effect and the unit effect.
    """
    verts = h_to_v(effect_polytope(space)).vertices
    effects = tuple(Effect(f) for f in verts)
    functionals = {e.functional for e in effects}
    assert vec_zero(space.dim) in functionals
    assert space.unit_effect in functionals
    return effects


def is_effect(space: StateSpace, f: Effect) -> bool:
    return all(0 <= f(v) <= 1 for v in space.states.vertices)


def is_pure(space: StateSpace, f: Effect) -> bool:
    """Extremality via the rank of the tight vertex constraints.

    An effect is an extreme point of the effect polytope iff the state
    vertices where it evaluates to exactly 0 or exactly 1 span the ambient
    space.
    """
    if not is_effect(space, f):
        return False
    tight = [v for v in space.states.vertices if f(v) == 0 or f(v) == 1]
    return rank_of_vectors(tight) == space.dim


def certain_face(space: StateSpace, f: Effect) -> VPolytope:
    """States assigned probability exactly one (a face of the state set)."""
    verts = tuple(v for v in space.states.vertices if f(v) == 1)
    return VPolytope(space.dim, verts)


def impossible_face(space: StateSpace, f: Effect) -> VPolytope:
    """States assigned probability exactly zero."""
    verts = tuple(v for v in space.states.vertices if f(v) == 0)
    return VPolytope(space.dim, verts)


def complementary(space: StateSpace, f: Effect) -> Effect:
    """The effect assigning 1 - f(state); preserves purity."""
    return Effect(vec_sub(space.unit_effect, f.functional))


def unanimity_face(space: StateSpace, certain_states: Iterable[Vector]) -> VPolytope:
    """Effects assigning probability one to every listed state vertex.

    A face of the effect polytope, returned by its vertices in dual
    coordinates; it always contains the unit effect.
    """
    chosen = tuple(certain_states)
    vertex_set = set(space.states.vertices)
    for v in chosen:
        if v not in vertex_set:
            raise NotAStateVertex(f"{v} is not a vertex of the state set")
    ep = effect_polytope(space)
    eqs = tuple((v, ONE) for v in sorted(set(chosen)))
    return h_to_v(HPolytope(ep.ambient_dim, ep.ineqs, eqs))


def classify(space: StateSpace) -> Classification:
    """Classical iff the state set is a simplex."""
    if is_simplex(space.states):
        return Classification.CLASSICAL
    return Classification.DISCRETE_NONCLASSICAL


def state_facets(space: StateSpace) -> tuple[VPolytope, ...]:
    """Facets of the state polytope (empty tuple for a single state)."""
    if dimension(space.states) < 1:
        return ()
    return facets(space.states)


def validate_measurement(space: StateSpace, effects: Sequence[Effect]) -> bool:
    """Check that the effects sum to the unit effect (and are effects)."""
    if not all(is_effect(space, f) for f in effects):
        return False
    total = vec_zero(space.dim)
    for f in effects:
        total = tuple(t + x for t, x in zip(total, f.functional))
    return total == space.unit_effect
