"""Exact convex geometry for rational polytopes.

A polytope carries either a vertex description (``VPolytope``, canonical:
vertices are extreme and sorted lexicographically) or an inequality
description (``HPolytope``).  Conversions are exhaustive and exact: facet
enumeration scans vertex subsets, vertex enumeration scans constraint
subsets.  That is deliberately simple -- the intended scale is ambient
dimension <= 10 with a few dozen vertices, and exactness beats asymptotics
here.

Membership questions are decided by LP feasibility; everything downstream of
this module treats the returned decompositions as certificates that can be
re-checked by plain arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchInput,
    EmptyInput,
    NotSupporting,
    UnboundedInput,
    ZeroDimensionalInput,
)
from .kernel import (
    Matrix,
    Vector,
    ZERO,
    ONE,
    independent_subset,
    nullspace,
    solve_linear,
    unit_vector,
    vec_dot,
    vec_scale,
    vec_sub,
)
from .lp import Feasible, Infeasible, LpProblem, Unbounded, lp_solve

LinCon = tuple[Vector, Fraction]


@dataclass(frozen=True)
class VPolytope:
    """Canonical vertex description: extreme points, sorted lexicographically.

    Construct via ``from_points`` unless the input is already known to be a
    set of extreme points (e.g. a subset of another polytope's vertices).
    """

    ambient_dim: int
    vertices: tuple[Vector, ...]

    @classmethod
    def from_extreme(cls, ambient_dim: int, points: Iterable[Vector]) -> "VPolytope":
        return cls(ambient_dim, tuple(sorted(set(points))))

    @classmethod
    def from_points(cls, points: Sequence[Vector]) -> "VPolytope":
        return reduce_to_vertices(points)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def vertex_index(self, v: Vector) -> int:
        return self.vertices.index(v)


@dataclass(frozen=True)
class HPolytope:
    """a.x <= b inequalities plus a.x == b equalities."""

    ambient_dim: int
    ineqs: tuple[LinCon, ...]
    eqs: tuple[LinCon, ...] = ()


@dataclass(frozen=True)
class AffineSubspace:
    basepoint: Vector
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.basepoint)

    def equations(self) -> tuple[LinCon, ...]:
        """Equalities a.x == b cutting out the subspace, canonically scaled."""
        n = self.ambient_dim
        if not self.basis:
            normals = [unit_vector(n, i) for i in range(n)]
        else:
            normals = list(nullspace(Matrix(self.basis)))
        eqs = []
        for a in normals:
            a = _scale_equality(a)
            eqs.append((a, vec_dot(a, self.basepoint)))
        return tuple(sorted(eqs))

    def contains(self, x: Vector) -> bool:
        if not self.basis:
            return x == self.basepoint
        m = Matrix(self.basis).transpose()
        return solve_linear(m, vec_sub(x, self.basepoint)) is not None

    def local_coordinates(self, x: Vector) -> Vector | None:
        """Coordinates y with x = basepoint + sum y_i basis_i, or None."""
        if not self.basis:
            return () if x == self.basepoint else None
        m = Matrix(self.basis).transpose()
        sol = solve_linear(m, vec_sub(x, self.basepoint))
        if sol is None:
            return None
        assert sol.is_unique
        return sol.particular


def _scale_equality(a: Vector) -> Vector:
    lead = next(x for x in a if x != 0)
    return vec_scale(1 / lead, a)


def _scale_inequality(a: Vector, b: Fraction) -> LinCon:
    lead = next(x for x in a if x != 0)
    s = 1 / abs(lead)
    return vec_scale(s, a), b * s


def affine_hull(points: Sequence[Vector]) -> AffineSubspace:
    """Smallest affine subspace containing the points."""
    if not points:
        raise EmptyInput("affine hull of an empty point set")
    base = points[0]
    diffs = [vec_sub(p, base) for p in points[1:]]
    chosen = independent_subset(diffs)
    return AffineSubspace(base, tuple(diffs[i] for i in chosen))


def dimension(obj: VPolytope | Sequence[Vector]) -> int:
    """Affine dimension; the empty set has dimension -1."""
    points = obj.vertices if isinstance(obj, VPolytope) else tuple(obj)
    if not points:
        return -1
    return affine_hull(points).dim


def convex_decomposition(
    points: Sequence[Vector], x: Vector
) -> tuple[Fraction, ...] | None:
    """Coefficients expressing x as a convex combination of points, or None."""
    if not points:
        return None
    n = len(x)
    k = len(points)
    eqs: list[LinCon] = []
    for coord in range(n):
        eqs.append((tuple(p[coord] for p in points), x[coord]))
    eqs.append(((ONE,) * k, ONE))
    ineqs = tuple((vec_scale(Fraction(-1), unit_vector(k, j)), ZERO) for j in range(k))
    outcome = lp_solve(LpProblem(k, None, ineqs, tuple(eqs)))
    if isinstance(outcome, Feasible):
        return outcome.point
    return None


def contains(p: VPolytope, x: Vector) -> bool:
    """True iff x is a convex combination of p's vertices."""
    if len(x) != p.ambient_dim:
        raise DimensionMismatchInput(
            f"point has dimension {len(x)}, polytope {p.ambient_dim}"
        )
    return convex_decomposition(p.vertices, x) is not None


def reduce_to_vertices(points: Sequence[Vector]) -> VPolytope:
    """Drop every point that is a convex combination of the others."""
    if not points:
        return VPolytope(0, ())
    ambient = len(points[0])
    unique = sorted(set(points))
    keep = []
    for i, x in enumerate(unique):
        others = unique[:i] + unique[i + 1 :]
        if convex_decomposition(others, x) is None:
            keep.append(x)
    return VPolytope(ambient, tuple(keep))


@lru_cache(maxsize=None)
def v_to_h(p: VPolytope) -> HPolytope:
    """Facet inequalities within the affine hull, plus hull equalities.

    Inequalities are canonically scaled (first nonzero coefficient has
    absolute value one) and sorted, so equal polytopes produce equal output.
    """
    if p.is_empty:
        raise EmptyInput("cannot convert an empty polytope")
    hull = affine_hull(p.vertices)
    eqs = hull.equations()
    d = hull.dim
    if d == 0:
        return HPolytope(p.ambient_dim, (), eqs)

    # Work in local coordinates of the hull so that facets are honest
    # hyperplanes and deduplicate naturally.
    basis_t = Matrix(hull.basis).transpose()
    local = []
    for v in p.vertices:
        sol = solve_linear(basis_t, vec_sub(v, hull.basepoint))
        assert sol is not None and sol.is_unique
        local.append(sol.particular)

    # Left inverse P with P (x - basepoint) = local coords for x in the hull.
    gram = Matrix(hull.basis).matmul(basis_t)
    gram_cols = []
    for j in range(d):
        sol = solve_linear(gram, unit_vector(d, j))
        assert sol is not None and sol.is_unique
        gram_cols.append(sol.particular)
    gram_inv = Matrix(tuple(gram_cols)).transpose()
    proj = gram_inv.matmul(Matrix(hull.basis))  # d x ambient

    found: set[LinCon] = set()
    for subset in combinations(range(len(local)), d):
        pts = [local[i] for i in subset]
        diffs = [vec_sub(q, pts[0]) for q in pts[1:]]
        if diffs and len(independent_subset(diffs)) != d - 1:
            continue
        normals = nullspace(Matrix(tuple(diffs))) if diffs else (unit_vector(1, 0),)
        if len(normals) != 1:
            continue
        g = normals[0]
        c = vec_dot(g, pts[0])
        side = {(vec_dot(g, q) > c) - (vec_dot(g, q) < c) for q in local}
        side.discard(0)
        if len(side) != 1:
            continue
        if 1 in side:
            g, c = vec_scale(Fraction(-1), g), -c
        # Lift the local halfspace to ambient coordinates.
        f = proj.transpose().apply(g)
        b = c + vec_dot(f, hull.basepoint)
        found.add(_scale_inequality(f, b))
    return HPolytope(p.ambient_dim, tuple(sorted(found)), eqs)


def h_to_v(h: HPolytope) -> VPolytope:
    """Exact vertex enumeration of a bounded nonempty inequality system."""
    n = h.ambient_dim
    feas = lp_solve(LpProblem(n, None, h.ineqs, h.eqs))
    if isinstance(feas, Infeasible):
        raise EmptyInput("the inequality system has no solution")
    for i in range(n):
        for sign in (ONE, -ONE):
            probe = lp_solve(
                LpProblem(n, vec_scale(sign, unit_vector(n, i)), h.ineqs, h.eqs)
            )
            if isinstance(probe, Unbounded):
                raise UnboundedInput(f"coordinate {i} is unbounded")

    eq_normals = [a for a, _ in h.eqs]
    eq_rank = len(independent_subset(eq_normals)) if eq_normals else 0
    free_dim = n - eq_rank
    candidates: set[Vector] = set()
    for subset in combinations(range(len(h.ineqs)), free_dim):
        rows = list(h.eqs) + [h.ineqs[i] for i in subset]
        m = Matrix(tuple(a for a, _ in rows))
        rhs = tuple(b for _, b in rows)
        sol = solve_linear(m, rhs)
        if sol is None or not sol.is_unique:
            continue
        x = sol.particular
        if all(vec_dot(a, x) <= b for a, b in h.ineqs):
            candidates.add(x)
    if not candidates:
        # Possible only when the equalities pin a single feasible point and
        # free_dim > number of inequalities; fall back to the LP point.
        assert isinstance(feas, Feasible)
        candidates.add(feas.point)
    return reduce_to_vertices(sorted(candidates))


def exposed_face(p: VPolytope, f: Vector, c: Fraction) -> VPolytope:
    """Vertices where the supporting functional f.x <= c is tight."""
    values = [vec_dot(f, v) for v in p.vertices]
    if any(val > c for val in values) or all(val < c for val in values):
        raise NotSupporting("functional does not support the polytope at level c")
    face = tuple(v for v, val in zip(p.vertices, values) if val == c)
    return VPolytope(p.ambient_dim, face)


@lru_cache(maxsize=None)
def facets(p: VPolytope) -> tuple[VPolytope, ...]:
    """All faces of dimension dim(p) - 1, one per facet inequality."""
    if dimension(p) < 1:
        raise ZeroDimensionalInput("facets need a body of dimension >= 1")
    result = []
    for f, b in v_to_h(p).ineqs:
        face = exposed_face(p, f, b)
        assert dimension(face) == dimension(p) - 1
        result.append(face)
    assert result, "every polytope of dimension >= 1 has a facet"
    return tuple(result)


def is_simplex(p: VPolytope) -> bool:
    """True iff the vertices are affinely independent."""
    return len(p.vertices) == dimension(p) + 1


def is_pyramid_over_all_facets(
    p: VPolytope,
) -> tuple[bool, tuple[Vector, ...] | None]:
    """Whether every facet F admits an apex a with p = conv(F u {a}).

    Equivalently: exactly one vertex of p lies outside each facet.  Returns
    the apexes in facet order when the property holds.
    """
    if dimension(p) < 1:
        raise ZeroDimensionalInput("pyramid test needs a body of dimension >= 1")
    apexes = []
    for face in facets(p):
        outside = [v for v in p.vertices if v not in face.vertices]
        if len(outside) != 1:
            return False, None
        apexes.append(outside[0])
    return True, tuple(apexes)


def conv_union(p: VPolytope, q: VPolytope) -> VPolytope:
    """Vertices of conv(p u q)."""
    if p.ambient_dim != q.ambient_dim and not (p.is_empty or q.is_empty):
        raise DimensionMismatchInput("cannot join polytopes of different dimension")
    if p.is_empty:
        return q
    if q.is_empty:
        return p
    return reduce_to_vertices(p.vertices + q.vertices)


def intersect_with_affine(p: VPolytope, s: AffineSubspace) -> VPolytope:
    """Vertex description of p intersected with an affine subspace."""
    if p.ambient_dim != s.ambient_dim:
        raise DimensionMismatchInput("subspace lives in a different dimension")
    h = v_to_h(p)
    combined = HPolytope(h.ambient_dim, h.ineqs, h.eqs + s.equations())
    try:
        return h_to_v(combined)
    except EmptyInput:
        return VPolytope(p.ambient_dim, ())


def face_support_certificate(
    p: VPolytope, face_vertices: Sequence[Vector]
) -> tuple[Vector, Fraction] | None:
    """Supporting functional tight exactly on the given vertex subset.

    Existence certifies that conv(face_vertices) is an exposed face of p.
    Found by LP with a unit separation margin (faces of polytopes are always
    exposed, so failure means the subset is not a face).
    """
    face_set = set(face_vertices)
    n = p.ambient_dim
    eqs: list[LinCon] = []
    ineqs: list[LinCon] = []
    # Variables: functional g (n entries) and level c.
    for v in p.vertices:
        row = v + (-ONE,)
        if v in face_set:
            eqs.append((row, ZERO))
        else:
            ineqs.append((row, -ONE))
    outcome = lp_solve(LpProblem(n + 1, None, tuple(ineqs), tuple(eqs)))
    if not isinstance(outcome, Feasible):
        return None
    g, c = outcome.point[:n], outcome.point[n]
    return g, c
