"""Built-in model zoo: polygons, simplices, a square pyramid, and the
two-party no-signaling polytope.

All coordinates are exact rationals.  Regular polygons have irrational
vertices for most n, so the polygon generator places rational points on the
unit circle via the tan-half-angle parameterization instead; the result is
combinatorially a regular n-gon, which is all that any predicate in this
package depends on.  The angle parameters are computed with exact Fraction
series (no floating point anywhere), so generated models are identical on
every platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import GptlabError
from .geometry import VPolytope
from .kernel import ONE, ZERO, Vector, vector
from .statespace import StateSpace, build, lift


class TooFewVertices(GptlabError):
    """Polygons need at least three vertices."""


_SERIES_TERMS = 40  # tail below 1e-30 for every series used here


@lru_cache(maxsize=1)
def _pi() -> Fraction:
    """Machin's formula with exact rational arithmetic."""

    def arctan_inv(x: int) -> Fraction:
        total = Fraction(0)
        for k in range(_SERIES_TERMS):
            term = Fraction((-1) ** k, (2 * k + 1) * x ** (2 * k + 1))
            total += term
        return total

    return 16 * arctan_inv(5) - 4 * arctan_inv(239)


def _sin(x: Fraction) -> Fraction:
    total = Fraction(0)
    term = x
    for k in range(1, _SERIES_TERMS):
        total += term
        term *= -x * x / ((2 * k) * (2 * k + 1))
        term = term.limit_denominator(10**50)
    return total


def _cos(x: Fraction) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    for k in range(1, _SERIES_TERMS):
        total += term
        term *= -x * x / ((2 * k - 1) * (2 * k))
        term = term.limit_denominator(10**50)
    return total


def _circle_point(t: Fraction) -> Vector:
    """Rational point on the unit circle with tan-half-angle parameter t."""
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


@lru_cache(maxsize=None)
def polygon_base(n: int) -> VPolytope:
    """Rational convex-position points on the unit circle, one per n-th angle.

    Parameters are mirrored (t at angle -theta is -t at theta), so every
    polygon has an exact reflection symmetry about the x-axis; polygon(4) is
    the exact diamond (1,0),(0,1),(-1,0),(0,-1) with full dihedral symmetry.
    """
    if n < 3:
        raise TooFewVertices(f"polygon needs n >= 3, got {n}")
    pi = _pi()
    points: list[Vector] = []
    for k in range(n):
        if 2 * k == n:
            points.append((Fraction(-1), Fraction(0)))
            continue
        if 2 * k < n:
            theta = 2 * pi * k / n
            t = (_sin(theta) / (1 + _cos(theta))).limit_denominator(1024)
        else:
            mirror = n - k
            theta = 2 * pi * mirror / n
            t = -(_sin(theta) / (1 + _cos(theta))).limit_denominator(1024)
        points.append(_circle_point(t))
    assert len(set(points)) == n, "angle parameters collided"
    for p in points:
        assert p[0] * p[0] + p[1] * p[1] == 1
    # All points lie on a circle, hence are automatically in convex position.
    return VPolytope.from_extreme(2, points)


@lru_cache(maxsize=None)
def polygon(n: int) -> StateSpace:
    """n-vertex polygon theory in ambient dimension 3."""
    return lift(polygon_base(n))


@lru_cache(maxsize=None)
def simplex_model(k: int) -> StateSpace:
    """Classical theory on k symbols: standard basis states, unit = (1,..,1)."""
    if k < 1:
        raise GptlabError(f"simplex model needs k >= 1, got {k}")
    vertices = [
        tuple(ONE if j == i else ZERO for j in range(k)) for i in range(k)
    ]
    unit = (ONE,) * k
    return build(k, unit, vertices)


@lru_cache(maxsize=1)
def square_pyramid() -> StateSpace:
    """Pyramid over a square, lifted to ambient dimension 4.

    The smallest polytope that is pyramidal over its base facet but not over
    its side facets; non-classical with five facets.
    """
    base_points = [
        vector([1, 1, 0]),
        vector([-1, 1, 0]),
        vector([-1, -1, 0]),
        vector([1, -1, 0]),
        vector([0, 0, 1]),
    ]
    return lift(VPolytope.from_extreme(3, base_points))


def _local_box(a0: int, a1: int, b0: int, b1: int) -> Vector:
    """Deterministic two-party box in Collins-Gisin coordinates.

    Coordinates: pA(0|x=0), pA(0|x=1), pB(0|y=0), pB(0|y=1), then
    p(00|xy) for xy in 00, 01, 10, 11.
    """
    alice = (a0, a1)
    bob = (b0, b1)
    coords = [ONE if alice[x] == 0 else ZERO for x in (0, 1)]
    coords += [ONE if bob[y] == 0 else ZERO for y in (0, 1)]
    for x in (0, 1):
        for y in (0, 1):
            coords.append(ONE if alice[x] == 0 and bob[y] == 0 else ZERO)
    return tuple(coords)


def _pr_box(alpha: int, beta: int, gamma: int) -> Vector:
    """PR-box variant: outputs satisfy a xor b = xy xor alpha x xor beta y xor gamma."""
    half = Fraction(1, 2)
    coords = [half, half, half, half]
    for x in (0, 1):
        for y in (0, 1):
            parity = (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma
            # p(00|xy) = 1/2 when a=b=0 is allowed, i.e. when the parity is 0.
            coords.append(half if parity == 0 else ZERO)
    return tuple(coords)


@lru_cache(maxsize=1)
def nosignaling_2222() -> StateSpace:
    """Two-party, two-input, two-output no-signaling polytope.

    16 local deterministic boxes plus 8 PR-box variants in the 8-dimensional
    Collins-Gisin parameterization, lifted to ambient dimension 9.
    """
    points = [
        _local_box(a0, a1, b0, b1)
        for a0 in (0, 1)
        for a1 in (0, 1)
        for b0 in (0, 1)
        for b1 in (0, 1)
    ]
    points += [
        _pr_box(alpha, beta, gamma)
        for alpha in (0, 1)
        for beta in (0, 1)
        for gamma in (0, 1)
    ]
    return lift(VPolytope.from_points(tuple(points)))


@dataclass(frozen=True)
class ModelSpec:
    name: str
    takes_param: bool
    min_param: int
    description: str
    generator: Callable[..., StateSpace]


ZOO: dict[str, ModelSpec] = {
    "polygon": ModelSpec(
        "polygon", True, 3, "n-vertex polygon theory (n >= 3)", polygon
    ),
    "simplex": ModelSpec(
        "simplex", True, 1, "classical theory on k symbols (k >= 1)", simplex_model
    ),
    "square_pyramid": ModelSpec(
        "square_pyramid", False, 0, "pyramid over a square (non-classical)",
        square_pyramid,
    ),
    "nosignaling_2222": ModelSpec(
        "nosignaling_2222", False, 0,
        "two-party no-signaling boxes: 16 local + 8 PR variants",
        nosignaling_2222,
    ),
}


def zoo_model(name: str, param: int | None = None) -> StateSpace:
    if name not in ZOO:
        raise GptlabError(f"unknown zoo model: {name!r}")
    spec = ZOO[name]
    if spec.takes_param:
        if param is None:
            raise GptlabError(f"zoo model {name} needs an integer parameter")
        if param < spec.min_param:
            raise GptlabError(f"zoo model {name} needs parameter >= {spec.min_param}")
        return spec.generator(param)
    if param is not None:
        raise GptlabError(f"zoo model {name} takes no parameter")
    return spec.generator()


def zoo_reference(ref: str) -> StateSpace:
    """Resolve "zoo:<name>" or "zoo:<name>:<param>"."""
    parts = ref.split(":")
    if parts[0] != "zoo" or len(parts) not in (2, 3):
        raise GptlabError(f"not a zoo reference: {ref!r}")
    name = parts[1]
    param = None
    if len(parts) == 3:
        try:
            param = int(parts[2])
        except ValueError:
            raise GptlabError(f"zoo parameter must be an integer: {parts[2]!r}")
    return zoo_model(name, param)
