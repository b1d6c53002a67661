"""Exact rational scalars, vectors and matrices.

Scalars are stdlib ``fractions.Fraction`` values (always in lowest terms with a
positive denominator).  Vectors are plain tuples of Fractions, which makes
lexicographic comparison and hashing free; matrices are a thin immutable
wrapper around a tuple of row tuples.  Everything here is a pure function of
its inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or "p") with the sign on the numerator only."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def rational_str(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is one."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable[int | str | Fraction]) -> Vector:
    return tuple(rational(v) for v in values)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def vec_dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def vec_zero(dim: int) -> Vector:
    return (ZERO,) * dim


def is_zero_vector(a: Vector) -> bool:
    return all(x == 0 for x in a)


def unit_vector(dim: int, index: int) -> Vector:
    return tuple(ONE if i == index else ZERO for i in range(dim))


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix, row-major."""

    rows: tuple[Vector, ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Fraction]]) -> "Matrix":
        return cls(tuple(vector(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(vec_zero(ncols) for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.col(j) for j in range(self.ncols)))

    def apply(self, x: Vector) -> Vector:
        """Matrix-vector product."""
        return tuple(vec_dot(r, x) for r in self.rows)

    def matmul(self, other: "Matrix") -> "Matrix":
        cols = [other.col(j) for j in range(other.ncols)]
        return Matrix(
            tuple(tuple(vec_dot(r, c) for c in cols) for r in self.rows)
        )


def _eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gaussian elimination to row echelon form.

    Returns the echelon rows and the pivot column of each nonzero row.
    Pivot selection is first-nonzero (no pivoting strategy is needed for
    exact arithmetic), which keeps the result deterministic.
    """
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    """Exact rank over the rationals."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    work = [list(r) for r in m.rows]
    _, pivots = _eliminate(work)
    return len(pivots)


def rank_of_vectors(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return rank(Matrix(tuple(vectors)))


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution family of a linear system: particular + span(nullspace)."""

    particular: Vector
    nullspace: tuple[Vector, ...]

    @property
    def is_unique(self) -> bool:
        return not self.nullspace


def solve_linear(m: Matrix, b: Vector) -> LinearSolution | None:
    """Solve m x = b exactly.

    Returns None when b is outside the column space; otherwise a particular
    solution together with a basis of the homogeneous nullspace (empty basis
    means the solution is unique).
    """
    if m.nrows != len(b):
        raise DimensionError(f"matrix has {m.nrows} rows but rhs has {len(b)}")
    ncols = m.ncols
    work = [list(row) + [bi] for row, bi in zip(m.rows, b)]
    work, pivots = _eliminate(work)
    # Pivot in the augmented column means the system is inconsistent.
    if ncols in pivots:
        return None
    pivot_set = set(pivots)
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        x[c] = work[r][ncols]
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    null_basis = []
    for fc in free_cols:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, c in enumerate(pivots):
            v[c] = -work[r][fc]
        null_basis.append(tuple(v))
    return LinearSolution(tuple(x), tuple(null_basis))


def nullspace(m: Matrix) -> tuple[Vector, ...]:
    """Basis of {x : m x = 0}."""
    if m.nrows == 0:
        return tuple(unit_vector(m.ncols, i) for i in range(m.ncols))
    sol = solve_linear(m, vec_zero(m.nrows))
    assert sol is not None
    return sol.nullspace


def independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Indices of a maximal linearly independent subset, first-come order."""
    chosen: list[int] = []
    echelon: list[list[Fraction]] = []
    for idx, v in enumerate(vectors):
        row = list(v)
        for er in echelon:
            lead = next((j for j, x in enumerate(er) if x != 0), None)
            if lead is not None and row[lead] != 0:
                factor = row[lead] / er[lead]
                row = [x - factor * y for x, y in zip(row, er)]
        if any(x != 0 for x in row):
            echelon.append(row)
            chosen.append(idx)
    return chosen


class DimensionError(ValueError):
    """Shapes of exact-arithmetic operands do not line up."""
