"""Exact rational linear programming with verifiable certificates.

The solver is a two-phase primal simplex.  Internally the tableau is kept as
integers with one shared denominator (fraction-free pivoting: every pivot
performs an exact integer division), which is much faster than Fraction
entries while producing bit-identical exact results.  Pivot selection is
Bland's rule over a fixed variable order, so the solver is deterministic and
cannot cycle.

Every outcome is a value:

* ``Optimal(point, value)``   -- maximizer and exact objective value
* ``Feasible(point)``         -- a feasible point (problems without objective)
* ``Infeasible(farkas_*)``    -- a nonnegative combination of the constraints
                                 proving infeasibility
* ``Unbounded(ray)``          -- a feasible improving direction

Certificates re-validate with plain arithmetic; see ``check_farkas`` and
``check_feasible_point``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .kernel import Vector, ZERO, vec_dot

LinCon = tuple[Vector, Fraction]


@dataclass(frozen=True)
class LpProblem:
    """max objective . x  subject to  ineqs (a.x <= b) and eqs (a.x == b).

    ``objective = None`` asks only for feasibility.  All variables are free;
    bounds belong in ``ineqs``.
    """

    num_vars: int
    objective: Vector | None
    ineqs: tuple[LinCon, ...]
    eqs: tuple[LinCon, ...] = ()

    def __post_init__(self) -> None:
        for coeffs, _ in (*self.ineqs, *self.eqs):
            if len(coeffs) != self.num_vars:
                raise ValueError("constraint width does not match num_vars")
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise ValueError("objective width does not match num_vars")


@dataclass(frozen=True)
class Optimal:
    point: Vector
    value: Fraction


@dataclass(frozen=True)
class Feasible:
    point: Vector


@dataclass(frozen=True)
class Infeasible:
    farkas_ineq: Vector
    farkas_eq: Vector


@dataclass(frozen=True)
class Unbounded:
    ray: Vector


LpOutcome = Optimal | Feasible | Infeasible | Unbounded


def check_feasible_point(problem: LpProblem, x: Vector) -> bool:
    """Exact substitution check of every constraint; no tolerance."""
    return all(vec_dot(a, x) <= b for a, b in problem.ineqs) and all(
        vec_dot(a, x) == b for a, b in problem.eqs
    )


def check_farkas(problem: LpProblem, ineq_coeffs: Vector, eq_coeffs: Vector) -> bool:
    """Validate an infeasibility certificate independently of the solver.

    The combination sum(ineq_coeffs[i] * ineqs[i]) + sum(eq_coeffs[j] * eqs[j])
    must cancel on the left-hand side while the right-hand side is negative,
    i.e. it derives the contradiction 0 <= c with c < 0.
    """
    if len(ineq_coeffs) != len(problem.ineqs) or len(eq_coeffs) != len(problem.eqs):
        return False
    if any(c < 0 for c in ineq_coeffs):
        return False
    combo = [ZERO] * problem.num_vars
    rhs = ZERO
    for c, (a, b) in zip(ineq_coeffs, problem.ineqs):
        if c:
            for k, ak in enumerate(a):
                combo[k] += c * ak
            rhs += c * b
    for c, (a, b) in zip(eq_coeffs, problem.eqs):
        if c:
            for k, ak in enumerate(a):
                combo[k] += c * ak
            rhs += c * b
    return all(v == 0 for v in combo) and rhs < 0


def check_ray(problem: LpProblem, ray: Vector) -> bool:
    """Validate an unboundedness certificate: a feasible improving direction."""
    if all(r == 0 for r in ray):
        return False
    if any(vec_dot(a, ray) > 0 for a, _ in problem.ineqs):
        return False
    if any(vec_dot(a, ray) != 0 for a, _ in problem.eqs):
        return False
    return problem.objective is None or vec_dot(problem.objective, ray) > 0


class _Tableau:
    """Integer simplex tableau: rational entry (i, j) is rows[i][j] / den."""

    __slots__ = ("rows", "den", "basis", "obj1", "obj2")

    def __init__(self) -> None:
        self.rows: list[list[int]] = []
        self.den = 1
        self.basis: list[int] = []
        self.obj1: list[int] | None = None
        self.obj2: list[int] | None = None

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        den = self.den
        piv_row = rows[r]
        p = piv_row[c]
        for i in range(len(rows)):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(p * x - f * y) // den for x, y in zip(row, piv_row)]
            elif p != den:
                rows[i] = [(p * x) // den for x in row]
        for name in ("obj1", "obj2"):
            row = getattr(self, name)
            if row is None:
                continue
            f = row[c]
            if f:
                setattr(self, name, [(p * x - f * y) // den for x, y in zip(row, piv_row)])
            elif p != den:
                setattr(self, name, [(p * x) // den for x in row])
        self.den = p
        self.basis[r] = c
        if self.den < 0:
            self.den = -self.den
            self.rows = [[-x for x in row] for row in self.rows]
            if self.obj1 is not None:
                self.obj1 = [-x for x in self.obj1]
            if self.obj2 is not None:
                self.obj2 = [-x for x in self.obj2]


def _scaled_int_row(coeffs: Vector, rhs: Fraction) -> tuple[list[int], int, int]:
    """Clear denominators of one constraint row; returns (row, rhs, scale)."""
    scale = lcm(rhs.denominator, *(c.denominator for c in coeffs))
    return [int(c * scale) for c in coeffs], int(rhs * scale), scale


def _ratio_less(a_num: int, a_den: int, b_num: int, b_den: int) -> bool:
    # a_num/a_den < b_num/b_den with positive denominators
    return a_num * b_den < b_num * a_den


def lp_solve(problem: LpProblem) -> LpOutcome:
    """Solve exactly; deterministic for identical inputs."""
    n = problem.num_vars
    m_ineq = len(problem.ineqs)
    m_eq = len(problem.eqs)
    m = m_ineq + m_eq

    # Column layout: x+ (n) | x- (n) | slacks (m_ineq) | artificials (appended).
    n_slack_base = 2 * n
    n_art_base = 2 * n + m_ineq

    row_sign: list[int] = []        # +1 or -1: sign applied to the original row
    row_scale: list[int] = []       # positive integer scale applied to the row
    int_rows: list[list[int]] = []  # structural + slack part, rhs kept separate
    rhs_col: list[int] = []
    needs_art: list[bool] = []

    for idx, (coeffs, rhs) in enumerate(problem.ineqs):
        arow, brhs, scale = _scaled_int_row(coeffs, rhs)
        sgn = -1 if brhs < 0 else 1
        row = [sgn * a for a in arow] + [-sgn * a for a in arow] + [0] * m_ineq
        row[n_slack_base + idx] = sgn
        int_rows.append(row)
        rhs_col.append(sgn * brhs)
        row_sign.append(sgn)
        row_scale.append(scale)
        needs_art.append(sgn < 0)
    for coeffs, rhs in problem.eqs:
        arow, brhs, scale = _scaled_int_row(coeffs, rhs)
        sgn = -1 if brhs < 0 else 1
        row = [sgn * a for a in arow] + [-sgn * a for a in arow] + [0] * m_ineq
        int_rows.append(row)
        rhs_col.append(sgn * brhs)
        row_sign.append(sgn)
        row_scale.append(scale)
        needs_art.append(True)

    art_rows = [i for i in range(m) if needs_art[i]]
    n_art = len(art_rows)
    ncols = n_art_base + n_art
    art_col_of_row: dict[int, int] = {}
    for k, i in enumerate(art_rows):
        art_col_of_row[i] = n_art_base + k

    t = _Tableau()
    for i in range(m):
        full = int_rows[i] + [0] * n_art + [rhs_col[i]]
        if i in art_col_of_row:
            full[art_col_of_row[i]] = 1
            t.basis.append(art_col_of_row[i])
        else:
            t.basis.append(n_slack_base + i)
        t.rows.append(full)

    # Phase-1 objective row: maximize -(sum of artificials); entries are
    # den * (z_j - c_j).  Basic columns get reduced cost 0 by construction.
    obj1 = [0] * (ncols + 1)
    for i in art_rows:
        for j in range(ncols + 1):
            obj1[j] -= t.rows[i][j]
    for i in art_rows:
        obj1[art_col_of_row[i]] += 1
    t.obj1 = obj1

    # Phase-2 objective row: den * objscale * (z_j - c_j).
    if problem.objective is not None:
        objscale = lcm(1, *(c.denominator for c in problem.objective))
        obj2 = [0] * (ncols + 1)
        for k, c in enumerate(problem.objective):
            obj2[k] = -int(c * objscale)
            obj2[n + k] = int(c * objscale)
        t.obj2 = obj2
    else:
        objscale = 1
        t.obj2 = None

    enterable = list(range(n_art_base))  # artificials never (re-)enter

    def run_simplex(objrow_name: str) -> int | None:
        """Pivot until optimal; returns an entering column on unboundedness."""
        while True:
            obj = getattr(t, objrow_name)
            enter = next((j for j in enterable if obj[j] < 0), None)
            if enter is None:
                return None
            leave_row = None
            best_num = best_den = 0
            for i in range(len(t.rows)):
                coef = t.rows[i][enter]
                if coef > 0:
                    num = t.rows[i][-1]
                    if (
                        leave_row is None
                        or _ratio_less(num, coef, best_num, best_den)
                        or (num * best_den == best_num * coef
                            and t.basis[i] < t.basis[leave_row])
                    ):
                        leave_row, best_num, best_den = i, num, coef
            if leave_row is None:
                return enter
            t.pivot(leave_row, enter)

    def basic_point() -> Vector:
        vals = {t.basis[i]: Fraction(t.rows[i][-1], t.den) for i in range(len(t.rows))}
        return tuple(
            vals.get(k, ZERO) - vals.get(n + k, ZERO) for k in range(n)
        )

    if n_art:
        unb = run_simplex("obj1")
        assert unb is None, "phase 1 is bounded by construction"
        if t.obj1[-1] != 0:
            # Infeasible: read the dual from the phase-1 reduced-cost row.
            lam_ineq = []
            lam_eq = []
            for i in range(m):
                col = art_col_of_row.get(i)
                if col is not None:
                    y_i = Fraction(t.obj1[col], t.den) - 1
                else:
                    y_i = Fraction(t.obj1[n_slack_base + i], t.den)
                coeff = y_i * row_sign[i] * row_scale[i]
                if i < m_ineq:
                    lam_ineq.append(coeff)
                else:
                    lam_eq.append(coeff)
            outcome = Infeasible(tuple(lam_ineq), tuple(lam_eq))
            assert check_farkas(problem, outcome.farkas_ineq, outcome.farkas_eq)
            return outcome
        # Drive leftover degenerate artificials out of the basis.
        for r in range(len(t.rows) - 1, -1, -1):
            if t.basis[r] >= n_art_base:
                piv_col = next(
                    (j for j in enterable if t.rows[r][j] != 0), None
                )
                if piv_col is None:
                    del t.rows[r]
                    del t.basis[r]
                else:
                    t.pivot(r, piv_col)

    if problem.objective is None:
        point = basic_point()
        assert check_feasible_point(problem, point)
        return Feasible(point)

    unb = run_simplex("obj2")
    if unb is not None:
        col = unb
        direction = {col: Fraction(1)}
        for i in range(len(t.rows)):
            if t.rows[i][col]:
                direction[t.basis[i]] = Fraction(-t.rows[i][col], t.den)
        ray = tuple(
            direction.get(k, ZERO) - direction.get(n + k, ZERO) for k in range(n)
        )
        outcome = Unbounded(ray)
        assert check_ray(problem, ray)
        return outcome

    point = basic_point()
    value = Fraction(t.obj2[-1], t.den * objscale)
    assert check_feasible_point(problem, point)
    assert vec_dot(problem.objective, point) == value
    return Optimal(point, value)
