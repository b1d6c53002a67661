"""Independent oracles used to freeze expected values.

Everything here deliberately avoids the package's own linear algebra and LP
code paths: ranks and solves go through sympy, and vertex enumeration is the
classic Cramer-style scan over constraint subsets (solve each square
subsystem, keep solutions satisfying everything, deduplicate).  Expected
values asserted in the test-suite were computed with these oracles first.
"""

from fractions import Fraction
from itertools import combinations

import sympy as sp


def _sym(q: Fraction) -> sp.Rational:
    return sp.Rational(q.numerator, q.denominator)


def sympy_rank(rows) -> int:
    if not rows:
        return 0
    return sp.Matrix([[_sym(x) for x in row] for row in rows]).rank()


def sympy_solve_consistent(rows, rhs) -> bool:
    a = sp.Matrix([[_sym(x) for x in row] for row in rows])
    b = sp.Matrix([[_sym(x)] for x in rhs])
    return a.rank() == a.row_join(b).rank()


def enumerate_vertices(ineqs, eqs=()):
    """All vertices of {x : a.x <= b, e.x == d} by square-subsystem scan.

    Returns a set of coordinate tuples (sympy Rationals).  Assumes the
    described set is bounded.
    """
    rows = []
    rhs = []
    senses = []
    for a, b in ineqs:
        rows.append([_sym(x) for x in a])
        rhs.append(_sym(b))
        senses.append("<=")
    for a, b in eqs:
        rows.append([_sym(x) for x in a])
        rhs.append(_sym(b))
        senses.append("==")
    a_mat = sp.Matrix(rows)
    b_vec = sp.Matrix([[x] for x in rhs])
    n = a_mat.cols
    eq_idx = [i for i, s in enumerate(senses) if s == "=="]
    ineq_idx = [i for i, s in enumerate(senses) if s == "<="]
    found = set()
    need = n - sympy_rank([rows[i] for i in eq_idx]) if eq_idx else n
    for chosen in combinations(ineq_idx, need):
        idx = list(eq_idx) + list(chosen)
        sub = a_mat[idx, :]
        if sub.rank() < n:
            continue
        solutions = sp.linsolve((sub, b_vec[idx, :]))
        if not solutions:
            continue
        x = sp.Matrix(list(solutions)[0]).reshape(n, 1)
        ok = True
        for i, s in enumerate(senses):
            val = (a_mat[i, :] * x)[0, 0]
            if s == "<=" and not val <= rhs[i]:
                ok = False
                break
            if s == "==" and val != rhs[i]:
                ok = False
                break
        if ok:
            found.add(tuple(x))
    return found


def effect_vertex_count(space) -> int:
    """Pure effect count via the independent enumerator."""
    ineqs = []
    for v in space.states.vertices:
        ineqs.append((v, Fraction(1)))
        ineqs.append((tuple(-x for x in v), Fraction(0)))
    return len(enumerate_vertices(ineqs))


def brute_force_lp_max(objective, ineqs, eqs=()):
    """Maximum of a linear objective over a bounded system, via enumeration."""
    verts = enumerate_vertices(ineqs, eqs)
    if not verts:
        return None
    best = None
    for v in verts:
        val = sum(_sym(c) * x for c, x in zip(objective, v))
        if best is None or val > best:
            best = val
    return best
