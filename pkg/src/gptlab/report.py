"""Machine-readable analysis reports and their standalone verification.

A report embeds, for every claim it makes, enough certificate material that
``verify_report`` can re-check it with rational arithmetic alone (rank and
linear solves allowed, the LP solver never invoked):

* transformation witnesses carry convex-decomposition coefficients proving
  each mapped state stays inside the subnormalized body;
* shape-mismatch obstructions carry the witness point's decomposition over
  the states plus a separating facet of the joined faces;
* dimension mismatches are re-derived from ranks;
* raw LP infeasibility certificates are re-multiplied against the rebuilt
  constraint system;
* disturbance entries re-evaluate the minimizer's exact disturbance.

Reports are deterministic functions of (model, flags): no timestamps, no
wall-clock content, fixed key order.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Any

from . import __version__
from .disturbance import Norm, min_disturbance, norm_value
from .errors import ModelFormatError
from .geometry import (
    VPolytope,
    affine_hull,
    conv_union,
    dimension,
    v_to_h,
)
from .kernel import (
    Matrix,
    Vector,
    ZERO,
    parse_rational,
    rank_of_vectors,
    rational_str,
    vec_dot,
    vec_sub,
)
from .lp import LpProblem, check_farkas
from .postulate import (
    DimensionMismatch,
    LpInfeasibleCertificate,
    PostulateReport,
    ShapeMismatch,
    TransformationWitness,
    check_postulate,
    transformation_constraints,
)
from .serialize import (
    SCHEMA_VERSION,
    decimal_string,
    model_to_dict,
    strings_to_vector,
    vector_to_strings,
)
from .statespace import (
    Effect,
    StateSpace,
    certain_face,
    classify,
    impossible_face,
    pure_effects,
    subnormalized_decomposition,
)

GATE_DIM = 5


def _matrix_to_strings(m: Matrix) -> list[list[str]]:
    return [vector_to_strings(row) for row in m.rows]


def _vertex_indices(space: StateSpace, poly: VPolytope) -> list[int]:
    return [space.states.vertices.index(v) for v in poly.vertices]


def _positivity_certificates(space: StateSpace, t: Matrix) -> list[list[str]]:
    certs = []
    for v in space.states.vertices:
        coeffs = subnormalized_decomposition(space, t.apply(v))
        assert coeffs is not None, "witness fails positivity"
        certs.append(vector_to_strings(coeffs))
    return certs


def _separating_facet(hull_union: VPolytope, point: Vector) -> tuple[Vector, Fraction]:
    for normal, rhs in v_to_h(hull_union).ineqs:
        if vec_dot(normal, point) > rhs:
            return normal, rhs
    raise AssertionError("witness point is not outside the joined faces")


def _outcome_to_dict(space: StateSpace, entry_outcome: Any) -> dict[str, Any]:
    if isinstance(entry_outcome, TransformationWitness):
        return {
            "type": "witness",
            "matrix": _matrix_to_strings(entry_outcome.matrix),
            "positivity": _positivity_certificates(space, entry_outcome.matrix),
        }
    if isinstance(entry_outcome, DimensionMismatch):
        return {
            "type": "dimension_mismatch",
            "dim_certain": entry_outcome.dim_certain,
            "dim_impossible": entry_outcome.dim_impossible,
            "dim_states": entry_outcome.dim_states,
        }
    if isinstance(entry_outcome, ShapeMismatch):
        raise AssertionError("shape mismatch needs the effect context")
    assert isinstance(entry_outcome, LpInfeasibleCertificate)
    return {
        "type": "lp_infeasible",
        "farkas_ineq": vector_to_strings(entry_outcome.farkas_ineq),
        "farkas_eq": vector_to_strings(entry_outcome.farkas_eq),
    }


def _shape_mismatch_to_dict(
    space: StateSpace, f: Effect, obstruction: ShapeMismatch
) -> dict[str, Any]:
    point = obstruction.witness_point
    membership = subnormalized_decomposition(space, point)
    assert membership is not None and sum(membership) == 1
    hull_union = conv_union(certain_face(space, f), impossible_face(space, f))
    normal, rhs = _separating_facet(hull_union, point)
    return {
        "type": "shape_mismatch",
        "witness_point": vector_to_strings(point),
        "membership": vector_to_strings(membership),
        "separator": {
            "normal": vector_to_strings(normal),
            "rhs": rational_str(rhs),
        },
    }


def _postulate_section(
    space: StateSpace, report: PostulateReport, mode: str, effect_index: dict
) -> dict[str, Any]:
    entries = []
    for entry in report.entries:
        if isinstance(entry.outcome, ShapeMismatch):
            outcome = _shape_mismatch_to_dict(space, entry.effect, entry.outcome)
        else:
            outcome = _outcome_to_dict(space, entry.outcome)
        entries.append(
            {
                "face_vertices": _vertex_indices(space, entry.face),
                "effect_index": effect_index[entry.effect.functional],
                "outcome": outcome,
            }
        )
    return {"mode": mode, "all_feasible": report.all_feasible, "entries": entries}


def build_report(
    space: StateSpace,
    name: str | None = None,
    *,
    norm: Norm = Norm.MAX_ABS,
    all_pure: bool = False,
    force: bool = False,
) -> tuple[dict[str, Any], dict[str, float]]:
    """Assemble the full analysis; returns (report, stage timings in seconds).

    Full analysis (effects, postulate, disturbance) is gated to ambient
    dimension <= 5 unless forced; classification always runs.  Timings are
    informational only and never serialized into the report.
    """
    timings: dict[str, float] = {}
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "gptlab", "version": __version__},
        "model": model_to_dict(space, name),
    }

    t0 = time.perf_counter()
    doc["classification"] = classify(space).value
    timings["classify"] = time.perf_counter() - t0

    gated = space.dim > GATE_DIM and not force
    doc["full_analysis"] = not gated
    if gated:
        doc["pure_effects"] = None
        doc["postulate"] = None
        doc["disturbance"] = None
        return doc, timings

    t0 = time.perf_counter()
    effects = pure_effects(space)
    effect_index = {e.functional: i for i, e in enumerate(effects)}
    effect_rows = []
    for i, e in enumerate(effects):
        cf = certain_face(space, e)
        imf = impossible_face(space, e)
        effect_rows.append(
            {
                "index": i,
                "functional": vector_to_strings(e.functional),
                "certain_vertices": _vertex_indices(space, cf),
                "impossible_vertices": _vertex_indices(space, imf),
                "dim_certain": dimension(cf),
                "dim_impossible": dimension(imf),
            }
        )
    doc["pure_effects"] = effect_rows
    timings["effects"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    facet_report = check_postulate(space)
    postulate_report = (
        check_postulate(space, all_pure=True) if all_pure else facet_report
    )
    doc["postulate"] = _postulate_section(
        space, postulate_report, "all_pure" if all_pure else "facets", effect_index
    )
    timings["postulate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    entries = []
    for entry in facet_report.entries:
        result = min_disturbance(space, entry.effect, norm)
        entries.append(
            {
                "effect_index": effect_index[entry.effect.functional],
                "norm": norm.value,
                "epsilon": rational_str(result.epsilon),
                "epsilon_decimal": decimal_string(result.epsilon),
                "minimizer": _matrix_to_strings(result.minimizer),
                "minimizer_positivity": _positivity_certificates(
                    space, result.minimizer
                ),
                "witness_state": space.states.vertices.index(result.witness_state),
            }
        )
    doc["disturbance"] = {"norm": norm.value, "entries": entries}
    timings["disturbance"] = time.perf_counter() - t0
    return doc, timings


# ---------------------------------------------------------------------------
# verification (rational arithmetic only; the LP solver is never called)
# ---------------------------------------------------------------------------


def _parse_matrix(rows: Any, field: str, dim: int) -> Matrix:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ModelFormatError(f"{field}: expected {dim} rows")
    return Matrix(tuple(strings_to_vector(row, field) for row in rows))


def _check(failures: list[str], condition: bool, message: str) -> None:
    if not condition:
        failures.append(message)


def _induced_effect(space: StateSpace, t: Matrix) -> Vector:
    d = space.dim
    return tuple(
        sum((space.unit_effect[i] * t.rows[i][j] for i in range(d)), ZERO)
        for j in range(d)
    )


def _verify_positivity(
    failures: list[str],
    space: StateSpace,
    t: Matrix,
    certs: Any,
    label: str,
) -> None:
    verts = space.states.vertices
    if not isinstance(certs, list) or len(certs) != len(verts):
        failures.append(f"{label}: expected one certificate per state vertex")
        return
    for vi, (v, cert) in enumerate(zip(verts, certs)):
        coeffs = strings_to_vector(cert, f"{label}[{vi}]")
        if len(coeffs) != len(verts):
            failures.append(f"{label}[{vi}]: wrong coefficient count")
            continue
        _check(failures, all(c >= 0 for c in coeffs), f"{label}[{vi}]: negative coefficient")
        _check(failures, sum(coeffs) <= 1, f"{label}[{vi}]: total exceeds one")
        image = t.apply(v)
        combo = tuple(
            sum((c * w[i] for c, w in zip(coeffs, verts)), ZERO)
            for i in range(space.dim)
        )
        _check(failures, combo == image, f"{label}[{vi}]: decomposition mismatch")


def _face_dims_of_effect(space: StateSpace, f: Effect) -> tuple[int, int]:
    return (
        dimension(certain_face(space, f)),
        dimension(impossible_face(space, f)),
    )


def _space_from_model_dict(doc: Any) -> StateSpace:
    """Arithmetic-only model loader for verification.

    Validates normalization and the generating-cone rank like ``build`` but
    skips the LP-based extremality reduction: the model embedded in a report
    is already canonical, and none of the certificate checks depend on the
    vertex list being irredundant.
    """
    from .geometry import VPolytope
    from .kernel import rank_of_vectors, vec_dot

    if not isinstance(doc, dict):
        raise ModelFormatError("model: expected a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ModelFormatError("model.schema_version: unsupported")
    dim = doc.get("dim_A")
    if not isinstance(dim, int):
        raise ModelFormatError("model.dim_A: missing or not an integer")
    unit = strings_to_vector(doc.get("unit_effect"), "model.unit_effect")
    raw = doc.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise ModelFormatError("model.vertices: missing or empty")
    vertices = tuple(
        strings_to_vector(row, f"model.vertices[{k}]") for k, row in enumerate(raw)
    )
    if len(unit) != dim or any(len(v) != dim for v in vertices):
        raise ModelFormatError("model: entry widths do not match dim_A")
    if any(vec_dot(unit, v) != 1 for v in vertices):
        raise ModelFormatError("model.vertices: some state is not normalized")
    if rank_of_vectors(vertices) != dim:
        raise ModelFormatError("model.vertices: states do not span the space")
    return StateSpace(dim, unit, VPolytope.from_extreme(dim, vertices))


def verify_report(doc: Any) -> list[str]:
    """Re-validate every witness and certificate; returns failure messages.

    Uses exact arithmetic only: dot products, ranks and linear solves.  An
    empty list means every embedded claim checked out.
    """
    failures: list[str] = []
    if not isinstance(doc, dict):
        return ["report: top level must be a JSON object"]
    if doc.get("schema_version") != SCHEMA_VERSION:
        return [f"schema_version: expected {SCHEMA_VERSION}"]
    try:
        space = _space_from_model_dict(doc.get("model"))
    except ModelFormatError as exc:
        return [f"model: {exc}"]

    claimed = doc.get("classification")
    actual = classify(space).value
    _check(failures, claimed == actual, f"classification: {claimed} != {actual}")

    if not doc.get("full_analysis", False):
        return failures

    effect_rows = doc.get("pure_effects") or []
    effects: list[Effect] = []
    for row in effect_rows:
        try:
            f = Effect(strings_to_vector(row["functional"], "pure_effects.functional"))
        except (KeyError, ModelFormatError) as exc:
            failures.append(f"pure_effects[{row.get('index')}]: {exc}")
            continue
        effects.append(f)
        i = row["index"]
        label = f"pure_effects[{i}]"
        values = [f(v) for v in space.states.vertices]
        _check(failures, all(0 <= x <= 1 for x in values), f"{label}: not an effect")
        tight = [
            v for v, x in zip(space.states.vertices, values) if x == 0 or x == 1
        ]
        _check(
            failures,
            rank_of_vectors(tight) == space.dim,
            f"{label}: tight constraints do not certify extremality",
        )
        certain_idx = [i for i, x in enumerate(values) if x == 1]
        impossible_idx = [i for i, x in enumerate(values) if x == 0]
        _check(failures, row.get("certain_vertices") == certain_idx, f"{label}: certain set")
        _check(
            failures,
            row.get("impossible_vertices") == impossible_idx,
            f"{label}: impossible set",
        )
        dims = _face_dims_of_effect(space, f)
        _check(failures, row.get("dim_certain") == dims[0], f"{label}: certain dim")
        _check(failures, row.get("dim_impossible") == dims[1], f"{label}: impossible dim")

    post = doc.get("postulate")
    if isinstance(post, dict):
        feasible_seen = True
        for k, entry in enumerate(post.get("entries", ())):
            label = f"postulate.entries[{k}]"
            try:
                f = effects[entry["effect_index"]]
            except (KeyError, IndexError):
                failures.append(f"{label}: bad effect index")
                continue
            face = certain_face(space, f)
            _check(
                failures,
                entry.get("face_vertices") == _vertex_indices(space, face),
                f"{label}: face is not the effect's certain face",
            )
            outcome = entry.get("outcome", {})
            kind = outcome.get("type")
            if kind == "witness":
                try:
                    t = _parse_matrix(outcome["matrix"], f"{label}.matrix", space.dim)
                except (KeyError, ModelFormatError) as exc:
                    failures.append(f"{label}: {exc}")
                    continue
                _check(
                    failures,
                    _induced_effect(space, t) == f.functional,
                    f"{label}: matrix does not induce the effect",
                )
                _check(
                    failures,
                    all(t.apply(w) == w for w in face.vertices),
                    f"{label}: matrix does not fix the certain face",
                )
                _verify_positivity(
                    failures, space, t, outcome.get("positivity"), f"{label}.positivity"
                )
            elif kind == "dimension_mismatch":
                feasible_seen = False
                dims = _face_dims_of_effect(space, f)
                stated = (outcome.get("dim_certain"), outcome.get("dim_impossible"))
                _check(failures, stated == dims, f"{label}: stated dims differ")
                _check(
                    failures,
                    dims[0] + dims[1] > dimension(space.states) - 1,
                    f"{label}: dimensions do not actually clash",
                )
                _check(
                    failures,
                    outcome.get("dim_states") == dimension(space.states),
                    f"{label}: stated state dimension differs",
                )
            elif kind == "shape_mismatch":
                feasible_seen = False
                try:
                    point = strings_to_vector(
                        outcome["witness_point"], f"{label}.witness_point"
                    )
                    membership = strings_to_vector(
                        outcome["membership"], f"{label}.membership"
                    )
                    normal = strings_to_vector(
                        outcome["separator"]["normal"], f"{label}.separator"
                    )
                    rhs = parse_rational(outcome["separator"]["rhs"])
                except (KeyError, ValueError, ModelFormatError) as exc:
                    failures.append(f"{label}: {exc}")
                    continue
                verts = space.states.vertices
                _check(
                    failures,
                    len(membership) == len(verts)
                    and all(c >= 0 for c in membership)
                    and sum(membership) == 1
                    and tuple(
                        sum((c * w[i] for c, w in zip(membership, verts)), ZERO)
                        for i in range(space.dim)
                    )
                    == point,
                    f"{label}: witness point is not certified inside the states",
                )
                union_pts = certain_face(space, f).vertices + impossible_face(
                    space, f
                ).vertices
                hull = affine_hull(union_pts)
                _check(
                    failures,
                    hull.contains(point),
                    f"{label}: witness point is outside the joined affine hull",
                )
                _check(
                    failures,
                    vec_dot(normal, point) > rhs
                    and all(vec_dot(normal, w) <= rhs for w in union_pts),
                    f"{label}: separator does not separate",
                )
            elif kind == "lp_infeasible":
                feasible_seen = False
                try:
                    lam_ineq = strings_to_vector(
                        outcome["farkas_ineq"], f"{label}.farkas_ineq"
                    )
                    lam_eq = strings_to_vector(
                        outcome["farkas_eq"], f"{label}.farkas_eq"
                    )
                except (KeyError, ModelFormatError) as exc:
                    failures.append(f"{label}: {exc}")
                    continue
                ineqs, eqs = transformation_constraints(space, f, fix_face=face)
                problem = LpProblem(space.dim * space.dim, None, ineqs, eqs)
                _check(
                    failures,
                    check_farkas(problem, lam_ineq, lam_eq),
                    f"{label}: farkas certificate does not validate",
                )
            else:
                failures.append(f"{label}: unknown outcome type {kind!r}")
        witness_count = sum(
            1
            for e in post.get("entries", ())
            if e.get("outcome", {}).get("type") == "witness"
        )
        _check(
            failures,
            post.get("all_feasible") == (witness_count == len(post.get("entries", ()))),
            "postulate.all_feasible: inconsistent with entries",
        )

    dist = doc.get("disturbance")
    if isinstance(dist, dict):
        try:
            norm = Norm(dist.get("norm"))
        except ValueError:
            failures.append(f"disturbance.norm: unknown norm {dist.get('norm')!r}")
            norm = None
        for k, entry in enumerate(dist.get("entries", ()) if norm else ()):
            label = f"disturbance.entries[{k}]"
            try:
                f = effects[entry["effect_index"]]
                t = _parse_matrix(entry["minimizer"], f"{label}.minimizer", space.dim)
                epsilon = parse_rational(entry["epsilon"])
            except (KeyError, IndexError, ValueError, ModelFormatError) as exc:
                failures.append(f"{label}: {exc}")
                continue
            _check(
                failures,
                _induced_effect(space, t) == f.functional,
                f"{label}: minimizer does not induce the effect",
            )
            _verify_positivity(
                failures,
                space,
                t,
                entry.get("minimizer_positivity"),
                f"{label}.minimizer_positivity",
            )
            face = certain_face(space, f)
            if face.is_empty:
                failures.append(f"{label}: effect has empty certain face")
                continue
            achieved = max(
                norm_value(norm, vec_sub(t.apply(w), w)) for w in face.vertices
            )
            _check(failures, achieved == epsilon, f"{label}: epsilon is not achieved")
            widx = entry.get("witness_state")
            _check(
                failures,
                isinstance(widx, int)
                and 0 <= widx < len(space.states.vertices)
                and space.states.vertices[widx] in face.vertices
                and norm_value(
                    norm, vec_sub(t.apply(space.states.vertices[widx]),
                                  space.states.vertices[widx])
                )
                == epsilon,
                f"{label}: witness state does not attain epsilon",
            )
            _check(
                failures,
                entry.get("epsilon_decimal") == decimal_string(epsilon),
                f"{label}: decimal annotation mismatch",
            )
    return failures
