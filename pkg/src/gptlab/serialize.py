"""Model file format and rational string encoding.

Rationals serialize as "p/q" (or "p" for integers) with the sign on the
numerator only; floating point is never read or written.  Model files are
JSON with a mandatory schema_version; unknown versions are rejected and
validation errors name the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import GptlabError, ModelFormatError
from .kernel import Vector, parse_rational, rational_str
from .statespace import StateSpace, build

SCHEMA_VERSION = 1


def vector_to_strings(v: Vector) -> list[str]:
    return [rational_str(x) for x in v]


def strings_to_vector(items: Any, field: str) -> Vector:
    if not isinstance(items, list):
        raise ModelFormatError(f"{field}: expected a list of rational strings")
    out = []
    for pos, item in enumerate(items):
        if not isinstance(item, str):
            raise ModelFormatError(f"{field}[{pos}]: rationals must be strings")
        try:
            out.append(parse_rational(item))
        except ValueError as exc:
            raise ModelFormatError(f"{field}[{pos}]: {exc}") from exc
    return tuple(out)


def decimal_string(q: Fraction, places: int = 6) -> str:
    """Exact round-half-even decimal rendering; annotation only, never input."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    scale = 10**places
    whole, rem = divmod(q.numerator * scale, q.denominator)
    double = 2 * rem
    if double > q.denominator or (double == q.denominator and whole % 2 == 1):
        whole += 1
    digits = str(whole).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def model_to_dict(
    space: StateSpace, name: str | None = None, description: str | None = None
) -> dict[str, Any]:
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if name is not None:
        doc["name"] = name
    if description is not None:
        doc["description"] = description
    doc["dim_A"] = space.dim
    doc["unit_effect"] = vector_to_strings(space.unit_effect)
    doc["vertices"] = [vector_to_strings(v) for v in space.states.vertices]
    return doc


def model_from_dict(doc: Any) -> tuple[StateSpace, str | None]:
    if not isinstance(doc, dict):
        raise ModelFormatError("model: top level must be a JSON object")
    if "schema_version" not in doc:
        raise ModelFormatError("schema_version: missing (required field)")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ModelFormatError(
            f"schema_version: unknown version {doc['schema_version']!r}; "
            f"expected {SCHEMA_VERSION}"
        )
    if "dim_A" not in doc or not isinstance(doc["dim_A"], int):
        raise ModelFormatError("dim_A: missing or not an integer")
    dim = doc["dim_A"]
    if "unit_effect" not in doc:
        raise ModelFormatError("unit_effect: missing")
    unit = strings_to_vector(doc["unit_effect"], "unit_effect")
    if len(unit) != dim:
        raise ModelFormatError(f"unit_effect: expected {dim} entries, got {len(unit)}")
    if "vertices" not in doc or not isinstance(doc["vertices"], list):
        raise ModelFormatError("vertices: missing or not a list")
    vertices = []
    for pos, row in enumerate(doc["vertices"]):
        v = strings_to_vector(row, f"vertices[{pos}]")
        if len(v) != dim:
            raise ModelFormatError(
                f"vertices[{pos}]: expected {dim} entries, got {len(v)}"
            )
        vertices.append(v)
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ModelFormatError("name: must be a string")
    try:
        space = build(dim, unit, vertices)
    except GptlabError as exc:
        raise ModelFormatError(f"vertices: {exc}") from exc
    return space, name


def dumps_canonical(doc: Any) -> str:
    """Deterministic JSON encoding: fixed key order, two-space indent."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_model_file(path: str) -> tuple[StateSpace, str | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file: invalid JSON ({exc})") from exc
    return model_from_dict(doc)
