"""Command-line interface.

Subcommands: classify | effects | postulate | disturbance | report |
verify-report | zoo.  Models are referenced by a JSON file path or by a zoo
name such as ``zoo:polygon:4``.

Exit codes (stable contract): 0 = success / postulate satisfiable everywhere
checked; 1 = an obstruction was found; 2 = input or internal error.

The environment variable GPTLAB_SEED (default 0) seeds the sampling oracle
used by ``disturbance --sample-check``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import __version__
from .disturbance import (
    Norm,
    check_image_dimension_bound,
    disturbance,
    min_disturbance,
    sample_transformations,
)
from .errors import GptlabError
from .geometry import dimension
from .kernel import rational_str
from .models import ZOO, zoo_reference
from .postulate import (
    DimensionMismatch,
    LpInfeasibleCertificate,
    ShapeMismatch,
    TransformationWitness,
    check_postulate,
)
from .report import GATE_DIM, build_report, verify_report
from .serialize import (
    decimal_string,
    dumps_canonical,
    load_model_file,
    model_to_dict,
    vector_to_strings,
)
from .statespace import (
    StateSpace,
    certain_face,
    classify,
    impossible_face,
    pure_effects,
)


def _load_model(ref: str) -> tuple[StateSpace, str | None]:
    if ref.startswith("zoo:"):
        return zoo_reference(ref), ref
    return load_model_file(ref)


def _emit(doc: Any) -> None:
    sys.stdout.write(dumps_canonical(doc))


def cmd_classify(args: argparse.Namespace) -> int:
    space, name = _load_model(args.model)
    verdict = classify(space).value
    if args.json:
        _emit({"model": name, "classification": verdict})
    else:
        print(verdict)
    return 0


def cmd_effects(args: argparse.Namespace) -> int:
    space, name = _load_model(args.model)
    rows = []
    for i, f in enumerate(pure_effects(space)):
        cf = certain_face(space, f)
        imf = impossible_face(space, f)
        rows.append(
            {
                "index": i,
                "functional": vector_to_strings(f.functional),
                "certain_vertices": [space.states.vertices.index(v) for v in cf.vertices],
                "impossible_vertices": [
                    space.states.vertices.index(v) for v in imf.vertices
                ],
                "dim_certain": dimension(cf),
                "dim_impossible": dimension(imf),
            }
        )
    if args.json:
        _emit({"model": name, "pure_effects": rows})
    else:
        print(f"{len(rows)} pure effects")
        for row in rows:
            print(
                f"[{row['index']:>2}] f = ({', '.join(row['functional'])})"
                f"  certain dim {row['dim_certain']}"
                f" {row['certain_vertices']}"
                f"  impossible dim {row['dim_impossible']}"
                f" {row['impossible_vertices']}"
            )
    return 0


def _outcome_summary(outcome: Any) -> str:
    if isinstance(outcome, TransformationWitness):
        return "witness"
    if isinstance(outcome, DimensionMismatch):
        return (
            f"dimension mismatch ({outcome.dim_certain} + {outcome.dim_impossible}"
            f" > {outcome.dim_states} - 1)"
        )
    if isinstance(outcome, ShapeMismatch):
        return f"shape mismatch (witness point {vector_to_strings(outcome.witness_point)})"
    assert isinstance(outcome, LpInfeasibleCertificate)
    return "infeasible (farkas certificate)"


def cmd_postulate(args: argparse.Namespace) -> int:
    space, name = _load_model(args.model)
    report = check_postulate(space, all_pure=args.all_pure)
    if args.json:
        entries = []
        for e in report.entries:
            entry: dict[str, Any] = {
                "effect": vector_to_strings(e.effect.functional),
                "outcome": _outcome_summary(e.outcome),
            }
            if isinstance(e.outcome, TransformationWitness):
                entry["matrix"] = [
                    vector_to_strings(r) for r in e.outcome.matrix.rows
                ]
            entries.append(entry)
        _emit(
            {
                "model": name,
                "mode": "all_pure" if args.all_pure else "facets",
                "all_feasible": report.all_feasible,
                "entries": entries,
            }
        )
    else:
        for e in report.entries:
            face_idx = [space.states.vertices.index(v) for v in e.face.vertices]
            print(
                f"face {face_idx}: effect ({', '.join(vector_to_strings(e.effect.functional))})"
                f" -> {_outcome_summary(e.outcome)}"
            )
        print("all feasible" if report.all_feasible else "obstruction found")
    return 0 if report.all_feasible else 1


def cmd_disturbance(args: argparse.Namespace) -> int:
    space, name = _load_model(args.model)
    norm = Norm(args.norm)
    effects = pure_effects(space)
    if args.all:
        targets = [e.effect for e in check_postulate(space).entries]
    else:
        if args.effect_index is None:
            raise GptlabError("pass --effect-index K or --all")
        if not 0 <= args.effect_index < len(effects):
            raise GptlabError(
                f"effect index {args.effect_index} out of range 0..{len(effects) - 1}"
            )
        targets = [effects[args.effect_index]]
    try:
        seed = int(os.environ.get("GPTLAB_SEED", "0"))
    except ValueError:
        raise GptlabError("GPTLAB_SEED must be an integer")
    rows = []
    for f in targets:
        result = min_disturbance(space, f, norm)
        row: dict[str, Any] = {
            "effect_index": effects.index(f),
            "norm": norm.value,
            "epsilon": rational_str(result.epsilon),
            "epsilon_decimal": decimal_string(result.epsilon),
        }
        if args.witness:
            row["minimizer"] = [vector_to_strings(r) for r in result.minimizer.rows]
            row["witness_state"] = space.states.vertices.index(result.witness_state)
        if args.sample_check:
            samples = sample_transformations(space, f, args.sample_check, seed=seed)
            bound_applicable = (
                space.dim > 1 and not impossible_face(space, f).is_empty
            )
            row["sample_check"] = {
                "samples": len(samples),
                "seed": seed,
                "image_dimension_bound_ok": (
                    all(check_image_dimension_bound(space, f, t) for t in samples)
                    if bound_applicable
                    else None
                ),
                "epsilon_lower_bounds_samples": all(
                    disturbance(space, f, t, norm) >= result.epsilon for t in samples
                ),
            }
        rows.append(row)
    if args.json:
        _emit({"model": name, "disturbance": rows})
    else:
        for row in rows:
            print(
                f"effect {row['effect_index']}: epsilon = {row['epsilon']}"
                f" (~{row['epsilon_decimal']}) [{row['norm']}]"
            )
            if args.witness:
                for matrix_row in row["minimizer"]:
                    print(f"  [{', '.join(matrix_row)}]")
                print(f"  attained at state {row['witness_state']}")
            if args.sample_check:
                check = row["sample_check"]
                dim_bound = check["image_dimension_bound_ok"]
                print(
                    f"  sample check (seed {check['seed']}, {check['samples']} samples):"
                    f" image-dimension bound"
                    f" {'n/a' if dim_bound is None else 'ok' if dim_bound else 'FAILED'},"
                    f" epsilon lower-bounds samples:"
                    f" {'ok' if check['epsilon_lower_bounds_samples'] else 'FAILED'}"
                )
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    space, name = _load_model(args.model)
    doc, timings = build_report(
        space,
        name,
        norm=Norm(args.norm),
        all_pure=args.all_pure,
        force=args.force,
    )
    payload = dumps_canonical(doc)
    if args.json and args.json != "-":
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.verbose:
        for stage, seconds in timings.items():
            print(f"timing {stage}: {seconds:.3f}s", file=sys.stderr)
    post = doc.get("postulate")
    if post is not None and not post["all_feasible"]:
        return 1
    return 0


def cmd_verify_report(args: argparse.Namespace) -> int:
    with open(args.report, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    failures = verify_report(doc)
    if failures:
        for failure in failures:
            print(f"FAIL {failure}")
        return 2
    print("report verified: every witness and certificate checks out")
    return 0


def cmd_zoo(args: argparse.Namespace) -> int:
    if args.name is None:
        for spec in ZOO.values():
            param = ":<n>" if spec.takes_param else ""
            print(f"zoo:{spec.name}{param}  {spec.description}")
        return 0
    ref = args.name if args.name.startswith("zoo:") else f"zoo:{args.name}"
    space = zoo_reference(ref)
    _emit(model_to_dict(space, ref))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gptlab",
        description=(
            "Exact analysis of polytopic state spaces: pure effects, "
            "face-fixing measurement transformations, and minimal disturbance."
        ),
    )
    parser.add_argument("--version", action="version", version=f"gptlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Classical or DiscreteNonClassical")
    p.add_argument("model", help="model file path or zoo:<name>[:<param>]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("effects", help="enumerate pure effects")
    p.add_argument("model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_effects)

    p = sub.add_parser(
        "postulate",
        help="witnesses or obstructions for face-fixing transformations",
    )
    p.add_argument("model")
    p.add_argument(
        "--all-pure",
        action="store_true",
        help="check every nonzero pure effect, not just facet effects",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_postulate)

    p = sub.add_parser("disturbance", help="exact minimal disturbance values")
    p.add_argument("model")
    p.add_argument("--norm", choices=["linf", "l1"], default="linf")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--effect-index", type=int)
    group.add_argument(
        "--all", action="store_true", help="every facet effect (the postulate scope)"
    )
    p.add_argument("--witness", action="store_true", help="include the minimizer matrix")
    p.add_argument(
        "--sample-check",
        type=int,
        default=0,
        metavar="N",
        help="sample N transformations (seed GPTLAB_SEED) and check bounds",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_disturbance)

    p = sub.add_parser("report", help="full machine-readable analysis report")
    p.add_argument("model")
    p.add_argument("--json", metavar="PATH", help="write JSON here ('-' for stdout)")
    p.add_argument("--norm", choices=["linf", "l1"], default="linf")
    p.add_argument("--all-pure", action="store_true")
    p.add_argument(
        "--force",
        action="store_true",
        help=f"run full analysis even above dimension {GATE_DIM}",
    )
    p.add_argument("--verbose", action="store_true", help="stage timings on stderr")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser(
        "verify-report", help="re-validate a report with exact arithmetic only"
    )
    p.add_argument("report")
    p.set_defaults(func=cmd_verify_report)

    p = sub.add_parser("zoo", help="list built-in models or print one as JSON")
    p.add_argument("name", nargs="?", help="e.g. polygon:5 (omit to list)")
    p.set_defaults(func=cmd_zoo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GptlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
