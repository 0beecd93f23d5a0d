"""Batch command line front end.

Subcommands: alexander | truncate | decompose | arrangement | milnor | check.
Exit codes: 0 success, 2 input/validation error, 3 computation cap exceeded.
Output is deterministic: JSON with sorted keys (schema field 1) or a flat
text rendering; identical inputs produce byte-identical output.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import linalg, truncmod
from .arrangement import (LineArrangement, generic_arrangement_lines, milnor_report,
                          pencil_arrangement, spectrum_identities, triangle)
from .chain import FreeChainComplex, quotient_of_homology
from .deck import eigenspace_decomposition
from .errors import AlexmodError, CapExceeded, ValidationError
from .fox import Presentation, builtin, presentation_complex
from .laurent import SubgroupSpec


def _emit(obj, args):
    text = _render(obj, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _render(obj, fmt):
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val, key=str):
                walk(f"{prefix}.{k}" if prefix else str(k), val[k])
        elif isinstance(val, list):
            lines.append(f"{prefix} = {json.dumps(val)}")
        else:
            lines.append(f"{prefix} = {val}")

    walk("", obj)
    return "\n".join(lines) + "\n"


def _parse_subgroup(text, g):
    if text is None:
        return SubgroupSpec.full(g)
    rows = []
    for chunk in text.split(";"):
        rows.append([int(x) for x in chunk.split(",")])
    if len(rows) == 1 and len(rows[0]) == 1 and g == 1:
        return SubgroupSpec([[rows[0][0]]])
    if len(rows) != g or any(len(r) != g for r in rows):
        raise ValidationError(f"subgroup matrix must be {g}x{g}")
    return SubgroupSpec(rows)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read JSON input {path}: {exc}") from exc


def _presentation_from_args(args):
    if args.preset:
        name = args.preset
        if name == "trefoil":
            return builtin("trefoil")
        if name.startswith("pencil"):
            return builtin("pencil", int(name[len("pencil"):]))
        if name.startswith("generic"):
            return builtin("generic_arrangement", int(name[len("generic"):]))
        raise ValidationError(f"unknown preset {name!r}")
    if args.input:
        return Presentation.from_obj(_load_json(args.input))
    raise ValidationError("need --preset or --input")


def _arrangement_from_args(args):
    if args.preset:
        name = args.preset
        if name == "triangle":
            return triangle()
        if name.startswith("pencil"):
            return pencil_arrangement(int(name[len("pencil"):]))
        if name.startswith("generic"):
            return generic_arrangement_lines(int(name[len("generic"):]))
        raise ValidationError(f"unknown preset {name!r}")
    if args.input:
        return LineArrangement.from_obj(_load_json(args.input))
    raise ValidationError("need --preset or --input")


def _cancel_token(args):
    if not getattr(args, "timeout", None):
        return None
    deadline = time.monotonic() + args.timeout
    return lambda: time.monotonic() > deadline


def cmd_alexander(args):
    if args.complex:
        complex_ = FreeChainComplex.from_obj(_load_json(args.complex))
    else:
        pres = _presentation_from_args(args)
        complex_ = presentation_complex(pres)
    g = complex_.nvars
    subgroup = _parse_subgroup(args.subgroup, g)
    cancel = _cancel_token(args)
    space = quotient_of_homology(complex_, args.j, subgroup, args.m, cancel=cancel)
    out = {
        "schema": 1,
        "command": "alexander",
        "degree": args.j,
        "m": args.m,
        "subgroup": subgroup.to_obj(),
        "dim": space.dim,
        "deck_actions": [linalg.mat_to_json(a) for a in space.deck_actions],
    }
    if space.dim:
        hint = subgroup.exponent()
        eig = eigenspace_decomposition(space.deck_actions, [hint] * g)
        out["eigen"] = eig.to_obj()
    return _emit(out, args)


def cmd_truncate(args):
    gamma = [int(x) for x in args.gamma.split(",")] if args.gamma else [1] * args.g
    if len(gamma) != args.g:
        raise ValidationError("deck exponent arity mismatch")
    module = truncmod.trunc_module(args.g, args.m, args.variant)
    out = {
        "schema": 1,
        "command": "truncate",
        "g": args.g,
        "m": args.m,
        "variant": args.variant,
        "basis": [list(a) for a in module.basis],
        "rm_action": linalg.mat_to_json(truncmod.rm_action(gamma, module)),
        "iso_rmodm_to_rm": linalg.mat_to_json(truncmod.iso_rmodm_to_rm(args.g, args.m)),
        "log_operator": linalg.mat_to_json(truncmod.log_operator(gamma, module)),
    }
    return _emit(out, args)


def cmd_decompose(args):
    data = _load_json(args.input)
    try:
        operators = [linalg.mat_from_json(mat) for mat in data["operators"]]
        hints = data.get("hints")
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad operator file: {exc}") from exc
    eig = eigenspace_decomposition(operators, hints)
    out = {"schema": 1, "command": "decompose"}
    out.update(eig.to_obj())
    return _emit(out, args)


def cmd_arrangement(args):
    arr = _arrangement_from_args(args)
    m, points, essential = arr.combinatorics()
    b0, b1, b2 = arr.moebius_poincare()
    _, _, chi = arr.betti_chi()
    out = {
        "schema": 1,
        "command": "arrangement",
        "m": m,
        "essential": essential,
        "points": [{"mult": mult, "lines": list(mem)} for mult, mem in points],
        "betti": [b0, b1, b2],
        "chi": chi,
        "N": arr.milnor_n(),
    }
    rank, qdim = arr.h2_report()
    out["h2_free_rank"] = rank
    out["h2_quotient_dim"] = qdim
    return _emit(out, args)


def cmd_milnor(args):
    arr = _arrangement_from_args(args)
    pres = None
    if args.presentation:
        pres = Presentation.from_obj(_load_json(args.presentation))
    elif args.presentation_preset:
        name = args.presentation_preset
        if name == "trefoil":
            pres = builtin("trefoil")
        elif name.startswith("pencil"):
            pres = builtin("pencil", int(name[len("pencil"):]))
        elif name.startswith("generic"):
            pres = builtin("generic_arrangement", int(name[len("generic"):]))
        else:
            raise ValidationError(f"unknown presentation preset {name!r}")
    if args.require_homology and pres is None:
        raise ValidationError("milnor fiber numbers need a presentation (see --presentation)")
    report = milnor_report(arr, pres)
    out = report.to_obj()
    out["command"] = "milnor"
    return _emit(out, args)


def cmd_check(args):
    data = _load_json(args.input)
    try:
        if "arrangement" in data:
            arr = LineArrangement.from_obj(data["arrangement"])
            m, _, chi = arr.betti_chi()
            n = arr.milnor_n()
        else:
            n, chi, m = int(data["N"]), int(data["chi"]), int(data["m"])
        n_values = {Fraction(k): int(v) for k, v in data.get("n", {}).items()}
        tors = {int(l): int(v) for l, v in data.get("tors", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad spectrum input: {exc}") from exc
    report = spectrum_identities(n, chi, m, n_values, tors)
    out = {"schema": 1, "command": "check", "N": n, "chi": chi, "m": m}
    out.update(report.to_obj())
    return _emit(out, args)


def build_parser():
    parser = argparse.ArgumentParser(prog="alexmod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--timeout", type=float, help="cooperative cancellation, seconds")

    p = sub.add_parser("alexander", help="homology quotient dims and deck actions")
    p.add_argument("--preset")
    p.add_argument("--input", help="presentation JSON file")
    p.add_argument("--complex", help="chain complex JSON file")
    p.add_argument("--subgroup", help="integer (g=1) or matrix rows 'a,b;c,d'")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("truncate", help="R_m matrices: action, iso, log")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--gamma", help="deck exponents 'a1,a2,...'")
    p.add_argument("--variant", choices=[truncmod.R_VARIANT, truncmod.DUAL_VARIANT],
                   default=truncmod.R_VARIANT)
    common(p)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("decompose", help="joint eigenspace decomposition")
    p.add_argument("--input", required=True, help="JSON {operators: [...], hints: [...]}")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("arrangement", help="arrangement combinatorics report")
    p.add_argument("--preset")
    p.add_argument("--input")
    common(p)
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("milnor", help="Milnor fiber dimension report")
    p.add_argument("--preset")
    p.add_argument("--input")
    p.add_argument("--presentation", help="presentation JSON for the homology side")
    p.add_argument("--presentation-preset", dest="presentation_preset")
    p.add_argument("--require-homology", action="store_true", dest="require_homology")
    common(p)
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("check", help="spectrum consistency arithmetic")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (AlexmodError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
