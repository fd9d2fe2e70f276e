"""Command-line front end: JSON in, JSON out, verification suites.

Exit codes: 0 success, 1 check failure, 2 malformed input, 3 obstruction.
Inputs are validated against the schemas shipped under cmcurve/schemas.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

import jsonschema

from . import approx, galois, serialize, shimura, verify
from .adele import reciprocity_matrix
from .errors import (
    CmcurveError,
    LevelObstruction,
    NormObstruction,
    PrecisionObstruction,
    RViolation,
    UnsupportedOrbit,
)
from .matrices import Mat2, ModMat
from .shimura import QuadPoint

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_OBSTRUCTED = 3

# audit table: which subcommand exposes each public operation
OPERATION_COVERAGE = {
    "factor": "verify",
    "squarefree_part": "verify",
    "jacobi": "verify",
    "sqrt_mod": "verify",
    "hilbert_symbol": "verify",
    "form_of": "point-eq",
    "reduce_form": "point-eq",
    "automorphs": "point-eq",
    "reduced_forms": "verify",
    "cornacchia": "verify",
    "solve_form_rational": "verify",
    "reduce_level": "fixed",
    "mul": "act",
    "shape_test": "fixed",
    "reciprocity_matrix": "orbit",
    "in_gamma_tilde": "verify",
    "conj_by_dlambda": "verify",
    "point_eq": "point-eq",
    "act_unit": "act",
    "act_rational": "act",
    "component": "act",
    "is_fixed": "fixed",
    "is_cm": "orbit",
    "orbit_rep": "orbit",
    "same_orbit": "orbit",
    "project": "act",
    "shadow_mul": "verify",
    "shadow_act": "act",
    "shadow_eq": "lift",
    "equalize_dets": "verify",
    "surjective_common_det": "verify",
    "branch_map": "lift",
    "component_action": "lift",
    "independent": "verify",
    "stable_saturation": "verify",
    "minimal_subtorus_check": "verify",
    "goursat": "verify",
    "approx_eq": "relation",
    "canonical_rep": "relation",
    "curve_component": "verify",
    "eval_curve": "verify",
    "relation_R": "relation",
    "faithfulness_check": "verify",
    "lift_automorphism": "lift",
}


def _load_schema(name: str):
    text = resources.files("cmcurve.schemas").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def _read_input(path, schema_name):
    try:
        if path and path != "-":
            with open(path) as fh:
                data = json.load(fh)
        else:
            data = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        raise _BadInput(f"cannot read JSON input: {exc}") from exc
    try:
        jsonschema.validate(data, _load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise _BadInput(f"input does not match schema {schema_name}: {exc.message}") from exc
    return data


class _BadInput(Exception):
    pass


def _emit(obj, path):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tau_from_json(obj) -> QuadPoint:
    return QuadPoint(
        obj["m"], serialize.frac_from_json(obj["p"]), serialize.frac_from_json(obj["q"])
    )


# -- subcommand handlers -------------------------------------------------------


def cmd_point_eq(args):
    data = _read_input(args.infile, "point_eq")
    p1 = serialize.point_from_json(data["p1"])
    p2 = serialize.point_from_json(data["p2"])
    witness = shimura.point_eq_witness(p1, p2)
    out = {"equal": witness is not None, "witness": None}
    if witness is not None:
        out["witness"] = {
            "q": serialize.mat2_to_json(witness.q),
            "integral": serialize.intmat_to_json(witness.integral),
            "level": witness.level,
        }
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_orbit(args):
    data = _read_input(args.infile, "orbit")
    tau = _tau_from_json(data["tau"])
    n, r = shimura.orbit_rep(tau)
    out = {
        "n": n,
        "r": serialize.mat2_to_json(r),
        "cm": True,
        "norm_matrix_det": serialize.frac_to_json(
            reciprocity_matrix(tau.p, tau.q, tau.m).det()
        ),
    }
    if "other" in data:
        out["same_orbit"] = shimura.same_orbit(tau, _tau_from_json(data["other"]))
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_fixed(args):
    data = _read_input(args.infile, "fixed")
    P = serialize.point_from_json(data["point"])
    g = ModMat(*data["g"], P.level)
    out = {
        "fixed": shimura.is_fixed(g, P),
        "coordinate_mod_level": serialize.modmat_to_json(P.full_matrix()),
    }
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_act(args):
    data = _read_input(args.infile, "act")
    P = serialize.point_from_json(data["point"])
    if "unit" in data:
        P = shimura.act_unit(ModMat(*data["unit"], P.level), P)
    if "rational" in data:
        P = shimura.act_rational(Mat2(*data["rational"]), P)
    if "shadow" in data:
        sigma = serialize.shadow_from_json(data["shadow"])
        P = galois.shadow_act(sigma, P)
    if "project" in data:
        P = shimura.project(P, data["project"])
    canonical = bool(data.get("canonicalize"))
    if canonical:
        P = approx.canonical_rep(approx.ApproxPoint(P))
    out = {
        "point": serialize.point_to_json(P, canonical=canonical),
        "component": shimura.component(P).mu,
    }
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_relation(args):
    data = _read_input(args.infile, "relation")
    pts = [
        approx.ApproxPoint(serialize.point_from_json(data[k]))
        for k in ("s1", "s2", "t1", "t2")
    ]
    witness = approx.relation_witness(*pts)
    out = {"holds": witness is not None}
    if witness is not None:
        out.update(
            {
                "lambda": witness.lam,
                "branch": witness.branch,
                "r1": serialize.modmat_to_json(witness.r1),
                "r2": serialize.modmat_to_json(witness.r2),
            }
        )
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_lift(args):
    data = _read_input(args.infile, "lift")
    table = [
        (
            approx.ApproxPoint(serialize.point_from_json(row["s"])),
            approx.ApproxPoint(serialize.point_from_json(row["t"])),
        )
        for row in data["table"]
    ]
    try:
        sigma = approx.lift_automorphism(table)
    except RViolation as exc:
        _emit({"lifted": False, "violating_row": exc.index}, args.outfile)
        return EXIT_CHECK_FAILED
    out = {
        "lifted": True,
        "shadow": serialize.shadow_to_json(sigma),
        "branch": galois.branch_map(sigma),
        "component_action": galois.component_action(sigma),
    }
    _emit(out, args.outfile)
    return EXIT_OK


def cmd_verify(args):
    cfg = verify.SuiteConfig(
        level=args.level,
        support=args.support,
        seed=args.seed,
        count=args.count,
        strict_good_level=args.strict_good_level,
        out=args.outfile,
    )
    report = verify.run_suite(args.suite, cfg)
    _emit(report.to_json(), args.outfile)
    status = report.status()
    for check in report.checks:
        line = f"{check.status.upper():10s} {report.suite}:{check.name} ({check.seconds:.2f}s)"
        print(line, file=sys.stderr)
    if status == "fail":
        return EXIT_CHECK_FAILED
    if status == "obstructed":
        return EXIT_OBSTRUCTED
    return EXIT_OK


def _support_arg(text):
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("support must be comma-separated integers") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmcurve",
        description="Exact finite-level model of the modular-curve tower: "
        "CM points, quadratic forms, and the Galois shadow action.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--in", dest="infile", default="-", help="input JSON file (default stdin)")
        p.add_argument("--out", dest="outfile", default="-", help="output JSON file (default stdout)")

    for name, handler, helptext in (
        ("point-eq", cmd_point_eq, "decide equality of two level points"),
        ("orbit", cmd_orbit, "orbit data of a quadratic point"),
        ("fixed", cmd_fixed, "fixed-point test for a level matrix"),
        ("act", cmd_act, "apply unit/rational/shadow actions and projections"),
        ("relation", cmd_relation, "the four-point relation on CM classes"),
        ("lift", cmd_lift, "lift a mapping table to a shadow"),
    ):
        p = sub.add_parser(name, help=helptext)
        add_io(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verify.suite_names())
    p.add_argument("--level", type=int, default=5)
    p.add_argument("--support", type=_support_arg, default=(1, 2))
    p.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("CMCURVE_SEED", "0")),
        help="random seed (falls back to CMCURVE_SEED)",
    )
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--strict-good-level", action="store_true")
    p.add_argument("--out", dest="outfile", default="-")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (PrecisionObstruction, LevelObstruction, NormObstruction, UnsupportedOrbit) as exc:
        print(f"obstruction: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTED
    except (ValueError, CmcurveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
