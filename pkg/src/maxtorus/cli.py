"""Command-line entry point.

Exit codes: 0 = the queried property holds, 1 = it decidably fails,
2 = input or usage error.  All JSON output uses sorted keys so default-seed
runs are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import instances, normality, serialize, tkform
from .fans import (
    Fan,
    cone_is_regular,
    cone_is_simplicial,
    cone_is_strictly_convex,
    fan_is_complete,
    fan_is_simplicial,
    fan_validate,
)
from .quotient import (
    ComplexSubspace,
    SymbolicSubspace,
    canonical_foliation,
    cox_batyrev_lift,
    divisor_hypotheses,
    fan_from_complex,
    projection_p,
    validate_construction_I,
    validate_construction_II,
)
from .rationals import format_rational, parse_rational
from .seeds import default_seed
from .serialize import SchemaError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(args, payload: dict, text_lines: List[str]):
    if args.format == "json":
        sys.stdout.write(serialize.dump_json(payload))
    else:
        for line in text_lines:
            print(line)


def _failure_payload(failures) -> List[dict]:
    return [
        {"code": f.code, "condition": f.condition_name, "detail": _plain(f.detail)}
        for f in failures
    ]


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_rational(obj)
    return obj


def cmd_validate_fan(args) -> int:
    fan = serialize.fan_from_json(serialize.load_json(args.fan))
    report = fan_validate(fan)
    cones = []
    for cone in fan.max_cones:
        gens = fan.cone_generators(cone)
        cones.append(
            {
                "cone": list(cone),
                "strictly_convex": cone_is_strictly_convex(gens),
                "simplicial": cone_is_simplicial(gens),
                "regular": cone_is_regular(gens),
            }
        )
    complete = None
    if report.valid and fan_is_simplicial(fan):
        complete = fan_is_complete(fan, seed=args.seed)
    payload = {
        "valid": report.valid,
        "violations": _plain(list(report.violations)),
        "cones": cones,
        "complete": complete,
    }
    lines = [f"valid: {report.valid}", f"complete: {complete}"]
    lines += [f"  violation: {v}" for v in report.violations]
    _emit(args, payload, lines)
    return EXIT_OK if report.valid else EXIT_FAIL


def _load_subspace(path):
    return serialize.subspace_from_json(serialize.load_json(path))


def cmd_validate(args) -> int:
    h = _load_subspace(args.subspace)
    if isinstance(h, SymbolicSubspace):
        raise SchemaError("validation requires a Gaussian-rational subspace")
    if args.construction == "II":
        fan = serialize.fan_from_json(serialize.load_json(args.structure))
        report = validate_construction_II(fan, h)
    else:
        k = serialize.complex_from_json(serialize.load_json(args.structure))
        report = validate_construction_I(k, h)
    payload = {"construction": report.construction, "ok": report.ok}
    lines = [f"construction {report.construction}: {'valid' if report.ok else 'invalid'}"]
    if report.ok:
        d = report.descriptor
        payload["descriptor"] = {
            "dim_C_M": d.dim_C_M,
            "dim_T": d.dim_T,
            "max_stabilizer_dim": d.max_stabilizer_dim,
            "foliation_dim": d.foliation_dim,
            "ineffectivity_dim": d.ineffectivity_dim,
        }
        lines.append(
            f"dim_C M = {d.dim_C_M}, dim T = {d.dim_T}, "
            f"max stabilizer dim = {d.max_stabilizer_dim}, foliation dim = {d.foliation_dim}"
        )
    else:
        payload["failures"] = _failure_payload(report.failures)
        lines += [f"  {f.code}: {f.condition_name}" for f in report.failures]
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_normality(args) -> int:
    fan = serialize.fan_from_json(serialize.load_json(args.fan))
    if not fan_validate(fan).valid or not fan_is_simplicial(fan) or not fan_is_complete(fan, seed=args.seed):
        print("error: normality is defined for complete fans only", file=sys.stderr)
        return EXIT_USAGE
    decide = normality.decide_weakly_normal if args.weak else normality.decide_normal
    cert = decide(fan, seed=args.seed)
    mode = "weakly normal" if args.weak else "normal"
    if cert is None:
        _emit(args, {"mode": mode, "result": f"not {mode}"}, [f"not {mode}"])
        return EXIT_FAIL
    payload = {"mode": mode, "certificate": serialize.certificate_to_json(cert)}
    lines = [f"{mode}: certificate found", f"b = {[format_rational(x) for x in cert.b]}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_vertices(args) -> int:
    fan = serialize.fan_from_json(serialize.load_json(args.fan))
    try:
        b = [parse_rational(s) for s in args.b.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad support numbers: {exc}") from None
    vertices = normality.fan_vertices(fan, b)
    payload = {
        "vertices": {
            ",".join(str(i) for i in cone): [format_rational(x) for x in u]
            for cone, u in sorted(vertices.items())
        }
    }
    lines = [
        f"{list(cone)} -> ({', '.join(format_rational(x) for x in u)})"
        for cone, u in sorted(vertices.items())
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_lift(args) -> int:
    fan = serialize.fan_from_json(serialize.load_json(args.fan))
    h = _load_subspace(args.subspace)
    if isinstance(h, SymbolicSubspace):
        raise SchemaError("lift requires a Gaussian-rational subspace")
    report = validate_construction_II(fan, h)
    if not report.ok:
        payload = {"ok": False, "failures": _failure_payload(report.failures)}
        _emit(args, payload, ["input data invalid:"] + [f"  {f.code}" for f in report.failures])
        return EXIT_FAIL
    result = cox_batyrev_lift(fan, h)
    payload = {
        "ok": True,
        "complex": serialize.complex_to_json(result.complex_),
        "subspace": serialize.subspace_to_json(result.subspace),
        "ghosts": result.ghosts,
        "invariant_factors": list(result.invariant_factors),
    }
    lines = [
        f"ghost vertices: {result.ghosts}",
        f"component group invariant factors: {list(result.invariant_factors) or 'trivial'}",
        f"lifted subspace dimension: {result.subspace.dim}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_foliation(args) -> int:
    h = _load_subspace(args.subspace)
    if isinstance(h, SymbolicSubspace):
        raise SchemaError("foliation data requires a Gaussian-rational subspace")
    fan = None
    if args.fan:
        fan = serialize.fan_from_json(serialize.load_json(args.fan))
    try:
        data = canonical_foliation(h, fan)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "leaf_dim": data.leaf_dim,
        "intersection_dim": data.intersection_dim,
        "discrete": data.discrete,
        "conjugate_basis": [[serialize.gauss_to_json(x) for x in v] for v in data.conjugate_basis],
    }
    lines = [
        f"leaf complex dimension: {data.leaf_dim}",
        f"dim h ^ conj(h): {data.intersection_dim}",
        f"discrete intersection: {data.discrete}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_divisor_hypotheses(args) -> int:
    k = serialize.complex_from_json(serialize.load_json(args.complex))
    h = _load_subspace(args.subspace)
    result = divisor_hypotheses(k, h)
    lines = [f"{key}: {val}" for key, val in sorted(result.items())]
    _emit(args, dict(result), lines)
    return EXIT_OK if all(result.values()) else EXIT_FAIL


def cmd_tk_check(args) -> int:
    fan = serialize.fan_from_json(serialize.load_json(args.fan))
    h = _load_subspace(args.subspace)
    if isinstance(h, SymbolicSubspace):
        raise SchemaError("tk-check requires a Gaussian-rational subspace")
    from .quotient import check_condition_b

    ok_b, failures, projected, _ = check_condition_b(fan, h)
    if not ok_b:
        payload = {"ok": False, "failures": _failure_payload(failures)}
        _emit(args, payload, ["condition (b) fails"])
        return EXIT_FAIL
    if args.certificate:
        cert = serialize.certificate_from_json(serialize.load_json(args.certificate))
        b = list(cert.b)
        ok, violations = normality.check_certificate(projected, b, normality.WEAKLY_NORMAL, seed=args.seed)
        if not ok:
            payload = {"ok": False, "reason": "certificate rejected", "violations": _plain(violations)}
            _emit(args, payload, ["certificate rejected"])
            return EXIT_FAIL
    else:
        cert = normality.decide_weakly_normal(projected, seed=args.seed)
        if cert is None:
            payload = {"ok": False, "reason": "projected fan is not weakly normal"}
            _emit(args, payload, ["projected fan is not weakly normal"])
            return EXIT_FAIL
        b = list(cert.b)
    import numpy as np

    p_h = projection_p(h)
    tol = tkform.Tolerances()
    rng = np.random.default_rng(args.seed)
    pointwise = []
    all_pass = True
    charts = list(fan.max_cones)
    data0 = tkform.build_tk_data(fan, h, b, charts[0])
    for _ in range(args.points):
        # moderate box: keeps the exponential weights away from underflow,
        # where eigenvectors of the (everywhere PSD) Hessian lose accuracy
        y = rng.uniform(-0.5, 0.5, size=fan.dim)
        report = tkform.kernel_check(data0, y, p_h, tol)
        pointwise.append(
            {
                "kernel_dim": int(report.kernel_basis.shape[1]),
                "max_angle": float(report.principal_angles.max()) if len(report.principal_angles) else 0.0,
                "psd": report.psd,
                "fd_error": report.fd_error,
                "passed": report.passed,
            }
        )
        all_pass = all_pass and report.passed
    max_cocycle = 0.0
    for i in range(len(charts)):
        for j in range(i + 1, len(charts)):
            dev = tkform.cocycle_check(fan, h, b, charts[i], charts[j], samples=args.points, seed=args.seed)
            max_cocycle = max(max_cocycle, dev)
    cocycle_ok = max_cocycle < tol.cocycle
    all_pass = all_pass and cocycle_ok
    summary = {
        "psd": all(p["psd"] for p in pointwise),
        "kernel_dim": pointwise[0]["kernel_dim"] if pointwise else None,
        "max_angle": max((p["max_angle"] for p in pointwise), default=0.0),
        "max_cocycle_dev": max_cocycle,
        "fd_error": max((p["fd_error"] for p in pointwise), default=0.0),
    }
    payload = {"ok": all_pass, "pointwise": pointwise, "summary": summary}
    lines = [
        f"kernel dimension: {summary['kernel_dim']} (expected {len(p_h)})",
        f"max principal angle: {summary['max_angle']:.3e}",
        f"max cocycle deviation: {summary['max_cocycle_dev']:.3e}",
        f"max FD relative error: {summary['fd_error']:.3e}",
        f"all checks passed: {all_pass}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if all_pass else EXIT_FAIL


EXAMPLES = {
    "hopf": lambda: {
        "hopf_fan.json": serialize.fan_to_json(instances.hopf_fan()),
        "hopf_h.json": serialize.subspace_to_json(instances.hopf_subspace()),
        "hopf_complex.json": serialize.complex_to_json(instances.hopf_complex()),
    },
    "fulton7": lambda: {"fulton7.json": serialize.fan_to_json(instances.fulton7_fan())},
    "cp2": lambda: {"cp2.json": serialize.fan_to_json(instances.cp2_fan())},
    "cp1xcp1": lambda: {"cp1xcp1.json": serialize.fan_to_json(instances.cp1xcp1_fan())},
    "moment-angle-cube": lambda: {
        "moment_angle_cube_complex.json": serialize.complex_to_json(
            instances.moment_angle_cube_complex()
        ),
        "moment_angle_cube_h.json": serialize.subspace_to_json(
            instances.moment_angle_cube_subspace()
        ),
    },
}


def cmd_example(args) -> int:
    if args.name not in EXAMPLES:
        print(
            f"error: unknown example {args.name!r}; choices: {', '.join(sorted(EXAMPLES))}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    os.makedirs(args.dir, exist_ok=True)
    written = []
    for filename, payload in sorted(EXAMPLES[args.name]().items()):
        path = os.path.join(args.dir, filename)
        serialize.dump_json(payload, path)
        written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxtorus",
        description="Validators and numerics for torus-quotient manifold data.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-fan", help="check the fan axioms and completeness")
    p.add_argument("fan")
    p.set_defaults(func=cmd_validate_fan)

    p = sub.add_parser("validate", help="validate quotient-construction data")
    p.add_argument("construction", choices=("I", "II"))
    p.add_argument("structure", help="simplicial complex (I) or fan (II) JSON")
    p.add_argument("subspace")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normality", help="decide (weak) normality of a complete fan")
    p.add_argument("fan")
    p.add_argument("--weak", action="store_true")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("vertices", help="support-polytope vertices for given b")
    p.add_argument("fan")
    p.add_argument("b", help="comma-separated rational support numbers")
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("lift", help="present fan data via the simplicial-complex construction")
    p.add_argument("fan")
    p.add_argument("subspace")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("foliation", help="canonical foliation data of a subspace")
    p.add_argument("subspace")
    p.add_argument("--fan", default=None)
    p.set_defaults(func=cmd_foliation)

    p = sub.add_parser("divisor-hypotheses", help="check the divisor-theorem hypotheses")
    p.add_argument("complex")
    p.add_argument("subspace")
    p.set_defaults(func=cmd_divisor_hypotheses)

    p = sub.add_parser("tk-check", help="numerical transverse-Kähler checks")
    p.add_argument("fan")
    p.add_argument("subspace")
    p.add_argument("--certificate", default=None)
    p.add_argument("--points", type=int, default=20)
    p.set_defaults(func=cmd_tk_check)

    p = sub.add_parser("example", help="write a bundled example instance")
    p.add_argument("name")
    p.add_argument("--dir", default=".")
    p.set_defaults(func=cmd_example)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
