"""Command-line entry point: depth queries, solvers, generators and cross-checks.

Reports are deterministic JSON (sorted keys, exact rationals as strings);
timing is opt-in via --timing so that identical seeds give byte-identical
output. Exit codes: 0 success, 1 input/usage error, 2 verification failure,
3 exhausted budget or precision ceiling.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import axioms as axioms_mod
from . import depth as depth_mod
from . import enclosing as enclosing_mod
from . import planar as planar_mod
from . import transversal as transversal_mod
from . import tverberg as tverberg_mod
from .errors import (
    ArrDepthError,
    ExactBudgetExceeded,
    PrecisionExceeded,
    SolverBudgetExceeded,
)
from .geometry import dump_json, evaluate, frac, frac_str, generate_instance, load_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path):
    with open(path) as fh:
        return load_json(fh.read())


def _parse_point(text):
    return tuple(frac(part) for part in text.split(","))


def _rat(x):
    return frac_str(Fraction(x))


def _point_out(p):
    return [_rat(c) for c in p]


def _default_seed():
    return int(os.environ.get("ARRDEPTH_SEED", "0"))


def build_parser():
    p = _Parser(prog="arrdepth", description="Exact depth measures for hyperplane arrangements.")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    p.add_argument("--threads", type=int, default=1,
                   help="worker budget for parallel-safe evaluations; results are identical for any value")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("depth", help="depth of a query point")
    sp.add_argument("--measure", choices=["rd", "rd-open", "trd"], default="rd")
    sp.add_argument("--query", required=True)
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("deepest", help="a point of maximum regression depth")
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("htvd", help="hyperplane Tverberg depth of a query point")
    sp.add_argument("--query", required=True)
    sp.add_argument("--exact-threshold", type=int, default=12)
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("hed", help="hyperplane enclosing depth of a query point")
    sp.add_argument("--query", required=True)
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--exact-threshold", type=int, default=12)
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("hed-verify", help="verify a k-enclosure certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("tverberg", help="solve for a Tverberg partition")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--restarts", type=int, default=16)
    sp.add_argument("--max-steps", type=int, default=10**4)
    sp.add_argument("file")
    sp.add_argument("--out")

    sp = sub.add_parser("depthmap", help="SVG depth map of a planar arrangement")
    sp.add_argument("--measure", choices=["rd", "rd-open", "trd"], default="rd")
    sp.add_argument("--out", required=True)
    sp.add_argument("--deepest", action="store_true", help="mark a deepest point")
    sp.add_argument("file")

    sp = sub.add_parser("transversal", help="planar center transversal of two arrangements")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--out")

    sp = sub.add_parser("oracle", help="cross-check the engine against the direction oracle")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--samples", type=int, default=16)
    sp.add_argument("--out")

    sp = sub.add_parser("gen", help="generate a seeded instance")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--profile", choices=["generic", "weighted"], default="generic")
    sp.add_argument("--out")

    sp = sub.add_parser("axioms", help="run the axiom suite for a measure")
    sp.add_argument("--kind", choices=["rd", "rd-open", "trd", "htvd", "hed"], required=True)
    sp.add_argument("--query", required=True)
    sp.add_argument("--trials", type=int, default=6)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("file")
    sp.add_argument("--out")

    return p


def cross_check(arr, q):
    """Evaluate every measure and its dual companion, asserting the identities
    and inequalities that relate them; returns per-check pass/fail entries."""
    from .depth import dual_tukey_depth, open_regression_depth, regression_depth, truncated_regression_depth
    from .enclosing import hyperplane_enclosing_depth, point_enclosing_depth
    from .tverberg import hyperplane_tverberg_depth, tverberg_point_depth

    d = arr.dimension
    ev = evaluate(arr, q)
    rd, _ = regression_depth(arr, q)
    rdo, _ = open_regression_depth(arr, q)
    trd = truncated_regression_depth(arr, q)
    td = dual_tukey_depth(ev.dual_points, q, [h.weight for h in arr])
    checks = {}
    values = {"rd": _rat(rd), "rd_open": _rat(rdo), "trd": _rat(trd), "dual_td": _rat(td)}
    checks["rd_equals_dual_tukey"] = rd == td
    checks["open_le_rd"] = rdo <= rd
    checks["trd_formula"] = trd == min(arr.total_weight / (d + 1), rd)
    try:
        htvd = hyperplane_tverberg_depth(arr, q)
        tvd = tverberg_point_depth(ev.dual_points, q)
        values["htvd"] = htvd
        values["dual_tvd"] = tvd
        checks["htvd_equals_dual_tverberg"] = htvd == tvd
        checks["sandwich_htvd_le_rd"] = htvd <= rd
        checks["sandwich_rd_le_d_htvd"] = rd <= d * htvd
    except ExactBudgetExceeded:
        checks["htvd_equals_dual_tverberg"] = None
    try:
        hed, _ = hyperplane_enclosing_depth(arr, q)
        ed = point_enclosing_depth(ev.dual_points, q)
        values["hed"] = hed
        values["dual_ed"] = ed
        checks["hed_equals_dual_enclosing"] = hed == ed
        checks["hed_le_rd"] = hed <= rd
    except ExactBudgetExceeded:
        checks["hed_equals_dual_enclosing"] = None
    passed = all(v is not False for v in checks.values())
    return {"values": values, "checks": checks, "passed": passed}


def _cmd_depth(args):
    arr = _load(args.file)
    q = _parse_point(args.query)
    if args.measure == "rd":
        value, cert = depth_mod.regression_depth(arr, q)
    elif args.measure == "rd-open":
        value, cert = depth_mod.open_regression_depth(arr, q)
    else:
        value = depth_mod.truncated_regression_depth(arr, q)
        cert = None
    outputs = {"measure": args.measure, "value": _rat(value), "query": _point_out(q)}
    verification = {}
    if cert is not None:
        outputs["witness"] = _point_out(cert.direction)
        if cert.rule != "open-perturbed":
            rule = "closed" if cert.rule == "closed" else "open"
            verification["witness_reproduces"] = (
                depth_mod.directional_count(arr, q, cert.direction, rule) == cert.count
            )
    return 0, outputs, verification


def _cmd_deepest(args):
    arr = _load(args.file)
    pt, value, cert = depth_mod.deepest_point(arr)
    outputs = {"point": _point_out(pt), "value": _rat(value), "witness": _point_out(cert.direction)}
    verification = {"witness_reproduces": depth_mod.directional_count(arr, pt, cert.direction) == cert.count}
    return 0, outputs, verification


def _cmd_htvd(args):
    arr = _load(args.file)
    q = _parse_point(args.query)
    try:
        value = tverberg_mod.hyperplane_tverberg_depth(arr, q, exact_threshold=args.exact_threshold)
        return 0, {"value": value, "exact": True}, {}
    except ExactBudgetExceeded as exc:
        return 3, {"value": exc.bound, "exact": False, "bound": True}, {}


def _cmd_hed(args):
    arr = _load(args.file)
    q = _parse_point(args.query)
    try:
        value, cert = enclosing_mod.hyperplane_enclosing_depth(
            arr, q, strict=args.strict, exact_threshold=args.exact_threshold
        )
    except ExactBudgetExceeded as exc:
        return 3, {"value": exc.bound, "exact": False, "bound": True}, {}
    outputs = {"value": value, "exact": True}
    verification = {}
    if cert is not None:
        outputs["groups"] = [list(g) for g in cert.groups]
        verification["certificate_verifies"] = enclosing_mod.verify_enclosure(arr, cert, strict=args.strict)
    return 0, outputs, verification


def _cmd_hed_verify(args):
    arr = _load(args.file)
    with open(args.cert) as fh:
        data = json.load(fh)
    cert = enclosing_mod.EnclosureCertificate(
        int(data["k"]),
        tuple(tuple(int(i) for i in g) for g in data["groups"]),
        tuple(frac(c) for c in data["query"]),
    )
    ok = enclosing_mod.verify_enclosure(arr, cert, strict=bool(data.get("strict", False)))
    return (0 if ok else 2), {"verified": ok, "k": cert.k}, {}


def _cmd_tverberg(args):
    arr = _load(args.file)
    try:
        cert = tverberg_mod.solve_tverberg(
            arr, args.r, seed=args.seed, restarts=args.restarts, max_steps=args.max_steps
        )
    except SolverBudgetExceeded as exc:
        return 3, {"error": str(exc)}, {}
    outputs = {
        "parts": [list(p) for p in cert.partition],
        "q": _point_out(cert.q),
        "verified": True,
    }
    verification = {"part_depths": [_rat(v) for v, _ in cert.part_depths]}
    return 0, outputs, verification


def _cmd_depthmap(args):
    arr = _load(args.file)
    sub = planar_mod.build_subdivision(arr)
    table = planar_mod.label_depth(sub, arr, args.measure)
    deepest = None
    if args.deepest and len(arr):
        deepest, _, _ = depth_mod.deepest_point(arr)
    svg = planar_mod.render_svg(sub, table, deepest=deepest)
    with open(args.out, "w") as fh:
        fh.write(svg)
    v, e, f = planar_mod.euler_counts(sub)
    outputs = {
        "out": args.out,
        "svg_sha256": hashlib.sha256(svg.encode()).hexdigest(),
        "faces": len(sub.faces),
        "cells": len(sub.cells),
    }
    return 0, outputs, {"euler_ok": v - e + f == 2}


def _cmd_transversal(args):
    a1 = _load(args.file1)
    a2 = _load(args.file2)
    sol = transversal_mod.solve_planar_transversal(a1, a2)
    outputs = {
        "direction": _point_out(sol.direction),
        "t": _rat(sol.t),
        "q": _point_out(sol.q),
        "counts": [
            {"left": _rat(c.left), "right": _rat(c.right), "parallel": _rat(c.parallel)}
            for c in sol.counts
        ],
        "status": sol.status,
    }
    verification = {
        "ray_bounds_hold": all(
            c.left + c.parallel >= arr.total_weight / 2 and c.right + c.parallel >= arr.total_weight / 2
            for c, arr in zip(sol.counts, (a1, a2))
        )
    }
    return 0, outputs, verification


def _cmd_oracle(args):
    agree = 0
    mismatches = []
    for t in range(args.trials):
        arr = generate_instance(args.seed + t, args.d, args.n, "generic")
        import random

        rng = random.Random(f"arrdepth-oracle-cli:{args.seed}:{t}")
        q = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 7)) for _ in range(args.d))
        engine, _ = depth_mod.regression_depth(arr, q)
        oracle = depth_mod.oracle_depth(arr, q, samples=args.samples, seed=args.seed + t)
        if engine == oracle:
            agree += 1
        else:
            mismatches.append({"trial": t, "engine": _rat(engine), "oracle": _rat(oracle)})
    outputs = {"agreements": f"{agree}/{args.trials}", "mismatches": mismatches}
    return (0 if agree == args.trials else 2), outputs, {}


def _cmd_gen(args):
    arr = generate_instance(args.seed, args.d, args.n, args.profile)
    text = dump_json(arr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        return 0, {"out": args.out, "n": len(arr), "d": arr.dimension}, {}
    print(text)
    return 0, None, {}


def _cmd_axioms(args):
    arr = _load(args.file)
    q = _parse_point(args.query)
    report = axioms_mod.check_axioms(args.kind, arr, q, trials=args.trials, seed=args.seed)
    outputs = {
        "kind": args.kind,
        "axioms": {
            r.axiom: {"applicable": r.applicable, "passed": r.passed}
            for r in report.results
        },
        "all_passed": report.all_passed,
    }
    return 0, outputs, {}


_HANDLERS = {
    "depth": _cmd_depth,
    "deepest": _cmd_deepest,
    "htvd": _cmd_htvd,
    "hed": _cmd_hed,
    "hed-verify": _cmd_hed_verify,
    "tverberg": _cmd_tverberg,
    "depthmap": _cmd_depthmap,
    "transversal": _cmd_transversal,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "axioms": _cmd_axioms,
}


def run(argv):
    """Dispatch a CLI invocation; returns (exit code, report dict or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    t0 = time.monotonic()
    try:
        code, outputs, verification = _HANDLERS[args.command](args)
    except (PrecisionExceeded, ExactBudgetExceeded, SolverBudgetExceeded) as exc:
        report = {"command": args.command, "error": str(exc)}
        print(json.dumps(report, sort_keys=True))
        return 3, report
    except (ArrDepthError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    if outputs is None:
        return code, None
    report = {
        "command": args.command,
        "input_digest": _digest(args.file) if getattr(args, "file", None) else None,
        "seed": getattr(args, "seed", None),
        "outputs": outputs,
        "verification": verification,
    }
    if args.command == "transversal":
        report["input_digest"] = [_digest(args.file1), _digest(args.file2)]
    if args.timing:
        report["timing_seconds"] = round(time.monotonic() - t0, 6)
    text = json.dumps(report, sort_keys=True)
    out = getattr(args, "out", None)
    if out and args.command != "depthmap" and args.command != "gen":
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code, report


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
