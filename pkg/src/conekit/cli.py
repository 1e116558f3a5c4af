"""Scenario runner CLI.

Subcommands: run, proptest, gram, extend, report.  Scenario files are JSON
with "schema": "conekit/1".  Rational values serialize as "p/q" strings so
that two runs with the same seed produce byte-identical reports (modulo the
wall_time_ms fields).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .cone import Cone, FutureCone, Orthant, PCone, Polyhedral, contains, is_proper
from .errors import ConekitError, ParseError
from .extension import (
    CoordBaseNorm,
    ExtensionProblem,
    WickBaseNorm,
    extended_norm,
    grid_oracle,
)
from .hypnorm import FormInduced, PHyperbolic, polarizability_residual
from .lorentz import (
    GramForm,
    LorentzFrame,
    Signature,
    classify,
    gram_from_cone_basis,
    minkowski_frame,
)
from .numerics import Vector
from .properties import SUITES, PropertyResult, run_suite

SCHEMA = "conekit/1"


# ---------------------------------------------------------------- encoding


def parse_scalar(s, exact: bool = True):
    if isinstance(s, str):
        if "/" in s:
            return Fraction(s)
        return Fraction(s) if exact else float(s)
    if isinstance(s, bool):
        raise ParseError(f"expected a number, got {s!r}")
    if isinstance(s, int):
        return Fraction(s) if exact else float(s)
    if isinstance(s, float):
        return s
    raise ParseError(f"cannot parse scalar {s!r}")


def parse_vector(obj, exact: bool = True) -> Vector:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"expected a coordinate list, got {obj!r}")
    return Vector([parse_scalar(c, exact) for c in obj])


def encode(value):
    """JSON-safe encoding; Fractions become 'p/q' strings."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Vector):
        return [encode(c) for c in value.coords]
    if isinstance(value, Signature):
        return {
            "kind": value.kind.value,
            "plus": value.plus,
            "minus": value.minus,
            "zero": value.zero,
        }
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, float):
        return float(repr(value))
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return repr(value)


# ---------------------------------------------------------- scenario specs


def parse_cone(spec, exact: bool = True) -> Cone:
    if not isinstance(spec, dict) or "family" not in spec:
        raise ParseError(f"bad cone spec: {spec!r}")
    fam = spec["family"]
    try:
        if fam == "pcone":
            return PCone(p=spec["p"], spatial_dim=int(spec["spatial_dim"]))
        if fam == "orthant":
            return Orthant(dim=int(spec["dim"]))
        if fam == "polyhedral":
            return Polyhedral([parse_vector(g, exact) for g in spec["generators"]])
        if fam == "future":
            n = int(spec["spatial_dim"])
            frame = minkowski_frame(n)
            t = parse_vector(spec["t"], exact) if "t" in spec else frame.t
            return FutureCone(frame.form, t)
    except KeyError as e:
        raise ParseError(f"cone spec missing field {e}") from e
    raise ParseError(f"unknown cone family {fam!r}")


def parse_norm(spec, cone: Cone | None = None):
    if not isinstance(spec, dict) or "family" not in spec:
        raise ParseError(f"bad norm spec: {spec!r}")
    fam = spec["family"]
    try:
        if fam == "p":
            p = spec["p"]
            return PHyperbolic(p="inf" if p == "inf" else parse_scalar(p), spatial_dim=int(spec["spatial_dim"]))
        if fam == "form":
            if not isinstance(cone, FutureCone):
                raise ParseError("form-induced norm needs a future cone")
            return FormInduced(cone)
    except KeyError as e:
        raise ParseError(f"norm spec missing field {e}") from e
    raise ParseError(f"unknown norm family {fam!r}")


# -------------------------------------------------------------- task kinds


def _task_seed(task, flags) -> int:
    if flags.seed is not None:
        return flags.seed
    env = os.environ.get("CONEKIT_SEED")
    if env is not None:
        return int(env)
    return int(task.get("seed", 0))


def run_task(task, scenario, flags) -> dict:
    kind = task.get("kind")
    seed = _task_seed(task, flags)
    if kind in SUITES:
        res: PropertyResult = run_suite(kind, trials=task.get("trials"), seed=seed)
        return {
            "status": "pass" if res.passed else "fail",
            "metrics": encode({"trials": res.trials, **res.metrics}),
            "witness": encode(res.witness),
        }
    if kind == "polarizability_check":
        h = parse_norm(task.get("norm") or scenario.get("norm"))
        v = parse_vector(task["v"])
        w = parse_vector(task["w"])
        r = polarizability_residual(h, v, w)
        ok = r == 0 if isinstance(r, Fraction) else abs(r) <= flags.tol
        return {
            "status": "pass" if ok else "fail",
            "metrics": encode({"residual": r}),
            "witness": None if ok else encode({"v": v, "w": w, "residual": r}),
        }
    if kind == "signature":
        h = parse_norm(task.get("norm") or scenario.get("norm"))
        basis = [parse_vector(b) for b in task["basis"]]
        g = gram_from_cone_basis(h, basis)
        sig = classify(g)
        want = task.get("expect", "lorentzian")
        ok = sig.kind.value == want
        return {"status": "pass" if ok else "fail", "metrics": encode({"signature": sig}), "witness": None}
    if kind == "properness":
        cone = parse_cone(task.get("cone") or scenario.get("cone"))
        rep = is_proper(cone)
        want = bool(task.get("expect", True))
        ok = bool(rep) == want
        return {
            "status": "pass" if ok else "fail",
            "metrics": {"proper": bool(rep)},
            "witness": encode(rep.witness),
        }
    if kind == "extend":
        cone = parse_cone(task.get("cone") or scenario.get("cone"))
        base = _base_norm(task.get("base_norm", "wick"), cone)
        x = parse_vector(task["x"], exact=False)
        prob = ExtensionProblem(cone, base, x)
        res = extended_norm(prob)
        out = {"value": res.value, "iterations": res.iterations}
        ok = True
        if "expect" in task:
            want = float(parse_scalar(task["expect"], exact=False))
            tol = float(task.get("tol", flags.tol))
            ok = abs(res.value - want) <= tol
            out["expect"] = want
        return {"status": "pass" if ok else "fail", "metrics": encode(out), "witness": None}
    if kind == "membership":
        cone = parse_cone(task.get("cone") or scenario.get("cone"))
        x = parse_vector(task["x"])
        inside = contains(cone, x)
        ok = inside == bool(task.get("expect", True))
        return {"status": "pass" if ok else "fail", "metrics": {"contains": inside}, "witness": None}
    raise ParseError(f"unknown task kind {kind!r}")


def _base_norm(name: str, cone: Cone):
    if name == "wick":
        if not isinstance(cone, FutureCone):
            raise ParseError("wick base norm needs a future cone")
        return WickBaseNorm(LorentzFrame(cone.form, cone.t))
    if name in ("l1", "l2", "linf"):
        return CoordBaseNorm(name)
    raise ParseError(f"unknown base norm {name!r}")


# ------------------------------------------------------------------ runner


def load_scenario(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot load scenario {path}: {e}") from e
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise ParseError(f'scenario must declare "schema": "{SCHEMA}"')
    if not isinstance(data.get("tasks"), list):
        raise ParseError("scenario needs a task list")
    return data


def run_scenario(path: str, flags) -> tuple[dict, int]:
    scenario = load_scenario(path)
    tasks = []
    any_fail = False
    for task in scenario["tasks"]:
        name = task.get("name") or task.get("kind", "?")
        t0 = time.perf_counter()
        try:
            entry = run_task(task, scenario, flags)
        except ParseError:
            raise
        except ConekitError as e:
            entry = {"status": "error", "metrics": {"error": str(e)}, "witness": None}
        entry["name"] = name
        entry["wall_time_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
        if entry["status"] != "pass":
            any_fail = True
        tasks.append(entry)
    report = {
        "schema": SCHEMA,
        "scenario": scenario.get("name", os.path.basename(path)),
        "version": __version__,
        "seed": flags.seed,
        "tasks": tasks,
    }
    return report, (1 if any_fail else 0)


def report_to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["task", "status", "metric", "tolerance", "wall_time_ms"])
    for t in report["tasks"]:
        metrics = t.get("metrics") or {}
        key = next(iter(metrics), "")
        w.writerow([t["name"], t["status"], metrics.get(key, ""), "", t["wall_time_ms"]])
    return buf.getvalue()


def write_report(report: dict, flags):
    text = json.dumps(report, indent=2, sort_keys=True)
    if flags.out:
        with open(flags.out, "w") as fh:
            fh.write(text + "\n")
    for t in report["tasks"]:
        print(f"{t['name']}: {t['status']}")


# --------------------------------------------------------------------- cli


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["exact", "float"], default="exact")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="conekit", description="linear cone toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run a scenario file", parents=[common])
    runp.add_argument("scenario")

    prop = sub.add_parser("proptest", help="run property suites", parents=[common])
    prop.add_argument("--suite", choices=sorted(SUITES), default=None)
    prop.add_argument("--trials", type=int, default=None)

    gram = sub.add_parser("gram", help="Gram matrix and signature of a cone basis", parents=[common])
    gram.add_argument("--p", default="2")
    gram.add_argument("--spatial-dim", type=int, required=True)
    gram.add_argument("--basis", required=True, help="JSON list of vectors")

    ext = sub.add_parser("extend", help="extended norm of a target vector", parents=[common])
    ext.add_argument("--cone", required=True, help="JSON cone spec")
    ext.add_argument("--x", required=True, help="JSON coordinate list")
    ext.add_argument("--base-norm", default="wick")
    ext.add_argument("--oracle", action="store_true", help="also run the grid oracle")

    rep = sub.add_parser("report", help="convert a report JSON to CSV", parents=[common])
    rep.add_argument("report_path")
    rep.add_argument("--csv", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            report, code = run_scenario(args.scenario, args)
            write_report(report, args)
            return code
        if args.command == "proptest":
            names = [args.suite] if args.suite else sorted(SUITES)
            seed = args.seed
            if seed is None and os.environ.get("CONEKIT_SEED"):
                seed = int(os.environ["CONEKIT_SEED"])
            ok = True
            results = []
            for name in names:
                res = run_suite(name, trials=args.trials, seed=seed)
                ok &= res.passed
                results.append(res)
                print(f"{name}: {'pass' if res.passed else 'fail'} ({res.trials} trials)")
            if args.out:
                payload = {
                    "schema": SCHEMA,
                    "version": __version__,
                    "seed": seed,
                    "tasks": [
                        {
                            "name": r.name,
                            "status": "pass" if r.passed else "fail",
                            "metrics": encode({"trials": r.trials, **r.metrics}),
                            "witness": encode(r.witness),
                        }
                        for r in results
                    ],
                }
                with open(args.out, "w") as fh:
                    json.dump(payload, fh, indent=2, sort_keys=True)
                    fh.write("\n")
            return 0 if ok else 1
        if args.command == "gram":
            exact = args.backend == "exact"
            p = "inf" if args.p == "inf" else parse_scalar(args.p)
            h = PHyperbolic(p, args.spatial_dim)
            basis = [parse_vector(b, exact) for b in json.loads(args.basis)]
            g = gram_from_cone_basis(h, basis)
            sig = classify(g)
            out = {
                "gram": encode(g.gram.rows),
                "standard": encode(g.in_standard_coordinates().rows),
                "signature": encode(sig),
            }
            print(json.dumps(out, indent=2, sort_keys=True))
            return 0
        if args.command == "extend":
            cone = parse_cone(json.loads(args.cone))
            base = _base_norm(args.base_norm, cone)
            x = parse_vector(json.loads(args.x), exact=False)
            prob = ExtensionProblem(cone, base, x)
            res = extended_norm(prob)
            out = {"value": res.value, "iterations": res.iterations, "converged": res.converged}
            if args.oracle:
                out["oracle"] = grid_oracle(prob)
            print(json.dumps(encode(out), indent=2, sort_keys=True))
            return 0
        if args.command == "report":
            with open(args.report_path) as fh:
                report = json.load(fh)
            text = report_to_csv(report)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ConekitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
