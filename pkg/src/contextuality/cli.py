"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (invalid or signalling model,
contextual verdict where one is tested), 2 unreadable input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import ast
import hashlib
import json
import math
import operator
import sys
from pathlib import Path

import numpy as np

from . import fraction, logic, polytope, possibilistic, quantum
from .inequality import is_bell_inequality, is_tight
from .model import EmpiricalModel, ModelError, SignallingError, check_compatibility
from .rational import as_rational, format_rational as fmt
from .scenario import Scenario, ScenarioError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_scenario(path: str) -> Scenario:
    try:
        return Scenario.from_json(_read_json(path))
    except (ScenarioError, TypeError, AttributeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_model(path: str, check: bool = True) -> EmpiricalModel:
    """Read a model file; ``scenario`` may be inline or a path relative to the file."""
    data = _read_json(path)
    if not isinstance(data, dict) or "scenario" not in data or "tables" not in data:
        raise InputError(f"{path}: a model file needs 'scenario' and 'tables'")
    ref = data["scenario"]
    try:
        if isinstance(ref, str):
            scenario = load_scenario(str(Path(path).parent / ref))
        else:
            scenario = Scenario.from_json(ref)
        return EmpiricalModel.from_json(data, scenario, check=check)
    except ModelError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError, AttributeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path: str, obj) -> None:
    Path(path).write_text(_dump(obj))


def _report(args, inputs, result) -> dict:
    return {
        "command": args.command,
        "inputs": {p: _digest(p) for p in inputs},
        "result": result,
    }


def _emit(args, inputs, result, human: str) -> None:
    if args.json:
        sys.stdout.write(_dump(_report(args, inputs, result)))
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        model = load_model(args.model, check=False)
    except ModelError as exc:
        _emit(args, [args.model], {"valid": False, "errors": [str(exc)]}, f"INVALID: {exc}")
        return EXIT_FAIL
    violations = check_compatibility(model)
    result = {
        "valid": not violations,
        "violations": [
            {
                "contexts": [list(v.context), list(v.other)],
                "overlap": list(v.overlap),
                "outcome": list(v.outcome),
                "lhs": fmt(v.lhs),
                "rhs": fmt(v.rhs),
            }
            for v in violations
        ],
    }
    if violations:
        human = "SIGNALLING\n" + "\n".join(str(v) for v in violations)
    else:
        human = f"OK: {len(model.scenario.contexts)} contexts, distributions and no-signalling hold"
    _emit(args, [args.model], result, human)
    return EXIT_FAIL if violations else EXIT_OK


def cmd_fraction(args) -> int:
    model = load_model(args.model)
    res = fraction.noncontextual_fraction(model)
    result = {"ncf": fmt(res.ncf), "cf": fmt(res.cf)}
    lines = [f"non-contextual fraction  {fmt(res.ncf)}", f"contextual fraction      {fmt(res.cf)}"]
    if args.witness:
        if res.cf == 0:
            result["witness"] = None
            lines.append("witness: none (model is non-contextual)")
        else:
            w = fraction.witness_inequality(model, res)
            _write(args.witness, w.to_json())
            result["witness"] = {
                "inequality": w.to_json(),
                "normalized_violation": fmt(w.normalized_violation(model)),
                "bell": is_bell_inequality(w),
                "tight": is_tight(w),
            }
            lines += [f"witness ({args.witness}):", f"  {w}",
                      f"  normalised violation {fmt(w.normalized_violation(model))}"]
    if args.decompose:
        dec = fraction.decompose(model, res)
        out = Path(args.decompose)
        out.mkdir(parents=True, exist_ok=True)
        files = {}
        for name, part in (("noncontextual", dec.noncontextual), ("contextual", dec.contextual)):
            if part is not None:
                target = out / f"{name}.json"
                _write(str(target), part.to_json())
                files[name] = str(target)
                lines += [f"{name} part ({target}):", part.table()]
            else:
                files[name] = None
        result["decomposition"] = files
    _emit(args, [args.model], result, "\n".join(lines))
    return EXIT_OK


def cmd_facets(args) -> int:
    scenario = load_scenario(args.scenario)
    try:
        system = polytope.nc_polytope_facets(scenario, limit=args.limit)
    except polytope.ResourceLimitError as exc:
        _emit(args, [args.scenario], {"aborted": str(exc)}, f"ABORTED: {exc}")
        return EXIT_RESOURCE
    facets = polytope.nontrivial_facets(scenario, system)
    data = [f.to_json() for f in facets]
    if args.output:
        _write(args.output, data)
    result = {
        "facets": data,
        "nontrivial": len(facets),
        "total": len(system.inequalities),
        "equalities": len(system.equalities),
    }
    lines = [f"{len(system.inequalities)} facets, {len(facets)} beyond positivity"]
    lines += [f"{i + 1:>4}  {f}" for i, f in enumerate(facets)]
    _emit(args, [args.scenario], result, "\n".join(lines))
    return EXIT_OK


def load_formulas(path: str) -> list:
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("formulas")
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}: expected a non-empty list of {{context, formula}} objects")
    try:
        return [logic.ContextualizedFormula.from_json(item) for item in data]
    except (KeyError, TypeError, logic.LogicError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_logical(args) -> int:
    model = load_model(args.model)
    cfs = load_formulas(args.formulas)
    try:
        rep = logic.logical_bell_report(model, cfs)
    except logic.LogicError as exc:
        raise InputError(str(exc)) from None
    result = {
        "probabilities": [fmt(p) for p in rep.probabilities],
        "sum": fmt(rep.total),
        "K": rep.K,
        "violation": fmt(rep.violation),
    }
    lines = [f"p({cf.formula}) = {fmt(p)}" for cf, p in zip(cfs, rep.probabilities)]
    lines += [f"sum = {fmt(rep.total)}", f"K = {rep.K}", f"violation = {fmt(rep.violation)}"]
    _emit(args, [args.model, args.formulas], result, "\n".join(lines))
    return EXIT_OK


def cmd_possibilistic(args) -> int:
    model = load_model(args.model)
    sm = possibilistic.support_of(model)
    verdict = possibilistic.classify(sm)
    gs = possibilistic.consistent_globals(sm)
    loose = possibilistic.unexplained(sm)
    result = {
        "classification": verdict.value,
        "consistent_globals": len(gs),
        "unexplained": [{"context": list(c), "outcome": list(s)} for c, s in loose],
    }
    lines = [verdict.value, f"{len(gs)} consistent global assignments"]
    lines += [f"no global extension: {list(c)} = {list(s)}" for c, s in loose]
    _emit(args, [args.model], result, "\n".join(lines))
    return EXIT_OK


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_angle(text: str) -> float:
    """Arithmetic over numbers and ``pi``, e.g. ``"pi/3"`` or ``"-2*pi/3"``."""
    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](walk(node.left), walk(node.right))
        raise InputError(f"bad angle {text!r}")
    try:
        return walk(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError):
        raise InputError(f"bad angle {text!r}") from None


def parse_setting(text: str) -> quantum.PlanarMeasurement:
    party, sep, rest = text.partition(":")
    label, sep2, angle = rest.rpartition(":")
    if not sep or not sep2 or not label:
        raise InputError(f"setting {text!r} is not party:label:angle")
    try:
        p = int(party)
    except ValueError:
        raise InputError(f"bad party index in {text!r}") from None
    return quantum.PlanarMeasurement(p, label, parse_angle(angle))


def parse_amplitude(text: str) -> complex:
    re_, sep, im = text.partition(",")
    try:
        return complex(float(re_), float(im) if sep else 0.0)
    except ValueError:
        raise InputError(f"bad amplitude {text!r}") from None


def cmd_quantum(args) -> int:
    if args.amplitude:
        state = np.array([parse_amplitude(a) for a in args.amplitude])
    else:
        state = quantum.PRESETS[args.preset]()
    ms = [parse_setting(s) for s in args.setting]
    parties = max(m.party for m in ms) + 1
    settings = [[m for m in ms if m.party == p] for p in range(parties)]
    try:
        approx = quantum.born_model(state, settings)
    except (ValueError, ScenarioError) as exc:
        raise InputError(str(exc)) from None
    model = quantum.rationalize(approx, args.max_denominator)
    data = model.to_json()
    if args.output:
        _write(args.output, data)
    if args.json:
        sys.stdout.write(_dump(_report(args, [], {"model": data})))
    elif not args.output:
        sys.stdout.write(_dump(data))
    else:
        sys.stdout.write(model.table() + "\n")
    return EXIT_OK


def cmd_membership(args) -> int:
    data = _read_json(args.spec)
    try:
        spec = polytope.CorrelationPolytopeSpec(
            data["events"], [logic.parse(f) for f in data["formulas"]])
        vec = [as_rational(x) for x in data["vector"]]
        res = polytope.correlation_membership(spec, vec)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{args.spec}: {exc}") from None
    result = {"member": res.member, "verified": res.verify(vec)}
    if res.member:
        result["weights"] = [fmt(w) for w in res.weights]
        human = "MEMBER\nweights: " + " ".join(fmt(w) for w in res.weights)
    else:
        result["hyperplane"] = {"normal": [fmt(h) for h in res.normal], "offset": fmt(res.offset)}
        human = ("NOT A MEMBER\nseparating hyperplane: "
                 + " ".join(fmt(h) for h in res.normal) + f" <= {fmt(res.offset)}")
    _emit(args, [args.spec], result, human)
    return EXIT_OK if res.member else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="contextuality", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=func)
        return p

    p = command("validate", cmd_validate, "check distributions and no-signalling")
    p.add_argument("model")

    p = command("fraction", cmd_fraction, "non-contextual / contextual fraction")
    p.add_argument("model")
    p.add_argument("--witness", metavar="PATH", help="write the witnessing Bell inequality here")
    p.add_argument("--decompose", metavar="DIR", help="write noncontextual.json / contextual.json here")

    p = command("facets", cmd_facets, "facets of the non-contextual polytope")
    p.add_argument("scenario")
    p.add_argument("--limit", type=int, default=20000, help="row limit for one elimination step")
    p.add_argument("--output", metavar="PATH")

    p = command("logical", cmd_logical, "logical Bell inequality for a formula family")
    p.add_argument("model")
    p.add_argument("formulas")

    p = command("possibilistic", cmd_possibilistic, "support-level classification")
    p.add_argument("model")

    p = command("quantum", cmd_quantum, "Born-rule model from a state and planar settings")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=sorted(quantum.PRESETS), default="bell")
    src.add_argument("--amplitude", action="append", metavar="RE,IM")
    p.add_argument("--setting", action="append", required=True, metavar="PARTY:LABEL:ANGLE")
    p.add_argument("--max-denominator", type=int, default=1000)
    p.add_argument("--output", metavar="PATH")

    p = command("membership", cmd_membership, "correlation-polytope membership")
    p.add_argument("spec", help='JSON {"events": [...], "formulas": [...], "vector": [...]}')
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SignallingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
