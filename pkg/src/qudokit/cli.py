"""``qudokit`` command line: build, convert, solve, validate, qaoa.

Exit codes: 0 success or valid solution, 1 invalid solution, 2 usage or
schema error, 3 capacity refusal.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .io import ModelFileError, formalism_of, read_model, write_model
from .models import QudoModel, TQudoModel, qubo_to_hobo, qudo_to_tqudo
from .problems import SchemaError, check_solution, load_instance, load_instance_dict, read_json
from .qaoa import REGISTER_LIMIT, grid_search, run_qaoa
from .solvers import DEFAULT_CAP, AnnealConfig, CapacityError, solve
from .transforms import BinaryEncoding, decode_assignment, qudo_to_qubo, tqudo_to_hobo

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"qudokit: {msg}", file=sys.stderr)


def _dump(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=1))


def cmd_build(args) -> int:
    loaded = load_instance(args.instance)
    encoded = loaded.encode()
    model = encoded.model
    layout = loaded.layout()
    layout["conversions"] = []
    write_model(args.output, model, layout)
    dims = model.space.dims
    print(f"formalism: {formalism_of(model)}")
    print(f"variables: {len(dims)}")
    print(f"dims: {list(dims)}")
    return EXIT_OK


def cmd_convert(args) -> int:
    model, layout = read_model(args.model)
    layout = dict(layout or {})
    conversions = list(layout.get("conversions", []))
    if args.to == "qubo":
        if isinstance(model, QudoModel):
            if not model.space.is_binary:
                model, enc = qudo_to_qubo(model)
                conversions.append({"to": "qubo", "encoding": enc.to_dict()})
        else:
            raise UsageError(f"cannot convert a {formalism_of(model)} model to qubo; use --to hobo")
    else:
        if isinstance(model, QudoModel):
            if model.space.is_binary:
                model = qubo_to_hobo(model)
                conversions.append({"to": "hobo", "encoding": None})
            else:
                model = qudo_to_tqudo(model)
        if isinstance(model, TQudoModel):
            model, enc = tqudo_to_hobo(model)
            conversions.append({"to": "hobo", "encoding": enc.to_dict()})
    layout["conversions"] = conversions
    write_model(args.output, model, layout)
    print(f"formalism: {formalism_of(model)}")
    print(f"variables: {model.space.n}")
    return EXIT_OK


def _undo_conversions(layout: dict, x):
    """Map a solver assignment back to the original variables; ``None`` if a codeword is invalid."""
    for conv in reversed(layout.get("conversions", [])):
        if conv.get("encoding") is None:
            continue
        decoded = decode_assignment(BinaryEncoding.from_dict(conv["encoding"]), x)
        if not decoded.all_feasible:
            return None
        x = decoded.values
    return tuple(x)


def cmd_solve(args) -> int:
    model, layout = read_model(args.model)
    if args.method == "anneal":
        config = AnnealConfig(args.t_initial, args.t_final, args.sweeps, args.restarts, args.seed, args.threads)
        result = solve(model, "anneal", config)
    else:
        result = solve(model, "exhaustive", cap=args.cap)
    out = result.to_dict()
    print(f"best cost: {result.best_cost:.12g}")
    if layout and "problem" in layout:
        loaded = load_instance_dict({k: layout[k] for k in ("problem", "params", "encoding")})
        x = _undo_conversions(layout, result.best_assignment)
        out["problem"] = layout["problem"]
        if x is None:
            out["solution"] = None
            out["feasible"] = False
            print("decoded solution: none (invalid binary codeword)")
        else:
            encoded = loaded.encode()
            solution = loaded.problem.solution_to_json(encoded.decode(x))
            penalty = encoded.constraint_model.evaluate(x)
            feasible = encoded.feasibility_threshold is not None and penalty <= encoded.feasibility_threshold + 1e-9
            out.update(solution=solution, penalty=penalty, feasible=bool(feasible))
            print(f"decoded solution: {json.dumps(solution)}")
            print(f"constraint penalty: {penalty:.12g} ({'feasible' if feasible else 'infeasible'})")
    if args.output:
        _dump(args.output, out)
    return EXIT_OK


def cmd_validate(args) -> int:
    loaded = load_instance(args.instance)
    doc = read_json(args.solution)
    if isinstance(doc, dict) and "solution" in doc:
        if doc.get("problem", loaded.problem.name) != loaded.problem.name:
            raise SchemaError(f"solution is for {doc['problem']!r}, instance is {loaded.problem.name!r}")
        doc = doc["solution"]
    if doc is None:
        print("no decoded solution")
        return EXIT_INVALID
    try:
        checks = check_solution(loaded, doc)
    except (ValueError, IndexError, TypeError) as exc:
        if isinstance(exc, SchemaError):
            raise
        print(f"rejected: {exc}")
        return EXIT_INVALID
    for name, ok in checks.items():
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    accepted = all(checks.values())
    print("valid" if accepted else "invalid")
    return EXIT_OK if accepted else EXIT_INVALID


def _parse_angles(text: str, layers: int) -> tuple[list[float], list[float]]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --angles {text!r}") from None
    if len(vals) != 2 * layers:
        raise UsageError(f"--angles needs {2 * layers} numbers (gamma,beta per layer), got {len(vals)}")
    return vals[0::2], vals[1::2]


def cmd_qaoa(args) -> int:
    model, _ = read_model(args.model)
    total = math.prod(model.space.dims)
    if total > REGISTER_LIMIT:
        _err(f"register dimension {total} exceeds the limit {REGISTER_LIMIT}")
        return EXIT_CAPACITY
    if args.angles is not None:
        gammas, betas = _parse_angles(args.angles, args.layers)
        res = run_qaoa(model, gammas, betas)
    elif args.grid is not None:
        if args.layers != 1:
            raise UsageError("--grid scans a single layer; use --layers 1")
        if args.grid < 1:
            raise UsageError("--grid needs at least one point")
        grid = np.linspace(0.0, np.pi, args.grid, endpoint=False)
        g, b, res = grid_search(model, grid, grid)
        gammas, betas = [g], [b]
        print(f"best angles: gamma={g:.6g} beta={b:.6g}")
    else:
        raise UsageError("give --angles or --grid")
    print(f"expected cost: {res.expected_cost:.12g}")
    print(f"top assignment: {list(res.best_assignment)} (probability {res.best_probability:.6g})")
    if args.output:
        _dump(args.output, {"gammas": list(gammas), "betas": list(betas), "expected_cost": res.expected_cost,
                            "best_assignment": list(res.best_assignment),
                            "best_probability": res.best_probability})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudokit", description="Qudit-based model builder and toy solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="encode an instance file into a model file")
    p.add_argument("instance")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("convert", help="binarize a model (qudo to qubo, tqudo or qudo to hobo)")
    p.add_argument("model")
    p.add_argument("--to", choices=("qubo", "hobo"), required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("solve", help="minimize a model file")
    p.add_argument("model")
    p.add_argument("--method", choices=("exhaustive", "anneal"), default="exhaustive")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest search space for exhaustive")
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--t-initial", type=float, default=5.0)
    p.add_argument("--t-final", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("qaoa", help="simulate QAOA on a small model")
    p.add_argument("model")
    p.add_argument("--layers", type=int, default=1)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--angles", help="comma-separated gamma,beta pairs, one per layer")
    group.add_argument("--grid", type=int, help="points per angle for a single-layer scan over [0, pi)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_qaoa)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (SchemaError, ModelFileError, UsageError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except CapacityError as exc:
        _err(f"refusing: {exc}")
        return EXIT_CAPACITY
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
