"""Instance and solution files for the seven bundled problems.

An instance file is ``{"problem", "params", "encoding"}``. Each problem owns a
JSON schema for ``params``, an encoder call, a solution format and a validator
call that reports named sub-checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import jsonschema

from . import validators as V
from .encoders import (EncodedProblem, KNAPSACK_VARIANTS, TSP_PENALTIES, encode_hashi, encode_inshi,
                       encode_kakuro, encode_knapsack, encode_peg, encode_queens, encode_tsp)
from .instances import (HashiInstance, InshiInstance, KakuroInstance, KnapsackInstance, PegInstance,
                        Portion, QueensInstance, TspInstance)


class SchemaError(ValueError):
    """An instance or solution document does not match its schema."""


_int = {"type": "integer"}
_num = {"type": "number"}
_cell = {"type": "array", "items": _int, "minItems": 2, "maxItems": 2}
_portion = {
    "type": "object",
    "properties": {"cells": {"type": "array", "items": _cell, "minItems": 1}, "sum": _int},
    "required": ["cells", "sum"],
    "additionalProperties": False,
}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


def _lambdas(*names: str) -> dict:
    return _obj({n: {"type": "number", "exclusiveMinimum": 0} for n in names})


INSTANCE_SCHEMA = _obj(
    {
        "problem": {"enum": ["knapsack", "hashi", "tsp", "queens", "kakuro", "inshi", "peg"]},
        "params": {"type": "object"},
        "encoding": {"type": "object"},
    },
    ["problem", "params"],
)


@dataclass(frozen=True)
class Problem:
    name: str
    params_schema: dict
    encoding_schema: dict
    solution_schema: dict
    parse: Callable[[dict], Any]
    encode: Callable[[Any, dict], EncodedProblem]
    solution_to_json: Callable[[Any], dict]
    check: Callable[[Any, dict], dict[str, bool]]


def _pairs_to_tuples(cells) -> tuple:
    return tuple((int(r), int(c)) for r, c in cells)


# knapsack

def _knapsack_parse(p):
    return KnapsackInstance(p["values"], p["weights"], p["counts"], p["capacity"])


def _knapsack_encode(inst, enc):
    return encode_knapsack(inst, enc.get("variant", "qudo"), enc.get("slackBase", 2),
                           enc.get("lambdas", {}).get("penalty"))


def _knapsack_check(inst, sol):
    r = V.validate_knapsack(inst, sol["counts"])
    return {"within_bounds_and_capacity": r.feasible}


# hashi

def _hashi_parse(p):
    return HashiInstance(tuple(tuple(n) for n in p["nodes"]), p.get("maxEdges", 2))


def _hashi_check(inst, sol):
    edges: dict[tuple[int, int], int] = {}
    for i, j, m in sol["edges"]:
        key = (min(i, j), max(i, j))
        edges[key] = edges.get(key, 0) + m
    r = V.validate_hashi(inst, edges)
    return {"degrees": r.degrees_ok, "no_crossing": r.no_cross, "connected": r.connected}


# tsp

def _tsp_parse(p):
    return TspInstance(p["costs"], p.get("missingEdgeCost"))


def _tsp_encode(inst, enc):
    return encode_tsp(inst, enc.get("variant", "pairwise_delta"), enc.get("lambdas", {}).get("penalty"),
                      enc.get("fixFirst", False))


def _tsp_check(inst, sol):
    r = V.validate_tsp(inst, sol["tour"])
    return {"permutation": r.is_permutation, "edges_present": r.edges_present}


# queens

def _queens_check(inst, sol):
    return {"non_attacking": V.validate_queens(inst, sol["columns"])}


# kakuro

def _kakuro_parse(p):
    def portions(key):
        return tuple(Portion(_pairs_to_tuples(q["cells"]), q["sum"]) for q in p[key])

    return KakuroInstance(_pairs_to_tuples(p["white"]), portions("rows"), portions("columns"),
                          p.get("maxDigit", 9))


def _grid_lams(enc):
    lams = enc.get("lambdas", {})
    return lams.get("sum", 1.0), lams.get("repeat", 1.0)


def _kakuro_check(inst, sol):
    grid = {(r, c): v for r, c, v in sol["cells"]}
    return {"sums_and_distinct": V.validate_kakuro(inst, grid)}


# inshi

def _inshi_parse(p):
    regions = tuple(Portion(_pairs_to_tuples(q["cells"]), q["sum"]) for q in p["regions"])
    return InshiInstance(p["size"], regions)


def _inshi_check(inst, sol):
    return {"latin_square_and_regions": V.validate_inshi(inst, sol["grid"])}


# peg

def _peg_check(inst, sol):
    moves = [((m[0], m[1]), (m[2], m[3])) for m in sol["moves"]]
    return {"legal_and_solved": V.validate_peg(inst, moves)}


PROBLEMS: dict[str, Problem] = {
    "knapsack": Problem(
        "knapsack",
        _obj({"values": {"type": "array", "items": _num, "minItems": 1},
              "weights": {"type": "array", "items": _int, "minItems": 1},
              "counts": {"type": "array", "items": _int, "minItems": 1},
              "capacity": _int}, ["values", "weights", "counts", "capacity"]),
        _obj({"variant": {"enum": list(KNAPSACK_VARIANTS)}, "slackBase": {"type": "integer", "minimum": 2},
              "lambdas": _lambdas("penalty")}),
        _obj({"counts": {"type": "array", "items": _int}}, ["counts"]),
        _knapsack_parse,
        _knapsack_encode,
        lambda s: {"counts": list(s)},
        _knapsack_check,
    ),
    "hashi": Problem(
        "hashi",
        _obj({"nodes": {"type": "array", "items": {"type": "array", "items": _int, "minItems": 3, "maxItems": 3}},
              "maxEdges": {"type": "integer", "minimum": 1}}, ["nodes"]),
        _obj({"lambdas": _lambdas("cross")}),
        _obj({"edges": {"type": "array", "items": {"type": "array", "items": _int, "minItems": 3, "maxItems": 3}}},
             ["edges"]),
        _hashi_parse,
        lambda inst, enc: encode_hashi(inst, enc.get("lambdas", {}).get("cross", 1.0)),
        lambda s: {"edges": [[i, j, m] for (i, j), m in sorted(s.items())]},
        _hashi_check,
    ),
    "tsp": Problem(
        "tsp",
        _obj({"costs": {"type": "array", "minItems": 2}, "missingEdgeCost": _num}, ["costs"]),
        _obj({"variant": {"enum": list(TSP_PENALTIES)}, "lambdas": _lambdas("penalty"),
              "fixFirst": {"type": "boolean"}}),
        _obj({"tour": {"type": "array", "items": _int}}, ["tour"]),
        _tsp_parse,
        _tsp_encode,
        lambda s: {"tour": list(s)},
        _tsp_check,
    ),
    "queens": Problem(
        "queens",
        _obj({"size": {"type": "integer", "minimum": 1}}, ["size"]),
        _obj({"lambdas": _lambdas("penalty")}),
        _obj({"columns": {"type": "array", "items": _int}}, ["columns"]),
        lambda p: QueensInstance(p["size"]),
        lambda inst, enc: encode_queens(inst, enc.get("lambdas", {}).get("penalty", 1.0)),
        lambda s: {"columns": list(s)},
        _queens_check,
    ),
    "kakuro": Problem(
        "kakuro",
        _obj({"white": {"type": "array", "items": _cell}, "rows": {"type": "array", "items": _portion},
              "columns": {"type": "array", "items": _portion}, "maxDigit": {"type": "integer", "minimum": 2}},
             ["white", "rows", "columns"]),
        _obj({"lambdas": _lambdas("sum", "repeat")}),
        _obj({"cells": {"type": "array", "items": {"type": "array", "items": _int, "minItems": 3, "maxItems": 3}}},
             ["cells"]),
        _kakuro_parse,
        lambda inst, enc: encode_kakuro(inst, *_grid_lams(enc)),
        lambda s: {"cells": [[r, c, v] for (r, c), v in sorted(s.items())]},
        _kakuro_check,
    ),
    "inshi": Problem(
        "inshi",
        _obj({"size": {"type": "integer", "minimum": 1}, "regions": {"type": "array", "items": _portion}},
             ["size", "regions"]),
        _obj({"lambdas": _lambdas("sum", "repeat")}),
        _obj({"grid": {"type": "array", "items": {"type": "array", "items": _int}}}, ["grid"]),
        _inshi_parse,
        lambda inst, enc: encode_inshi(inst, *_grid_lams(enc)),
        lambda s: {"grid": [list(r) for r in s]},
        _inshi_check,
    ),
    "peg": Problem(
        "peg",
        _obj({"cells": {"type": "array", "items": _cell, "minItems": 3}, "empty": _cell}, ["cells", "empty"]),
        _obj({}),
        _obj({"moves": {"type": "array", "items": {"type": "array", "items": _int, "minItems": 4, "maxItems": 4}}},
             ["moves"]),
        lambda p: PegInstance(_pairs_to_tuples(p["cells"]), tuple(p["empty"])),
        lambda inst, enc: encode_peg(inst),
        lambda s: {"moves": [[*cell, *d] for cell, d in s]},
        _peg_check,
    ),
}


def _validate(doc, schema, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{what}{'/' + where if where else ''}: {exc.message}") from None


@dataclass(frozen=True)
class LoadedInstance:
    problem: Problem
    params: dict
    encoding: dict
    instance: Any

    def encode(self) -> EncodedProblem:
        return self.problem.encode(self.instance, self.encoding)

    def layout(self) -> dict:
        return {"problem": self.problem.name, "params": self.params, "encoding": self.encoding}


def load_instance_dict(doc: Any) -> LoadedInstance:
    _validate(doc, INSTANCE_SCHEMA, "instance")
    problem = PROBLEMS[doc["problem"]]
    params = doc["params"]
    encoding = doc.get("encoding", {})
    _validate(params, problem.params_schema, "params")
    _validate(encoding, problem.encoding_schema, "encoding")
    try:
        inst = problem.parse(params)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"params: {exc}") from None
    return LoadedInstance(problem, params, encoding, inst)


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None


def load_instance(path) -> LoadedInstance:
    return load_instance_dict(read_json(path))


def check_solution(loaded: LoadedInstance, solution: Any) -> dict[str, bool]:
    """Named sub-check results; the solution is accepted iff all are true."""
    _validate(solution, loaded.problem.solution_schema, "solution")
    return loaded.problem.check(loaded.instance, solution)
