"""JSON model files.

Terms are flat lists ending in the coefficient:

* ``qubo`` / ``qudo``: ``[i, D_i]`` linear, ``[i, j, Q_ij]`` quadratic
* ``tqudo``: ``[i, j, a, b, value]``
* ``hobo``: ``[i0, i1, ..., coefficient]`` (constant goes to ``offset``)
"""
from __future__ import annotations

import json
from pathlib import Path

from .models import HoboModel, Model, QudoModel, TQudoModel, VariableSpace

FORMALISMS = ("qubo", "qudo", "tqudo", "hobo")


class ModelFileError(ValueError):
    pass


def formalism_of(model: Model) -> str:
    if isinstance(model, QudoModel):
        return "qubo" if model.space.is_binary else "qudo"
    if isinstance(model, TQudoModel):
        return "tqudo"
    if isinstance(model, HoboModel):
        return "hobo"
    raise TypeError(f"not a model: {type(model).__name__}")


def model_to_dict(model: Model, layout: dict | None = None) -> dict:
    formalism = formalism_of(model)
    terms: list[list] = []
    if isinstance(model, QudoModel):
        terms += [[i, d] for i, d in enumerate(model.linear) if d]
        terms += [[i, j, q] for (i, j), q in sorted(model.quad.items())]
        offset = model.offset
    elif isinstance(model, TQudoModel):
        terms += [[*k, v] for k, v in sorted(model.entries.items())]
        offset = model.offset
    else:
        terms += [[*k, c] for k, c in sorted(model.terms.items()) if k]
        offset = model.offset
    out = {"formalism": formalism, "dims": list(model.space.dims), "offset": offset, "terms": terms}
    if model.space.names is not None:
        out["names"] = list(model.space.names)
    if layout is not None:
        out["layout"] = layout
    return out


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ModelFileError(f"expected an integer index, got {v!r}")
    return v


def model_from_dict(data: dict) -> tuple[Model, dict | None]:
    unknown = set(data) - {"formalism", "dims", "offset", "terms", "names", "layout"}
    if unknown:
        raise ModelFileError(f"unknown model file fields: {sorted(unknown)}")
    try:
        formalism = data["formalism"]
        dims = [_int(d) for d in data["dims"]]
        offset = float(data.get("offset", 0.0))
        terms = data["terms"]
    except KeyError as exc:
        raise ModelFileError(f"missing field {exc}") from None
    if formalism not in FORMALISMS:
        raise ModelFileError(f"unknown formalism {formalism!r}")
    names = data.get("names")
    space = VariableSpace(tuple(dims), None if names is None else tuple(names))
    if formalism in ("qubo", "qudo"):
        if formalism == "qubo" and not space.is_binary:
            raise ModelFileError("a qubo model must have all dimensions 2")
        linear = [0.0] * space.n
        quad = {}
        for t in terms:
            if len(t) == 2:
                linear[_int(t[0])] += float(t[1])
            elif len(t) == 3:
                key = (_int(t[0]), _int(t[1]))
                quad[key] = quad.get(key, 0.0) + float(t[2])
            else:
                raise ModelFileError(f"bad {formalism} term {t!r}")
        model: Model = QudoModel(space, quad, tuple(linear), offset)
    elif formalism == "tqudo":
        entries = {}
        for t in terms:
            if len(t) != 5:
                raise ModelFileError(f"bad tqudo term {t!r}")
            key = tuple(_int(v) for v in t[:4])
            entries[key] = entries.get(key, 0.0) + float(t[4])
        model = TQudoModel(space, entries, offset)
    else:
        if not space.is_binary:
            raise ModelFileError("a hobo model must have all dimensions 2")
        poly = {(): offset} if offset else {}
        for t in terms:
            if len(t) < 2:
                raise ModelFileError(f"bad hobo term {t!r}")
            key = tuple(_int(v) for v in t[:-1])
            poly[key] = poly.get(key, 0.0) + float(t[-1])
        model = HoboModel(space.n, poly)
    return model, data.get("layout")


def write_model(path, model: Model, layout: dict | None = None) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model, layout), indent=1))


def read_model(path) -> tuple[Model, dict | None]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ModelFileError(f"{path}: expected a JSON object")
    return model_from_dict(data)
