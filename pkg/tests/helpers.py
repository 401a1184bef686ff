"""Independent oracles and random model generators shared by the test modules.

The naive evaluators below read a model's raw coefficient maps and sum them
term by term, without touching the library's own evaluate/energies code.
"""
from __future__ import annotations

import itertools
import math
import random

from qudokit.instances import DIRECTIONS, PegInstance, step
from qudokit.models import HoboModel, QudoModel, TQudoModel, VariableSpace


def assignments(dims):
    return itertools.product(*(range(d) for d in dims))


def naive_qudo(model: QudoModel, x) -> float:
    s = model.offset
    for (i, j), q in model.quad.items():
        s += q * x[i] * x[j]
    for i, d in enumerate(model.linear):
        s += d * x[i]
    return s


def naive_tqudo(model: TQudoModel, x) -> float:
    s = model.offset
    for (i, j, a, b), v in model.entries.items():
        if x[i] == a and x[j] == b:
            s += v
    return s


def naive_hobo(model: HoboModel, x) -> float:
    return sum(c * math.prod(x[i] for i in key) for key, c in model.terms.items())


def naive(model, x) -> float:
    if isinstance(model, QudoModel):
        return naive_qudo(model, x)
    if isinstance(model, TQudoModel):
        return naive_tqudo(model, x)
    return naive_hobo(model, x)


def _coef(rng: random.Random, integer: bool) -> float:
    return float(rng.randint(-5, 5)) if integer else rng.uniform(-3.0, 3.0)


def random_qudo(rng: random.Random, n: int, max_dim: int, integer: bool = True, min_dim: int = 2) -> QudoModel:
    dims = tuple(rng.randint(min_dim, max_dim) for _ in range(n))
    quad = {(i, j): _coef(rng, integer) for i in range(n) for j in range(i, n) if rng.random() < 0.6}
    linear = tuple(_coef(rng, integer) for _ in range(n))
    return QudoModel(VariableSpace(dims), quad, linear, _coef(rng, integer))


def random_tqudo(rng: random.Random, n: int, max_dim: int, integer: bool = True, entries: int | None = None,
                 min_dim: int = 2) -> TQudoModel:
    dims = tuple(rng.randint(min_dim, max_dim) for _ in range(n))
    count = entries if entries is not None else rng.randint(1, 3 * n * max_dim)
    out = {}
    for _ in range(count):
        i, j = sorted((rng.randrange(n), rng.randrange(n)))
        a = rng.randrange(dims[i])
        b = a if i == j else rng.randrange(dims[j])
        out[(i, j, a, b)] = _coef(rng, integer)
    return TQudoModel(VariableSpace(dims), out, _coef(rng, integer))


def random_hobo(rng: random.Random, n: int, terms: int, max_order: int = 3, integer: bool = True) -> HoboModel:
    poly = {(): _coef(rng, integer)}
    for _ in range(terms):
        k = rng.randint(1, min(max_order, n))
        poly[tuple(sorted(rng.sample(range(n), k)))] = _coef(rng, integer)
    return HoboModel(n, poly)


def peg_solutions(inst: PegInstance) -> list[list]:
    """Every move sequence ending with one ball on the initially empty cell (depth-first search)."""
    cells = set(inst.cells)
    found = []

    def rec(board, moves):
        if len(board) == 1:
            if board == {inst.empty}:
                found.append(list(moves))
            return
        for c in sorted(board):
            for d in DIRECTIONS:
                mid, target = step(c, d), step(c, d, 2)
                if mid in board and target in cells and target not in board:
                    rec((board - {c, mid}) | {target}, moves + [(c, d)])

    rec(frozenset(cells) - {inst.empty}, [])
    return found


PEG_BOARDS = {
    "1x3": [(0, 0), (0, 1), (0, 2)],
    "1x4": [(0, c) for c in range(4)],
    "1x6": [(0, c) for c in range(6)],
    "2x2": [(0, 0), (0, 1), (1, 0), (1, 1)],
    "L4": [(0, 0), (0, 1), (0, 2), (1, 2)],
    "L6": [(0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
    "T5": [(0, 0), (0, 1), (0, 2), (1, 1), (2, 1)],
}
