"""Kakuro and Inshi no Heya: digit grids with sum regions and no repeats.

Model variables hold ``digit - 1`` so that digit 1 maps to value 0.
"""
from __future__ import annotations

from itertools import combinations

from ..instances import Cell, InfeasibleInstanceError, InshiInstance, KakuroInstance
from ..models import TQudoModel, VariableSpace
from ..models import qudo_to_tqudo
from ..penalties import squared_linear
from .base import EncodedProblem


def _sum_term(space: VariableSpace, idx: list[int], total: int, lam: float) -> TQudoModel:
    # sum(x + 1) - S  ==  sum(x) - (S - k)
    return qudo_to_tqudo(squared_linear(space, {i: -1.0 for i in idx}, total - len(idx), lam))


def _repeat_term(space: VariableSpace, pairs, values: int, lam: float) -> TQudoModel:
    entries = {}
    for i, j in pairs:
        for a in range(values):
            key = (min(i, j), max(i, j), a, a)
            entries[key] = entries.get(key, 0.0) + lam
    return TQudoModel(space, entries)


def encode_kakuro(inst: KakuroInstance, lam_sum: float = 1.0, lam_rep: float = 1.0) -> EncodedProblem:
    M = inst.max_digit
    index = {cell: k for k, cell in enumerate(inst.white)}
    for p in inst.portions:
        k = len(p.cells)
        lo, hi = k * (k + 1) // 2, k * (2 * M - k + 1) // 2
        if k > M or not lo <= p.total <= hi:
            raise InfeasibleInstanceError(f"portion {p.cells} cannot sum to {p.total} with digits 1..{M}")
    names = tuple(f"x[{r},{c}]" for r, c in inst.white)
    space = VariableSpace((M,) * len(inst.white), names)
    model = TQudoModel(space)
    pairs = []
    for p in inst.portions:
        idx = [index[c] for c in p.cells]
        model = model + _sum_term(space, idx, p.total, lam_sum)
        pairs.extend(combinations(idx, 2))
    model = model + _repeat_term(space, pairs, M, lam_rep)

    def decode(x: tuple[int, ...]) -> dict[Cell, int]:
        return {cell: x[k] + 1 for cell, k in index.items()}

    return EncodedProblem(model, decode, 0.0, model, names, {"lambda_sum": lam_sum, "lambda_rep": lam_rep})


def encode_inshi(inst: InshiInstance, lam_sum: float = 1.0, lam_rep: float = 1.0) -> EncodedProblem:
    N = inst.size
    for reg in inst.regions:
        k = len(reg.cells)
        if not k <= reg.total <= N * k:
            raise InfeasibleInstanceError(f"region {reg.cells} cannot sum to {reg.total} with values 1..{N}")
    index = {(r, c): r * N + c for r in range(N) for c in range(N)}
    names = tuple(f"x[{r},{c}]" for r in range(N) for c in range(N))
    dim = max(N, 2)
    space = VariableSpace((dim,) * (N * N), names)
    model = TQudoModel(space)
    for reg in inst.regions:
        model = model + _sum_term(space, [index[c] for c in reg.cells], reg.total, lam_sum)
    pairs = []
    for r in range(N):
        for c in range(N):
            pairs.extend((index[(r, c)], index[(r2, c)]) for r2 in range(r + 1, N))
            pairs.extend((index[(r, c)], index[(r, c2)]) for c2 in range(c + 1, N))
    model = model + _repeat_term(space, pairs, dim, lam_rep)
    if dim > N:
        # 1x1 board: the padded value would decode to digit 2
        model = model + TQudoModel(space, {(i, i, a, a): lam_rep for i in range(N * N) for a in range(N, dim)})

    def decode(x: tuple[int, ...]) -> list[list[int]]:
        return [[x[r * N + c] + 1 for c in range(N)] for r in range(N)]

    return EncodedProblem(model, decode, 0.0, model, names, {"lambda_sum": lam_sum, "lambda_rep": lam_rep})
