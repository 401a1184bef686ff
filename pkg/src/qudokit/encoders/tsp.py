from __future__ import annotations

import math
from itertools import combinations_with_replacement

from ..instances import TspInstance
from ..models import TQudoModel, VariableSpace
from .base import EncodedProblem, objective_lambda

PENALTIES = ("prime_log", "pairwise_delta")
PRIME_THRESHOLD = 1e-9


def prime_list(n: int) -> list[int]:
    """``(1, 2, 3, 5, 7, ...)``: one followed by the first ``n - 1`` primes."""
    out = [1]
    candidate = 2
    while len(out) < n:
        if all(candidate % p for p in out[1:] if p * p <= candidate):
            out.append(candidate)
        candidate += 1
    return out[:n]


def prime_separation(V: int, exhaustive_limit: int = 10) -> float:
    """Smallest unweighted prime-log penalty over non-permutations of length ``V``.

    Exact by multiset enumeration up to ``exhaustive_limit`` vertices, a
    product-gap lower bound beyond.
    """
    logs = [math.log2(p) for p in prime_list(V)]
    target = sum(logs)
    if V <= exhaustive_limit:
        best = math.inf
        identity = tuple(range(V))
        for combo in combinations_with_replacement(range(V), V):
            if combo != identity:
                best = min(best, (sum(logs[v] for v in combo) - target) ** 2)
        return best
    largest = max(prime_list(V)[-1] ** V, 2 ** target)
    return math.log2(1.0 + 1.0 / largest) ** 2


class _Builder:
    """Accumulates T-QUDO entries over timesteps, folding in a fixed first node."""

    def __init__(self, V: int, fix_first: bool):
        self.V = V
        self.fix_first = fix_first
        self.entries: dict[tuple[int, int, int, int], float] = {}
        self.offset = 0.0

    def var(self, t: int) -> int | None:
        if self.fix_first:
            return None if t == 0 else t - 1
        return t

    def _add(self, key, v: float) -> None:
        self.entries[key] = self.entries.get(key, 0.0) + v

    def unary(self, t: int, a: int, v: float) -> None:
        i = self.var(t)
        if i is None:
            if a == 0:
                self.offset += v
        else:
            self._add((i, i, a, a), v)

    def pair(self, t: int, u: int, a: int, b: int, v: float) -> None:
        i, j = self.var(t), self.var(u)
        if i is None and j is None:
            if a == 0 and b == 0:
                self.offset += v
        elif i is None:
            if a == 0:
                self._add((j, j, b, b), v)
        elif j is None:
            if b == 0:
                self._add((i, i, a, a), v)
        else:
            self._add((i, j, a, b), v)

    def model(self, names) -> TQudoModel:
        n = self.V - 1 if self.fix_first else self.V
        return TQudoModel(VariableSpace((self.V,) * n, names), self.entries, self.offset)


def encode_tsp(inst: TspInstance, penalty: str = "pairwise_delta", lam: float | None = None,
               fix_first: bool = False) -> EncodedProblem:
    """Tour cost between consecutive timesteps plus a non-repetition penalty.

    ``prime_log`` adds ``lam * (sum_t log2 p[x_t] - sum_i log2 p[i])**2`` with
    ``p = (1, 2, 3, 5, ...)``; ``pairwise_delta`` adds ``lam`` for every pair of
    timesteps visiting the same vertex.
    """
    if penalty not in PENALTIES:
        raise ValueError(f"unknown TSP penalty {penalty!r}; expected one of {PENALTIES}")
    V = inst.num_vertices
    if fix_first and V < 2:
        raise ValueError("need at least two vertices")
    steps = [t for t in range(V) if not (fix_first and t == 0)]
    names = tuple(f"x[{t}]" for t in steps)

    tour = _Builder(V, fix_first)
    for t in range(V):
        u = (t + 1) % V
        for a in range(V):
            for b in range(V):
                c = inst.edge_cost(t, a, b)
                if c:
                    tour.pair(t, u, a, b, c)

    if lam is None:
        lam = objective_lambda(inst.edge_cost(t, a, b) for t in range(V if inst.time_dependent else 1)
                               for a in range(V) for b in range(V))
        if penalty == "prime_log":
            lam /= prime_separation(V)

    rep = _Builder(V, fix_first)
    if penalty == "prime_log":
        logs = [math.log2(p) for p in prime_list(V)]
        target = sum(logs)
        rep.offset += lam * target * target
        for t in range(V):
            for a in range(V):
                rep.unary(t, a, lam * (logs[a] * logs[a] - 2.0 * target * logs[a]))
            for u in range(t + 1, V):
                for a in range(V):
                    for b in range(V):
                        if logs[a] and logs[b]:
                            rep.pair(t, u, a, b, 2.0 * lam * logs[a] * logs[b])
        threshold = PRIME_THRESHOLD
    else:
        for t in range(V):
            for u in range(t + 1, V):
                for a in range(V):
                    rep.pair(t, u, a, a, lam)
        threshold = 0.0

    constraint = rep.model(names)
    model = tour.model(names) + constraint

    def decode(x: tuple[int, ...]) -> list[int]:
        return [0, *x] if fix_first else list(x)

    return EncodedProblem(
        model=model,
        decoder=decode,
        feasibility_threshold=threshold,
        constraint_model=constraint,
        layout=names,
        info={"penalty": penalty, "lambda": lam, "fix_first": fix_first},
    )

