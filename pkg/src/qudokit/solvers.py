"""Exhaustive enumeration and simulated annealing over mixed-radix assignments."""
from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .models import Assignment, HoboModel, Model, QudoModel, qudo_to_tqudo

DEFAULT_CAP = 10**7
TIE_TOLERANCE = 1e-9


class CapacityError(RuntimeError):
    """The search space is larger than the enumeration cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"search space has {size} assignments, cap is {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class SolveResult:
    best_assignment: Assignment
    best_cost: float
    all_optima: tuple[Assignment, ...] | None
    evaluations: int
    seed: int | None = None
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "best_assignment": list(self.best_assignment),
            "best_cost": self.best_cost,
            "all_optima": None if self.all_optima is None else [list(x) for x in self.all_optima],
            "evaluations": self.evaluations,
            "seed": self.seed,
            "wall_time": self.wall_time,
        }


def _digits(indices: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    out = np.empty((indices.size, len(dims)), dtype=np.int64)
    rest = indices.copy()
    for k in reversed(range(len(dims))):
        out[:, k] = rest % dims[k]
        rest //= dims[k]
    return out


def solve_exhaustive(model: Model, cap: int = DEFAULT_CAP, chunk: int = 1 << 16) -> SolveResult:
    """Evaluate every assignment; return a minimum and all ties within 1e-9."""
    start = time.perf_counter()
    dims = model.space.dims
    size = model.space.size
    if size > cap:
        raise CapacityError(size, cap)
    best = math.inf
    optima: list[np.ndarray] = []
    for lo in range(0, size, chunk):
        X = _digits(np.arange(lo, min(size, lo + chunk), dtype=np.int64), dims)
        E = model.energies(X)
        m = float(E.min())
        if m < best - TIE_TOLERANCE:
            best = m
            optima = [X[E <= best + TIE_TOLERANCE]]
        elif m <= best + TIE_TOLERANCE:
            best = min(best, m)
            optima.append(X[E <= best + TIE_TOLERANCE])
    rows = np.concatenate(optima) if optima else np.empty((0, len(dims)), dtype=np.int64)
    all_optima = tuple(tuple(int(v) for v in r) for r in rows)
    costs = [model.evaluate(x) for x in all_optima]
    low = min(costs)
    all_optima = tuple(x for x, c in zip(all_optima, costs) if c <= low + TIE_TOLERANCE)
    best_x = all_optima[0]
    return SolveResult(best_x, model.evaluate(best_x), all_optima, size, None, time.perf_counter() - start)


class LocalEvaluator:
    """Exact cost changes of single-variable moves, touching only affected terms."""

    def __init__(self, model: Model):
        self.model = model
        self.dims = model.space.dims
        if isinstance(model, HoboModel):
            self.kind = "hobo"
            self.touching: list[list[tuple[float, tuple[int, ...]]]] = [[] for _ in range(model.num_vars)]
            for key, c in model.terms.items():
                for i in key:
                    self.touching[i].append((c, tuple(k for k in key if k != i)))
        else:
            self.kind = "pairwise"
            tq = qudo_to_tqudo(model) if isinstance(model, QudoModel) else model
            unary, pairs = tq.pair_tables()
            self.unary = [t.tolist() for t in unary]
            self.neighbors: list[list[tuple[int, list[list[float]]]]] = [[] for _ in self.dims]
            for (i, j), table in pairs.items():
                self.neighbors[i].append((j, table.tolist()))
                self.neighbors[j].append((i, table.T.tolist()))

    def delta(self, x, i: int, new: int) -> float:
        old = x[i]
        if new == old:
            return 0.0
        if self.kind == "hobo":
            s = 0.0
            for c, others in self.touching[i]:
                for k in others:
                    if not x[k]:
                        break
                else:
                    s += c
            return (new - old) * s
        u = self.unary[i]
        d = u[new] - u[old]
        for j, table in self.neighbors[i]:
            xj = x[j]
            d += table[new][xj] - table[old][xj]
        return d


def incremental_delta(model: Model, x, i: int, new_value: int) -> float:
    """``evaluate(model, x') - evaluate(model, x)`` for ``x'`` equal to ``x`` with ``x'[i] = new_value``."""
    x = model.space.check(x)
    if not 0 <= new_value < model.space.dims[i]:
        raise ValueError(f"value {new_value} out of range for variable {i}")
    return LocalEvaluator(model).delta(x, i, new_value)


@dataclass(frozen=True)
class AnnealConfig:
    initial_temp: float = 5.0
    final_temp: float = 0.05
    sweeps: int = 1000
    restarts: int = 10
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not self.initial_temp >= self.final_temp > 0:
            raise ValueError("need initial_temp >= final_temp > 0")
        if self.sweeps < 1 or self.restarts < 1:
            raise ValueError("sweeps and restarts must be >= 1")


def _chain(model: Model, config: AnnealConfig, chain_seed: int) -> tuple[float, Assignment, int]:
    rng = random.Random(chain_seed)
    ev = LocalEvaluator(model)
    dims = model.space.dims
    n = len(dims)
    x = [rng.randrange(d) for d in dims]
    cost = model.evaluate(x)
    best_cost, best_x = cost, tuple(x)
    evaluations = 1
    if n == 0:
        return best_cost, best_x, evaluations
    ratio = (config.final_temp / config.initial_temp) ** (1.0 / max(1, config.sweeps - 1))
    temp = config.initial_temp
    for _ in range(config.sweeps):
        for i in range(n):
            new = rng.randrange(dims[i] - 1)
            if new >= x[i]:
                new += 1
            d = ev.delta(x, i, new)
            evaluations += 1
            if d <= 0 or rng.random() < math.exp(-d / temp):
                x[i] = new
                cost += d
                if cost < best_cost - 1e-12:
                    best_cost, best_x = cost, tuple(x)
        temp *= ratio
    return model.evaluate(best_x), best_x, evaluations


def _chain_seeds(config: AnnealConfig) -> list[int]:
    states = np.random.SeedSequence(config.seed).spawn(config.restarts)
    return [int(s.generate_state(1, dtype=np.uint64)[0]) for s in states]


def solve_anneal(model: Model, config: AnnealConfig = AnnealConfig()) -> SolveResult:
    """Best assignment over independent Metropolis chains with geometric cooling."""
    start = time.perf_counter()
    seeds = _chain_seeds(config)
    if config.threads > 1:
        with ProcessPoolExecutor(config.threads) as pool:
            runs = list(pool.map(_chain, [model] * len(seeds), [config] * len(seeds), seeds))
    else:
        runs = [_chain(model, config, s) for s in seeds]
    # ties resolved by restart order, so thread count never changes the result
    best_idx = min(range(len(runs)), key=lambda k: (runs[k][0], k))
    cost, x, _ = runs[best_idx]
    evaluations = sum(r[2] for r in runs)
    return SolveResult(x, cost, None, evaluations, config.seed, time.perf_counter() - start)


def solve(model: Model, method: str = "exhaustive", config: AnnealConfig | None = None,
          cap: int = DEFAULT_CAP) -> SolveResult:
    if method == "exhaustive":
        return solve_exhaustive(model, cap)
    if method == "anneal":
        return solve_anneal(model, config or AnnealConfig())
    raise ValueError(f"unknown method {method!r}")


__all__ = [
    "AnnealConfig",
    "CapacityError",
    "LocalEvaluator",
    "SolveResult",
    "incremental_delta",
    "solve",
    "solve_anneal",
    "solve_exhaustive",
]
