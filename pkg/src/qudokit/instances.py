"""Problem instances, domain solutions and the geometry shared by encoders and validators."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

Cell = tuple[int, int]


class InfeasibleInstanceError(ValueError):
    """The instance has no solution for a reason detectable before encoding."""


@dataclass(frozen=True)
class KnapsackInstance:
    values: tuple[float, ...]
    weights: tuple[int, ...]
    counts: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not len(self.values) == len(self.weights) == len(self.counts):
            raise ValueError("values, weights and counts must have equal length")
        if self.capacity < 0:
            raise ValueError("capacity must be non-negative")
        if any(w <= 0 for w in self.weights) or any(c <= 0 for c in self.counts):
            raise ValueError("weights and counts must be positive")

    @property
    def num_classes(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class HashiInstance:
    nodes: tuple[tuple[int, int, int], ...]
    max_edges: int = 2

    def __post_init__(self):
        nodes = tuple((int(r), int(c), int(d)) for r, c, d in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len({(r, c) for r, c, _ in nodes}) != len(nodes):
            raise ValueError("node positions must be distinct")
        if self.max_edges < 1:
            raise ValueError("max_edges must be >= 1")
        if any(d < 0 for _, _, d in nodes):
            raise ValueError("node degrees must be non-negative")

    def position(self, i: int) -> Cell:
        r, c, _ = self.nodes[i]
        return (r, c)

    def degree(self, i: int) -> int:
        return self.nodes[i][2]


def hashi_edges(inst: HashiInstance) -> list[tuple[int, int]]:
    """Admissible edges ``(i, j)``, ``i < j``: same row or column, no node strictly between."""
    edges = []
    n = len(inst.nodes)
    for i in range(n):
        ri, ci, _ = inst.nodes[i]
        for j in range(i + 1, n):
            rj, cj, _ = inst.nodes[j]
            if ri == rj:
                lo, hi = sorted((ci, cj))
                blocked = any(r == ri and lo < c < hi for r, c, _ in inst.nodes)
            elif ci == cj:
                lo, hi = sorted((ri, rj))
                blocked = any(c == ci and lo < r < hi for r, c, _ in inst.nodes)
            else:
                continue
            if not blocked:
                edges.append((i, j))
    return edges


def segments_cross(p1: Cell, p2: Cell, q1: Cell, q2: Cell) -> bool:
    """True when a horizontal and a vertical segment meet in both interiors."""
    if p1[0] == p2[0] and q1[1] == q2[1]:
        h, v = (p1, p2), (q1, q2)
    elif p1[1] == p2[1] and q1[0] == q2[0]:
        h, v = (q1, q2), (p1, p2)
    else:
        return False
    row = h[0][0]
    col = v[0][1]
    c_lo, c_hi = sorted((h[0][1], h[1][1]))
    r_lo, r_hi = sorted((v[0][0], v[1][0]))
    return c_lo < col < c_hi and r_lo < row < r_hi


def hashi_crossings(inst: HashiInstance, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Index pairs ``(e, f)``, ``e < f``, of edges that cross each other."""
    out = []
    for e in range(len(edges)):
        i, j = edges[e]
        for f in range(e + 1, len(edges)):
            k, l = edges[f]
            if segments_cross(inst.position(i), inst.position(j), inst.position(k), inst.position(l)):
                out.append((e, f))
    return out


@dataclass(frozen=True)
class TspInstance:
    """Costs are ``E[i][j]`` or time-dependent ``E[t][i][j]``; ``None`` marks a missing edge."""

    costs: tuple
    missing_edge_cost: float | None = None

    def __post_init__(self):
        costs = _freeze_nested(self.costs)
        object.__setattr__(self, "costs", costs)
        V = len(costs)
        if V < 2:
            raise ValueError("need at least two vertices")
        if self.time_dependent:
            if any(len(m) != V or any(len(r) != V for r in m) for m in costs):
                raise ValueError("time-dependent costs must be V x V x V")
        elif any(len(r) != V for r in costs):
            raise ValueError("cost matrix must be square")

    @property
    def time_dependent(self) -> bool:
        return isinstance(self.costs[0][0], tuple)

    @property
    def num_vertices(self) -> int:
        return len(self.costs)

    def raw_cost(self, t: int, i: int, j: int):
        return self.costs[t][i][j] if self.time_dependent else self.costs[i][j]

    def finite_costs(self) -> list[float]:
        V = self.num_vertices
        steps = range(V) if self.time_dependent else [0]
        return [c for t in steps for i in range(V) for j in range(V) if (c := self.raw_cost(t, i, j)) is not None]

    def edge_cost(self, t: int, i: int, j: int) -> float:
        c = self.raw_cost(t, i, j)
        if c is None:
            if self.missing_edge_cost is not None:
                return float(self.missing_edge_cost)
            return 1.0 + sum(abs(v) for v in self.finite_costs())
        return float(c)


def _freeze_nested(x):
    if isinstance(x, (list, tuple)):
        return tuple(_freeze_nested(v) for v in x)
    return None if x is None else float(x)


@dataclass(frozen=True)
class QueensInstance:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("board size must be >= 1")


@dataclass(frozen=True)
class Portion:
    cells: tuple[Cell, ...]
    total: int


@dataclass(frozen=True)
class KakuroInstance:
    """White cells with row and column portions; digits run from 1 to ``max_digit``."""

    white: tuple[Cell, ...]
    rows: tuple[Portion, ...]
    columns: tuple[Portion, ...]
    max_digit: int = 9

    def __post_init__(self):
        white = tuple(sorted({(int(r), int(c)) for r, c in self.white}))
        object.__setattr__(self, "white", white)
        wset = set(white)
        for family, axis in ((self.rows, 0), (self.columns, 1)):
            seen: set[Cell] = set()
            for p in family:
                cells = set(p.cells)
                if not cells <= wset:
                    raise ValueError("portion references a non-white cell")
                if cells & seen:
                    raise ValueError("portions of one orientation must be disjoint")
                if len({c[axis] for c in cells}) > 1:
                    raise ValueError("a portion must lie in a single row or column")
                seen |= cells
        if self.max_digit < 2:
            raise ValueError("max_digit must be >= 2")

    @property
    def portions(self) -> tuple[Portion, ...]:
        return self.rows + self.columns


@dataclass(frozen=True)
class InshiInstance:
    size: int
    regions: tuple[Portion, ...]

    def __post_init__(self):
        cells = [c for r in self.regions for c in r.cells]
        board = {(i, j) for i in range(self.size) for j in range(self.size)}
        if len(cells) != len(set(cells)) or set(cells) != board:
            raise ValueError("regions must partition the board")


DIRECTIONS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (1, 0), (2, 0))
DISPLACEMENT = (0, -1, 1)


def step(cell: Cell, direction: tuple[int, int], times: int = 1) -> Cell:
    k1, k2 = direction
    return (cell[0] + times * DISPLACEMENT[k1], cell[1] + times * DISPLACEMENT[k2])


@dataclass(frozen=True)
class PegInstance:
    cells: tuple[Cell, ...]
    empty: Cell

    def __post_init__(self):
        cells = tuple(sorted({(int(r), int(c)) for r, c in self.cells}))
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "empty", (int(self.empty[0]), int(self.empty[1])))
        if self.empty not in cells:
            raise ValueError("the initial empty cell must be on the board")
        if len(cells) < 3:
            raise ValueError("board needs at least 3 cells")

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    @property
    def timesteps(self) -> int:
        return self.num_cells - 1


Move = tuple[Cell, tuple[int, int]]


@dataclass(frozen=True)
class PegLayout:
    """Variable indexing for the peg solitaire HOBO.

    Cell states at the first and last timestep are constants; every other
    ``x[cell, t]`` and every on-board action ``a[cell, t, direction]`` is a
    binary variable.
    """

    instance: PegInstance
    state_index: dict = field(default_factory=dict)
    action_index: dict = field(default_factory=dict)
    names: tuple[str, ...] = ()

    @classmethod
    def build(cls, inst: PegInstance) -> "PegLayout":
        T = inst.timesteps
        cellset = set(inst.cells)
        state_index: dict[tuple[Cell, int], int] = {}
        action_index: dict[tuple[Cell, int, tuple[int, int]], int] = {}
        names: list[str] = []
        for t in range(1, T - 1):
            for cell in inst.cells:
                state_index[(cell, t)] = len(names)
                names.append(f"x[{cell[0]},{cell[1]},{t}]")
        for t in range(T - 1):
            for cell in inst.cells:
                for d in DIRECTIONS:
                    if step(cell, d) in cellset and step(cell, d, 2) in cellset:
                        action_index[(cell, t, d)] = len(names)
                        names.append(f"a[{cell[0]},{cell[1]},{t},{d[0]}{d[1]}]")
        return cls(inst, state_index, action_index, tuple(names))

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def fixed_state(self, cell: Cell, t: int) -> int | None:
        """Constant cell state at the boundary timesteps, else ``None``."""
        if t == 0:
            return 0 if cell == self.instance.empty else 1
        if t == self.instance.timesteps - 1:
            return 1 if cell == self.instance.empty else 0
        return None


@dataclass(frozen=True)
class KnapsackCheck:
    feasible: bool
    value: float
    weight: int

    @property
    def accepted(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class HashiCheck:
    degrees_ok: bool
    no_cross: bool
    connected: bool

    @property
    def accepted(self) -> bool:
        return self.degrees_ok and self.no_cross and self.connected


@dataclass(frozen=True)
class TspCheck:
    is_permutation: bool
    tour_cost: float
    edges_present: bool = True

    @property
    def accepted(self) -> bool:
        return self.is_permutation and self.edges_present
