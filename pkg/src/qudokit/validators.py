"""Rule checkers for every problem, written without any cost function."""
from __future__ import annotations

from typing import Mapping, Sequence

from .instances import (
    DIRECTIONS,
    HashiCheck,
    HashiInstance,
    InshiInstance,
    KakuroInstance,
    KnapsackCheck,
    KnapsackInstance,
    Move,
    PegInstance,
    PegLayout,
    QueensInstance,
    TspCheck,
    TspInstance,
    hashi_crossings,
    hashi_edges,
    step,
)
from .models import Assignment


def validate_knapsack(inst: KnapsackInstance, counts: Sequence[int]) -> KnapsackCheck:
    if len(counts) != inst.num_classes:
        raise ValueError(f"expected {inst.num_classes} counts, got {len(counts)}")
    in_range = all(0 <= k <= c for k, c in zip(counts, inst.counts))
    weight = sum(w * k for w, k in zip(inst.weights, counts))
    value = sum(v * k for v, k in zip(inst.values, counts))
    return KnapsackCheck(in_range and weight <= inst.capacity, value, weight)


def validate_hashi(inst: HashiInstance, edges: Mapping[tuple[int, int], int]) -> HashiCheck:
    """Check degrees, crossings and connectivity of an edge multiset ``{(i, j): count}``."""
    admissible = hashi_edges(inst)
    allowed = set(admissible)
    n = len(inst.nodes)
    used: dict[tuple[int, int], int] = {}
    shape_ok = True
    for (i, j), m in edges.items():
        key = (min(i, j), max(i, j))
        if m == 0:
            continue
        if key not in allowed or not 0 < m <= inst.max_edges:
            shape_ok = False
            if key not in allowed:
                continue
        used[key] = used.get(key, 0) + m

    degree = [0] * n
    for (i, j), m in used.items():
        degree[i] += m
        degree[j] += m
    degrees_ok = shape_ok and all(degree[i] == inst.degree(i) for i in range(n))

    no_cross = shape_ok and not hashi_crossings(inst, list(used))

    adjacency: dict[int, set[int]] = {i: set() for i in range(n)}
    for i, j in used:
        adjacency[i].add(j)
        adjacency[j].add(i)
    seen = {0} if n else set()
    stack = list(seen)
    while stack:
        for k in adjacency[stack.pop()]:
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return HashiCheck(degrees_ok, no_cross, len(seen) == n)


def validate_tsp(inst: TspInstance, tour: Sequence[int]) -> TspCheck:
    V = inst.num_vertices
    is_perm = len(tour) == V and sorted(tour) == list(range(V))
    if len(tour) != V or any(not 0 <= v < V for v in tour):
        return TspCheck(False, float("nan"), False)
    cost = 0.0
    present = True
    for t in range(V):
        i, j = tour[t], tour[(t + 1) % V]
        if inst.raw_cost(t, i, j) is None:
            present = False
        cost += inst.edge_cost(t, i, j)
    return TspCheck(is_perm, cost, present)


def tour_cost(inst: TspInstance, tour: Sequence[int]) -> float:
    return validate_tsp(inst, tour).tour_cost


def validate_queens(inst: QueensInstance, columns: Sequence[int]) -> bool:
    N = inst.size
    if len(columns) != N or any(not 0 <= c < N for c in columns):
        return False
    for i in range(N):
        for j in range(i + 1, N):
            if columns[i] == columns[j] or abs(columns[i] - columns[j]) == j - i:
                return False
    return True


def _portion_ok(values: Sequence[int], total: int) -> bool:
    return sum(values) == total and len(set(values)) == len(values)


def validate_kakuro(inst: KakuroInstance, grid: Mapping[tuple[int, int], int]) -> bool:
    """``grid`` maps every white cell to its digit."""
    if set(grid) != set(inst.white):
        return False
    if any(not 1 <= v <= inst.max_digit for v in grid.values()):
        return False
    return all(_portion_ok([grid[c] for c in p.cells], p.total) for p in inst.portions)


def validate_inshi(inst: InshiInstance, grid: Sequence[Sequence[int]]) -> bool:
    N = inst.size
    if len(grid) != N or any(len(row) != N for row in grid):
        return False
    if any(not 1 <= v <= N for row in grid for v in row):
        return False
    for k in range(N):
        if len(set(grid[k])) != N or len({grid[i][k] for i in range(N)}) != N:
            return False
    return all(sum(grid[r][c] for r, c in reg.cells) == reg.total for reg in inst.regions)


def simulate_peg(inst: PegInstance, moves: Sequence[Move]) -> list[frozenset] | None:
    """Board states (sets of occupied cells) after each move, or ``None`` on an illegal move."""
    cells = set(inst.cells)
    board = frozenset(c for c in inst.cells if c != inst.empty)
    states = [board]
    for source, direction in moves:
        source = tuple(source)
        direction = tuple(direction)
        if direction not in DIRECTIONS:
            return None
        jumped, target = step(source, direction), step(source, direction, 2)
        if not {source, jumped, target} <= cells:
            return None
        if source not in board or jumped not in board or target in board:
            return None
        board = (board - {source, jumped}) | {target}
        states.append(board)
    return states


def validate_peg(inst: PegInstance, moves: Sequence[Move]) -> bool:
    states = simulate_peg(inst, moves)
    return states is not None and states[-1] == frozenset({inst.empty})


def trajectory_from_moves(inst: PegInstance, moves: Sequence[Move]) -> Assignment:
    """Binary assignment of the peg layout's state and action variables for a move sequence."""
    layout = PegLayout.build(inst)
    states = simulate_peg(inst, moves)
    if states is None:
        raise ValueError("move sequence is not legal")
    x = [0] * layout.num_vars
    for (cell, t), idx in layout.state_index.items():
        if t < len(states):
            x[idx] = int(cell in states[t])
    for t, (source, direction) in enumerate(moves):
        key = (tuple(source), t, tuple(direction))
        if key in layout.action_index:
            x[layout.action_index[key]] = 1
    return tuple(x)
