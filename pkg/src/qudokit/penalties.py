"""Constraint-to-penalty builders.

Each builder returns a model fragment over a given variable space; fragments
are summed into larger models. Every fragment is zero exactly on satisfying
assignments and at least ``lam`` on violating ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .models import DimensionError, QudoModel, TQudoModel, VariableSpace


def _check_lam(lam: float) -> None:
    if not lam > 0:
        raise ValueError(f"penalty weight must be positive, got {lam}")


def squared_linear(space: VariableSpace, coeffs: dict[int, float], constant: float, lam: float = 1.0) -> QudoModel:
    """``lam * (constant + sum_i coeffs[i] * x_i)**2`` expanded into a QUDO fragment."""
    quad: dict[tuple[int, int], float] = {}
    linear = [0.0] * space.n
    items = sorted(coeffs.items())
    for p, (i, ci) in enumerate(items):
        quad[(i, i)] = quad.get((i, i), 0.0) + lam * ci * ci
        linear[i] += 2.0 * lam * constant * ci
        for j, cj in items[p + 1:]:
            quad[(i, j)] = quad.get((i, j), 0.0) + 2.0 * lam * ci * cj
    return QudoModel(space, quad, tuple(linear), lam * constant * constant)


def weighted_count_eq_penalty(space: VariableSpace, variables: Sequence[int], weights: Sequence[float],
                              target: float, lam: float) -> QudoModel:
    """``lam * (W - sum_i a_i x_i)**2``."""
    _check_lam(lam)
    if len(weights) != len(variables):
        raise ValueError("one weight per variable")
    coeffs: dict[int, float] = {}
    for i, a in zip(variables, weights):
        coeffs[i] = coeffs.get(i, 0.0) - a
    return squared_linear(space, coeffs, target, lam)


def count_eq_penalty(space: VariableSpace, variables: Sequence[int], target: float, lam: float) -> QudoModel:
    """``lam * (N - sum_i x_i)**2``: zero iff the selected values sum to ``N``."""
    if target < 0:
        raise ValueError("target must be non-negative")
    return weighted_count_eq_penalty(space, variables, [1.0] * len(variables), target, lam)


@dataclass(frozen=True)
class SlackDigit:
    index: int
    coefficient: int
    dim: int


def bounded_digits(upper: int, base: int) -> list[tuple[int, int]]:
    """``(coefficient, dim)`` digits whose weighted sums cover ``[0, upper]``.

    Lower digits are positional (``base**j``, dimension ``base``); the top digit
    gets a reduced coefficient and, if possible, a reduced dimension so the
    range ends exactly at ``upper``. When no exact top digit exists the range
    overshoots ``upper`` by less than ``base - 1``.
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    if upper <= 0:
        return []
    k = 1
    while base ** k < upper + 1:
        k += 1
    low = [(base ** j, base) for j in range(k - 1)]
    low_max = base ** (k - 1) - 1
    rest = upper - low_max
    steps = -(-rest // (low_max + 1))
    exact = [m for m in range(steps, base) if rest % m == 0 and rest // m <= low_max + 1]
    if exact:
        m = exact[0]
        return low + [(rest // m, m + 1)]
    return low + [(-(-rest // (base - 1)), base)]


def digit_count(upper: int, base: int) -> int:
    """``ceil(log_base(upper + 1))``."""
    return len(bounded_digits(upper, base))


def weighted_leq_penalty(space: VariableSpace, variables: Sequence[int], weights: Sequence[int], bound: int,
                         base: int, lam: float) -> tuple[QudoModel, list[SlackDigit]]:
    """Penalty for ``sum_i a_i x_i <= Q`` using slack digits of base ``base``.

    Returns a fragment over ``space`` extended by the slack variables and their
    descriptors. Minimized over slack values, the fragment is zero iff the
    inequality holds.
    """
    _check_lam(lam)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if any(int(a) != a for a in weights):
        raise ValueError("weights must be integers")
    # a negative weight can push the left side below zero; the slack must cover the gap
    reach = bound - sum(min(0, int(a)) * (space.dims[i] - 1) for i, a in zip(variables, weights))
    digits = bounded_digits(reach, base)
    dims = space.dims + tuple(d for _, d in digits)
    names = None
    if space.names is not None:
        names = space.names + tuple(f"slack[{len(space.names) + k}]" for k in range(len(digits)))
    extended = VariableSpace(dims, names)
    slack = [SlackDigit(space.n + k, c, d) for k, (c, d) in enumerate(digits)]
    coeffs: dict[int, float] = {}
    for i, a in zip(variables, weights):
        coeffs[i] = coeffs.get(i, 0.0) - a
    for s in slack:
        coeffs[s.index] = -float(s.coefficient)
    return squared_linear(extended, coeffs, bound, lam), slack


def nonzero_count_eq_tqudo(space: VariableSpace, variables: Sequence[int], target: int, lam: float) -> TQudoModel:
    """``lam * (N - sum_i H(x_i))**2`` with the discrete step ``H(0) = 0``."""
    _check_lam(lam)
    variables = sorted(set(variables))
    if target > len(variables):
        raise ValueError("target exceeds the number of variables")
    dims = space.dims
    entries: dict[tuple[int, int, int, int], float] = {}
    for p, i in enumerate(variables):
        for a in range(1, dims[i]):
            entries[(i, i, a, a)] = lam * (1 - 2 * target)
        for j in variables[p + 1:]:
            for a in range(1, dims[i]):
                for b in range(1, dims[j]):
                    entries[(i, j, a, b)] = 2.0 * lam
    return TQudoModel(space, entries, lam * target * target)


def _check_values(space: VariableSpace, i: int, j: int, a: int, b: int) -> None:
    if i == j:
        raise ValueError("pair constraints need two distinct variables")
    if not (0 <= a < space.dims[i] and 0 <= b < space.dims[j]):
        raise DimensionError(f"values ({a}, {b}) out of range for variables ({i}, {j})")


def non_coincidence_tqudo(space: VariableSpace, i: int, j: int, a: int, b: int, lam: float) -> TQudoModel:
    """Forbid ``x_i == a and x_j == b``."""
    _check_lam(lam)
    _check_values(space, i, j, a, b)
    return TQudoModel(space, {(i, j, a, b): lam})


def non_equality_tqudo(space: VariableSpace, i: int, j: int, a: int, b: int, lam: float) -> TQudoModel:
    """Forbid ``x_i != a and x_j != b``."""
    _check_lam(lam)
    _check_values(space, i, j, a, b)
    entries = {(i, j, p, q): lam for p in range(space.dims[i]) if p != a for q in range(space.dims[j]) if q != b}
    return TQudoModel(space, entries)


def implication_tqudo(space: VariableSpace, i: int, j: int, a: int, b: int, lam: float) -> TQudoModel:
    """Enforce ``x_i == a  =>  x_j == b``."""
    _check_lam(lam)
    _check_values(space, i, j, a, b)
    return TQudoModel(space, {(i, j, a, q): lam for q in range(space.dims[j]) if q != b})


def anti_implication_tqudo(space: VariableSpace, i: int, j: int, a: int, b: int, lam: float) -> TQudoModel:
    """Enforce ``x_i != a  =>  x_j != b``."""
    _check_lam(lam)
    _check_values(space, i, j, a, b)
    return TQudoModel(space, {(i, j, p, b): lam for p in range(space.dims[i]) if p != a})


PAIR_KINDS = ("non_coincidence", "non_equality", "implication", "anti_implication")


def _eq_factor(a: int) -> tuple[int, int]:
    # (1 - (-1)**a (x - a)) as constant + slope * x
    sign = -1 if a else 1
    return 1 + sign * a, -sign


def _neq_factor(a: int) -> tuple[int, int]:
    # (-1)**a (x - a)
    sign = -1 if a else 1
    return -sign * a, sign


def qubo_pair_constraints(space: VariableSpace, kind: str, i: int, j: int, a: int, b: int,
                          lam: float) -> QudoModel:
    """Binary pair penalties from products of the affine indicators of ``x == a`` / ``x != a``."""
    _check_lam(lam)
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("binary pair constraints need a, b in {0, 1}")
    if space.dims[i] != 2 or space.dims[j] != 2:
        raise DimensionError("binary pair constraints need binary variables")
    if i == j:
        raise ValueError("pair constraints need two distinct variables")
    factors = {
        "non_coincidence": (_eq_factor(a), _eq_factor(b)),
        "non_equality": (_neq_factor(a), _neq_factor(b)),
        "implication": (_eq_factor(a), _neq_factor(b)),
        "anti_implication": (_neq_factor(a), _eq_factor(b)),
    }
    if kind not in factors:
        raise ValueError(f"unknown pair constraint {kind!r}")
    (ci, si), (cj, sj) = factors[kind]
    linear = [0.0] * space.n
    linear[i] += lam * si * cj
    linear[j] += lam * ci * sj
    return QudoModel(space, {(i, j): lam * si * sj}, tuple(linear), lam * ci * cj)


TQUDO_PAIR_BUILDERS = {
    "non_coincidence": non_coincidence_tqudo,
    "non_equality": non_equality_tqudo,
    "implication": implication_tqudo,
    "anti_implication": anti_implication_tqudo,
}
