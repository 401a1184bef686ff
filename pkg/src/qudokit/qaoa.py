"""Mixed-radix statevector simulator for qudit phase gates and a toy QAOA loop.

Sign convention: the cost layer is ``exp(-i * gamma * C)``, so a cost
coefficient ``c`` is applied as a phase gate with angle ``theta = -gamma * c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .models import HoboModel, Model, QudoModel, TQudoModel

REGISTER_LIMIT = 2**14


class RegisterLimitError(ValueError):
    def __init__(self, total: int, limit: int = REGISTER_LIMIT):
        super().__init__(f"register dimension {total} exceeds the limit {limit}")
        self.total = total


@dataclass(frozen=True)
class QuditState:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(self.dims, dtype=np.int64)):
            raise ValueError("amplitude count does not match the register dimensions")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def uniform(cls, dims: Sequence[int]) -> "QuditState":
        total = _check_register(dims)
        return cls(tuple(dims), np.full(total, 1.0 / np.sqrt(total), dtype=complex))

    @classmethod
    def basis(cls, dims: Sequence[int], values: Sequence[int]) -> "QuditState":
        total = _check_register(dims)
        amps = np.zeros(total, dtype=complex)
        amps[np.ravel_multi_index(tuple(values), tuple(dims))] = 1.0
        return cls(tuple(dims), amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def _with(self, tensor: np.ndarray) -> "QuditState":
        return QuditState(self.dims, tensor.reshape(-1))


def _check_register(dims: Sequence[int]) -> int:
    total = int(np.prod(dims, dtype=np.int64))
    if total > REGISTER_LIMIT:
        raise RegisterLimitError(total)
    return total


def _axis_vector(state: QuditState, j: int, values: np.ndarray) -> np.ndarray:
    shape = [1] * len(state.dims)
    shape[j] = state.dims[j]
    return values.reshape(shape)


def _check_qudit(state: QuditState, j: int) -> None:
    if not 0 <= j < len(state.dims):
        raise IndexError(f"qudit {j} out of range")


def apply_phase_vector(state: QuditState, j: int, phases: np.ndarray) -> QuditState:
    """Multiply basis value ``k`` of qudit ``j`` by ``phases[k]``."""
    _check_qudit(state, j)
    return state._with(state.tensor * _axis_vector(state, j, phases))


def apply_P(state: QuditState, j: int, theta: float) -> QuditState:
    k = np.arange(state.dims[j])
    return apply_phase_vector(state, j, np.exp(1j * theta * k))


def apply_P2(state: QuditState, j: int, theta: float) -> QuditState:
    k = np.arange(state.dims[j])
    return apply_phase_vector(state, j, np.exp(1j * theta * k * k))


def apply_PP(state: QuditState, j: int, k: int, theta: float) -> QuditState:
    _check_qudit(state, j)
    _check_qudit(state, k)
    if j == k:
        raise ValueError("PP acts on two distinct qudits")
    lj = _axis_vector(state, j, np.arange(state.dims[j]).astype(float))
    lk = _axis_vector(state, k, np.arange(state.dims[k]).astype(float))
    return state._with(state.tensor * np.exp(1j * theta * lj * lk))


def apply_FP(state: QuditState, j: int, theta: float, b: int) -> QuditState:
    """Focus phase: ``exp(i theta)`` on value ``b`` of qudit ``j`` only."""
    _check_qudit(state, j)
    if not 0 <= b < state.dims[j]:
        raise ValueError(f"focus value {b} outside [0, {state.dims[j]})")
    phases = np.ones(state.dims[j], dtype=complex)
    phases[b] = np.exp(1j * theta)
    return apply_phase_vector(state, j, phases)


def apply_multi_controlled_phase(state: QuditState, qudits: Sequence[int], values: Sequence[int],
                                 theta: float) -> QuditState:
    """``exp(i theta)`` on basis states where every listed qudit holds its value."""
    index: list = [slice(None)] * len(state.dims)
    for q, v in zip(qudits, values):
        _check_qudit(state, q)
        if not 0 <= v < state.dims[q]:
            raise ValueError(f"value {v} outside [0, {state.dims[q]}) on qudit {q}")
        if index[q] != slice(None) and index[q] != v:
            return state
        index[q] = v
    tensor = state.tensor.copy()
    tensor[tuple(index)] *= np.exp(1j * theta)
    return state._with(tensor)


def apply_controlled_FP(state: QuditState, control: int, a: int, target: int, theta: float, b: int) -> QuditState:
    """Focus phase on ``target == b`` conditioned on ``control == a``."""
    if control == target:
        raise ValueError("control and target must differ")
    return apply_multi_controlled_phase(state, (control, target), (a, b), theta)


def apply_controlled_FP_ancilla(state: QuditState, control: int, a: int, target: int, theta: float,
                                b: int) -> QuditState:
    """Same phase as :func:`apply_controlled_FP`, routed through an ancilla qubit in ``|1>``.

    The ancilla is appended as an extra qubit, hit by a phase gate controlled
    on ``control == a`` and ``target == b``, then traced out (it stays in
    ``|1>``, so the projection is exact).
    """
    _check_register(state.dims + (2,))
    ext = QuditState(state.dims + (2,), np.kron(state.amplitudes, np.array([0.0, 1.0])))
    ancilla = len(state.dims)
    ext = apply_multi_controlled_phase(ext, (control, target, ancilla), (a, b, 1), theta)
    return QuditState(state.dims, ext.tensor[..., 1])


def diagonal_costs(model: Model) -> np.ndarray:
    """Cost of every basis state in register order."""
    dims = model.space.dims
    X = np.indices(dims).reshape(len(dims), -1).T
    return model.energies(X)


def _global_phase(state: QuditState, theta: float) -> QuditState:
    return QuditState(state.dims, state.amplitudes * np.exp(1j * theta))


def apply_cost_phase(state: QuditState, model: Model, gamma: float, method: str = "gates") -> QuditState:
    """Multiply ``|x>`` by ``exp(-i gamma C(x))``.

    ``method`` is ``"gates"`` (compiled phase gates), ``"ancilla"`` (T-QUDO
    entries through the ancilla construction) or ``"diagonal"`` (direct).
    """
    if tuple(model.space.dims) != state.dims:
        raise ValueError("model and register dimensions differ")
    if method == "diagonal":
        return QuditState(state.dims, state.amplitudes * np.exp(-1j * gamma * diagonal_costs(model)))
    out = _global_phase(state, -gamma * model.offset) if model.offset else state
    if isinstance(model, QudoModel):
        for j, d in enumerate(model.linear):
            if d:
                out = apply_P(out, j, -gamma * d)
        for (j, k), q in model.quad.items():
            out = apply_P2(out, j, -gamma * q) if j == k else apply_PP(out, j, k, -gamma * q)
    elif isinstance(model, TQudoModel):
        controlled = apply_controlled_FP_ancilla if method == "ancilla" else apply_controlled_FP
        for (i, j, a, b), v in model.entries.items():
            if i == j:
                out = apply_FP(out, i, -gamma * v, a)
            else:
                out = controlled(out, i, a, j, -gamma * v, b)
    elif isinstance(model, HoboModel):
        for key, c in model.terms.items():
            if key:
                out = apply_multi_controlled_phase(out, key, (1,) * len(key), -gamma * c)
    else:
        raise TypeError(f"unsupported model type {type(model).__name__}")
    return out


def mixer_unitary(d: int, beta: float) -> np.ndarray:
    """``exp(-i beta (X + X^dagger))`` with ``X`` the cyclic shift on ``d`` levels."""
    X = np.roll(np.eye(d), 1, axis=0)
    return expm(-1j * beta * (X + X.T))


def apply_single_qudit(state: QuditState, j: int, U: np.ndarray) -> QuditState:
    _check_qudit(state, j)
    moved = np.tensordot(U, state.tensor, axes=([1], [j]))
    return state._with(np.moveaxis(moved, 0, j))


def apply_mixer(state: QuditState, beta: float) -> QuditState:
    for j, d in enumerate(state.dims):
        state = apply_single_qudit(state, j, mixer_unitary(d, beta))
    return state


@dataclass(frozen=True)
class QaoaResult:
    expected_cost: float
    best_assignment: tuple[int, ...]
    best_probability: float
    state: QuditState


def run_qaoa(model: Model, gammas: Sequence[float] = (), betas: Sequence[float] = (),
             method: str = "gates") -> QaoaResult:
    """Alternate cost and mixer layers from the uniform superposition.

    The number of layers is ``len(gammas)``; ``p = 0`` returns the uniform state.
    """
    if len(gammas) != len(betas):
        raise ValueError("need one beta per gamma")
    dims = model.space.dims
    state = QuditState.uniform(dims)
    for gamma, beta in zip(gammas, betas):
        state = apply_cost_phase(state, model, gamma, method)
        state = apply_mixer(state, beta)
    probs = state.probabilities()
    costs = diagonal_costs(model)
    top = int(np.argmax(probs))
    best = tuple(int(v) for v in np.unravel_index(top, dims)) if dims else ()
    return QaoaResult(float(probs @ costs), best, float(probs[top]), state)


def grid_search(model: Model, gammas: Sequence[float], betas: Sequence[float]) -> tuple[float, float, QaoaResult]:
    """Single-layer angle scan; returns the ``(gamma, beta)`` with the lowest expected cost."""
    best = None
    for g in gammas:
        for b in betas:
            res = run_qaoa(model, [g], [b])
            if best is None or res.expected_cost < best[2].expected_cost - 1e-12:
                best = (float(g), float(b), res)
    if best is None:
        raise ValueError("empty angle grid")
    return best
