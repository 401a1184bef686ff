"""Model formalisms: QUDO (QUBO as the all-binary case), T-QUDO and HOBO.

All models are immutable value objects. Coefficient maps are sparse; dense
views are available through explicit export methods.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

Assignment = tuple[int, ...]


class DimensionError(ValueError):
    """An assignment or coefficient key does not fit the variable space."""


def _freeze(d: dict) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True)
class VariableSpace:
    """Per-variable dimensions (and optional labels) of a mixed-radix space."""

    dims: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if any(d < 2 for d in self.dims):
            raise DimensionError(f"every dimension must be >= 2, got {self.dims}")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(self.dims):
                raise DimensionError("names must have one entry per variable")
            if len(set(names)) != len(names):
                raise DimensionError("variable names must be unique")
            object.__setattr__(self, "names", names)

    @classmethod
    def binary(cls, n: int, names: Sequence[str] | None = None) -> "VariableSpace":
        return cls((2,) * n, None if names is None else tuple(names))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        """Number of assignments, the product of all dimensions."""
        size = 1
        for d in self.dims:
            size *= d
        return size

    @property
    def is_binary(self) -> bool:
        return all(d == 2 for d in self.dims)

    def check(self, x: Iterable[int]) -> Assignment:
        values = tuple(int(v) for v in x)
        if len(values) != self.n:
            raise DimensionError(f"assignment has {len(values)} values, space has {self.n} variables")
        for i, (v, d) in enumerate(zip(values, self.dims)):
            if not 0 <= v < d:
                raise DimensionError(f"value {v} of variable {i} outside [0, {d})")
        return values

    def assignments(self) -> Iterable[Assignment]:
        """All assignments in mixed-radix order (last variable fastest)."""
        return product(*(range(d) for d in self.dims))

    def same_as(self, other: "VariableSpace") -> bool:
        return self.dims == other.dims


def _check_same_space(a: VariableSpace, b: VariableSpace) -> None:
    if not a.same_as(b):
        raise DimensionError(f"models live on different spaces: {a.dims} vs {b.dims}")


@dataclass(frozen=True)
class QudoModel:
    """Quadratic d-ary model ``offset + sum_{i<=j} Q_ij x_i x_j + sum_i D_i x_i``.

    ``quad`` is a sparse upper-triangular map ``(i, j) -> Q_ij`` with ``i <= j``.
    With every dimension equal to 2 this is a QUBO model.
    """

    space: VariableSpace
    quad: Mapping[tuple[int, int], float] = field(default_factory=dict)
    linear: tuple[float, ...] = ()
    offset: float = 0.0

    def __post_init__(self):
        n = self.space.n
        quad: dict[tuple[int, int], float] = {}
        for (i, j), q in self.quad.items():
            i, j = int(i), int(j)
            if i > j:
                i, j = j, i
            if not (0 <= i and j < n):
                raise DimensionError(f"quadratic key ({i}, {j}) out of range for {n} variables")
            quad[(i, j)] = quad.get((i, j), 0.0) + float(q)
        object.__setattr__(self, "quad", _freeze({k: v for k, v in quad.items() if v != 0.0}))
        linear = tuple(float(v) for v in self.linear) if len(self.linear) else (0.0,) * n
        if len(linear) != n:
            raise DimensionError(f"linear vector has length {len(linear)}, expected {n}")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "offset", float(self.offset))

    def __reduce__(self):
        return (QudoModel, (self.space, dict(self.quad), self.linear, self.offset))

    @classmethod
    def from_dims(cls, dims, quad=None, linear=None, offset=0.0, names=None) -> "QudoModel":
        return cls(VariableSpace(tuple(dims), names), dict(quad or {}), tuple(linear or ()), offset)

    @classmethod
    def zero(cls, space: VariableSpace) -> "QudoModel":
        return cls(space)

    @property
    def is_qubo(self) -> bool:
        return self.space.is_binary

    def evaluate(self, x) -> float:
        x = self.space.check(x)
        total = self.offset
        for (i, j), q in self.quad.items():
            total += q * x[i] * x[j]
        for i, d in enumerate(self.linear):
            total += d * x[i]
        return total

    def energies(self, X: np.ndarray) -> np.ndarray:
        """Vectorized cost of each row of an integer array of assignments."""
        X = np.asarray(X)
        Xf = X.astype(float)
        out = np.full(X.shape[0], self.offset)
        for (i, j), q in self.quad.items():
            out += q * Xf[:, i] * Xf[:, j]
        if self.space.n:
            out += Xf @ np.asarray(self.linear)
        return out

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Upper-triangular ``Q`` and vector ``D`` as numpy arrays."""
        n = self.space.n
        Q = np.zeros((n, n))
        for (i, j), q in self.quad.items():
            Q[i, j] = q
        return Q, np.asarray(self.linear, dtype=float)

    def __add__(self, other: "QudoModel") -> "QudoModel":
        _check_same_space(self.space, other.space)
        quad = dict(self.quad)
        for k, v in other.quad.items():
            quad[k] = quad.get(k, 0.0) + v
        linear = tuple(a + b for a, b in zip(self.linear, other.linear))
        return QudoModel(self.space, quad, linear, self.offset + other.offset)

    def scaled(self, factor: float) -> "QudoModel":
        return QudoModel(
            self.space,
            {k: factor * v for k, v in self.quad.items()},
            tuple(factor * v for v in self.linear),
            factor * self.offset,
        )

    def on_space(self, space: VariableSpace) -> "QudoModel":
        """Re-home this model onto a larger space whose leading dims match."""
        if space.dims[: self.space.n] != self.space.dims:
            raise DimensionError("target space must extend the model's space")
        linear = self.linear + (0.0,) * (space.n - self.space.n)
        return QudoModel(space, self.quad, linear, self.offset)


@dataclass(frozen=True)
class TQudoModel:
    """Tensor QUDO model ``offset + sum_{i<=j} Q[i, j, x_i, x_j]``.

    Entries are stored sparsely as ``(i, j, a, b) -> value`` with ``i <= j``.
    A diagonal key ``(i, i, a, a)`` depends on the value of one variable only.
    """

    space: VariableSpace
    entries: Mapping[tuple[int, int, int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        dims = self.space.dims
        entries: dict[tuple[int, int, int, int], float] = {}
        for (i, j, a, b), v in self.entries.items():
            i, j, a, b = int(i), int(j), int(a), int(b)
            if i > j:
                i, j, a, b = j, i, b, a
            if not (0 <= i and j < len(dims)):
                raise DimensionError(f"entry ({i}, {j}, {a}, {b}) references a missing variable")
            if not (0 <= a < dims[i] and 0 <= b < dims[j]):
                raise DimensionError(f"entry ({i}, {j}, {a}, {b}) has a value out of range")
            if i == j and a != b:
                raise DimensionError(f"diagonal entry ({i}, {i}, {a}, {b}) must have a == b")
            entries[(i, j, a, b)] = entries.get((i, j, a, b), 0.0) + float(v)
        object.__setattr__(self, "entries", _freeze({k: v for k, v in entries.items() if v != 0.0}))
        object.__setattr__(self, "offset", float(self.offset))

    def __reduce__(self):
        return (TQudoModel, (self.space, dict(self.entries), self.offset))

    @classmethod
    def from_dims(cls, dims, entries=None, offset=0.0, names=None) -> "TQudoModel":
        return cls(VariableSpace(tuple(dims), names), dict(entries or {}), offset)

    def evaluate(self, x) -> float:
        x = self.space.check(x)
        total = self.offset
        for (i, j, a, b), v in self.entries.items():
            if x[i] == a and x[j] == b:
                total += v
        return total

    def pair_tables(self) -> tuple[list[np.ndarray], dict[tuple[int, int], np.ndarray]]:
        """Dense per-variable and per-pair lookup tables.

        Returns ``(unary, pairs)`` where ``unary[i][a]`` sums diagonal entries and
        ``pairs[(i, j)][a, b]`` sums off-diagonal entries for ``i < j``.
        """
        dims = self.space.dims
        unary = [np.zeros(d) for d in dims]
        pairs: dict[tuple[int, int], np.ndarray] = {}
        for (i, j, a, b), v in self.entries.items():
            if i == j:
                unary[i][a] += v
            else:
                table = pairs.get((i, j))
                if table is None:
                    table = pairs[(i, j)] = np.zeros((dims[i], dims[j]))
                table[a, b] += v
        return unary, pairs

    def energies(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X)
        out = np.full(X.shape[0], self.offset)
        unary, pairs = self.pair_tables()
        for i, table in enumerate(unary):
            if table.any():
                out += table[X[:, i]]
        for (i, j), table in pairs.items():
            out += table[X[:, i], X[:, j]]
        return out

    def __add__(self, other: "TQudoModel") -> "TQudoModel":
        _check_same_space(self.space, other.space)
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries.get(k, 0.0) + v
        return TQudoModel(self.space, entries, self.offset + other.offset)

    def scaled(self, factor: float) -> "TQudoModel":
        return TQudoModel(self.space, {k: factor * v for k, v in self.entries.items()}, factor * self.offset)


def _canonical_key(indices: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(i) for i in indices)))


@dataclass(frozen=True)
class HoboModel:
    """Higher-order binary polynomial ``sum_S c_S prod_{i in S} x_i``.

    Keys are sorted, duplicate-free index tuples, so ``x_i**2 == x_i`` is
    applied on construction. The empty key holds the constant term.
    """

    num_vars: int
    terms: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        terms: dict[tuple[int, ...], float] = {}
        for key, c in self.terms.items():
            key = _canonical_key(key)
            if key and not (key[0] >= 0 and key[-1] < self.num_vars):
                raise DimensionError(f"term {key} references a variable outside [0, {self.num_vars})")
            terms[key] = terms.get(key, 0.0) + float(c)
        object.__setattr__(self, "terms", _freeze({k: v for k, v in terms.items() if v != 0.0}))

    def __reduce__(self):
        return (HoboModel, (self.num_vars, dict(self.terms)))

    @classmethod
    def constant(cls, num_vars: int, value: float) -> "HoboModel":
        return cls(num_vars, {(): value})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "HoboModel":
        return cls(num_vars, {(index,): 1.0})

    @property
    def space(self) -> VariableSpace:
        return VariableSpace.binary(self.num_vars)

    @property
    def offset(self) -> float:
        return self.terms.get((), 0.0)

    @property
    def max_order(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def evaluate(self, x) -> float:
        x = self.space.check(x)
        total = 0.0
        for key, c in self.terms.items():
            if all(x[i] for i in key):
                total += c
        return total

    def energies(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X).astype(bool)
        out = np.zeros(X.shape[0])
        for key, c in self.terms.items():
            if not key:
                out += c
            elif len(key) == 1:
                out += c * X[:, key[0]]
            else:
                out += c * np.all(X[:, list(key)], axis=1)
        return out

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = HoboModel.constant(self.num_vars, other)
        if other.num_vars != self.num_vars:
            raise DimensionError("HOBO models have different variable counts")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0.0) + v
        return HoboModel(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(-1.0)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-other)
        return self + other.scaled(-1.0)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scaled(other)
        if other.num_vars != self.num_vars:
            raise DimensionError("HOBO models have different variable counts")
        terms: dict[tuple[int, ...], float] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = _canonical_key(k1 + k2)
                terms[key] = terms.get(key, 0.0) + c1 * c2
        return HoboModel(self.num_vars, terms)

    __rmul__ = __mul__

    def scaled(self, factor: float) -> "HoboModel":
        return HoboModel(self.num_vars, {k: factor * v for k, v in self.terms.items()})


Model = QudoModel | TQudoModel | HoboModel


def evaluate_qudo(model: QudoModel, x) -> float:
    return model.evaluate(x)


def evaluate_tqudo(model: TQudoModel, x) -> float:
    return model.evaluate(x)


def evaluate_hobo(model: HoboModel, x) -> float:
    return model.evaluate(x)


def evaluate(model: Model, x) -> float:
    return model.evaluate(x)


def qudo_to_tqudo(model: QudoModel) -> TQudoModel:
    """Embed a QUDO model as a T-QUDO model with value-dependent entries.

    Off-diagonal entries become ``Q_ij * a * b`` and diagonal entries carry
    ``D_i * a + Q_ii * a**2``.
    """
    dims = model.space.dims
    entries: dict[tuple[int, int, int, int], float] = {}
    for (i, j), q in model.quad.items():
        if i == j:
            continue
        for a in range(1, dims[i]):
            for b in range(1, dims[j]):
                entries[(i, j, a, b)] = q * a * b
    for i, d in enumerate(dims):
        qii = model.quad.get((i, i), 0.0)
        lin = model.linear[i]
        if qii == 0.0 and lin == 0.0:
            continue
        for a in range(1, d):
            entries[(i, i, a, a)] = lin * a + qii * a * a
    return TQudoModel(model.space, entries, model.offset)


def qubo_to_hobo(model: QudoModel) -> HoboModel:
    """Rewrite a QUBO model as a HOBO polynomial, folding ``x_i**2`` into ``x_i``."""
    if not model.space.is_binary:
        raise DimensionError(f"qubo_to_hobo needs all dimensions 2, got {model.space.dims}")
    terms: dict[tuple[int, ...], float] = {}
    if model.offset:
        terms[()] = model.offset
    for (i, j), q in model.quad.items():
        key = _canonical_key((i, j))
        terms[key] = terms.get(key, 0.0) + q
    for i, d in enumerate(model.linear):
        if d:
            terms[(i,)] = terms.get((i,), 0.0) + d
    return HoboModel(model.space.n, terms)
