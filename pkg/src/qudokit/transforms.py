"""Cost-preserving conversions between formalisms and their decoders."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .models import (
    Assignment,
    DimensionError,
    HoboModel,
    QudoModel,
    TQudoModel,
    VariableSpace,
)


def bit_count(d: int) -> int:
    """Smallest k with 2**k >= d."""
    return max(1, (d - 1).bit_length())


def is_power_of_two(d: int) -> bool:
    return d >= 1 and d & (d - 1) == 0


def bounded_coefficients(d: int) -> tuple[int, ...]:
    """Binary coefficients whose subset sums cover exactly ``[0, d-1]``.

    Powers of two for ``d = 2**k``; otherwise the top coefficient is lowered to
    ``d - 2**(k-1)`` so no codeword overshoots.
    """
    k = bit_count(d)
    coeffs = [1 << j for j in range(k - 1)]
    coeffs.append(d - (1 << (k - 1)))
    return tuple(coeffs)


def plain_coefficients(d: int) -> tuple[int, ...]:
    return tuple(1 << j for j in range(bit_count(d)))


@dataclass(frozen=True)
class VariableEncoding:
    """Bits ``start .. start + len(coefficients) - 1`` encode one d-ary variable."""

    dim: int
    coefficients: tuple[int, ...]
    start: int

    @property
    def bits(self) -> range:
        return range(self.start, self.start + len(self.coefficients))

    def value_of(self, y: Sequence[int]) -> int:
        return sum(c * y[b] for c, b in zip(self.coefficients, self.bits))

    def encode(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.dim:
            raise DimensionError(f"value {v} outside [0, {self.dim})")
        bits = [0] * len(self.coefficients)
        rest = v
        for k in reversed(range(len(self.coefficients))):
            if rest > sum(self.coefficients[:k]):
                bits[k] = 1
                rest -= self.coefficients[k]
        if rest != 0:
            raise DimensionError(f"coefficients {self.coefficients} cannot represent {v}")
        return tuple(bits)

    def pattern(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(bit index, bit value)`` pairs identifying value ``v``."""
        return tuple(zip(self.bits, self.encode(v)))


@dataclass(frozen=True)
class BinaryEncoding:
    """Layout mapping each d-ary variable to a run of binary variables."""

    variables: tuple[VariableEncoding, ...]

    @classmethod
    def for_dims(cls, dims: Sequence[int], scheme: str = "bounded") -> "BinaryEncoding":
        """``scheme`` is ``"bounded"`` (exact range) or ``"plain"`` (powers of two)."""
        make = {"bounded": bounded_coefficients, "plain": plain_coefficients}[scheme]
        out, start = [], 0
        for d in dims:
            coeffs = (1,) if d == 2 else make(d)
            out.append(VariableEncoding(d, coeffs, start))
            start += len(coeffs)
        return cls(tuple(out))

    @classmethod
    def from_coefficients(cls, dims: Sequence[int], coefficients: Sequence[Sequence[int]]) -> "BinaryEncoding":
        out, start = [], 0
        for d, coeffs in zip(dims, coefficients):
            out.append(VariableEncoding(d, tuple(coeffs), start))
            start += len(coeffs)
        return cls(tuple(out))

    @property
    def num_bits(self) -> int:
        return sum(len(v.coefficients) for v in self.variables)

    @property
    def source_dims(self) -> tuple[int, ...]:
        return tuple(v.dim for v in self.variables)

    def encode(self, x: Sequence[int]) -> Assignment:
        if len(x) != len(self.variables):
            raise DimensionError("assignment length does not match the encoding")
        bits: list[int] = []
        for var, v in zip(self.variables, x):
            bits.extend(var.encode(int(v)))
        return tuple(bits)

    def value_pattern(self, i: int, a: int) -> tuple[tuple[int, int], ...]:
        return self.variables[i].pattern(a)

    def to_dict(self) -> dict:
        return {
            "dims": [v.dim for v in self.variables],
            "coefficients": [list(v.coefficients) for v in self.variables],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BinaryEncoding":
        return cls.from_coefficients(data["dims"], data["coefficients"])


@dataclass(frozen=True)
class Decoded:
    values: Assignment
    feasible: tuple[bool, ...]

    @property
    def all_feasible(self) -> bool:
        return all(self.feasible)


def decode_assignment(enc: BinaryEncoding, y: Sequence[int]) -> Decoded:
    """Map a binary assignment back to d-ary values.

    Values are not clamped: a codeword decoding to ``>= dim`` is returned as is
    and flagged infeasible.
    """
    if len(y) != enc.num_bits:
        raise DimensionError(f"expected {enc.num_bits} bits, got {len(y)}")
    if any(b not in (0, 1) for b in y):
        raise DimensionError("binary assignment expected")
    values = tuple(var.value_of(y) for var in enc.variables)
    feasible = tuple(v < var.dim for v, var in zip(values, enc.variables))
    return Decoded(values, feasible)


def qudo_to_qubo(model: QudoModel) -> tuple[QudoModel, BinaryEncoding]:
    """Binarize every variable with the bounded encoding ``x_i = sum_k c_ik y_ik``."""
    enc = BinaryEncoding.for_dims(model.space.dims, "bounded")
    quad: dict[tuple[int, int], float] = {}
    linear = [0.0] * enc.num_bits

    def add(p: int, q: int, v: float) -> None:
        key = (p, q) if p <= q else (q, p)
        quad[key] = quad.get(key, 0.0) + v

    for (i, j), q in model.quad.items():
        vi, vj = enc.variables[i], enc.variables[j]
        if i == j:
            for (ck, bk), (cl, bl) in product(zip(vi.coefficients, vi.bits), repeat=2):
                if bk <= bl:
                    add(bk, bl, q * ck * cl * (1 if bk == bl else 2))
        else:
            for ck, bk in zip(vi.coefficients, vi.bits):
                for cl, bl in zip(vj.coefficients, vj.bits):
                    add(bk, bl, q * ck * cl)
    for i, d in enumerate(model.linear):
        if d:
            var = enc.variables[i]
            for c, b in zip(var.coefficients, var.bits):
                linear[b] += d * c
    names = None
    if model.space.names is not None:
        names = tuple(
            f"{model.space.names[i]}#{k}" for i, var in enumerate(enc.variables) for k in range(len(var.coefficients))
        )
    target = QudoModel(VariableSpace.binary(enc.num_bits, names), quad, tuple(linear), model.offset)
    return target, enc


def _indicator(num_bits: int, pattern) -> HoboModel:
    poly = HoboModel.constant(num_bits, 1.0)
    for bit, value in pattern:
        factor = HoboModel.variable(num_bits, bit) if value else 1.0 - HoboModel.variable(num_bits, bit)
        poly = poly * factor
    return poly


def default_invalid_penalty(model: TQudoModel) -> float:
    return 1.0 + sum(abs(v) for v in model.entries.values())


def tqudo_to_hobo(model: TQudoModel, invalid_penalty: float | None = None) -> tuple[HoboModel, BinaryEncoding]:
    """Expand a T-QUDO model into a HOBO polynomial over plain binary codes.

    Every entry ``(i, j, a, b) -> v`` becomes ``v * Ind_i(a) * Ind_j(b)`` where
    ``Ind_i(a)`` is the product of ``y`` / ``1 - y`` factors matching the code
    of ``a``. Codewords ``>= d_i`` are charged ``invalid_penalty`` each.
    """
    enc = BinaryEncoding.for_dims(model.space.dims, "plain")
    n = enc.num_bits
    needs_penalty = any(not is_power_of_two(d) for d in model.space.dims)
    if invalid_penalty is None:
        invalid_penalty = default_invalid_penalty(model)
    if needs_penalty and not invalid_penalty > 0:
        raise ValueError("invalid_penalty must be positive when a dimension is not a power of two")

    cache: dict[tuple[int, int], HoboModel] = {}

    def ind(i: int, a: int) -> HoboModel:
        poly = cache.get((i, a))
        if poly is None:
            var = enc.variables[i]
            bits = [(a >> k) & 1 for k in range(len(var.coefficients))]
            poly = cache[(i, a)] = _indicator(n, zip(var.bits, bits))
        return poly

    terms: dict[tuple[int, ...], float] = {}

    def accumulate(poly: HoboModel, scale: float) -> None:
        for key, c in poly.terms.items():
            terms[key] = terms.get(key, 0.0) + scale * c

    if model.offset:
        terms[()] = model.offset
    for (i, j, a, b), v in model.entries.items():
        if i == j:
            accumulate(ind(i, a), v)
        else:
            accumulate(ind(i, a) * ind(j, b), v)
    for i, var in enumerate(enc.variables):
        for code in range(var.dim, 1 << len(var.coefficients)):
            accumulate(ind(i, code), invalid_penalty)
    return HoboModel(n, terms), enc
