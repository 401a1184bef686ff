from __future__ import annotations

from ..instances import KnapsackInstance
from ..models import QudoModel, VariableSpace
from ..penalties import bounded_digits, squared_linear
from .base import EncodedProblem

VARIANTS = ("qubo_flat", "qubo_condensed", "qudo", "qudo_dary")


def _is_power(c: int, base: int) -> bool:
    while c % base == 0:
        c //= base
    return c == 1


def _class_digits(inst: KnapsackInstance, variant: str, base: int) -> list[list[tuple[int, int]]]:
    """Per class, the ``(multiplier, dim)`` of each main variable."""
    if variant == "qubo_flat":
        return [[(1, 2)] * c for c in inst.counts]
    if variant == "qubo_condensed":
        if not all(_is_power(c, 2) for c in inst.counts):
            raise ValueError("qubo_condensed needs every count to be a power of 2")
        return [bounded_digits(c, 2) for c in inst.counts]
    if variant == "qudo":
        return [[(1, c + 1)] for c in inst.counts]
    if variant == "qudo_dary":
        if not all(_is_power(c, base) for c in inst.counts):
            raise ValueError(f"qudo_dary needs every count to be a power of {base}")
        return [bounded_digits(c, base) for c in inst.counts]
    raise ValueError(f"unknown knapsack variant {variant!r}; expected one of {VARIANTS}")


def encode_knapsack(inst: KnapsackInstance, variant: str = "qudo", slack_base: int = 2,
                    lam: float | None = None) -> EncodedProblem:
    """``-sum v_i x_i + lam * (Q - sum w_i x_i - sum slack)**2`` in the chosen layout.

    Binary variants use base-2 slack; the d-ary variants use ``slack_base``.
    """
    base = slack_base if variant in ("qudo", "qudo_dary") else 2
    classes = _class_digits(inst, variant, base)
    slack = bounded_digits(inst.capacity, base)

    dims: list[int] = []
    names: list[str] = []
    owner: list[tuple[int, int]] = []
    for i, digits in enumerate(classes):
        for j, (mult, dim) in enumerate(digits):
            dims.append(dim)
            names.append(f"x[{i},{j}]")
            owner.append((i, mult))
    n_main = len(dims)
    for k, (_, dim) in enumerate(slack):
        dims.append(dim)
        names.append(f"s[{k}]")
    space = VariableSpace(tuple(dims), tuple(names))

    if lam is None:
        lam = 1.0 + sum(abs(v) * c for v, c in zip(inst.values, inst.counts))
    objective = [0.0] * space.n
    coeffs: dict[int, float] = {}
    for idx, (i, mult) in enumerate(owner):
        objective[idx] = -inst.values[i] * mult
        coeffs[idx] = -float(inst.weights[i] * mult)
    for k, (mult, _) in enumerate(slack):
        coeffs[n_main + k] = -float(mult)
    penalty = squared_linear(space, coeffs, inst.capacity, lam)
    model = penalty + QudoModel(space, {}, tuple(objective))

    def decode(x: tuple[int, ...]) -> list[int]:
        counts = [0] * inst.num_classes
        for idx, (i, mult) in enumerate(owner):
            counts[i] += mult * x[idx]
        return counts

    return EncodedProblem(
        model=model,
        decoder=decode,
        feasibility_threshold=0.0,
        constraint_model=penalty,
        layout=tuple(names),
        info={"variant": variant, "lambda": lam, "slack_base": base, "main_vars": n_main, "slack_vars": len(slack)},
    )
