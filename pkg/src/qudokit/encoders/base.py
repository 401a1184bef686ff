from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..models import Model


@dataclass(frozen=True)
class EncodedProblem:
    """A compiled model plus what is needed to read its assignments back.

    ``constraint_model`` holds the penalty part alone. For pure-feasibility
    problems it is the model itself; for knapsack and TSP the objective is
    left out so that ``constraint_model <= feasibility_threshold`` is the
    feasibility test.
    """

    model: Model
    decoder: Callable[[tuple[int, ...]], Any]
    feasibility_threshold: float | None
    constraint_model: Model
    layout: tuple[str, ...] = ()
    info: dict = field(default_factory=dict)

    def decode(self, x) -> Any:
        return self.decoder(tuple(int(v) for v in x))

    @property
    def num_vars(self) -> int:
        return self.model.space.n


def objective_lambda(coefficients) -> float:
    """Default penalty weight for problems with an objective."""
    return 1.0 + sum(abs(c) for c in coefficients)
