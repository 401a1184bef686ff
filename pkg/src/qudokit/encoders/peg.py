from __future__ import annotations

from ..instances import Move, PegInstance, PegLayout, step
from ..models import HoboModel
from .base import EncodedProblem


def encode_peg(inst: PegInstance) -> EncodedProblem:
    """HOBO for peg solitaire as the sum of four penalty families.

    * ball count: ``M - 1 - t`` balls at timestep ``t``;
    * continuity: exactly ``M - 3`` cells keep their state between steps;
    * one action per move step;
    * action effect: a chosen jump needs source and jumped cell full and the
      target empty at ``t``, and the reverse at ``t + 1``.

    Boundary timesteps are substituted as constants, so only intermediate
    cell states and on-board actions are variables.
    """
    layout = PegLayout.build(inst)
    n = layout.num_vars
    M = inst.num_cells
    T = inst.timesteps
    one = HoboModel.constant(n, 1.0)
    terms: dict[tuple[int, ...], float] = {}

    def add(poly: HoboModel) -> None:
        for key, c in poly.terms.items():
            terms[key] = terms.get(key, 0.0) + c

    def state(cell, t: int) -> HoboModel:
        fixed = layout.fixed_state(cell, t)
        if fixed is not None:
            return HoboModel.constant(n, fixed)
        return HoboModel.variable(n, layout.state_index[(cell, t)])

    def square(poly: HoboModel) -> HoboModel:
        return poly * poly

    def total(polys) -> HoboModel:
        acc: dict[tuple[int, ...], float] = {}
        for poly in polys:
            for key, c in poly.terms.items():
                acc[key] = acc.get(key, 0.0) + c
        return HoboModel(n, acc)

    actions_at: dict[int, list[tuple]] = {t: [] for t in range(T - 1)}
    for (cell, t, d), idx in layout.action_index.items():
        actions_at[t].append((cell, d, idx))

    for t in range(T):
        add(square(total(state(c, t) for c in inst.cells) - (M - 1 - t)))

    for t in range(1, T):
        same = total(
            state(c, t) * state(c, t - 1) + (one - state(c, t)) * (one - state(c, t - 1)) for c in inst.cells
        )
        add(square(same - (M - 3)))

    for t in range(T - 1):
        add(square(one - total(HoboModel.variable(n, idx) for _, _, idx in actions_at[t])))

    for t in range(T - 1):
        for cell, d, idx in actions_at[t]:
            mid, target = step(cell, d), step(cell, d, 2)
            before = state(cell, t) * state(mid, t) * (one - state(target, t))
            after = (one - state(cell, t + 1)) * (one - state(mid, t + 1)) * state(target, t + 1)
            add(HoboModel.variable(n, idx) * (square(before - 1.0) + square(after - 1.0)))

    model = HoboModel(n, terms)

    def decode(x: tuple[int, ...]) -> list[Move]:
        moves: list[Move] = []
        for t in range(T - 1):
            chosen = [(cell, d) for cell, d, idx in actions_at[t] if x[idx]]
            # zero or several actions is not a playable step; an off-board move makes the validator reject it
            moves.append(chosen[0] if len(chosen) == 1 else ((-1, -1), (0, 1)))
        return moves

    return EncodedProblem(
        model=model,
        decoder=decode,
        feasibility_threshold=0.0,
        constraint_model=model,
        layout=layout.names,
        info={"state_vars": len(layout.state_index), "action_vars": len(layout.action_index),
              "timesteps": T, "max_order": model.max_order},
    )
