from __future__ import annotations

from ..instances import HashiInstance, InfeasibleInstanceError, hashi_crossings, hashi_edges
from ..models import QudoModel, VariableSpace
from ..penalties import count_eq_penalty
from .base import EncodedProblem


def encode_hashi(inst: HashiInstance, lam_cross: float = 1.0) -> EncodedProblem:
    """Degree penalties plus crossing products, one variable per admissible edge.

    Connectivity is not part of the model: zero cost means degrees are met
    and no bridges cross, and the validator decides connectivity.
    """
    edges = hashi_edges(inst)
    incident: dict[int, list[int]] = {i: [] for i in range(len(inst.nodes))}
    for e, (i, j) in enumerate(edges):
        incident[i].append(e)
        incident[j].append(e)
    for i, es in incident.items():
        if not es and inst.degree(i) > 0:
            raise InfeasibleInstanceError(f"node {i} needs {inst.degree(i)} bridges but has no neighbour")

    names = tuple(f"x[{i},{j}]" for i, j in edges)
    space = VariableSpace((inst.max_edges + 1,) * len(edges), names)
    model = QudoModel(space)
    for i, es in incident.items():
        if es:
            model = model + count_eq_penalty(space, es, inst.degree(i), 1.0)
        else:
            model = model + QudoModel(space, offset=float(inst.degree(i) ** 2))
    crossings = hashi_crossings(inst, edges)
    if crossings:
        model = model + QudoModel(space, {(e, f): lam_cross for e, f in crossings})

    def decode(x: tuple[int, ...]) -> dict[tuple[int, int], int]:
        return {edges[e]: v for e, v in enumerate(x) if v}

    return EncodedProblem(
        model=model,
        decoder=decode,
        feasibility_threshold=0.0,
        constraint_model=model,
        layout=names,
        info={"edges": edges, "crossings": crossings, "lambda_cross": lam_cross},
    )
