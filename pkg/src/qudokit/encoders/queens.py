from __future__ import annotations

from ..instances import QueensInstance
from ..models import TQudoModel, VariableSpace
from .base import EncodedProblem


def encode_queens(inst: QueensInstance, lam: float = 1.0) -> EncodedProblem:
    """One variable per row holding the queen's column.

    Each pair of rows ``i < j`` is charged ``lam`` for a shared column and for
    each shared diagonal: ``x_i == x_j`` or ``x_i == x_j +- (j - i)``.
    """
    N = inst.size
    entries: dict[tuple[int, int, int, int], float] = {}
    for i in range(N):
        for j in range(i + 1, N):
            k = j - i
            for b in range(N):
                for a in (b, b + k, b - k):
                    if 0 <= a < N:
                        entries[(i, j, a, b)] = entries.get((i, j, a, b), 0.0) + lam
    # dimensions are at least 2; a padded value on a 1x1 board is charged like an attack
    dims = (max(N, 2),) * N
    for i in range(N):
        for a in range(N, dims[i]):
            entries[(i, i, a, a)] = lam
    names = tuple(f"x[{i}]" for i in range(N))
    model = TQudoModel(VariableSpace(dims, names), entries)

    def decode(x: tuple[int, ...]) -> list[int]:
        return list(x)

    return EncodedProblem(model, decode, 0.0, model, names, {"lambda": lam})
