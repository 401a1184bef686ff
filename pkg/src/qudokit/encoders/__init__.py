"""Compile problem instances into QUDO, T-QUDO and HOBO models."""
from .base import EncodedProblem, objective_lambda
from .grids import encode_inshi, encode_kakuro
from .hashi import encode_hashi
from .knapsack import VARIANTS as KNAPSACK_VARIANTS
from .knapsack import encode_knapsack
from .peg import encode_peg
from .queens import encode_queens
from .tsp import PENALTIES as TSP_PENALTIES
from .tsp import encode_tsp, prime_list, prime_separation

__all__ = [
    "EncodedProblem",
    "KNAPSACK_VARIANTS",
    "TSP_PENALTIES",
    "encode_hashi",
    "encode_inshi",
    "encode_kakuro",
    "encode_knapsack",
    "encode_peg",
    "encode_queens",
    "encode_tsp",
    "objective_lambda",
    "prime_list",
    "prime_separation",
]
