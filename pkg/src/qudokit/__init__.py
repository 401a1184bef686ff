"""Build, convert, evaluate and solve QUBO / QUDO / T-QUDO / HOBO models."""
from .models import (
    Assignment,
    DimensionError,
    HoboModel,
    QudoModel,
    TQudoModel,
    VariableSpace,
    evaluate,
    evaluate_hobo,
    evaluate_qudo,
    evaluate_tqudo,
    qubo_to_hobo,
    qudo_to_tqudo,
)
from .transforms import BinaryEncoding, decode_assignment, qudo_to_qubo, tqudo_to_hobo

__version__ = "0.1.0"
