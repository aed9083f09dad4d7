"""Fast universal hashing of integers, vectors and strings."""

from .errors import BudgetExceeded, CoordinationError, InputError, ParameterError
from .mersenne import P89

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CoordinationError",
    "InputError",
    "P89",
    "ParameterError",
]
