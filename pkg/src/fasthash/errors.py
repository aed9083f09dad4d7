"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A hash parameter or seed is outside its valid range."""


class InputError(ValueError):
    """Input data violates a scheme precondition (nil byte, too long, ...)."""


class CoordinationError(ValueError):
    """Samples built with different (hash, threshold) pairs were combined."""


class BudgetExceeded(RuntimeError):
    """An exhaustive check would exceed the evaluation budget."""

    def __init__(self, cost: int, budget: int):
        super().__init__(
            f"exhaustive check needs {cost:,} evaluations, budget is {budget:,}"
        )
        self.cost = cost
        self.budget = budget
