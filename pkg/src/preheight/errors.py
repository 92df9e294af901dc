"""Exception hierarchy shared by the library and the command line."""


class PreheightError(Exception):
    """Base class for every error raised on purpose by this package."""


class DomainError(PreheightError, ValueError):
    """An input lies outside the domain of an operation."""


class NotOnCurveError(DomainError):
    """A point does not satisfy the 5th-preimage relations."""


class DegenerateInputError(DomainError):
    """Input for which a requested ratio or quotient is undefined."""


class ResourceError(PreheightError):
    """A computation would exceed a configured resource budget."""


class BitBudgetExceeded(ResourceError):
    def __init__(self, step, bits, budget):
        self.step = step
        self.bits = bits
        self.budget = budget
        super().__init__(
            f"iterate {step} needs {bits} bits, budget is {budget} bits"
        )
