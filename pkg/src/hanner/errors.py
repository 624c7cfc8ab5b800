"""Exception taxonomy shared by all modules."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a non-removable singularity."""


class ContractError(ValueError):
    """An operation was called in a way that violates its contract."""


class ResourceError(RuntimeError):
    """A configured computation budget would be exceeded."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or produced invalid output."""


class AccuracyError(NumericError):
    """Requested accuracy not reached; carries the best available estimate."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
