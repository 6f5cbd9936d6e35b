"""Exception hierarchy shared by all modules."""


class CodesError(Exception):
    """Base class for everything this package raises on purpose."""


class ParameterError(CodesError):
    """Arguments violate a documented precondition."""


class DomainError(CodesError):
    """Operation undefined for this input (inverse of zero, distance of the zero code)."""


class ConsistencyError(CodesError):
    """An internal algebraic contract failed (non-closed coset set, non-idempotent generator)."""


class BudgetError(CodesError):
    """A search or enumeration would exceed its configured work cap."""


class ConstructionError(CodesError):
    """A requested object (e.g. a splitting with a given multiplier) does not exist."""
