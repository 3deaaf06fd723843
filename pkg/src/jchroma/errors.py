"""Exception hierarchy shared by every jchroma module."""


class JChromaError(Exception):
    pass


class InvalidSpecError(JChromaError, ValueError):
    """Raised for an impossible (n, k, t) triple or an incompatible family."""


class InvalidInputError(JChromaError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class UnsupportedFamilyError(InvalidSpecError):
    pass


class MissingVertexError(JChromaError, KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self):
        return f"coloring does not cover vertex {self.vertex}"


class BudgetExceededError(JChromaError):
    """Raised when materialization or search would exceed the configured budget.

    ``lower``/``upper`` carry the best known interval when the error comes
    out of a search.
    """

    def __init__(self, message, *, lower=None, upper=None, count=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.count = count


class EnumerationError(BudgetExceededError):
    pass
