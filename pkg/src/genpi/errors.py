"""Exception types shared across the package.

Mathematical "false" answers are returned as values, never raised; these
exceptions cover malformed input, unsatisfiable preconditions and resource
budgets.
"""


class GenpiError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GenpiError):
    pass


class ParentMismatch(GenpiError):
    pass


class NotAssociative(GenpiError):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(f"associativity fails on basis triple {(i, j, k)}")


class BadUnit(GenpiError):
    def __init__(self, i):
        self.witness = i
        super().__init__(f"unit axiom fails on basis element {i}")


class UnsupportedName(GenpiError):
    pass


class NotClosed(GenpiError):
    pass


class NotMultiplier(GenpiError):
    def __init__(self, index, witness):
        self.index = index
        self.witness = witness
        super().__init__(f"pair {index} is not a multiplier: fails {witness}")


class NotHomomorphism(GenpiError):
    def __init__(self, i, j):
        self.witness = (i, j)
        super().__init__(f"action map is not multiplicative on basis pair {(i, j)}")


class NotPermutable(GenpiError):
    def __init__(self, i, j):
        self.witness = (i, j)
        super().__init__(f"permutability fails on pair indices {(i, j)}")


class UnitMismatch(GenpiError):
    pass


class NotSplit(GenpiError):
    """A semisimple quotient has a block whose center is a proper field extension."""


class BasisMismatch(GenpiError):
    pass


class BudgetExceeded(GenpiError):
    def __init__(self, rows, cols, budget):
        self.rows = rows
        self.cols = cols
        self.budget = budget
        super().__init__(
            f"evaluation matrix of {rows} rows x {cols} cols exceeds row budget {budget}"
        )


class ParseError(GenpiError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class UnknownCoefficient(GenpiError):
    pass


class UnassignedVariable(GenpiError):
    pass


class InternalError(GenpiError):
    """Invariant violation that indicates a bug, not a user error."""
