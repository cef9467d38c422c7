"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class GiniUndefinedError(ValueError):
    """The sample has zero total income, so shares and Gini are undefined."""


class IncomeRangeError(OverflowError):
    """Generated incomes do not fit in double precision."""
