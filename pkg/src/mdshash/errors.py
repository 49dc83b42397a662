"""Exception types shared across the package.

Each error carries a stable ``exit_code`` so the CLI can map failures to
process exit statuses without a lookup table.
"""


class MdsHashError(Exception):
    exit_code = 2


class BadParams(MdsHashError, ValueError):
    pass


class NotPrimePower(BadParams):
    pass


class DivisionByZero(MdsHashError, ZeroDivisionError):
    pass


class NoSuchVector(BadParams):
    pass


class AllOnesNotInCode(BadParams):
    pass


class TooSmall(BadParams):
    pass


class NoGroup(BadParams):
    pass


class Inapplicable(BadParams):
    """A bound formula is vacuous (non-positive denominator) at the query."""


class OutOfRange(BadParams):
    """epsilon lies below the floor that any family of this kind must meet."""


class ThresholdInapplicable(BadParams):
    """The threshold hypothesis needed for a dominance verdict does not hold."""


class NegativeDiscriminant(MdsHashError, ArithmeticError):
    pass


class TooLarge(MdsHashError):
    exit_code = 3


class RangeTooLarge(TooLarge):
    pass


class ParseError(MdsHashError):
    exit_code = 4

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
