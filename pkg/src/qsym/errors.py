"""Exception hierarchy shared by every qsym module."""


class QSymError(Exception):
    """Base class for all qsym errors."""


class DomainError(QSymError, ValueError):
    """An argument lies outside the domain of an operation."""


class PrecisionError(QSymError, ArithmeticError):
    """A computation would exceed its configured precision or pole budget."""


class ExponentCapError(QSymError, OverflowError):
    """An exponent grew past the configured cap."""


class OrderMismatchError(QSymError, ValueError):
    """Two truncated series of different orders were combined."""


class NotInvertibleError(QSymError, ZeroDivisionError):
    """Division by an element that is not a unit of its ring."""
