"""Exception types shared across the package.

The CLI maps these onto stable exit codes: usage problems exit 2, schema
and value problems exit 3, numerical problems exit 4, and I/O problems
(plain OSError) exit 5.
"""


class CplxClustError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(CplxClustError):
    """Invalid combination of options or arguments."""


class SchemaError(CplxClustError):
    """Input file does not have the expected columns or structure."""


class DataError(CplxClustError, ValueError):
    """Input values are invalid or mutually inconsistent."""


class DomainError(CplxClustError, ValueError):
    """Argument outside the mathematical domain of a function."""


class NumericalError(CplxClustError, ArithmeticError):
    """An iterative numerical routine failed to converge."""
