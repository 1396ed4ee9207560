"""Exception hierarchy shared across the package.

The split mirrors how failures surface to a caller: schema/configuration
problems, bad data content, and numerical breakdowns each get their own
class so the CLI can map them to distinct exit codes.
"""


class FairdepError(Exception):
    """Base class for all package errors."""


class SchemaError(FairdepError):
    """Schema file or column declaration is invalid."""


class DataError(FairdepError):
    """Dataset content violates the declared schema or a precondition."""


class NumericsError(FairdepError):
    """A numerical routine failed (non-SPD solve, non-finite input)."""
