"""Exception types shared across the package."""


class EodCheckError(Exception):
    """Base class for every error raised by this library."""


class ParseError(EodCheckError):
    """Malformed delimited-text input."""


class SchemaError(EodCheckError):
    """Attribute names, kinds, or statement structure inconsistent with the schema."""


class EmptyRelationError(EodCheckError):
    """The input contains no data rows."""


class IncompleteTupleError(EodCheckError):
    """A comparison touched a missing value; callers must restrict to complete tuples first."""


class ConfigError(EodCheckError):
    """Invalid generator or sweep configuration."""


class CapExceededError(EodCheckError):
    """Exhaustive search refused because the free-attribute count exceeds the cap."""


class OracleTimeoutError(EodCheckError):
    """Exhaustive search exceeded its time budget."""
