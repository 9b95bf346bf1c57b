"""Exception hierarchy shared across the package."""


class PgmhdError(Exception):
    """Base class for all library errors."""


class StructuralError(PgmhdError):
    """A graph invariant would be violated (level mismatch, bad delta, ...)."""


class FrozenGraphError(StructuralError):
    """Mutation attempted on a frozen graph."""


class UnknownNodeError(PgmhdError, KeyError):
    """Lookup of a node that does not exist."""

    def __str__(self) -> str:  # KeyError quotes its args; keep the message readable
        return Exception.__str__(self)


class UndefinedDistributionError(PgmhdError):
    """A conditional distribution has no mass (In(v)=0 or Out(w)=0)."""


class NoAssociationError(PgmhdError):
    """NPMI requested for a (parent, child) pair that never co-occurred."""


class FormatError(PgmhdError):
    """Malformed input file or model file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class CorruptModelError(FormatError):
    """Model file failed checksum or truncation checks."""
