"""Exception hierarchy shared by all modules."""


class TribracketError(Exception):
    """Base class for every error raised by this package."""


class StructureError(TribracketError):
    """An operation table has the wrong shape or out-of-range entries."""


class AxiomError(TribracketError):
    """A table fails the tribracket axioms where a valid tribracket is required."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class FlavorError(TribracketError):
    """The operation expects the other flavor (horizontal vs vertical)."""


class InvalidSpecError(TribracketError):
    """Alexander parameters are not units modulo n, or are malformed."""


class BoundError(TribracketError):
    """An exhaustive procedure was asked to run beyond its configured bound."""


class ParseError(TribracketError):
    """Malformed PD code or link file."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class EmbeddingError(TribracketError):
    """PD rotation data does not describe a planar 4-valent diagram."""


class UnknownLinkError(TribracketError, LookupError):
    """A link name is not present in the bundled table."""

    def __init__(self, name):
        super().__init__(f"unknown link {name!r}")
        self.name = name


class UnderdeterminedError(TribracketError):
    """Fewer than three regions of a crossing are colored."""
