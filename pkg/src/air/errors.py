"""Exception types shared across the engine."""


class AirError(Exception):
    """Base class for all engine errors."""


class MalformedRule(AirError):
    """A synonym file line that cannot be parsed; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class MalformedLine(AirError):
    """A qrels or queries file line that cannot be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateDocId(AirError):
    """The same document id was added to an index builder twice."""


class CommitAlreadyDone(AirError):
    """The index builder was used after commit()."""


class IoFailure(AirError):
    """An index file could not be read or written."""


class FormatVersionMismatch(AirError):
    """The index file was produced by an incompatible format version."""


class CorruptIndex(AirError):
    """The index file failed its integrity check."""


class InvalidPage(AirError):
    """Page number below 1 requested."""


class ContractViolation(AirError):
    """A metric was called with counts that violate its precondition."""


class DuplicateQueryId(AirError):
    """The same query id appears twice in a queries file."""


class MissingQrels(AirError):
    """A query under evaluation has no relevance judgments."""


class QuerySetMismatch(AirError):
    """Two evaluation reports cover different query sets and cannot be compared."""
