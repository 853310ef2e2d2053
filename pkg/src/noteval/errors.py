"""Exception types raised by noteval.

Every loader is total-or-error: a value returned from ingestion satisfies all
of its type's invariants, otherwise one of the exceptions below is raised.
All exceptions derive from :class:`NotevalError`.
"""

from __future__ import annotations


class NotevalError(Exception):
    """Base class for all noteval errors."""


# ---------------------------------------------------------------------------
# ingestion / validation

class ParseError(NotevalError):
    def __init__(self, reason: str, line: int | None = None, path: str | None = None):
        self.reason = reason
        self.line = line
        self.path = path
        where = f"{path or '<input>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {reason}")


class MissingField(NotevalError):
    def __init__(self, field: str, line: int | None = None):
        self.field = field
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(f"missing required field {field!r}{suffix}")


class DuplicateId(NotevalError):
    def __init__(self, pair_id: str):
        self.pair_id = pair_id
        super().__init__(f"duplicate pair_id {pair_id!r}")


class NegativeCount(NotevalError):
    def __init__(self, field: str, value: int):
        self.field = field
        self.value = value
        super().__init__(f"count {field!r} must be >= 0, got {value}")


class CountInconsistent(NotevalError):
    def __init__(self, reason: str):
        super().__init__(reason)


class UnknownPair(NotevalError):
    def __init__(self, pair_id: str):
        self.pair_id = pair_id
        super().__init__(f"pair_id {pair_id!r} not present in the dataset")


class NaNValue(NotevalError):
    def __init__(self, pair_id: str):
        self.pair_id = pair_id
        super().__init__(f"non-finite score value for pair {pair_id!r}")


# ---------------------------------------------------------------------------
# embeddings

class HeaderMismatch(NotevalError):
    pass


class DimMismatch(NotevalError):
    def __init__(self, reason: str, line: int | None = None):
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(f"{reason}{suffix}")


class DuplicateKey(NotevalError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"duplicate key {key!r}")


class ZeroVector(NotevalError):
    def __init__(self, key: str = ""):
        self.key = key
        super().__init__(f"zero vector{f' for key {key!r}' if key else ''}")


class TokenMismatch(NotevalError):
    pass


class ProviderError(NotevalError):
    pass


# ---------------------------------------------------------------------------
# text windows and metric arguments

class InvalidWindow(NotevalError):
    def __init__(self, max_len: int, overlap: int):
        super().__init__(f"invalid window: need max_len > overlap >= 0, got "
                         f"max_len={max_len}, overlap={overlap}")


class InvalidN(NotevalError):
    def __init__(self, n: int):
        super().__init__(f"n-gram order must be >= 1, got {n}")


class EmptyDocument(NotevalError):
    pass


class LengthMismatch(NotevalError):
    pass


class UndefinedScore(NotevalError):
    """A score whose denominator vanished; names the affected components."""

    def __init__(self, components: tuple[str, ...], reason: str = ""):
        self.components = components
        msg = f"undefined score components: {', '.join(components)}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class EmptyText(NotevalError):
    pass


# ---------------------------------------------------------------------------
# likelihood

class EmptyCorpus(NotevalError):
    pass


class EmptyTarget(NotevalError):
    pass


class MissingPair(NotevalError):
    def __init__(self, pair_id: str, direction: str = ""):
        self.pair_id = pair_id
        self.direction = direction
        extra = f" direction={direction}" if direction else ""
        super().__init__(f"no stored record for pair {pair_id!r}{extra}")


# ---------------------------------------------------------------------------
# analysis

class DegenerateColumn(NotevalError):
    def __init__(self, metric_name: str, reason: str = "constant values"):
        self.metric_name = metric_name
        super().__init__(f"column {metric_name!r} is degenerate: {reason}")


class DegenerateInput(NotevalError):
    pass


class MissingMember(NotevalError):
    def __init__(self, member: str):
        self.member = member
        super().__init__(f"ensemble member column {member!r} not present")


class NoSharedMetrics(NotevalError):
    pass


class InsufficientAnnotators(NotevalError):
    pass


# ---------------------------------------------------------------------------
# cli

class ConfigError(NotevalError):
    pass


class NoOverlap(NotevalError):
    pass
