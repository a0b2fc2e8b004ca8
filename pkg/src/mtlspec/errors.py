"""Exception types shared across the package.

Class names follow the error vocabulary of the operation contracts, so callers
can catch e.g. ``NonContiguousGroup`` or ``InsufficientHorizon`` directly.
The one naming exception is ``FormulaSyntaxError``, which would otherwise
shadow the Python builtin.
"""

from __future__ import annotations


class SpecError(Exception):
    """Base class for every error raised by this package."""


# --- template tree model ---------------------------------------------------

class UnknownParent(SpecError):
    """The requested parent id does not exist in the tree."""


class UnknownSibling(SpecError):
    """The ``after`` id is not a sibling at the insertion point."""


class UnknownNode(SpecError):
    """The requested node id does not exist in the tree."""


class NonContiguousGroup(SpecError):
    """The edit would split a sibling group into non-adjacent runs."""


class MalformedOperator(SpecError):
    """Operator kind and interval arity do not match, or a bound is invalid."""


class InvalidSignalName(SpecError):
    """Signal names must start with a letter and use letters, digits or underscores."""


class NonFiniteThreshold(SpecError):
    """Predicate thresholds must be finite real numbers."""


class NoTemplates(SpecError):
    """The tree has no templates to translate."""


class NoPredicate(SpecError):
    """The node carries no predicate."""


class StructurallyInvalid(SpecError):
    """Translation refused; carries the validation diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = tuple(diagnostics)
        detail = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"tree is not translatable: {detail}")


# --- formula language ------------------------------------------------------

class FormulaSyntaxError(SpecError):
    """Formula text could not be parsed. Reports 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class IntervalError(SpecError):
    """Interval bounds must satisfy 0 <= lo <= hi and be finite."""


# --- monitor ---------------------------------------------------------------

class UnknownSignal(SpecError):
    """The formula refers to a signal the trace does not carry."""


class InsufficientHorizon(SpecError):
    """The trace is too short to decide the formula at the requested sample."""

    def __init__(self, required: float, available: float):
        self.required = required
        self.available = available
        super().__init__(
            f"needs {required} s of trace after the evaluation point, "
            f"only {available} s available"
        )


# --- exemplar generation ---------------------------------------------------

class GenerationFailed(SpecError):
    """No satisfying (or falsifying) trace was found within the retry budget."""


class ThresholdOutOfRange(SpecError):
    """The predicate threshold must lie strictly inside the value range."""


class DurationTooShort(SpecError):
    """The requested duration does not cover the formula horizon."""


# --- persistence -----------------------------------------------------------

class SchemaError(SpecError):
    """A spec document field is missing, unknown or malformed."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"field {field!r}: {reason}")


class VersionMismatch(SpecError):
    """The document version is not supported."""

    def __init__(self, found, supported):
        self.found = found
        self.supported = supported
        super().__init__(f"document version {found!r} is not supported (expected {supported})")


class CsvError(SpecError):
    """A trace CSV cell or row is malformed. Rows are 1-based including the header."""

    def __init__(self, row: int, column: str, reason: str):
        self.row = row
        self.column = column
        self.reason = reason
        super().__init__(f"row {row}, column {column!r}: {reason}")


class NonMonotoneTime(SpecError):
    """Trace timestamps must be strictly increasing."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(f"time does not strictly increase at row {row}")


# --- service ---------------------------------------------------------------

class BindError(SpecError):
    """The requested service port is unavailable."""


class RevisionMismatch(SpecError):
    """A mutation carried a stale revision number."""

    def __init__(self, expected: int, found: int):
        self.expected = expected
        self.found = found
        super().__init__(f"expected revision {expected}, got {found}")


class PersistenceError(SpecError):
    """The persistence directory is unreadable or unwritable."""
