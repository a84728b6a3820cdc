"""Exception hierarchy shared across the package."""

from __future__ import annotations


class TraceTutorError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TraceTutorError):
    """Source program rejected: syntax error, unresolved reference, or
    duplicate name. Carries the 1-based source location."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class ReplayError(TraceTutorError):
    """Replay could not execute the given schedule."""


class InfeasibleStepError(ReplayError):
    """A schedule step named a thread that cannot run at that point."""

    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


class IncompleteScheduleError(ReplayError):
    """The schedule ended before every thread finished."""


class TraceFormatError(TraceTutorError):
    """A trace text line could not be resolved against the program."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"trace line {line_number}: {message}")
        self.line_number = line_number


class UnknownThreadError(TraceTutorError):
    """A thread name does not exist in the program."""


class EnumerationBoundError(TraceTutorError):
    """The program's complete execution exceeds the event budget."""


class UninitializedVariableError(TraceTutorError):
    """A shared variable was read or asked for a timeline before any
    event initialized it."""


class DistractorBudgetError(TraceTutorError):
    """Could not produce the requested number of distinct wrong choices
    within the retry budget."""


class ArrangementError(TraceTutorError):
    """A submitted arrangement is not a permutation of the expected lines."""


class ExerciseFormatError(TraceTutorError):
    """An exercise document is malformed."""


class EmptyTraceError(TraceTutorError):
    """The operation needs at least one trace event."""
