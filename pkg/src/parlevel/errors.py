"""Exception types shared across the package."""

from __future__ import annotations


class AnalysisError(Exception):
    """Base class for all errors raised by this package."""


class ArityMismatchError(AnalysisError):
    """Operands of different arity where a shared arity is required."""


class TraceError(AnalysisError):
    """A candidate trace violates the trace invariants."""


class ComparableRowsError(TraceError):
    """Two trace inputs are comparable (trace entries must be minimal)."""


class InconsistentOutputsError(TraceError):
    """Compatible trace inputs carry different outputs."""


class NonMonotoneTableError(TraceError):
    """A full table is not monotone; carries one violating pair."""

    def __init__(self, low, high, message: str | None = None):
        self.low = low
        self.high = high
        super().__init__(message or f"table not monotone: f({low}) vs f({high})")


class BoundExceededError(AnalysisError):
    """An input exceeds a configured enumeration or recursion bound."""


class BudgetExceededError(AnalysisError):
    """A brute-force search would exceed the configured state budget."""

    def __init__(self, required: int, allowed: int, what: str = "search"):
        self.required = required
        self.allowed = allowed
        super().__init__(f"{what} needs {required} states, budget allows {allowed}")


class InapplicableError(AnalysisError):
    """A construction's precondition does not hold for the given function."""


class FormatError(AnalysisError):
    """Malformed textual input (trace / relation / term / name syntax)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class TermArityError(AnalysisError):
    """A term references variables or applies symbols inconsistently."""


class SoundnessError(AnalysisError):
    """Two verified pieces of evidence contradict each other."""
