"""Exception hierarchy shared by the loaders, parsers and the CLI."""

from __future__ import annotations


class LifterError(Exception):
    """Base class. ``line``/``col`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def location(self) -> str:
        if self.line is None:
            return ""
        return f"{self.line}:{self.col}"

    def __str__(self) -> str:
        loc = self.location()
        return f"{loc}: {self.message}" if loc else self.message


class TermSyntaxError(LifterError):
    """Malformed goal file, type or S-expression."""


class TermTypeError(LifterError):
    """Arity or type mismatch against a declared function type."""


class OccurrenceError(LifterError):
    """An occurrence path that does not address a subterm of the goal."""


class ContextError(LifterError):
    """Malformed proof-context document."""


class AssertionSyntaxError(LifterError):
    """Syntax, kind or scope error in a LiFtEr assertion."""


class InvocationError(LifterError):
    """Malformed ``induct`` invocation string."""


class CorpusError(LifterError):
    """Unreadable corpus file."""
