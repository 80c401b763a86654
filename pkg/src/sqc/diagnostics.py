"""Source spans and located diagnostics shared by the parser and the checker."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """1-based, inclusive source region."""

    line: int
    col: int
    end_line: int
    end_col: int

    @staticmethod
    def point(line: int, col: int) -> "Span":
        return Span(line, col, line, col)


UNKNOWN_SPAN = Span(1, 1, 1, 1)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str  # "error" | "warning"
    message: str
    location: Span = UNKNOWN_SPAN
    expected: str | None = None
    got: str | None = None

    def render(self) -> str:
        text = (
            f"{self.location.line}:{self.location.col}: "
            f"{self.severity}: {self.message} [{self.code}]"
        )
        if self.expected is not None:
            text += f"\n  expected: {self.expected}"
        if self.got is not None:
            text += f"\n  got:      {self.got}"
        return text


def error(code: str, message: str, location: Span, **kw) -> Diagnostic:
    return Diagnostic(code, "error", message, location, **kw)


def warning(code: str, message: str, location: Span, **kw) -> Diagnostic:
    return Diagnostic(code, "warning", message, location, **kw)
