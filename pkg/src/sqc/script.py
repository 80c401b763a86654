"""Proof-script values: the parsed artifact a student submits."""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import RuleApplication
from .diagnostics import Diagnostic
from .syntax import Formula


@dataclass(frozen=True)
class ProofScript:
    goal: Formula
    steps: tuple[RuleApplication, ...]
    trailing: str | None = None


@dataclass(frozen=True)
class ParseOutcome:
    """Result of parsing with recovery.

    recovered is True exactly when an error diagnostic was bypassed to keep
    going; script is None only when no goal formula could be read.
    """

    script: ProofScript | None
    diagnostics: tuple[Diagnostic, ...]
    recovered: bool
