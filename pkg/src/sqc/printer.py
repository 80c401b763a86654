"""Canonical text rendering for formulas, sequents, and proof scripts.

The printer emits ASCII connectives with minimal parentheses. A quantifier
prints bare only in tail position (nothing following it in the enclosing
formula), since its body extends maximally to the right; anywhere else it is
parenthesized. Binder display names are kept when they cannot capture
anything, otherwise the formula falls back to x0, x1, ... outermost-first.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable

from .syntax import App, BoundVar, Con, Dis, Exi, Formula, Imp, Neg, Pred, Term, Uni

if TYPE_CHECKING:  # pragma: no cover
    from .script import ProofScript

_KEYWORDS = {"forall", "exists"}
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# precedence floors from the grammar: -> 1, | 2, & 3, ~ 4
_PREC_IMP, _PREC_DIS, _PREC_CON, _PREC_NEG = 1, 2, 3, 4


def _term_constants(f: Formula, acc: set[str]) -> None:
    def walk_term(t: Term) -> None:
        if isinstance(t, App):
            if not t.args:
                acc.add(t.symbol)
            for a in t.args:
                walk_term(a)

    match f:
        case Pred(args=args):
            for a in args:
                walk_term(a)
        case Imp(left=a, right=b) | Dis(left=a, right=b) | Con(left=a, right=b):
            _term_constants(a, acc)
            _term_constants(b, acc)
        case Neg(body=a):
            _term_constants(a, acc)
        case Uni(body=a) | Exi(body=a):
            _term_constants(a, acc)


def _binder_name(preferred: str | None, body: Formula, stack: list[str]) -> str:
    """Pick a display name that reparses to the same de Bruijn structure."""
    unsafe: set[str] = set(stack) | _KEYWORDS
    _term_constants(body, unsafe)
    if preferred and preferred not in unsafe and _IDENT.match(preferred):
        return preferred
    n = len(stack)
    while f"x{n}" in unsafe:
        n += 1
    return f"x{n}"


def print_term(t: Term, names: list[str] | None = None) -> str:
    stack = names if names is not None else []
    match t:
        case BoundVar(index=i):
            return stack[i] if i < len(stack) else f"?{i}"
        case App(symbol=s, args=args):
            if not args:
                return s
            return f"{s}({', '.join(print_term(a, stack) for a in args)})"
    raise TypeError(f"unexpected term: {t!r}")


def print_formula(f: Formula, tail: bool = True) -> str:
    """Render one formula; `tail` marks that nothing follows it in context."""

    def go(g: Formula, need: int, tail: bool, stack: list[str]) -> str:
        match g:
            case Pred(symbol=s, args=args):
                if not args:
                    return s
                return f"{s}({', '.join(print_term(a, stack) for a in args)})"
            case Neg(body=a):
                return "~" + go(a, _PREC_NEG, tail, stack)
            case Con(left=a, right=b):
                wrapped = need > _PREC_CON
                text = (
                    go(a, _PREC_CON, False, stack)
                    + " & "
                    + go(b, _PREC_CON + 1, tail or wrapped, stack)
                )
                return f"({text})" if wrapped else text
            case Dis(left=a, right=b):
                wrapped = need > _PREC_DIS
                text = (
                    go(a, _PREC_DIS, False, stack)
                    + " | "
                    + go(b, _PREC_DIS + 1, tail or wrapped, stack)
                )
                return f"({text})" if wrapped else text
            case Imp(left=a, right=b):
                wrapped = need > _PREC_IMP
                text = (
                    go(a, _PREC_IMP + 1, False, stack)
                    + " -> "
                    + go(b, _PREC_IMP, tail or wrapped, stack)
                )
                return f"({text})" if wrapped else text
            case Uni(body=a, name=n) | Exi(body=a, name=n):
                word = "forall" if isinstance(g, Uni) else "exists"
                name = _binder_name(n, a, stack)
                body = go(a, 0, True, [name] + stack)
                text = f"{word} {name}. {body}"
                return text if tail else f"({text})"
        raise TypeError(f"unexpected formula: {g!r}")

    return go(f, 0, tail, [])


def print_sequent(formulas: Iterable[Formula]) -> str:
    """Inline sequent form: formulas joined by top-level commas."""
    return ", ".join(print_formula(f) for f in formulas)


def print_script(script: "ProofScript") -> str:
    """Canonical .sqc text; parse_script(print_script(s)) equals s structurally."""
    lines = [print_formula(script.goal), ""]
    for step in script.steps:
        lines.append(step.rule.value)
        for i, seq in enumerate(step.claimed):
            if i > 0:
                lines.append("+")
            for f in seq:
                lines.append("  " + print_formula(f))
    return "\n".join(lines) + "\n"
