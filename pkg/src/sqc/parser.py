"""Surface grammar for formulas and .sqc proof scripts.

Formula grammar (ASCII and Unicode spellings both accepted):

    formula := quant | impf
    impf    := orf (("->" | "→") impf)? | orf ("<->" | "↔") orf
    orf     := andf (("|" | "∨") andf)*          left-associative
    andf    := negf (("&" | "∧") negf)*          left-associative
    negf    := ("~" | "¬") negf | atomf
    atomf   := "(" formula ")" | quant | pred
    quant   := ("forall" | "∀" | "exists" | "∃") ident "." formula
    pred    := ident ("(" term ("," term)* ")")?
    term    := ident ("(" term ("," term)* ")")?
    ident   := letter (letter | digit | "_")*

Quantifier bodies extend maximally to the right; quantified names shadow
outer ones; unbound names become constants; `a <-> b` desugars to
`(a -> b) & (b -> a)`. `#` starts a comment running to end of line.

Script layout: the goal formula (up to the first blank line), then steps.
Each step is a rule-name line at column 1, followed by its claimed result:
nothing for Basic, one sequent block, or two blocks separated by a line
holding only "+". A sequent block is one formula per line, indented by at
least two spaces. On error the parser records a located diagnostic, marks
the outcome recovered, and skips to the next rule-name line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import RULE_NAMES, Rule, RuleApplication, Sequent, claimed_count
from .diagnostics import Diagnostic, Span, error
from .script import ParseOutcome, ProofScript
from .syntax import (
    App,
    BoundVar,
    Con,
    Dis,
    Exi,
    Formula,
    Imp,
    Neg,
    Pred,
    Term,
    Uni,
)


class FormulaError(Exception):
    """A formula failed to parse; carries the located diagnostics."""

    def __init__(self, diagnostics: tuple[Diagnostic, ...]):
        super().__init__(diagnostics[0].message if diagnostics else "parse error")
        self.diagnostics = diagnostics


# ---------------------------------------------------------------------------
# lexing

_UNICODE_OPS = {
    "→": "->",
    "↔": "<->",
    "∨": "|",
    "∧": "&",
    "¬": "~",
    "∀": "forall",
    "∃": "exists",
}
_KEYWORDS = {"forall", "exists"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident" | "(" | ")" | "," | "." | "->" | "<->" | "|" | "&" | "~" | "forall" | "exists" | "eof"
    text: str
    span: Span


class _Fail(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _lex(segments: list[tuple[int, int, str]]) -> list[_Token]:
    """Tokenize text given as (line, start_col, text) segments."""
    tokens: list[_Token] = []
    for line_no, col0, text in segments:
        i = 0
        while i < len(text):
            c = text[i]
            col = col0 + i
            if c in " \t\r":
                i += 1
                continue
            if c in "(),.":
                tokens.append(_Token(c, c, Span(line_no, col, line_no, col)))
                i += 1
                continue
            if text.startswith("<->", i):
                tokens.append(_Token("<->", "<->", Span(line_no, col, line_no, col + 2)))
                i += 3
                continue
            if text.startswith("->", i):
                tokens.append(_Token("->", "->", Span(line_no, col, line_no, col + 1)))
                i += 2
                continue
            if c in "|&~":
                tokens.append(_Token(c, c, Span(line_no, col, line_no, col)))
                i += 1
                continue
            if c in _UNICODE_OPS:
                tokens.append(_Token(_UNICODE_OPS[c], c, Span(line_no, col, line_no, col)))
                i += 1
                continue
            if c.isascii() and c.isalpha():
                j = i + 1
                while j < len(text) and (
                    (text[j].isascii() and text[j].isalnum()) or text[j] == "_"
                ):
                    j += 1
                word = text[i:j]
                kind = word if word in _KEYWORDS else "ident"
                tokens.append(_Token(kind, word, Span(line_no, col, line_no, col0 + j - 1)))
                i = j
                continue
            raise _Fail(
                error("SYNTAX", f"unexpected character '{c}'", Span.point(line_no, col))
            )
    if segments:
        last_line, last_col0, last_text = segments[-1]
        end = Span.point(last_line, last_col0 + len(last_text))
    else:
        end = Span.point(1, 1)
    tokens.append(_Token("eof", "", end))
    return tokens


# ---------------------------------------------------------------------------
# symbol arity bookkeeping

class SymbolTable:
    """Records the arity of each function and predicate symbol at first use."""

    def __init__(self) -> None:
        self._arities: dict[tuple[str, str], int] = {}

    def record(self, kind: str, name: str, arity: int, span: Span) -> None:
        key = (kind, name)
        seen = self._arities.get(key)
        if seen is None:
            self._arities[key] = arity
        elif seen != arity:
            raise _Fail(
                error(
                    "ARITY_MISMATCH",
                    f"{kind} symbol '{name}' used with arity {arity} "
                    f"but previously with arity {seen}",
                    span,
                )
            )


# ---------------------------------------------------------------------------
# formula parsing

class _FormulaParser:
    def __init__(self, tokens: list[_Token], symbols: SymbolTable):
        self.tokens = tokens
        self.i = 0
        self.symbols = symbols
        self.scope: list[str] = []

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str) -> _Fail:
        tok = self.peek()
        if tok.kind == "eof":
            return _Fail(
                error("SYNTAX", f"unexpected end of input: expected {what}", tok.span)
            )
        return _Fail(
            error("SYNTAX", f"expected {what}, found '{tok.text}'", tok.span)
        )

    def expect(self, kind: str, what: str) -> _Token:
        if self.peek().kind != kind:
            raise self.fail(what)
        return self.take()

    def formula(self) -> Formula:
        left = self.orf()
        tok = self.peek()
        if tok.kind == "->":
            self.take()
            return Imp(left, self.formula_noquant_guard())
        if tok.kind == "<->":
            self.take()
            right = self.orf()
            return Con(Imp(left, right), Imp(right, left))
        return left

    def formula_noquant_guard(self) -> Formula:
        # right side of ->: a full impf, right-associative
        return self.formula()

    def orf(self) -> Formula:
        left = self.andf()
        while self.peek().kind == "|":
            self.take()
            left = Dis(left, self.andf())
        return left

    def andf(self) -> Formula:
        left = self.negf()
        while self.peek().kind == "&":
            self.take()
            left = Con(left, self.negf())
        return left

    def negf(self) -> Formula:
        if self.peek().kind == "~":
            self.take()
            return Neg(self.negf())
        return self.atomf()

    def atomf(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.take()
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        if tok.kind in _KEYWORDS:
            return self.quant()
        if tok.kind == "ident":
            return self.pred()
        raise self.fail("a formula (identifier, '(', '~', 'forall', 'exists')")

    def quant(self) -> Formula:
        word = self.take()
        name = self.expect("ident", "a variable name").text
        self.expect(".", "'.'")
        self.scope.append(name)
        try:
            body = self.formula()
        finally:
            self.scope.pop()
        return Uni(body, name) if word.kind == "forall" else Exi(body, name)

    def pred(self) -> Formula:
        tok = self.take()
        args = self.arguments()
        self.symbols.record("predicate", tok.text, len(args), tok.span)
        return Pred(tok.text, args)

    def term(self) -> Term:
        tok = self.expect("ident", "a term (identifier)")
        if self.peek().kind == "(":
            args = self.arguments()
            self.symbols.record("function", tok.text, len(args), tok.span)
            return App(tok.text, args)
        # bare name: innermost matching binder wins, otherwise a constant
        for distance, bound in enumerate(reversed(self.scope)):
            if bound == tok.text:
                return BoundVar(distance)
        self.symbols.record("function", tok.text, 0, tok.span)
        return App(tok.text, ())

    def arguments(self) -> tuple[Term, ...]:
        if self.peek().kind != "(":
            return ()
        self.take()
        args = [self.term()]
        while self.peek().kind == ",":
            self.take()
            args.append(self.term())
        self.expect(")", "')' or ','")
        return tuple(args)


def _parse_formula_segments(
    segments: list[tuple[int, int, str]], symbols: SymbolTable
) -> Formula:
    parser = _FormulaParser(_lex(segments), symbols)
    result = parser.formula()
    if parser.peek().kind != "eof":
        raise parser.fail("end of formula")
    return result


def _text_segments(text: str, start_line: int = 1) -> list[tuple[int, int, str]]:
    return [
        (start_line + i, 1, _strip_comment(line))
        for i, line in enumerate(text.split("\n"))
    ]


def parse_formula(text: str, symbols: SymbolTable | None = None) -> Formula:
    """Parse one formula; raises FormulaError with located diagnostics."""
    if text.startswith("﻿"):
        text = text[1:]
    try:
        return _parse_formula_segments(_text_segments(text), symbols or SymbolTable())
    except _Fail as exc:
        raise FormulaError((exc.diagnostic,)) from None


def parse_sequent(text: str, symbols: SymbolTable | None = None) -> Sequent:
    """Parse a comma-separated sequent, as printed by print_sequent."""
    if text.startswith("﻿"):
        text = text[1:]
    table = symbols or SymbolTable()
    try:
        parser = _FormulaParser(_lex(_text_segments(text)), table)
        formulas = [parser.formula()]
        while parser.peek().kind == ",":
            parser.take()
            formulas.append(parser.formula())
        if parser.peek().kind != "eof":
            raise parser.fail("',' or end of sequent")
        return tuple(formulas)
    except _Fail as exc:
        raise FormulaError((exc.diagnostic,)) from None


# ---------------------------------------------------------------------------
# rule-name suggestions

def _levenshtein(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def nearest_rule_name(word: str) -> str | None:
    """Closest rule spelling within edit distance 3, in rule-table order."""
    best_name, best_dist = None, 4
    for rule in Rule:
        dist = _levenshtein(word, rule.value)
        if dist < best_dist:
            best_name, best_dist = rule.value, dist
    return best_name


# ---------------------------------------------------------------------------
# script parsing

_BLANK, _TOP, _INDENTED, _PLUS, _BADINDENT = range(5)


def _classify(content: str) -> tuple[int, str, int]:
    """Returns (class, stripped-or-text, indent)."""
    stripped = content.strip()
    if not stripped:
        return _BLANK, "", 0
    if stripped == "+":
        return _PLUS, "+", 0
    indent = len(content) - len(content.lstrip(" "))
    if indent >= 2:
        return _INDENTED, content, indent
    if indent > 0 or content[:1] == "\t":
        return _BADINDENT, stripped, indent
    return _TOP, stripped, 0


def parse_script(text: str) -> ParseOutcome:
    """Parse a .sqc proof script, recovering at rule-name lines on error."""
    if text.startswith("﻿"):
        text = text[1:]
    raw_lines = text.split("\n")
    contents = [_strip_comment(line.rstrip("\r")) for line in raw_lines]
    classes = [_classify(c) for c in contents]
    n = len(raw_lines)

    diagnostics: list[Diagnostic] = []
    recovered = False
    trailing: str | None = None
    symbols = SymbolTable()

    def is_rule_line(idx: int) -> bool:
        cls, word, _ = classes[idx]
        return cls == _TOP and word in RULE_NAMES

    def resync(start: int) -> int:
        """Skip to the next rule-name line; capture trailing text at EOF."""
        nonlocal recovered, trailing
        recovered = True
        j = start
        while j < n and not is_rule_line(j):
            j += 1
        if j >= n:
            remainder = "\n".join(raw_lines[start:]).strip("\n")
            if remainder.strip():
                trailing = remainder
        return j

    # --- goal region: nonblank lines from the top, stopping at a blank line
    # (or defensively at a rule-name line when the blank separator is missing)
    i = 0
    while i < n and classes[i][0] == _BLANK:
        i += 1
    goal_segments: list[tuple[int, int, str]] = []
    while i < n and classes[i][0] != _BLANK and not is_rule_line(i):
        goal_segments.append((i + 1, 1, contents[i]))
        i += 1
    if not goal_segments:
        diagnostics.append(
            error("GOAL_MISSING", "expected a goal formula", Span.point(1, 1))
        )
        return ParseOutcome(None, tuple(diagnostics), recovered)
    try:
        goal = _parse_formula_segments(goal_segments, symbols)
    except _Fail as exc:
        diagnostics.append(exc.diagnostic)
        return ParseOutcome(None, tuple(diagnostics), recovered)

    # --- steps
    steps: list[RuleApplication] = []

    def collect_block(start: int, rule: Rule) -> tuple[Sequent | None, int]:
        """Parse one sequent block (consecutive indented formula lines).

        On failure returns (None, resync_start): the offending line for a
        formula error, or the current line for a missing block (that line
        may well be the next rule name).
        """
        j = start
        formulas: list[Formula] = []
        while j < n and classes[j][0] == _INDENTED:
            _, content, indent = classes[j]
            try:
                formulas.append(
                    _parse_formula_segments(
                        [(j + 1, indent + 1, content[indent:])], symbols
                    )
                )
            except _Fail as exc:
                diagnostics.append(exc.diagnostic)
                return None, j
            j += 1
        if not formulas:
            if j < n and classes[j][0] == _BADINDENT:
                diagnostics.append(
                    error(
                        "MISSING_RESULT",
                        "result lines must be indented by at least two spaces",
                        Span.point(j + 1, 1),
                    )
                )
            else:
                diagnostics.append(
                    error(
                        "MISSING_RESULT",
                        f"rule {rule.value} expects a result sequent "
                        f"(one formula per line, indented by two spaces)",
                        Span.point(min(j, n - 1) + 1, 1),
                    )
                )
            return None, j
        return tuple(formulas), j

    while i < n:
        cls, word, _ = classes[i]
        if cls == _BLANK:
            i += 1
            continue
        if cls != _TOP:
            code = "EXPECTED_RULE"
            if cls == _PLUS:
                message = "unexpected '+' outside a two-branch result"
            elif cls == _BADINDENT:
                message = (
                    "expected a rule name at column 1 "
                    "(result lines are indented by at least two spaces)"
                )
            else:
                message = "expected a rule name at column 1"
            diagnostics.append(error(code, message, Span.point(i + 1, 1)))
            i = resync(i + 1)
            continue
        if word not in RULE_NAMES:
            suggestion = nearest_rule_name(word)
            message = f"unknown rule '{word}'"
            if suggestion:
                message += f" (did you mean '{suggestion}'?)"
            diagnostics.append(error("UNKNOWN_RULE", message, Span.point(i + 1, 1)))
            i = resync(i + 1)
            continue

        rule = RULE_NAMES[word]
        rule_line = i
        i += 1
        blocks_needed = claimed_count(rule)
        claimed: list[Sequent] = []
        failed = False
        if blocks_needed >= 1:
            while i < n and classes[i][0] == _BLANK:
                i += 1
            block, i = collect_block(i, rule)
            if block is None:
                i = resync(i)
                failed = True
            else:
                claimed.append(block)
        if not failed and blocks_needed == 2:
            while i < n and classes[i][0] == _BLANK:
                i += 1
            if i < n and classes[i][0] == _PLUS:
                i += 1
                while i < n and classes[i][0] == _BLANK:
                    i += 1
                block, i = collect_block(i, rule)
                if block is None:
                    i = resync(i)
                    failed = True
                else:
                    claimed.append(block)
            else:
                diagnostics.append(
                    error(
                        "MISSING_BRANCH",
                        f"rule {rule.value} expects two result sequents "
                        f"separated by a line containing only '+'",
                        Span.point(min(i, n - 1) + 1, 1),
                    )
                )
                i = resync(i)
                failed = True
        if failed:
            continue
        last_line = max(rule_line + 1, i)
        steps.append(
            RuleApplication(
                rule,
                tuple(claimed),
                Span(rule_line + 1, 1, last_line, max(1, len(contents[last_line - 1]))),
            )
        )

    script = ProofScript(goal, tuple(steps), trailing)
    return ParseOutcome(script, tuple(diagnostics), recovered)


def valid_prefix(outcome: ParseOutcome) -> tuple[RuleApplication, ...]:
    """Steps wholly before the first error diagnostic: the checkable prefix."""
    if outcome.script is None:
        return ()
    errors = [d for d in outcome.diagnostics if d.severity == "error"]
    if not errors:
        return outcome.script.steps
    first_error_line = min(d.location.line for d in errors)
    return tuple(
        s for s in outcome.script.steps if s.location.end_line < first_error_line
    )
