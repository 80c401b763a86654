"""One-sided sequent calculus: rule table, step validation, script checking.

A sequent is an ordered tuple of closed formulas read disjunctively. Rules
always act on the first formula of the first open goal; Ext is the single
structural rule and bundles reordering, duplication, and weakening. The
student supplies the result sequents for every step and the checker verifies
them against the computed ones, never the other way around.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .diagnostics import UNKNOWN_SPAN, Diagnostic, Span, error
from .printer import print_formula, print_sequent, print_term
from .syntax import (
    App,
    BoundVar,
    Con,
    Dis,
    Exi,
    Formula,
    Imp,
    Neg,
    NegativeShiftCapture,
    Pred,
    Term,
    Uni,
    constants_of,
    instantiate,
    shift,
)

Sequent = tuple[Formula, ...]


class Rule(Enum):
    BASIC = "Basic"
    ALPHA_DIS = "AlphaDis"
    ALPHA_IMP = "AlphaImp"
    ALPHA_CON = "AlphaCon"
    BETA_CON = "BetaCon"
    BETA_IMP = "BetaImp"
    BETA_DIS = "BetaDis"
    GAMMA_EXI = "GammaExi"
    GAMMA_UNI = "GammaUni"
    DELTA_UNI = "DeltaUni"
    DELTA_EXI = "DeltaExi"
    NEG_NEG = "NegNeg"
    EXT = "Ext"


RULE_NAMES: dict[str, Rule] = {r.value: r for r in Rule}

_BETA_RULES = {Rule.BETA_CON, Rule.BETA_IMP, Rule.BETA_DIS}


def claimed_count(rule: Rule) -> int:
    """How many result sequents a rule produces: 0 for Basic, 2 for betas, 1 else."""
    if rule is Rule.BASIC:
        return 0
    if rule in _BETA_RULES:
        return 2
    return 1


@dataclass(frozen=True)
class RuleApplication:
    rule: Rule
    claimed: tuple[Sequent, ...] = ()
    location: Span = field(default=UNKNOWN_SPAN, compare=False)


@dataclass(frozen=True)
class ProofState:
    """Open goals as a queue, depth-first with the left branch first."""

    open_goals: tuple[tuple[int, Sequent], ...]
    next_branch_id: int = 1
    steps_consumed: int = 0
    goals_closed: int = 0

    @staticmethod
    def initial(goal: Formula) -> "ProofState":
        return ProofState(open_goals=((0, (goal,)),))


@dataclass(frozen=True)
class Complete:
    pass


@dataclass(frozen=True)
class Incomplete:
    open_goals: tuple[Sequent, ...]


@dataclass(frozen=True)
class Invalid:
    step_index: int
    diagnostics: tuple[Diagnostic, ...]


Verdict = Union[Complete, Incomplete, Invalid]


class EmptySequent(ValueError):
    """Rule applicability is undefined on an empty sequent."""


class StepFailure(Exception):
    """A rule application the checker rejected, with its diagnostics."""

    def __init__(self, diagnostics: tuple[Diagnostic, ...]):
        super().__init__(diagnostics[0].message if diagnostics else "step failed")
        self.diagnostics = diagnostics


def applicable_rules(s: Sequent) -> set[Rule]:
    """Rules whose pattern matches the sequent; Ext is always applicable."""
    if not s:
        raise EmptySequent("no rule applies to an empty sequent")
    first, tail = s[0], s[1:]
    out = {Rule.EXT}
    if Neg(first) in tail:
        out.add(Rule.BASIC)
    match first:
        case Dis():
            out.add(Rule.ALPHA_DIS)
        case Imp():
            out.add(Rule.ALPHA_IMP)
        case Con():
            out.add(Rule.BETA_CON)
        case Exi():
            out.add(Rule.GAMMA_EXI)
        case Uni():
            out.add(Rule.DELTA_UNI)
        case Neg(body=inner):
            match inner:
                case Con():
                    out.add(Rule.ALPHA_CON)
                case Imp():
                    out.add(Rule.BETA_IMP)
                case Dis():
                    out.add(Rule.BETA_DIS)
                case Uni():
                    out.add(Rule.GAMMA_UNI)
                case Exi():
                    out.add(Rule.DELTA_EXI)
                case Neg():
                    out.add(Rule.NEG_NEG)
    return out


class _Mismatch(Exception):
    """Claimed formula cannot be any instantiation of the body."""


class _Captured(Exception):
    def __init__(self, culprit: Term, depth: int):
        self.culprit = culprit
        self.depth = depth


class _Inconsistent(Exception):
    def __init__(self, first: Term, second: Term):
        self.first = first
        self.second = second


def _infer_instantiation(body: Formula, claimed: Formula) -> Term | None:
    """Recover the term t with claimed == instantiate(body, t).

    Descends body and claimed in parallel; at each occurrence of the removed
    binder's variable the matched subterm, unshifted by the local binder
    depth, becomes a candidate. All candidates must agree. Returns None when
    the variable does not occur (any t works and none is reported).
    """
    candidates: list[Term] = []

    def match_term(bt: Term, ct: Term, depth: int) -> None:
        match bt:
            case BoundVar(index=i):
                if i == depth:
                    try:
                        candidates.append(shift(ct, -depth, 0))
                    except NegativeShiftCapture:
                        raise _Captured(ct, depth)
                elif i < depth:
                    if ct != bt:
                        raise _Mismatch()
                else:
                    if ct != BoundVar(i - 1):
                        raise _Mismatch()
            case App(symbol=s, args=bargs):
                if (
                    not isinstance(ct, App)
                    or ct.symbol != s
                    or len(ct.args) != len(bargs)
                ):
                    raise _Mismatch()
                for ba, ca in zip(bargs, ct.args):
                    match_term(ba, ca, depth)

    def match(bf: Formula, cf: Formula, depth: int) -> None:
        match bf, cf:
            case Pred(symbol=s, args=bargs), Pred(symbol=cs, args=cargs):
                if s != cs or len(bargs) != len(cargs):
                    raise _Mismatch()
                for ba, ca in zip(bargs, cargs):
                    match_term(ba, ca, depth)
            case Imp(left=a, right=b), Imp(left=ca, right=cb):
                match(a, ca, depth)
                match(b, cb, depth)
            case Dis(left=a, right=b), Dis(left=ca, right=cb):
                match(a, ca, depth)
                match(b, cb, depth)
            case Con(left=a, right=b), Con(left=ca, right=cb):
                match(a, ca, depth)
                match(b, cb, depth)
            case Neg(body=a), Neg(body=ca):
                match(a, ca, depth)
            case Uni(body=a), Uni(body=ca):
                match(a, ca, depth + 1)
            case Exi(body=a), Exi(body=ca):
                match(a, ca, depth + 1)
            case _:
                raise _Mismatch()

    match(body, claimed, 0)
    first = candidates[0] if candidates else None
    for c in candidates[1:]:
        if c != first:
            raise _Inconsistent(first, c)
    return first


def _result_mismatch(
    loc: Span, expected: Sequent | None, got: Sequent, detail: str = ""
) -> StepFailure:
    message = "claimed result does not match the rule's computed result"
    if detail:
        message += f": {detail}"
    return StepFailure(
        (
            error(
                "RESULT_MISMATCH",
                message,
                loc,
                expected=print_sequent(expected) if expected is not None else None,
                got=print_sequent(got),
            ),
        )
    )


def _not_applicable(loc: Span, rule: Rule, requirement: str, first: Formula) -> StepFailure:
    return StepFailure(
        (
            error(
                "NOT_APPLICABLE",
                f"{rule.value} requires the first formula to be {requirement}; "
                f"found {print_formula(first)}",
                loc,
            ),
        )
    )


def _freshness(loc: Span, message: str) -> StepFailure:
    return StepFailure((error("FRESHNESS_VIOLATION", message, loc),))


def _check_witness(loc: Span, t: Term | None, goal: Sequent) -> None:
    """Delta witnesses must be fresh constants relative to the whole goal."""
    if t is None:
        return
    if not isinstance(t, App) or t.args:
        raise _freshness(
            loc,
            f"delta witness must be a fresh constant, found compound term "
            f"{print_term(t)}",
        )
    if t.symbol in constants_of(goal).names():
        raise _freshness(
            loc, f"witness constant '{t.symbol}' already occurs in the goal"
        )


def _match_quantifier(
    loc: Span, body: Formula, claimed_first: Formula, goal: Sequent, claimed: Sequent
) -> Term | None:
    """Shared gamma/delta matching with diagnostics for every failure mode."""
    try:
        return _infer_instantiation(body, claimed_first)
    except _Captured as exc:
        raise StepFailure(
            (
                error(
                    "CAPTURED_TERM",
                    f"instantiation term {print_term(exc.culprit)} references a "
                    f"binder internal to the quantifier body",
                    loc,
                ),
            )
        )
    except _Inconsistent as exc:
        raise StepFailure(
            (
                error(
                    "MATCH_INCONSISTENT",
                    f"occurrences of the bound variable were instantiated with "
                    f"different terms: {print_term(exc.first)} vs {print_term(exc.second)}",
                    loc,
                ),
            )
        )
    except _Mismatch:
        raise _result_mismatch(
            loc, None, claimed, "no instantiation of the quantifier body matches"
        )


def validate_step(state: ProofState, app: RuleApplication) -> ProofState:
    """Check one claimed rule application against the first open goal.

    Returns the successor state or raises StepFailure with diagnostics.
    """
    loc = app.location
    if not state.open_goals:
        raise StepFailure(
            (
                error(
                    "NO_OPEN_GOALS",
                    f"no open goals remain but {app.rule.value} follows",
                    loc,
                ),
            )
        )
    branch_id, goal = state.open_goals[0]
    rest_goals = state.open_goals[1:]

    expected_n = claimed_count(app.rule)
    if len(app.claimed) != expected_n:
        raise StepFailure(
            (
                error(
                    "WRONG_BRANCH_COUNT",
                    f"{app.rule.value} expects {expected_n} result sequent(s), "
                    f"got {len(app.claimed)}",
                    loc,
                ),
            )
        )
    if not goal:
        raise StepFailure(
            (
                error(
                    "NOT_APPLICABLE",
                    f"{app.rule.value} cannot act on an empty sequent",
                    loc,
                ),
            )
        )

    first, tail = goal[0], goal[1:]

    def succeed(new_goals: tuple[Sequent, ...]) -> ProofState:
        if app.rule is Rule.BASIC:
            return ProofState(
                rest_goals,
                state.next_branch_id,
                state.steps_consumed + 1,
                state.goals_closed + 1,
            )
        if app.rule in _BETA_RULES:
            labeled = (
                (state.next_branch_id, new_goals[0]),
                (state.next_branch_id + 1, new_goals[1]),
            )
            return ProofState(
                labeled + rest_goals,
                state.next_branch_id + 2,
                state.steps_consumed + 1,
                state.goals_closed,
            )
        return ProofState(
            ((branch_id, new_goals[0]),) + rest_goals,
            state.next_branch_id,
            state.steps_consumed + 1,
            state.goals_closed,
        )

    def check_single(expected: Sequent) -> ProofState:
        if app.claimed[0] != expected:
            raise _result_mismatch(loc, expected, app.claimed[0])
        return succeed((expected,))

    def check_pair(left: Sequent, right: Sequent) -> ProofState:
        if app.claimed[0] != left:
            raise _result_mismatch(
                loc, left, app.claimed[0], "left branch (first result)"
            )
        if app.claimed[1] != right:
            raise _result_mismatch(
                loc, right, app.claimed[1], "right branch (second result)"
            )
        return succeed((left, right))

    def check_quantifier(body: Formula, wrap_neg: bool, delta: bool) -> ProofState:
        claimed0 = app.claimed[0]
        if not claimed0:
            raise _result_mismatch(loc, None, claimed0, "claimed sequent is empty")
        claimed_first = claimed0[0]
        if wrap_neg:
            if not isinstance(claimed_first, Neg):
                raise _result_mismatch(
                    loc, None, claimed0, "claimed first formula must be a negation"
                )
            claimed_first = claimed_first.body
        t = _match_quantifier(loc, body, claimed_first, goal, claimed0)
        if delta:
            _check_witness(loc, t, goal)
        if claimed0[1:] != tail:
            inst = instantiate(body, t) if t is not None else claimed_first
            head: Formula = Neg(inst) if wrap_neg else inst
            raise _result_mismatch(
                loc, (head,) + tail, claimed0, "side formulas must be kept unchanged"
            )
        return succeed((claimed0,))

    match app.rule:
        case Rule.BASIC:
            if Neg(first) not in tail:
                raise StepFailure(
                    (
                        error(
                            "BASIC_NO_MATCH",
                            f"Basic requires the negation of the first formula "
                            f"({print_formula(Neg(first))}) to appear in the tail",
                            loc,
                        ),
                    )
                )
            return succeed(())
        case Rule.ALPHA_DIS:
            if not isinstance(first, Dis):
                raise _not_applicable(loc, app.rule, "a disjunction", first)
            return check_single((first.left, first.right) + tail)
        case Rule.ALPHA_IMP:
            if not isinstance(first, Imp):
                raise _not_applicable(loc, app.rule, "an implication", first)
            return check_single((Neg(first.left), first.right) + tail)
        case Rule.ALPHA_CON:
            if not (isinstance(first, Neg) and isinstance(first.body, Con)):
                raise _not_applicable(loc, app.rule, "a negated conjunction", first)
            inner = first.body
            return check_single((Neg(inner.left), Neg(inner.right)) + tail)
        case Rule.BETA_CON:
            if not isinstance(first, Con):
                raise _not_applicable(loc, app.rule, "a conjunction", first)
            return check_pair((first.left,) + tail, (first.right,) + tail)
        case Rule.BETA_IMP:
            if not (isinstance(first, Neg) and isinstance(first.body, Imp)):
                raise _not_applicable(loc, app.rule, "a negated implication", first)
            inner = first.body
            return check_pair((inner.left,) + tail, (Neg(inner.right),) + tail)
        case Rule.BETA_DIS:
            if not (isinstance(first, Neg) and isinstance(first.body, Dis)):
                raise _not_applicable(loc, app.rule, "a negated disjunction", first)
            inner = first.body
            return check_pair((Neg(inner.left),) + tail, (Neg(inner.right),) + tail)
        case Rule.NEG_NEG:
            if not (isinstance(first, Neg) and isinstance(first.body, Neg)):
                raise _not_applicable(loc, app.rule, "a double negation", first)
            return check_single((first.body.body,) + tail)
        case Rule.GAMMA_EXI:
            if not isinstance(first, Exi):
                raise _not_applicable(loc, app.rule, "an existential", first)
            return check_quantifier(first.body, wrap_neg=False, delta=False)
        case Rule.GAMMA_UNI:
            if not (isinstance(first, Neg) and isinstance(first.body, Uni)):
                raise _not_applicable(loc, app.rule, "a negated universal", first)
            return check_quantifier(first.body.body, wrap_neg=True, delta=False)
        case Rule.DELTA_UNI:
            if not isinstance(first, Uni):
                raise _not_applicable(loc, app.rule, "a universal", first)
            return check_quantifier(first.body, wrap_neg=False, delta=True)
        case Rule.DELTA_EXI:
            if not (isinstance(first, Neg) and isinstance(first.body, Exi)):
                raise _not_applicable(loc, app.rule, "a negated existential", first)
            return check_quantifier(first.body.body, wrap_neg=True, delta=True)
        case Rule.EXT:
            goal_set = set(goal)
            extra = [f for f in app.claimed[0] if f not in goal_set]
            if extra:
                listing = "; ".join(
                    sorted({print_formula(f) for f in extra})
                )
                raise StepFailure(
                    (
                        error(
                            "EXT_NOT_SUBSET",
                            f"claimed sequent contains formulas not present in "
                            f"the goal: {listing}",
                            loc,
                        ),
                    )
                )
            return succeed((app.claimed[0],))
    raise AssertionError(f"unhandled rule {app.rule!r}")


@dataclass(frozen=True)
class RunResult:
    """Outcome of folding steps through validate_step until the first failure."""

    state: ProofState
    steps_validated: int
    failure: tuple[int, tuple[Diagnostic, ...]] | None


def run_steps(state: ProofState, steps: tuple[RuleApplication, ...]) -> RunResult:
    for i, app in enumerate(steps):
        try:
            state = validate_step(state, app)
        except StepFailure as exc:
            return RunResult(state, i, (i, exc.diagnostics))
    return RunResult(state, len(steps), None)


def check_script(goal: Formula, steps: tuple[RuleApplication, ...]) -> Verdict:
    """Validate a whole script: Complete iff the goal queue empties at script end."""
    result = run_steps(ProofState.initial(goal), tuple(steps))
    if result.failure is not None:
        index, diagnostics = result.failure
        return Invalid(index, diagnostics)
    if not result.state.open_goals:
        return Complete()
    return Incomplete(tuple(seq for _, seq in result.state.open_goals))
