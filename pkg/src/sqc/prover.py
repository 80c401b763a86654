"""Bounded fair tableau prover emitting checkable proof scripts.

Expansion priority is alpha/double-negation/delta, then beta, then gamma.
Gamma instantiations draw from the ground terms buildable over the current
goal's function symbols up to the configured nesting depth (an artificial
constant stands in when there are none). Fairness: each goal keeps, per
gamma formula, the set of terms already used on its branch; the formula
with the fewest used terms is expanded next, duplicated via Ext first so it
can be revisited. Every emitted script re-checks as Complete; GaveUp is not
a disproof (use check_validity for refutations).

The search has no choice points besides gamma term order, which is fixed,
so the classic iterative-deepening loop degenerates to a single pass capped
by max_steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import ProofState, Rule, RuleApplication, Sequent, validate_step
from .printer import print_term
from .script import ProofScript
from .semantics import Limits
from .syntax import (
    App,
    Con,
    Dis,
    Exi,
    Formula,
    Imp,
    Neg,
    Term,
    Uni,
    constants_of,
    instantiate,
)


@dataclass(frozen=True)
class GaveUp:
    reason: str


class _Exhausted(Exception):
    def __init__(self, reason: str):
        self.reason = reason


def _fresh_name(prefix: str, used: set[str]) -> str:
    n = 0
    while f"{prefix}{n}" in used:
        n += 1
    name = f"{prefix}{n}"
    used.add(name)
    return name


def _ground_terms(functions: set[tuple[str, int]], depth: int) -> list[Term]:
    """Ground terms of nesting depth <= depth, ordered by depth then text."""
    tiers: list[list[Term]] = [
        [App(name, ()) for name, arity in sorted(functions) if arity == 0]
    ]
    pool: list[Term] = list(tiers[0])
    for _ in range(depth):
        below = list(pool)
        tier: list[Term] = []
        for name, arity in sorted(functions):
            if arity == 0:
                continue
            for args in _tuples(below, arity):
                candidate = App(name, args)
                if candidate not in pool:
                    tier.append(candidate)
        tier.sort(key=print_term)
        tiers.append(tier)
        pool.extend(tier)
    return pool


def _tuples(pool: list[Term], arity: int) -> list[tuple[Term, ...]]:
    out: list[tuple[Term, ...]] = [()]
    for _ in range(arity):
        out = [t + (p,) for t in out for p in pool]
    return out


def _find_basic_pair(goal: Sequent) -> Formula | None:
    """A formula whose negation also occurs in the goal, if any."""
    members = set(goal)
    for f in goal:
        if Neg(f) in members:
            return f
    return None


def _expansion_kind(f: Formula) -> str | None:
    match f:
        case Dis() | Imp():
            return "alpha"
        case Uni():
            return "delta"
        case Exi():
            return "gamma"
        case Con():
            return "beta"
        case Neg(body=inner):
            match inner:
                case Con() | Neg():
                    return "alpha"
                case Imp() | Dis():
                    return "beta"
                case Exi():
                    return "delta"
                case Uni():
                    return "gamma"
    return None


def prove_bounded(f: Formula, limits: Limits) -> ProofScript | GaveUp:
    """Search for a proof of f within limits; the result re-checks Complete."""
    steps: list[RuleApplication] = []
    budget = [limits.max_steps]
    used_symbols = set(constants_of([f]).names())
    artificial = _fresh_name("a", used_symbols)

    def emit(rule: Rule, *claimed: Sequent) -> None:
        if budget[0] <= 0:
            raise _Exhausted(f"step budget exhausted (max_steps={limits.max_steps})")
        budget[0] -= 1
        steps.append(RuleApplication(rule, tuple(claimed)))

    def expand(goal: Sequent, gamma_used: dict[Formula, frozenset[Term]]) -> None:
        """Close the first open goal, emitting its subtree depth-first."""
        limits.check_cancelled()

        pivot = _find_basic_pair(goal)
        if pivot is not None:
            emit(Rule.EXT, (pivot, Neg(pivot)))
            emit(Rule.BASIC)
            return

        kinds = [_expansion_kind(g) for g in goal]

        for kind in ("alpha", "delta"):
            for idx, k in enumerate(kinds):
                if k != kind:
                    continue
                target = goal[idx]
                rest = goal[:idx] + goal[idx + 1 :]
                emit(Rule.EXT, (target,) + rest)
                result = _apply_nonbranching(target, rest, used_symbols)
                emit(result.rule, result.sequent)
                expand(result.sequent, gamma_used)
                return

        for idx, k in enumerate(kinds):
            if k != "beta":
                continue
            target = goal[idx]
            rest = goal[:idx] + goal[idx + 1 :]
            emit(Rule.EXT, (target,) + rest)
            left, right, rule = _apply_beta(target, rest)
            emit(rule, left, right)
            expand(left, gamma_used)
            expand(right, gamma_used)
            return

        gammas = [g for g, k in zip(goal, kinds) if k == "gamma"]
        if gammas:
            funcs = {
                (name, arity)
                for name, arity in constants_of(goal).functions
            }
            if not any(arity == 0 for _, arity in funcs):
                funcs.add((artificial, 0))
            universe = _ground_terms(funcs, limits.gamma_depth)
            ranked = sorted(
                dict.fromkeys(gammas),
                key=lambda g: (len(gamma_used.get(g, frozenset())), goal.index(g)),
            )
            for target in ranked:
                seen = gamma_used.get(target, frozenset())
                unused = [t for t in universe if t not in seen]
                if not unused:
                    continue
                term = unused[0]
                idx = goal.index(target)
                rest = goal[:idx] + goal[idx + 1 :]
                # duplicate the gamma formula so it stays available
                emit(Rule.EXT, (target,) + rest + (target,))
                if isinstance(target, Exi):
                    head: Formula = instantiate(target.body, term)
                    rule = Rule.GAMMA_EXI
                else:
                    assert isinstance(target, Neg) and isinstance(target.body, Uni)
                    head = Neg(instantiate(target.body.body, term))
                    rule = Rule.GAMMA_UNI
                result = (head,) + rest + (target,)
                emit(rule, result)
                child_used = dict(gamma_used)
                child_used[target] = seen | {term}
                expand(result, child_used)
                return
            raise _Exhausted(
                f"gamma instantiation terms exhausted (gamma_depth={limits.gamma_depth})"
            )

        raise _Exhausted("no applicable expansion: the goal is atomic and open")

    try:
        expand((f,), {})
    except _Exhausted as exc:
        return GaveUp(exc.reason)

    script = ProofScript(f, tuple(steps))
    _assert_complete(script)
    return script


@dataclass(frozen=True)
class _NonBranching:
    rule: Rule
    sequent: Sequent


def _apply_nonbranching(
    target: Formula, rest: Sequent, used_symbols: set[str]
) -> _NonBranching:
    match target:
        case Dis(left=a, right=b):
            return _NonBranching(Rule.ALPHA_DIS, (a, b) + rest)
        case Imp(left=a, right=b):
            return _NonBranching(Rule.ALPHA_IMP, (Neg(a), b) + rest)
        case Uni(body=body):
            witness = App(_fresh_name("c", used_symbols), ())
            return _NonBranching(Rule.DELTA_UNI, (instantiate(body, witness),) + rest)
        case Neg(body=inner):
            match inner:
                case Con(left=a, right=b):
                    return _NonBranching(Rule.ALPHA_CON, (Neg(a), Neg(b)) + rest)
                case Neg(body=a):
                    return _NonBranching(Rule.NEG_NEG, (a,) + rest)
                case Exi(body=body):
                    witness = App(_fresh_name("c", used_symbols), ())
                    return _NonBranching(
                        Rule.DELTA_EXI, (Neg(instantiate(body, witness)),) + rest
                    )
    raise AssertionError(f"not a non-branching target: {target!r}")


def _apply_beta(target: Formula, rest: Sequent) -> tuple[Sequent, Sequent, Rule]:
    match target:
        case Con(left=a, right=b):
            return (a,) + rest, (b,) + rest, Rule.BETA_CON
        case Neg(body=Imp(left=a, right=b)):
            return (a,) + rest, (Neg(b),) + rest, Rule.BETA_IMP
        case Neg(body=Dis(left=a, right=b)):
            return (Neg(a),) + rest, (Neg(b),) + rest, Rule.BETA_DIS
    raise AssertionError(f"not a branching target: {target!r}")


def _assert_complete(script: ProofScript) -> None:
    state = ProofState.initial(script.goal)
    for app in script.steps:
        state = validate_step(state, app)
    assert not state.open_goals, "prover emitted a script its checker rejects"
