import random

import pytest

from sqc.calculus import (
    Complete,
    EmptySequent,
    Incomplete,
    Invalid,
    ProofState,
    Rule,
    RuleApplication,
    StepFailure,
    applicable_rules,
    check_script,
    run_steps,
    validate_step,
)
from sqc.parser import parse_formula, parse_script
from sqc.syntax import BoundVar, Con, Dis, Exi, Imp, Neg, Pred, Uni, const

from rule_table import CASES

P = Pred("p")
Q = Pred("q")


def state_for(*goal) -> ProofState:
    return ProofState(open_goals=((0, tuple(goal)),))


# --- applicability -----------------------------------------------------------

def test_applicable_disjunction():
    assert applicable_rules((Dis(P, Q),)) == {Rule.ALPHA_DIS, Rule.EXT}


def test_applicable_basic_needs_negation_in_tail():
    assert applicable_rules((Neg(P), P)) == {Rule.EXT}
    assert applicable_rules((P, Neg(P))) == {Rule.BASIC, Rule.EXT}


def test_applicable_by_head():
    table = {
        (Imp(P, Q),): Rule.ALPHA_IMP,
        (Neg(Con(P, Q)),): Rule.ALPHA_CON,
        (Con(P, Q),): Rule.BETA_CON,
        (Neg(Imp(P, Q)),): Rule.BETA_IMP,
        (Neg(Dis(P, Q)),): Rule.BETA_DIS,
        (Exi(Pred("p", (BoundVar(0),))),): Rule.GAMMA_EXI,
        (Neg(Uni(Pred("p", (BoundVar(0),)))),): Rule.GAMMA_UNI,
        (Uni(Pred("p", (BoundVar(0),))),): Rule.DELTA_UNI,
        (Neg(Exi(Pred("p", (BoundVar(0),)))),): Rule.DELTA_EXI,
        (Neg(Neg(P)),): Rule.NEG_NEG,
    }
    for goal, rule in table.items():
        assert applicable_rules(goal) == {rule, Rule.EXT}


def test_applicable_atom_only_ext():
    assert applicable_rules((P,)) == {Rule.EXT}
    assert applicable_rules((Neg(P),)) == {Rule.EXT}


def test_applicable_empty_sequent():
    with pytest.raises(EmptySequent):
        applicable_rules(())


# --- the rule conformance table ----------------------------------------------

@pytest.mark.parametrize("case_id,goal,application,expected", CASES, ids=[c[0] for c in CASES])
def test_rule_table(case_id, goal, application, expected):
    state = state_for(*goal)
    if expected == "ok":
        new_state = validate_step(state, application)
        assert new_state.steps_consumed == 1
        # a successful rule is always among the applicable ones
        assert application.rule in applicable_rules(goal)
    else:
        with pytest.raises(StepFailure) as exc:
            validate_step(state, application)
        codes = [d.code for d in exc.value.diagnostics]
        assert expected in codes
        diag = exc.value.diagnostics[0]
        assert diag.severity == "error"
        assert diag.location is not None


def test_result_mismatch_carries_expected_and_got():
    state = state_for(Dis(P, Q))
    with pytest.raises(StepFailure) as exc:
        validate_step(state, RuleApplication(Rule.ALPHA_DIS, (((Q, P)),)))
    diag = exc.value.diagnostics[0]
    assert diag.expected == "p, q"
    assert diag.got == "q, p"


def test_freshness_violation_names_the_symbol():
    goal = (Uni(Pred("p", (BoundVar(0),))), Pred("q", (const("c"),)))
    claimed = ((Pred("p", (const("c"),)), Pred("q", (const("c"),))),)
    with pytest.raises(StepFailure) as exc:
        validate_step(state_for(*goal), RuleApplication(Rule.DELTA_UNI, claimed))
    assert "'c'" in exc.value.diagnostics[0].message


def test_ext_not_subset_lists_offenders():
    with pytest.raises(StepFailure) as exc:
        validate_step(state_for(P), RuleApplication(Rule.EXT, ((P, Q, Neg(Q)),)))
    message = exc.value.diagnostics[0].message
    assert "q" in message and "~q" in message


def test_no_open_goals():
    state = ProofState(open_goals=())
    with pytest.raises(StepFailure) as exc:
        validate_step(state, RuleApplication(Rule.BASIC))
    assert exc.value.diagnostics[0].code == "NO_OPEN_GOALS"


def test_beta_assigns_fresh_branch_ids():
    state = validate_step(
        state_for(Con(P, Q)),
        RuleApplication(Rule.BETA_CON, (((P,)), ((Q,)))),
    )
    assert [b for b, _ in state.open_goals] == [1, 2]
    assert state.next_branch_id == 3


def test_basic_closes_goal():
    state = validate_step(state_for(P, Neg(P)), RuleApplication(Rule.BASIC))
    assert state.open_goals == ()
    assert state.goals_closed == 1


# --- whole-script checking ----------------------------------------------------

IMP_PP_STEPS = (
    RuleApplication(Rule.ALPHA_IMP, (((Neg(P), P)),)),
    RuleApplication(Rule.EXT, (((P, Neg(P))),)),
    RuleApplication(Rule.BASIC),
)


def test_check_script_complete():
    assert check_script(Imp(P, P), IMP_PP_STEPS) == Complete()


def test_check_script_incomplete():
    verdict = check_script(Imp(P, P), IMP_PP_STEPS[:1])
    assert verdict == Incomplete(((Neg(P), P),))


def test_check_script_invalid_reports_first_failure():
    steps = (
        RuleApplication(Rule.ALPHA_IMP, (((P, P)),)),  # wrong: missing negation
        RuleApplication(Rule.BASIC),
    )
    verdict = check_script(Imp(P, P), steps)
    assert isinstance(verdict, Invalid)
    assert verdict.step_index == 0
    assert verdict.diagnostics[0].code == "RESULT_MISMATCH"


def test_check_script_steps_after_completion_are_invalid():
    steps = IMP_PP_STEPS + (RuleApplication(Rule.BASIC),)
    verdict = check_script(Imp(P, P), steps)
    assert isinstance(verdict, Invalid)
    assert verdict.step_index == 3
    assert verdict.diagnostics[0].code == "NO_OPEN_GOALS"


def test_check_script_deterministic_replay():
    first = check_script(Imp(P, P), IMP_PP_STEPS)
    second = check_script(Imp(P, P), IMP_PP_STEPS)
    assert first == second == Complete()


def test_identity_ext_always_succeeds():
    rng = random.Random(11)
    from genutil import random_closed_formula

    for _ in range(50):
        goal = tuple(random_closed_formula(rng, 2) for _ in range(rng.randrange(1, 4)))
        state = validate_step(state_for(*goal), RuleApplication(Rule.EXT, (goal,)))
        assert state.open_goals[0][1] == goal


def test_branch_accounting_invariant():
    """closed + open - 1 == number of beta steps, on every valid prefix."""
    text = (
        "(p | ~p) & ((q | ~q) & (s | ~s))\n\n"
        "BetaCon\n  p | ~p\n+\n  (q | ~q) & (s | ~s)\n"
        "AlphaDis\n  p\n  ~p\n"
        "Ext\n  p\n  ~p\nBasic\n"
        "BetaCon\n  q | ~q\n+\n  s | ~s\n"
        "AlphaDis\n  q\n  ~q\nExt\n  q\n  ~q\nBasic\n"
        "AlphaDis\n  s\n  ~s\nExt\n  s\n  ~s\nBasic\n"
    )
    outcome = parse_script(text)
    assert outcome.script is not None and not outcome.recovered
    state = ProofState.initial(outcome.script.goal)
    betas = 0
    for step in outcome.script.steps:
        state = validate_step(state, step)
        if step.rule in (Rule.BETA_CON, Rule.BETA_IMP, Rule.BETA_DIS):
            betas += 1
        assert state.goals_closed + len(state.open_goals) - 1 == betas
    assert not state.open_goals


def test_validate_success_implies_applicable():
    for _, goal, application, expected in CASES:
        if expected != "ok":
            continue
        assert application.rule in applicable_rules(tuple(goal))


def test_run_steps_reports_state_after_longest_valid_prefix():
    steps = (
        RuleApplication(Rule.ALPHA_IMP, (((Neg(P), P)),)),
        RuleApplication(Rule.BASIC),  # fails: Neg(~p) not in tail
    )
    result = run_steps(ProofState.initial(Imp(P, P)), steps)
    assert result.steps_validated == 1
    assert result.failure is not None
    assert result.failure[0] == 1
    assert result.state.open_goals[0][1] == (Neg(P), P)


def test_goal_formula_from_parser_equals_manifest_parse():
    a = parse_formula("(exists x. forall y. r(x, y)) -> (forall y. exists x. r(x, y))")
    b = parse_formula("(exists u. forall v. r(u, v)) -> (forall v. exists u. r(u, v))")
    assert a == b
