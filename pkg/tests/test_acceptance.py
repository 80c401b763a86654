"""Acceptance suite: one test per acceptance criterion, at stated tolerances.

Each test prints one [ACCEPTANCE] line on success; a failing criterion fails
its test. Tolerances are exact unless a runtime bound is stated.
"""

import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from sqc.calculus import Complete, ProofState, StepFailure, applicable_rules, check_script, validate_step
from sqc.grading import grade_batch, load_manifest
from sqc.parser import parse_formula, parse_script
from sqc.printer import print_formula, print_script
from sqc.prover import prove_bounded
from sqc.script import ProofScript
from sqc.semantics import (
    Countermodel,
    Limits,
    ValidUpTo,
    check_validity,
    eval_formula,
    eval_term,
)
from sqc.syntax import constants_of, instantiate

from corpus import INVALID_FORMULAS, VALID_FORMULAS
from genutil import (
    messy_render,
    random_closed_formula,
    random_closed_term,
    random_formula,
    random_interpretation,
)
from rule_table import CASES

PROVE_LIMITS = Limits(max_domain=2, gamma_depth=2, max_steps=300)


def _passed(name: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS")


@pytest.fixture(scope="module")
def proved_corpus():
    """Every corpus formula proved once; shared by the soundness and round-trip gates."""
    started = time.monotonic()
    scripts = []
    for text in VALID_FORMULAS:
        formula = parse_formula(text)
        result = prove_bounded(formula, PROVE_LIMITS)
        assert isinstance(result, ProofScript), f"prover gave up on: {text}"
        scripts.append((text, formula, result))
    return scripts, time.monotonic() - started


def test_soundness_sweep(proved_corpus):
    """>= 50 proved formulas, zero countermodels, under 60 seconds."""
    proved_corpus, proving_elapsed = proved_corpus
    started = time.monotonic() - proving_elapsed
    assert len(proved_corpus) >= 50
    paper_examples = {
        "p <-> ~~p",
        "(exists x. forall y. r(x, y)) -> (forall y. exists x. r(x, y))",
    }
    assert paper_examples <= set(VALID_FORMULAS)
    for text, formula, script in proved_corpus:
        assert check_script(formula, script.steps) == Complete(), text
        result = check_validity(formula, Limits(max_domain=2))
        assert isinstance(result, ValidUpTo), f"countermodel found for: {text}"
        inventory = constants_of([formula])
        if all(arity <= 1 for _, arity in inventory.predicates):
            result3 = check_validity(formula, Limits(max_domain=3))
            assert isinstance(result3, ValidUpTo), f"countermodel at size 3: {text}"
    elapsed = time.monotonic() - started
    assert elapsed < 60, f"soundness sweep took {elapsed:.1f}s"
    _passed(f"soundness sweep ({len(proved_corpus)} formulas, {elapsed:.1f}s)")


def test_prover_checker_round_trip(proved_corpus):
    """100% of prover outputs re-check as Complete, through text and back."""
    for text, formula, script in proved_corpus[0]:
        printed = print_script(script)
        outcome = parse_script(printed)
        assert outcome.script is not None and not outcome.recovered, text
        assert outcome.script.goal == formula
        assert check_script(outcome.script.goal, outcome.script.steps) == Complete(), text
    _passed("prover/checker round-trip (100%)")


def test_countermodel_correctness():
    assert len(INVALID_FORMULAS) >= 10
    for text in INVALID_FORMULAS:
        formula = parse_formula(text)
        result = check_validity(formula, Limits(max_domain=2))
        assert isinstance(result, Countermodel), f"no countermodel for: {text}"
        assert eval_formula(formula, result.interpretation) is False, text
    converse = parse_formula(
        "(forall y. exists x. r(x, y)) -> (exists x. forall y. r(x, y))"
    )
    result = check_validity(converse, Limits(max_domain=2))
    assert isinstance(result, Countermodel)
    assert result.interpretation.domain_size == 2
    assert result.interpretation.predicates[("r", 2)] == frozenset({(0, 0), (1, 1)})
    _passed(f"countermodel correctness ({len(INVALID_FORMULAS)} formulas)")


def test_rule_table_conformance():
    covered_rules = set()
    for case_id, goal, application, expected in CASES:
        state = ProofState(open_goals=((0, tuple(goal)),))
        covered_rules.add(application.rule)
        if expected == "ok":
            validate_step(state, application)
        else:
            with pytest.raises(StepFailure) as exc:
                validate_step(state, application)
            assert expected in [d.code for d in exc.value.diagnostics], case_id
    assert len(covered_rules) == 13
    # Basic ordering cases, exact
    from sqc.syntax import Neg, Pred
    from sqc.calculus import Rule, RuleApplication

    p = Pred("p")
    validate_step(
        ProofState(open_goals=((0, (p, Neg(p))),)), RuleApplication(Rule.BASIC)
    )
    with pytest.raises(StepFailure) as exc:
        validate_step(
            ProofState(open_goals=((0, (Neg(p), p)),)), RuleApplication(Rule.BASIC)
        )
    assert exc.value.diagnostics[0].code == "BASIC_NO_MATCH"
    _passed(f"rule-table conformance ({len(CASES)} cases, 13 rules)")


def test_substitution_evaluation_coherence():
    rng = random.Random(424242)
    for i in range(1000):
        depth = rng.randrange(0, 3)
        body = random_formula(rng, n_bound=depth + 1, depth=3)
        t = random_closed_term(rng)
        size = rng.randrange(1, 4)
        interp = random_interpretation(rng, [body], [t], size)
        env = tuple(rng.randrange(size) for _ in range(depth))
        value = eval_term(t, interp)
        assert eval_formula(instantiate(body, t), interp, env) == eval_formula(
            body, interp, (value,) + env
        ), f"coherence failed at iteration {i}"
    _passed("substitution-evaluation coherence (1000 triples)")


def test_parser_round_trip(proved_corpus):
    # parse . print identity over the canonical corpus (scripts and formulas)
    for text, formula, script in proved_corpus[0]:
        assert parse_formula(print_formula(formula)) == formula, text
        reparsed = parse_script(print_script(script))
        assert reparsed.script.goal == script.goal
        assert reparsed.script.steps == script.steps
    # print . parse idempotence over 1000 fuzzed parseable inputs
    rng = random.Random(31337)
    for i in range(1000):
        f = random_closed_formula(rng, depth=3)
        fuzzed = messy_render(rng, f)
        once = print_formula(parse_formula(fuzzed))
        assert print_formula(parse_formula(once)) == once, f"iteration {i}: {fuzzed!r}"
    _passed("parser round-trip (corpus identity + 1000 fuzzed inputs)")


# --- grading fixture exam ---------------------------------------------------------

EXAM_FORMULAS = {
    ("1", "1"): "p -> p",
    ("1", "2"): "p | ~p",
    ("2", "1"): "(p & q) -> p",
    ("2", "2"): "p -> (q -> p)",
    ("3", "1"): "~~p -> p",
    ("3", "2"): "~(p & q) <-> (~p | ~q)",
    ("4", "1"): "(forall x. p(x)) -> p(c)",
    ("4", "2"): "(exists x. forall y. r(x, y)) -> (forall y. exists x. r(x, y))",
    ("5", "1"): "((p -> q) & p) -> q",
    ("5", "2"): "(p | q) -> (q | p)",
}

# hand-computed from the 10/60/30 milestone formula with style deduction 10:
#   alice: complete, within style bound            -> 100 per question
#   bob:   goal only (parse milestone)             -> 10
#   carol: wrong goal (manifest mismatch)          -> 0
#   dave:  q1 abandoned (10 + REVIEW), q2 perfect  -> 0.4*10 + 0.6*100 = 64
#   erin:  complete but padded past 3x reference   -> 90
#   frank: empty file, every section missing       -> 0
EXPECTED_TOTALS = {
    "alice": 100,
    "bob": 10,
    "carol": 0,
    "dave": 64,
    "erin": 90,
    "frank": 0,
}
EXPECTED_REVIEW = {
    "alice": False,
    "bob": False,
    "carol": True,
    "dave": True,
    "erin": True,
    "frank": True,
}


def _build_exam(tmp_path: Path):
    proofs = {}
    for key, text in EXAM_FORMULAS.items():
        formula = parse_formula(text)
        script = prove_bounded(formula, PROVE_LIMITS)
        assert isinstance(script, ProofScript), text
        proofs[key] = script

    manifest = {
        "exam_id": "acceptance-exam",
        "problems": [
            {
                "id": pid,
                "weight": 0.2,
                "questions": [
                    {
                        "id": qid,
                        "weight": 0.4 if qid == "1" else 0.6,
                        "formula": EXAM_FORMULAS[(pid, qid)],
                        "reference_steps": len(proofs[(pid, qid)].steps),
                        "max_points": 100,
                    }
                    for qid in ("1", "2")
                ],
            }
            for pid in ("1", "2", "3", "4", "5")
        ],
    }
    manifest_path = tmp_path / "exam.json"
    manifest_path.write_text(json.dumps(manifest, indent=2), encoding="utf-8")

    def section(pid, qid, body):
        return f"-- problem {pid}.{qid}\n{body}"

    def perfect(pid, qid):
        return print_script(proofs[(pid, qid)])

    def padded(pid, qid):
        script = proofs[(pid, qid)]
        goal_line = print_formula(script.goal)
        ref = len(script.steps)
        pad = f"Ext\n  {goal_line}\n" * (2 * ref + 1)
        text = print_script(script)
        goal_part, steps_part = text.split("\n\n", 1)
        return goal_part + "\n\n" + pad + steps_part

    submissions = {
        "alice": "".join(
            section(p, q, perfect(p, q)) for (p, q) in EXAM_FORMULAS
        ),
        "bob": "".join(
            section(p, q, EXAM_FORMULAS[(p, q)] + "\n") for (p, q) in EXAM_FORMULAS
        ),
        "carol": "".join(
            section(p, q, "zz -> zz\n") for (p, q) in EXAM_FORMULAS
        ),
        "dave": "".join(
            section(p, q, EXAM_FORMULAS[(p, q)] + "\n\nAlphImp\n")
            if q == "1"
            else section(p, q, perfect(p, q))
            for (p, q) in EXAM_FORMULAS
        ),
        "erin": "".join(
            section(p, q, padded(p, q)) for (p, q) in EXAM_FORMULAS
        ),
        "frank": "",
    }
    subs_dir = tmp_path / "submissions"
    subs_dir.mkdir()
    for student, text in submissions.items():
        (subs_dir / f"{student}.sqc").write_text(text, encoding="utf-8")
    return manifest_path, subs_dir


def test_grading_fixture_exam(tmp_path):
    started = time.monotonic()
    manifest_path, subs_dir = _build_exam(tmp_path)
    manifest = load_manifest(manifest_path)

    reports = grade_batch(manifest, subs_dir, tmp_path / "out1")
    by_id = {r.student_id: r for r in reports}
    assert sorted(by_id) == sorted(EXPECTED_TOTALS)
    for student, expected_total in EXPECTED_TOTALS.items():
        assert round(by_id[student].total, 6) == expected_total, student
        assert by_id[student].review_required == EXPECTED_REVIEW[student], student
    for (pid, qid) in EXAM_FORMULAS:
        key = f"{pid}.{qid}"
        assert round(by_id["alice"].questions[key].points, 6) == 100
        assert round(by_id["bob"].questions[key].points, 6) == 10
        assert round(by_id["carol"].questions[key].points, 6) == 0
        assert round(by_id["erin"].questions[key].points, 6) == 90
        assert round(by_id["frank"].questions[key].points, 6) == 0
        expected_dave = 10 if qid == "1" else 100
        assert round(by_id["dave"].questions[key].points, 6) == expected_dave
    assert "MANIFEST_MISMATCH" in by_id["carol"].questions["1.1"].flags
    assert "MISSING" in by_id["frank"].questions["1.1"].flags

    grade_batch(manifest, subs_dir, tmp_path / "out2")
    for rel in ["summary.csv"] + [f"reports/{s}.json" for s in EXPECTED_TOTALS]:
        assert (tmp_path / "out1" / rel).read_bytes() == (
            tmp_path / "out2" / rel
        ).read_bytes(), f"non-deterministic output: {rel}"

    csv_lines = (tmp_path / "out1" / "summary.csv").read_text().splitlines()
    keys = [f"{p}.{q}" for (p, q) in EXAM_FORMULAS]
    assert csv_lines[0] == "student_id," + ",".join(keys) + ",total,review_required"
    assert csv_lines[1] == "alice," + ",".join(["100"] * 10) + ",100,false"
    assert csv_lines[2] == "bob," + ",".join(["10"] * 10) + ",10,false"
    assert csv_lines[3] == "carol," + ",".join(["0"] * 10) + ",0,true"
    dave_points = ["10" if q == "1" else "100" for (_, q) in EXAM_FORMULAS]
    assert csv_lines[4] == "dave," + ",".join(dave_points) + ",64,true"
    assert csv_lines[5] == "erin," + ",".join(["90"] * 10) + ",90,true"
    assert csv_lines[6] == "frank," + ",".join(["0"] * 10) + ",0,true"

    elapsed = time.monotonic() - started
    assert elapsed < 5, f"grading fixture took {elapsed:.1f}s"
    _passed(f"grading fixtures (6 students, byte-identical reruns, {elapsed:.2f}s)")


def test_cli_exit_codes(tmp_path):
    fixtures = {
        "complete.sqc": ("p -> p\n\nAlphaImp\n  ~p\n  p\nExt\n  p\n  ~p\nBasic\n", 0),
        "incomplete.sqc": ("p -> p\n\nAlphaImp\n  ~p\n  p\n", 1),
        "invalid.sqc": ("p -> p\n\nAlphaImp\n  p\n  p\n", 2),
        "parse_error.sqc": ("p -> (\n", 3),
    }
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parent.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    for name, (text, expected_code) in fixtures.items():
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        proc = subprocess.run(
            [sys.executable, "-m", "sqc.cli", "check", str(path)],
            capture_output=True,
            env=env,
        )
        assert proc.returncode == expected_code, (name, proc.stdout, proc.stderr)
    _passed("CLI exit codes (0/1/2/3)")
