"""Batch exam grading: manifests, submission ingestion, milestone scoring.

Grading is deterministic: identical inputs produce byte-identical CSV and
JSON artifacts, and reports carry no wall-clock data. Scores follow the
milestone split (parse / branches closed / completion) with a style
deduction for proofs far longer than the reference; all weights live in the
manifest with defaults 10/60/30, deduction 10, style ratio 3.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .calculus import ProofState, run_steps
from .diagnostics import Diagnostic, Span, error, warning
from .parser import FormulaError, parse_formula, parse_script, valid_prefix
from .printer import print_formula
from .syntax import Formula, is_closed


class ManifestError(Exception):
    """The exam manifest is malformed."""


@dataclass(frozen=True)
class ScoringConfig:
    parse: float = 10.0
    branches: float = 60.0
    complete: float = 30.0
    style_deduction: float = 10.0
    style_ratio: float = 3.0


@dataclass(frozen=True)
class Question:
    id: str
    weight: float
    formula_text: str
    formula: Formula
    reference_steps: int
    max_points: float


@dataclass(frozen=True)
class Problem:
    id: str
    weight: float
    questions: tuple[Question, ...]


@dataclass(frozen=True)
class ProblemManifest:
    exam_id: str
    problems: tuple[Problem, ...]
    scoring: ScoringConfig = ScoringConfig()

    def question_keys(self) -> list[str]:
        return [f"{p.id}.{q.id}" for p in self.problems for q in p.questions]


def load_manifest(source: str | Path | dict) -> ProblemManifest:
    """Parse and validate a manifest from a JSON file, text, or dict."""
    if isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        if path.exists():
            data = json.loads(path.read_text(encoding="utf-8"))
        else:
            data = json.loads(str(source))

    try:
        exam_id = data["exam_id"]
        raw_problems = data["problems"]
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"manifest missing required field: {exc}") from None

    scoring = ScoringConfig(**data.get("scoring", {}))

    problems = []
    for rp in raw_problems:
        questions = []
        for rq in rp.get("questions", []):
            text = rq["formula"]
            try:
                formula = parse_formula(text)
            except FormulaError as exc:
                raise ManifestError(
                    f"question {rp.get('id')}.{rq.get('id')}: formula does not "
                    f"parse: {exc.diagnostics[0].message}"
                ) from None
            if not is_closed(formula):
                raise ManifestError(
                    f"question {rp.get('id')}.{rq.get('id')}: formula is not closed"
                )
            reference_steps = int(rq["reference_steps"])
            if reference_steps < 1:
                raise ManifestError("reference_steps must be >= 1")
            questions.append(
                Question(
                    id=str(rq["id"]),
                    weight=float(rq["weight"]),
                    formula_text=text,
                    formula=formula,
                    reference_steps=reference_steps,
                    max_points=float(rq["max_points"]),
                )
            )
        problems.append(
            Problem(id=str(rp["id"]), weight=float(rp["weight"]), questions=tuple(questions))
        )

    manifest = ProblemManifest(exam_id=exam_id, problems=tuple(problems), scoring=scoring)

    if abs(sum(p.weight for p in manifest.problems) - 1.0) > 1e-9:
        raise ManifestError("problem weights must sum to 1")
    for p in manifest.problems:
        if abs(sum(q.weight for q in p.questions) - 1.0) > 1e-9:
            raise ManifestError(f"question weights in problem {p.id} must sum to 1")
    return manifest


@dataclass(frozen=True)
class Submission:
    student_id: str
    sections: dict[str, str]
    unmatched: str
    duplicates: frozenset[str] = frozenset()


def split_submission(student_id: str, text: str) -> Submission:
    """Split on '-- problem <pid>.<qid>' delimiter lines; last duplicate wins."""
    sections: dict[str, str] = {}
    duplicates: set[str] = set()
    unmatched: list[str] = []
    current_key: str | None = None
    current: list[str] = []

    def close() -> None:
        nonlocal current_key, current
        if current_key is None:
            unmatched.extend(current)
        else:
            if current_key in sections:
                duplicates.add(current_key)
            sections[current_key] = "\n".join(current)
        current = []

    for line in text.split("\n"):
        stripped = line.strip()
        if stripped.startswith("-- problem "):
            close()
            current_key = stripped[len("-- problem ") :].strip()
        else:
            current.append(line)
    close()
    return Submission(student_id, sections, "\n".join(unmatched), frozenset(duplicates))


@dataclass
class QuestionGrade:
    points: float
    breakdown: dict[str, float]
    flags: set[str] = field(default_factory=set)
    diagnostics: list[Diagnostic] = field(default_factory=list)


@dataclass
class GradeReport:
    student_id: str
    questions: dict[str, QuestionGrade]
    total: float
    review_required: bool


def _zero_grade(flag: str, diagnostic: Diagnostic) -> QuestionGrade:
    return QuestionGrade(
        points=0.0,
        breakdown={"parse": 0.0, "branches": 0.0, "complete": 0.0, "style_deduction": 0.0},
        flags={flag},
        diagnostics=[diagnostic],
    )


def grade_question(question: Question, scoring: ScoringConfig, text: str) -> QuestionGrade:
    """Scoring pipeline: parse with recovery, manifest check, milestone credit."""
    outcome = parse_script(text)
    flags: set[str] = set()
    diagnostics: list[Diagnostic] = list(outcome.diagnostics)

    if outcome.recovered or outcome.script is None:
        flags.add("REVIEW")
        diagnostics.append(
            warning(
                "REVIEW",
                "parse recovery was required; only the longest valid prefix is graded",
                Span.point(1, 1),
            )
        )
    if outcome.script is None:
        return QuestionGrade(
            points=0.0,
            breakdown={
                "parse": 0.0,
                "branches": 0.0,
                "complete": 0.0,
                "style_deduction": 0.0,
            },
            flags=flags,
            diagnostics=diagnostics,
        )

    if outcome.script.goal != question.formula:
        flags.add("MANIFEST_MISMATCH")
        diagnostics.append(
            error(
                "MANIFEST_MISMATCH",
                "the goal formula does not match the assigned formula",
                Span.point(1, 1),
                expected=print_formula(question.formula),
                got=print_formula(outcome.script.goal),
            )
        )
        return QuestionGrade(
            points=0.0,
            breakdown={
                "parse": 0.0,
                "branches": 0.0,
                "complete": 0.0,
                "style_deduction": 0.0,
            },
            flags=flags,
            diagnostics=diagnostics,
        )

    steps = valid_prefix(outcome)
    result = run_steps(ProofState.initial(question.formula), steps)
    closed = result.state.goals_closed
    open_count = len(result.state.open_goals)
    fraction = closed / (closed + open_count) if (closed + open_count) else 1.0
    complete = result.failure is None and open_count == 0

    if result.failure is not None:
        _, failure_diags = result.failure
        diagnostics.extend(failure_diags)
        if fraction >= 0.5:
            flags.add("REVIEW")
            diagnostics.append(
                warning(
                    "REVIEW",
                    f"an invalid step occurred with {closed} of "
                    f"{closed + open_count} branches closed",
                    failure_diags[0].location if failure_diags else Span.point(1, 1),
                )
            )

    parse_points = scoring.parse
    branch_points = scoring.branches * fraction
    complete_points = scoring.complete if complete else 0.0
    style = 0.0
    if complete and result.steps_validated > scoring.style_ratio * question.reference_steps:
        style = scoring.style_deduction
        flags.add("REVIEW")
        diagnostics.append(
            warning(
                "STYLE",
                f"proof uses {result.steps_validated} steps, more than "
                f"{scoring.style_ratio:g} times the reference length of "
                f"{question.reference_steps}",
                Span.point(1, 1),
            )
        )

    scale = question.max_points / 100.0
    breakdown = {
        "parse": parse_points * scale,
        "branches": branch_points * scale,
        "complete": complete_points * scale,
        "style_deduction": style * scale,
    }
    raw = breakdown["parse"] + breakdown["branches"] + breakdown["complete"] - breakdown["style_deduction"]
    points = min(max(raw, 0.0), question.max_points)
    return QuestionGrade(points, breakdown, flags, diagnostics)


def grade_submission(manifest: ProblemManifest, student_id: str, text: str) -> GradeReport:
    submission = split_submission(student_id, text)
    questions: dict[str, QuestionGrade] = {}
    total = 0.0
    for problem in manifest.problems:
        problem_score = 0.0
        for question in problem.questions:
            key = f"{problem.id}.{question.id}"
            section = submission.sections.get(key)
            if section is None or not section.strip():
                grade = _zero_grade(
                    "MISSING",
                    error(
                        "MISSING",
                        f"no section '-- problem {key}' found in the submission",
                        Span.point(1, 1),
                    ),
                )
            else:
                grade = grade_question(question, manifest.scoring, section)
                if key in submission.duplicates:
                    grade.flags.add("DUPLICATE_SECTION")
                    grade.diagnostics.append(
                        warning(
                            "DUPLICATE_SECTION",
                            f"section '{key}' appears more than once; "
                            f"the last occurrence was graded",
                            Span.point(1, 1),
                        )
                    )
            questions[key] = grade
            problem_score += question.weight * grade.points
        total += problem.weight * problem_score
    review = any(g.flags for g in questions.values())
    return GradeReport(student_id, questions, total, review)


def _unreadable_report(manifest: ProblemManifest, student_id: str) -> GradeReport:
    questions = {
        key: _zero_grade(
            "UNREADABLE",
            error("UNREADABLE", "the submission file does not decode as UTF-8", Span.point(1, 1)),
        )
        for key in manifest.question_keys()
    }
    return GradeReport(student_id, questions, 0.0, True)


def _fmt_points(x: float) -> str:
    r = round(x, 6)
    return str(int(r)) if r == int(r) else repr(r)


def _report_payload(report: GradeReport) -> dict:
    return {
        "student_id": report.student_id,
        "total": round(report.total, 6),
        "review_required": report.review_required,
        "questions": {
            key: {
                "points": round(g.points, 6),
                "breakdown": {k: round(v, 6) for k, v in g.breakdown.items()},
                "flags": sorted(g.flags),
                "diagnostics": [
                    {
                        "code": d.code,
                        "severity": d.severity,
                        "message": d.message,
                        "line": d.location.line,
                        "col": d.location.col,
                        **({"expected": d.expected} if d.expected is not None else {}),
                        **({"got": d.got} if d.got is not None else {}),
                    }
                    for d in g.diagnostics
                ],
            }
            for key, g in report.questions.items()
        },
    }


def grade_batch(
    manifest: ProblemManifest,
    submissions_dir: str | Path,
    out_dir: str | Path,
    jobs: int = 1,
) -> list[GradeReport]:
    """Grade every .sqc file in a directory; write JSON reports and summary.csv."""
    submissions_path = Path(submissions_dir)
    if not submissions_path.is_dir():
        raise FileNotFoundError(f"submissions directory not found: {submissions_path}")
    files = sorted(submissions_path.glob("*.sqc"), key=lambda p: p.stem)

    def grade_file(path: Path) -> GradeReport:
        try:
            text = path.read_bytes().decode("utf-8")
        except UnicodeDecodeError:
            return _unreadable_report(manifest, path.stem)
        return grade_submission(manifest, path.stem, text)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(grade_file, files))
    else:
        reports = [grade_file(path) for path in files]
    reports.sort(key=lambda r: r.student_id)

    out_path = Path(out_dir)
    (out_path / "reports").mkdir(parents=True, exist_ok=True)
    for report in reports:
        payload = json.dumps(_report_payload(report), sort_keys=True, indent=2)
        (out_path / "reports" / f"{report.student_id}.json").write_bytes(
            (payload + "\n").encode("utf-8")
        )

    keys = manifest.question_keys()
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["student_id", *keys, "total", "review_required"])
    for report in reports:
        writer.writerow(
            [
                report.student_id,
                *(_fmt_points(report.questions[k].points) for k in keys),
                _fmt_points(report.total),
                "true" if report.review_required else "false",
            ]
        )
    (out_path / "summary.csv").write_bytes(buffer.getvalue().encode("utf-8"))
    return reports
