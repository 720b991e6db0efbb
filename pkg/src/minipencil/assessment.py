"""Exercise corpus and grader.

Three task kinds: modification (fix/extend a working program), syntax-fix
(repair a program that does not parse), and output-prediction (pick the
choice describing what the program does). Scores run 0..100; io-based tasks
earn 100 * passed-cases / total-cases rounded half-up. Loading the corpus
re-verifies every answer key against the interpreter, so a corpus that
disagrees with the language itself never loads.
"""

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .diagnostics import SourceError
from .interpreter import DEFAULT_STEP_LIMIT, ExecError, run
from .lang import Assign, FloatLit, IntLit, Program, StrLit, parse

KINDS = ("modification", "syntax-fix", "output-prediction")


@dataclass(frozen=True)
class IoCase:
    overrides: tuple[tuple[str, object], ...]  # (variable, new initial value)
    expected_output: tuple[str, ...]


@dataclass(frozen=True)
class Choice:
    id: str
    label: str
    # machine-checkable meaning of the choice, used to verify the key:
    # {"kind": "output", "lines": [...]} | {"kind": "parse-error"}
    # | {"kind": "segment-count", "count": n}
    check: dict


@dataclass
class Task:
    id: str
    kind: str
    source: str
    io_spec: list[IoCase] = field(default_factory=list)
    choices: list[Choice] = field(default_factory=list)
    correct_choice: str | None = None
    reference_solution: str | None = None
    notes: str | None = None


@dataclass
class GradeReport:
    task_id: str
    score: int  # 0..100
    detail: list[dict]


class CorpusError(Exception):
    code = "CORPUS_MALFORMED"

    def __init__(self, reason: str, task_id: str | None = None):
        self.task_id = task_id
        self.reason = reason
        super().__init__(reason if task_id is None else f"task {task_id!r}: {reason}")


class UnknownChoiceError(Exception):
    code = "UNKNOWN_CHOICE"


def bundled_corpus_path() -> Path:
    return Path(resources.files("minipencil") / "corpus" / "corpus.json")


def load_corpus(path) -> list[Task]:
    """Load and self-check a corpus file; raises CorpusError on any defect."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as err:
        raise CorpusError(f"cannot read corpus: {err}") from None
    if not isinstance(raw, list) or not raw:
        raise CorpusError("corpus must be a non-empty array of tasks")
    tasks = [_parse_task(entry) for entry in raw]
    ids = [task.id for task in tasks]
    if len(set(ids)) != len(ids):
        raise CorpusError("duplicate task ids")
    for task in tasks:
        _self_check(task)
    return tasks


def _parse_task(entry) -> Task:
    if not isinstance(entry, dict):
        raise CorpusError("task entries must be objects")
    task_id = entry.get("id")
    if not isinstance(task_id, str) or not task_id:
        raise CorpusError("task id missing")
    kind = entry.get("kind")
    if kind not in KINDS:
        raise CorpusError(f"unknown kind {kind!r}", task_id)
    source = entry.get("source")
    if not isinstance(source, str):
        raise CorpusError("source must be text", task_id)
    task = Task(
        id=task_id,
        kind=kind,
        source=source,
        reference_solution=entry.get("reference_solution"),
        notes=entry.get("notes"),
    )
    if kind in ("modification", "syntax-fix"):
        spec = entry.get("io_spec")
        if not isinstance(spec, list) or not spec:
            raise CorpusError("io_spec must be a non-empty array", task_id)
        for case in spec:
            overrides = case.get("overrides", {})
            expected = case.get("expected_output")
            if not isinstance(overrides, dict) or not isinstance(expected, list):
                raise CorpusError("bad io case", task_id)
            for value in overrides.values():
                if isinstance(value, bool) or not isinstance(value, (int, float, str)):
                    raise CorpusError("override values must be numbers or strings", task_id)
            task.io_spec.append(
                IoCase(tuple(overrides.items()), tuple(str(line) for line in expected))
            )
        if not isinstance(task.reference_solution, str):
            raise CorpusError("reference_solution required", task_id)
    else:
        choices = entry.get("choices")
        if not isinstance(choices, list) or len(choices) < 2:
            raise CorpusError("output-prediction needs at least two choices", task_id)
        for choice in choices:
            if not isinstance(choice, dict) or not isinstance(choice.get("id"), str):
                raise CorpusError("bad choice entry", task_id)
            check = choice.get("check")
            if not isinstance(check, dict) or check.get("kind") not in (
                "output",
                "parse-error",
                "segment-count",
            ):
                raise CorpusError("every choice needs a machine-checkable meaning", task_id)
            task.choices.append(Choice(choice["id"], str(choice.get("label", "")), check))
        choice_ids = [c.id for c in task.choices]
        if len(set(choice_ids)) != len(choice_ids):
            raise CorpusError("duplicate choice ids", task_id)
        correct = entry.get("correct_choice")
        if correct not in choice_ids:
            raise CorpusError("correct_choice missing from choices", task_id)
        task.correct_choice = correct
    return task


def _self_check(task: Task):
    if task.kind == "modification":
        try:
            parse(task.source)
        except SourceError as err:
            raise CorpusError(f"source does not parse: {err}", task.id) from None
        report = grade_modification(task, task.reference_solution)
        if report.score != 100:
            raise CorpusError(
                f"reference solution scores {report.score}, expected 100", task.id
            )
    elif task.kind == "syntax-fix":
        report = grade_syntax_fix(task, task.reference_solution)
        if report.score != 100:
            raise CorpusError(
                f"reference solution scores {report.score}, expected 100", task.id
            )
    else:
        observation = _observe(task.source)
        for choice in task.choices:
            holds = _check_holds(choice.check, observation)
            if choice.id == task.correct_choice and not holds:
                raise CorpusError(
                    f"answer key {choice.id!r} contradicts the interpreter", task.id
                )
            if choice.id != task.correct_choice and holds:
                raise CorpusError(
                    f"distractor {choice.id!r} is also true, key is ambiguous", task.id
                )


def _observe(source: str):
    try:
        program = parse(source)
    except SourceError:
        return ("parse-error", None)
    try:
        return ("trace", run(program, DEFAULT_STEP_LIMIT))
    except ExecError as err:
        return ("runtime-error", err.diagnostic)


def _check_holds(check: dict, observation) -> bool:
    status, payload = observation
    kind = check["kind"]
    if kind == "parse-error":
        return status == "parse-error"
    if status != "trace":
        return False
    if kind == "output":
        return list(payload.output) == [str(line) for line in check.get("lines", [])]
    return len(payload.segments) == int(check.get("count", -1))


# ---------------------------------------------------------------------------
# grading


def _score(passed: int, total: int) -> int:
    if total == 0:
        return 0
    return math.floor(100 * passed / total + 0.5)


def _literal(value):
    if isinstance(value, int):
        return IntLit(value)
    if isinstance(value, float):
        return FloatLit(value)
    return StrLit(str(value))


def _apply_overrides(program: Program, overrides) -> str | None:
    """Rewrite the first top-level assignment to each overridden variable.
    Returns the name that had no assignment, or None on success."""
    for name, value in overrides:
        for stmt in program.statements:
            if isinstance(stmt, Assign) and stmt.name == name:
                stmt.value = _literal(value)
                break
        else:
            return name
    return None


def _grade_io(task: Task, submission: str) -> GradeReport:
    detail: list[dict] = []
    passed = 0
    for index, case in enumerate(task.io_spec):
        entry: dict = {"case": index, "overrides": dict(case.overrides)}
        try:
            program = parse(submission)
        except SourceError:
            entry.update(passed=False, reason="SYNTAX")
            detail.append(entry)
            continue
        missing = _apply_overrides(program, case.overrides)
        if missing is not None:
            entry.update(passed=False, reason=f"NO_ASSIGNMENT:{missing}")
            detail.append(entry)
            continue
        try:
            trace = run(program, DEFAULT_STEP_LIMIT)
        except ExecError as err:
            entry.update(passed=False, reason=f"RUNTIME:{err.diagnostic.code}")
            detail.append(entry)
            continue
        expected = list(case.expected_output)
        actual = list(trace.output)
        if actual == expected:
            passed += 1
            entry.update(passed=True, reason="OK")
        else:
            entry.update(passed=False, reason="OUTPUT_MISMATCH", expected=expected, actual=actual)
        detail.append(entry)
    return GradeReport(task.id, _score(passed, len(task.io_spec)), detail)


def grade_modification(task: Task, submission: str) -> GradeReport:
    if task.kind != "modification":
        raise ValueError(f"task {task.id!r} is not a modification task")
    return _grade_io(task, submission)


def grade_syntax_fix(task: Task, submission: str) -> GradeReport:
    if task.kind != "syntax-fix":
        raise ValueError(f"task {task.id!r} is not a syntax-fix task")
    try:
        parse(submission)
    except SourceError:
        return GradeReport(task.id, 0, [{"passed": False, "reason": "SYNTAX"}])
    return _grade_io(task, submission)


def grade_prediction(task: Task, choice_id: str) -> GradeReport:
    if task.kind != "output-prediction":
        raise ValueError(f"task {task.id!r} is not an output-prediction task")
    if choice_id not in [c.id for c in task.choices]:
        raise UnknownChoiceError(f"choice {choice_id!r} is not offered by task {task.id!r}")
    correct = choice_id == task.correct_choice
    return GradeReport(
        task.id,
        100 if correct else 0,
        [{"chosen": choice_id, "correct": task.correct_choice, "passed": correct}],
    )


def grade_submission(task: Task, submission: str) -> GradeReport:
    if task.kind == "modification":
        return grade_modification(task, submission)
    if task.kind == "syntax-fix":
        return grade_syntax_fix(task, submission)
    return grade_prediction(task, submission.strip())


def grade_directory(tasks: list[Task], submissions_dir) -> list[GradeReport]:
    """Grade a directory holding `<task-id>.mp` sources (modification and
    syntax-fix) and `<task-id>.txt` choice files (output-prediction)."""
    directory = Path(submissions_dir)
    reports = []
    for task in tasks:
        suffix = ".txt" if task.kind == "output-prediction" else ".mp"
        path = directory / f"{task.id}{suffix}"
        if not path.is_file():
            reports.append(GradeReport(task.id, 0, [{"passed": False, "reason": "MISSING"}]))
            continue
        try:
            reports.append(grade_submission(task, path.read_text(encoding="utf-8")))
        except UnknownChoiceError:
            reports.append(
                GradeReport(task.id, 0, [{"passed": False, "reason": "UNKNOWN_CHOICE"}])
            )
    return reports
