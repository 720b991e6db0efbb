"""Regenerate src/minipencil/corpus/corpus.json.

Expected outputs are computed by running each reference solution (with the
case's overrides applied) through the interpreter, so the shipped answer
keys are interpreter-derived by construction. load_corpus re-verifies them
on every load.
"""

import json
from pathlib import Path

from minipencil.assessment import _apply_overrides, load_corpus
from minipencil.interpreter import run
from minipencil.lang import parse

SAMPLE_1 = """x = 7
if x > 0
  write 'x is a positive number.'
else
  write 'x is a negative number.'
"""

SAMPLE_1_REFERENCE = """x = 7
if x > 0
  write 'x is a positive number.'
else if x == 0
  write 'x is zero.'
else
  write 'x is a negative number.'
"""

SAMPLE_2 = """sum=0
for x in [0..10]
  if x>8
  sum=sum+x //<----- Syntax Error
  write 'sum= ' + sum
"""

SAMPLE_2_REFERENCE = """sum = 0
for x in [0..10]
  if x > 8
    sum = sum + x
    write 'sum= ' + sum
"""

SAMPLE_3 = """speed 2
pen red
for [1..10]
  fd 100
  rt 45
"""


def expected(reference: str, overrides: dict) -> list[str]:
    program = parse(reference)
    missing = _apply_overrides(program, tuple(overrides.items()))
    if missing is not None:
        raise SystemExit(f"override target {missing!r} not found in reference")
    return list(run(program).output)


def io_task(task_id, source, reference, override_sets, notes=None):
    return {
        "id": task_id,
        "kind": task_id_kind(task_id),
        "source": source,
        "io_spec": [
            {"overrides": ov, "expected_output": expected(reference, ov)}
            for ov in override_sets
        ],
        "reference_solution": reference,
        **({"notes": notes} if notes else {}),
    }


def task_id_kind(task_id):
    return "syntax-fix" if task_id.startswith("syn") or "syntax" in task_id else "modification"


def prediction(task_id, source, choices, correct, notes=None):
    return {
        "id": task_id,
        "kind": "output-prediction",
        "source": source,
        "choices": [
            {"id": cid, "label": label, "check": check} for cid, label, check in choices
        ],
        "correct_choice": correct,
        **({"notes": notes} if notes else {}),
    }


def output_check(lines):
    return {"kind": "output", "lines": lines}


TASKS = [
    io_task(
        "sample-1-mod",
        SAMPLE_1,
        SAMPLE_1_REFERENCE,
        [{"x": 7}, {"x": -3}, {"x": 0}],
        notes="extend the sign check to handle zero",
    ),
    io_task(
        "mod-double-write",
        "x = 3\ny = x + x\nwrite 'double= ' + x\n",
        "x = 3\ny = x + x\nwrite 'double= ' + y\n",
        [{"x": 3}, {"x": 7}, {"x": 0}],
        notes="the program computes the double but prints the input",
    ),
    io_task(
        "mod-countdown",
        "n = 5\nfor x in [1..n]\n  write x\n",
        "n = 5\nfor x in [1..n]\n  write n + 1 - x\n",
        [{"n": 5}, {"n": 3}, {"n": 1}],
        notes="count down from n to 1 instead of up",
    ),
    io_task(
        "mod-evens",
        "n = 6\nfor x in [0..n]\n  if x % 2 == 1\n    write x\n",
        "n = 6\nfor x in [0..n]\n  if x % 2 == 0\n    write x\n",
        [{"n": 6}, {"n": 5}, {"n": 0}],
        notes="print the even numbers, not the odd ones",
    ),
    io_task(
        "mod-total-once",
        "n = 4\ntotal = 0\nfor x in [1..n]\n  total = total + x\n  write 'total= ' + total\n",
        "n = 4\ntotal = 0\nfor x in [1..n]\n  total = total + x\nwrite 'total= ' + total\n",
        [{"n": 4}, {"n": 1}, {"n": 10}],
        notes="print the total once, after the loop finishes",
    ),
    io_task(
        "sample-2-syntax",
        SAMPLE_2,
        SAMPLE_2_REFERENCE,
        [{"sum": 0}, {"sum": 100}],
        notes="the condition body starts at the condition's own indent",
    ),
    io_task(
        "syn-tab-indent",
        "for x in [1..3]\n\twrite x\n",
        "for x in [1..3]\n  write x\n",
        [{}],
        notes="tabs are not allowed in leading whitespace",
    ),
    io_task(
        "syn-flat-body",
        "x = 5\nif x > 2\nwrite 'big'\n",
        "x = 5\nif x > 2\n  write 'big'\n",
        [{"x": 5}, {"x": 1}],
        notes="the if body must be indented",
    ),
    io_task(
        "syn-odd-indent",
        "for x in [1..2]\n   write 'hi'\n",
        "for x in [1..2]\n  write 'hi'\n",
        [{}],
        notes="indentation must be a multiple of two spaces",
    ),
    io_task(
        "syn-open-string",
        "write 'hello\n",
        "write 'hello'\n",
        [{}],
        notes="the string literal is never closed",
    ),
    prediction(
        "sample-2-predict",
        SAMPLE_2,
        [
            ("A", "sum= 9", output_check(["sum= 9"])),
            ("B", "sum= 19", output_check(["sum= 19"])),
            ("C", "not run", {"kind": "parse-error"}),
            ("D", "sum= 9 sum= 19", output_check(["sum= 9", "sum= 19"])),
        ],
        "C",
        notes="the program does not parse, so it cannot run",
    ),
    prediction(
        "sample-3-predict",
        SAMPLE_3,
        [
            ("A", "a triangle", {"kind": "segment-count", "count": 3}),
            ("B", "an octagon", {"kind": "segment-count", "count": 8}),
            ("C", "a square", {"kind": "segment-count", "count": 4}),
            (
                "D",
                "an octagon with two sides drawn twice",
                {"kind": "segment-count", "count": 10},
            ),
        ],
        "D",
        notes="ten moves of 45 degrees close the octagon and overdraw two sides",
    ),
    prediction(
        "pred-squares",
        "for x in [1..3]\n  write x * x\n",
        [
            ("A", "1 4 9", output_check(["1", "4", "9"])),
            ("B", "1 2 3", output_check(["1", "2", "3"])),
            ("C", "2 4 6", output_check(["2", "4", "6"])),
            ("D", "not run", {"kind": "parse-error"}),
        ],
        "A",
    ),
    prediction(
        "pred-pen-up",
        "pen none\nfd 100\npen red\nfd 100\n",
        [
            ("A", "no line is drawn", {"kind": "segment-count", "count": 0}),
            ("B", "one line is drawn", {"kind": "segment-count", "count": 1}),
            ("C", "two lines are drawn", {"kind": "segment-count", "count": 2}),
            ("D", "four lines are drawn", {"kind": "segment-count", "count": 4}),
        ],
        "B",
    ),
    prediction(
        "pred-flat-if",
        "x = 2\nif x > 1\nwrite 'yes'\n",
        [
            ("A", "yes", output_check(["yes"])),
            ("B", "not run", {"kind": "parse-error"}),
            ("C", "no output", output_check([])),
        ],
        "B",
    ),
    prediction(
        "pred-branch",
        "x = 0\nif x > 0\n  write 'pos'\nelse if x == 0\n  write 'zero'\nelse\n  write 'neg'\n",
        [
            ("A", "pos", output_check(["pos"])),
            ("B", "zero", output_check(["zero"])),
            ("C", "neg", output_check(["neg"])),
            ("D", "zero then neg", output_check(["zero", "neg"])),
        ],
        "B",
    ),
]


def main():
    out = Path(__file__).resolve().parent.parent / "src" / "minipencil" / "corpus" / "corpus.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(TASKS, indent=2) + "\n", encoding="utf-8")
    tasks = load_corpus(out)
    print(f"wrote {out} with {len(tasks)} tasks, self-check passed")
    for task in tasks:
        print(f"  {task.id} ({task.kind})")


if __name__ == "__main__":
    main()
