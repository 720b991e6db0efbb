import json

import pytest
from click.testing import CliRunner

from minipencil.assessment import bundled_corpus_path, load_corpus
from minipencil.cli import cli
from conftest import SIGN_CHECK, SUM_LOOP_BROKEN, OCTAGON_WALK


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sign_check_file(tmp_path):
    path = tmp_path / "sign_check.mp"
    path.write_text(SIGN_CHECK, encoding="utf-8")
    return str(path)


@pytest.fixture
def broken_file(tmp_path):
    path = tmp_path / "sum_loop.mp"
    path.write_text(SUM_LOOP_BROKEN, encoding="utf-8")
    return str(path)


def test_run_prints_output(runner, sign_check_file):
    result = runner.invoke(cli, ["run", sign_check_file])
    assert result.exit_code == 0
    assert result.output == "x is a positive number.\n"


def test_run_json_trace(runner, tmp_path):
    path = tmp_path / "walk.mp"
    path.write_text(OCTAGON_WALK, encoding="utf-8")
    result = runner.invoke(cli, ["run", str(path), "--json"])
    assert result.exit_code == 0
    trace = json.loads(result.output)
    assert len(trace["segments"]) == 10
    assert trace["final"]["heading"] == 90.0


def test_parse_reports_diagnostics(runner, broken_file):
    result = runner.invoke(cli, ["parse", broken_file])
    assert result.exit_code == 1
    assert "INDENT_MISMATCH" in result.stderr
    assert result.stdout == ""


def test_parse_clean_file(runner, sign_check_file):
    result = runner.invoke(cli, ["parse", sign_check_file])
    assert result.exit_code == 0
    assert result.output == ""


def test_fmt_is_fixpoint_on_canonical_input(runner, sign_check_file):
    result = runner.invoke(cli, ["fmt", sign_check_file])
    assert result.exit_code == 0
    assert result.output == SIGN_CHECK


def test_fmt_normalizes(runner, tmp_path):
    path = tmp_path / "tight.mp"
    path.write_text("sum=0\nwrite sum\n", encoding="utf-8")
    result = runner.invoke(cli, ["fmt", str(path)])
    assert result.output == "sum = 0\nwrite sum\n"


def test_fmt_rejects_broken_file(runner, broken_file):
    result = runner.invoke(cli, ["fmt", broken_file])
    assert result.exit_code == 1


def test_blocks_emits_markup(runner, tmp_path):
    path = tmp_path / "fd.mp"
    path.write_text("fd 100\n", encoding="utf-8")
    result = runner.invoke(cli, ["blocks", str(path)])
    assert result.exit_code == 0
    assert result.output == '<block type="fd" id="1">fd <socket name="args">100</socket></block>\n'


def test_run_runtime_error(runner, tmp_path):
    path = tmp_path / "bad.mp"
    path.write_text("write missing\n", encoding="utf-8")
    result = runner.invoke(cli, ["run", str(path)])
    assert result.exit_code == 1
    assert "UNDEFINED_VARIABLE" in result.stderr


def test_palette_json(runner):
    result = runner.invoke(cli, ["palette"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert any(item["id"] == "for-range" for item in data)


def test_grade_table_and_json(runner, tmp_path):
    corpus_path = str(bundled_corpus_path())
    submissions = tmp_path / "submissions"
    submissions.mkdir()
    for task in load_corpus(corpus_path):
        if task.kind == "output-prediction":
            (submissions / f"{task.id}.txt").write_text(task.correct_choice)
        else:
            (submissions / f"{task.id}.mp").write_text(task.reference_solution)
    result = runner.invoke(cli, ["grade", corpus_path, str(submissions)])
    assert result.exit_code == 0
    assert "sample-1-mod" in result.output
    assert "mean" in result.output

    result = runner.invoke(cli, ["grade", corpus_path, str(submissions), "--json"])
    report = json.loads(result.output)
    assert report["mean_score"] == 100.0
    assert all(entry["score"] == 100 for entry in report["tasks"])


def test_usage_error_exits_2(runner):
    result = runner.invoke(cli, ["run"])
    assert result.exit_code == 2
    result = runner.invoke(cli, ["frobnicate"])
    assert result.exit_code == 2


def test_missing_file_exits_2(runner):
    result = runner.invoke(cli, ["run", "/nonexistent/file.mp"])
    assert result.exit_code == 2
