import math
import random

import pytest

from minipencil.interpreter import (
    DEFAULT_STEP_LIMIT,
    ExecError,
    eval_expr,
    format_value,
    run,
)
from minipencil.lang import parse, parse_expression
from conftest import SIGN_CHECK, SUM_LOOP_FIXED, OCTAGON_WALK


def run_source(source, **kwargs):
    return run(parse(source), **kwargs)


def trace_error(source):
    with pytest.raises(ExecError) as err:
        run_source(source)
    return err.value.diagnostic


def test_sign_check_output():
    assert run_source(SIGN_CHECK).output == ["x is a positive number."]


def test_sum_loop_output():
    assert run_source(SUM_LOOP_FIXED).output == ["sum= 9", "sum= 19"]


def test_octagon_walk_geometry():
    trace = run_source(OCTAGON_WALK)
    assert len(trace.segments) == 10
    assert all(seg.color == "red" for seg in trace.segments)
    x8, y8 = trace.segments[7].end
    assert abs(x8) < 1e-9 and abs(y8) < 1e-9
    assert abs(trace.final_state.heading - 90.0) < 1e-9
    assert math.isclose(trace.final_state.x, 70.7107, rel_tol=1e-6)
    assert math.isclose(trace.final_state.y, 170.7107, rel_tol=1e-6)
    assert trace.final_state.speed == 2.0


def test_eval_string_number_concatenation():
    assert eval_expr(parse_expression("'sum= ' + 19"), {}) == "sum= 19"
    assert eval_expr(parse_expression("19 + ' total'"), {}) == "19 total"


def test_eval_comparison():
    assert eval_expr(parse_expression("x > 0"), {"x": 7}) is True
    assert eval_expr(parse_expression("x > 0"), {"x": -1}) is False


def test_eval_zero_plus_zero():
    assert eval_expr(parse_expression("0 + 0"), {}) == 0


def test_eval_arithmetic():
    env = {"a": 7, "b": 2}
    assert eval_expr(parse_expression("a % b"), env) == 1
    assert eval_expr(parse_expression("a / b"), env) == 3.5
    assert eval_expr(parse_expression("a - b * 3"), env) == 1


def test_number_formatting():
    assert format_value(19.0) == "19"
    assert format_value(2.5) == "2.5"
    assert format_value(-3.0) == "-3"
    assert format_value(True) == "true"
    assert format_value(False) == "false"
    assert format_value(1.0000000001) == "1"  # within 1e-9 of an integer
    assert format_value("hi") == "hi"


def test_write_formats_values():
    assert run_source("write 10 / 4\n").output == ["2.5"]
    assert run_source("write 10 / 5\n").output == ["2"]
    assert run_source("write 1 == 1\n").output == ["true"]


@pytest.mark.parametrize("n", range(3, 13))
def test_closed_polygon_returns_home(n):
    source = f"for [1..{n}]\n  fd 50\n  rt {360 / n!r}\n"
    trace = run_source(source)
    assert len(trace.segments) == n
    assert abs(trace.final_state.x) < 1e-9
    assert abs(trace.final_state.y) < 1e-9


def test_heading_always_normalized():
    rng = random.Random(5)
    for _ in range(50):
        turns = [
            f"{rng.choice(['rt', 'lt'])} {rng.randint(-720, 720)}"
            for _ in range(rng.randint(1, 8))
        ]
        trace = run_source("\n".join(turns) + "\n")
        assert 0.0 <= trace.final_state.heading < 360.0


def test_segment_conservation():
    # independent oracle: count fd/bk commands executed while the pen is down
    moves = ["fd 10", "bk 5", "pen none", "fd 3", "pen blue", "bk 1", "fd 2"]
    expected = 0
    pen = "black"
    for command in moves:
        if command.startswith("pen"):
            pen = command.split()[1]
        elif pen != "none":
            expected += 1
    trace = run_source("\n".join(moves) + "\n")
    assert len(trace.segments) == expected
    assert [seg.color for seg in trace.segments] == ["black", "black", "blue", "blue"]


def test_bk_moves_backwards():
    trace = run_source("bk 10\n")
    assert trace.final_state.y == pytest.approx(-10.0)
    assert trace.final_state.x == pytest.approx(0.0)


def test_pen_none_suppresses_segments():
    trace = run_source("pen none\nfd 100\n")
    assert trace.segments == []
    assert trace.final_state.pen_color == "none"


def test_ranges_are_inclusive_and_can_be_empty():
    assert run_source("for x in [0..3]\n  write x\n").output == ["0", "1", "2", "3"]
    assert run_source("for x in [3..0]\n  write x\n").output == []


def test_loop_variable_persists():
    assert run_source("for x in [1..3]\n  fd 1\nwrite x\n").output == ["3"]


def test_function_definition_and_call():
    source = (
        "side = 0\n"
        "square = (size) ->\n"
        "  fd size\n"
        "  rt 90\n"
        "  side = side + 1\n"
        "for [1..4]\n"
        "  square 25\n"
        "write side\n"
    )
    trace = run_source(source)
    assert trace.output == ["4"]
    assert len(trace.segments) == 4
    assert abs(trace.final_state.x) < 1e-9 and abs(trace.final_state.y) < 1e-9


def test_function_params_are_local():
    source = "x = 1\nbump = (x) ->\n  x = x + 1\nbump 10\nwrite x\n"
    assert run_source(source).output == ["1"]


def test_recursion_with_base_case():
    source = (
        "countdown = (n) ->\n"
        "  if n > 0\n"
        "    write n\n"
        "    countdown n - 1\n"
        "countdown 3\n"
    )
    assert run_source(source).output == ["3", "2", "1"]


def test_infinite_recursion_hits_step_limit():
    diag = None
    source = "loop = () ->\n  loop\nloop\n"
    with pytest.raises(ExecError) as err:
        run_source(source, step_limit=5000)
    diag = err.value.diagnostic
    assert diag.code == "STEP_LIMIT"


def test_huge_loop_hits_step_limit():
    with pytest.raises(ExecError) as err:
        run_source("for x in [1..99999999]\n  y = x\n", step_limit=1000)
    assert err.value.diagnostic.code == "STEP_LIMIT"


def test_steps_counted_within_limit():
    trace = run_source("fd 1\nfd 2\n")
    assert trace.steps_executed == 2
    assert trace.steps_executed <= DEFAULT_STEP_LIMIT


@pytest.mark.parametrize(
    "source, code",
    [
        ("write missing\n", "UNDEFINED_VARIABLE"),
        ("warp 10\n", "UNKNOWN_COMMAND"),
        ("x = 5\nx 10\n", "UNKNOWN_COMMAND"),
        ("write 'a' - 'b'\n", "TYPE_ERROR"),
        ("fd 'far'\n", "TYPE_ERROR"),
        ("pen 12\n", "TYPE_ERROR"),
        ("pen purpleish\n", "UNDEFINED_VARIABLE"),
        ("write 1 / 0\n", "DIVISION_BY_ZERO"),
        ("write 1 % 0\n", "DIVISION_BY_ZERO"),
        ("for x in [1..'b']\n  fd 1\n", "TYPE_ERROR"),
        ("square = (a) ->\n  fd a\nsquare 1, 2\n", "TYPE_ERROR"),
        ("write x + 1\n", "UNDEFINED_VARIABLE"),
    ],
)
def test_runtime_errors(source, code):
    assert trace_error(source).code == code


def test_runtime_error_carries_line():
    diag = trace_error("fd 1\nrt 2\nwrite missing\n")
    assert diag.line == 3


def test_pen_accepts_color_words_and_strings():
    assert run_source("pen blue\nfd 1\n").segments[0].color == "blue"
    assert run_source("c = 'green'\npen c\nfd 1\n").segments[0].color == "green"


def test_determinism():
    first = run_source(OCTAGON_WALK)
    second = run_source(OCTAGON_WALK)
    assert first.output == second.output
    assert first.segments == second.segments
    assert first.steps_executed == second.steps_executed


def test_trace_json_shape():
    data = run_source("pen red\nfd 10\nwrite 'done'\n").to_json()
    assert data["output"] == ["done"]
    assert data["segments"][0]["color"] == "red"
    assert data["segments"][0]["from"] == [0.0, 0.0]
    assert set(data["final"]) == {"x", "y", "heading"}
    assert data["steps"] == 3


def test_if_condition_truthiness():
    assert run_source("x = 1\nif x\n  write 'yes'\n").output == ["yes"]
    assert run_source("x = 0\nif x\n  write 'yes'\n").output == []
    assert run_source("s = 'a'\nif s\n  write 'yes'\n").output == ["yes"]
