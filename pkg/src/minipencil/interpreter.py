"""Deterministic evaluator: runs a program and records written output lines
plus the turtle segments it draws.

Coordinates: origin (0,0), heading 0 points north (+y), `rt` turns clockwise.
Numbers are 64-bit floats; values within 1e-9 of an integer print without a
decimal point. Statements execute on an explicit frame stack, so runaway
recursion is stopped by the step limit instead of the host stack.
"""

import math
from dataclasses import dataclass, field

from .lang import (
    Assign,
    Binary,
    Call,
    Expr,
    FloatLit,
    ForIn,
    FuncDef,
    If,
    IntLit,
    Program,
    RangeExpr,
    Stmt,
    StrLit,
    Var,
)

PEN_COLORS = frozenset({"red", "green", "blue", "black", "purple", "orange"})
DEFAULT_STEP_LIMIT = 100_000


@dataclass(frozen=True)
class RuntimeDiagnostic:
    code: str  # UNDEFINED_VARIABLE | UNKNOWN_COMMAND | TYPE_ERROR | STEP_LIMIT | DIVISION_BY_ZERO
    message: str
    line: int


class ExecError(Exception):
    def __init__(self, code: str, message: str, line: int):
        self.diagnostic = RuntimeDiagnostic(code, message, line)
        super().__init__(f"line {line}: {code}: {message}")


@dataclass
class TurtleState:
    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0  # degrees clockwise from north, normalized to [0, 360)
    pen_color: str = "black"  # pen starts down, Logo-style
    speed: float = 1.0  # animation pacing metadata; no effect on the trace


@dataclass(frozen=True)
class Segment:
    start: tuple[float, float]
    end: tuple[float, float]
    color: str


@dataclass
class ExecutionTrace:
    output: list[str]
    segments: list[Segment]
    final_state: TurtleState
    steps_executed: int

    def to_json(self) -> dict:
        return {
            "output": list(self.output),
            "segments": [
                {"from": list(seg.start), "to": list(seg.end), "color": seg.color}
                for seg in self.segments
            ],
            "final": {
                "x": self.final_state.x,
                "y": self.final_state.y,
                "heading": self.final_state.heading,
            },
            "steps": self.steps_executed,
        }


class Env:
    """Scope chain: reads walk outward, writes update the defining scope or
    create a local binding (CoffeeScript-style assignment)."""

    __slots__ = ("vars", "parent")

    def __init__(self, parent: "Env | None" = None):
        self.vars: dict[str, object] = {}
        self.parent = parent

    def lookup(self, name: str):
        scope = self
        while scope is not None:
            if name in scope.vars:
                return scope.vars[name]
            scope = scope.parent
        raise KeyError(name)

    def assign(self, name: str, value):
        scope = self
        while scope is not None:
            if name in scope.vars:
                scope.vars[name] = value
                return
            scope = scope.parent
        self.vars[name] = value


@dataclass(frozen=True)
class FuncValue:
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]
    env: Env = field(compare=False)


def format_value(value) -> str:
    """Render a runtime value the way `write` prints it."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        v = float(value)
        if math.isfinite(v) and abs(v - round(v)) < 1e-9:
            return str(int(round(v)))
        return repr(v)
    return str(value)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _truthy(value) -> bool:
    if isinstance(value, bool):
        return value
    if _is_number(value):
        return value != 0
    return len(value) > 0


def _to_value(value):
    if _is_number(value):
        return float(value)
    return value


def eval_expr(expr: Expr, env, line: int = 0):
    """Evaluate one expression against a name->value mapping."""
    scope = Env()
    for name, value in dict(env).items():
        scope.vars[name] = _to_value(value)
    return _eval(expr, scope, line)


def _eval(expr: Expr, scope: Env, line: int):
    match expr:
        case IntLit(value=v):
            return float(v)
        case FloatLit(value=v):
            return v
        case StrLit(value=v):
            return v
        case Var(name=name):
            try:
                value = scope.lookup(name)
            except KeyError:
                raise ExecError("UNDEFINED_VARIABLE", f"variable {name!r} is not defined", line) from None
            if isinstance(value, FuncValue):
                raise ExecError("TYPE_ERROR", f"{name!r} is a function, not a value", line)
            return value
        case Binary(op=op, lhs=lhs, rhs=rhs):
            return _binary(op, _eval(lhs, scope, line), _eval(rhs, scope, line), line)
        case RangeExpr():
            raise ExecError("TYPE_ERROR", "a range is only usable as a loop iterable", line)
    raise ExecError("TYPE_ERROR", f"cannot evaluate {expr!r}", line)


def _binary(op: str, left, right, line: int):
    if op == "+":
        if isinstance(left, str) or isinstance(right, str):
            return format_value(left) + format_value(right)
        if _is_number(left) and _is_number(right):
            return left + right
        raise ExecError("TYPE_ERROR", "'+' needs numbers or a string operand", line)
    if op in ("-", "*", "/", "%"):
        if not (_is_number(left) and _is_number(right)):
            raise ExecError("TYPE_ERROR", f"'{op}' needs numeric operands", line)
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if right == 0:
            raise ExecError("DIVISION_BY_ZERO", "division by zero", line)
        return left / right if op == "/" else math.fmod(left, right)
    if op == "==":
        return _equal(left, right)
    if op == "!=":
        return not _equal(left, right)
    # ordering comparisons
    if _is_number(left) and _is_number(right):
        pass
    elif isinstance(left, str) and isinstance(right, str):
        pass
    else:
        raise ExecError("TYPE_ERROR", f"'{op}' needs two numbers or two strings", line)
    if op == ">":
        return left > right
    if op == "<":
        return left < right
    if op == ">=":
        return left >= right
    return left <= right


def _equal(left, right) -> bool:
    if isinstance(left, bool) or isinstance(right, bool):
        return isinstance(left, bool) and isinstance(right, bool) and left == right
    if _is_number(left) and _is_number(right):
        return left == right
    if isinstance(left, str) and isinstance(right, str):
        return left == right
    return False


# ---------------------------------------------------------------------------
# statement execution


@dataclass
class _BodyFrame:
    stmts: list[Stmt]
    index: int
    env: Env


@dataclass
class _LoopFrame:
    stmt: ForIn
    next_value: int
    stop: int
    env: Env


def run(program: Program, step_limit: int = DEFAULT_STEP_LIMIT) -> ExecutionTrace:
    """Execute a program; raises ExecError carrying a RuntimeDiagnostic."""
    if step_limit <= 0:
        raise ValueError("step_limit must be positive")
    turtle = TurtleState()
    output: list[str] = []
    segments: list[Segment] = []
    steps = 0
    stack: list[_BodyFrame | _LoopFrame] = [_BodyFrame(program.statements, 0, Env())]
    while stack:
        frame = stack[-1]
        if isinstance(frame, _LoopFrame):
            if frame.next_value > frame.stop:
                stack.pop()
                continue
            if frame.stmt.var is not None:
                frame.env.assign(frame.stmt.var, float(frame.next_value))
            frame.next_value += 1
            stack.append(_BodyFrame(frame.stmt.body, 0, frame.env))
            continue
        if frame.index >= len(frame.stmts):
            stack.pop()
            continue
        stmt = frame.stmts[frame.index]
        frame.index += 1
        steps += 1
        if steps > step_limit:
            raise ExecError("STEP_LIMIT", f"execution exceeded {step_limit} steps", stmt.line)
        _execute(stmt, frame.env, stack, turtle, output, segments)
    return ExecutionTrace(output, segments, turtle, steps)


def _execute(
    stmt: Stmt,
    env: Env,
    stack: list,
    turtle: TurtleState,
    output: list[str],
    segments: list[Segment],
):
    line = stmt.line
    match stmt:
        case Assign(name=name, value=value):
            env.assign(name, _eval(value, env, line))
        case FuncDef(name=name, params=params, body=body):
            env.assign(name, FuncValue(name, tuple(params), tuple(body), env))
        case If(cond=cond, then_body=then_body, elifs=elifs, else_body=else_body):
            if _truthy(_eval(cond, env, line)):
                stack.append(_BodyFrame(then_body, 0, env))
                return
            for clause in elifs:
                if _truthy(_eval(clause.cond, env, line)):
                    stack.append(_BodyFrame(clause.body, 0, env))
                    return
            if else_body is not None:
                stack.append(_BodyFrame(else_body, 0, env))
        case ForIn(iterable=rng):
            lo = _range_bound(rng.lo, env, line)
            hi = _range_bound(rng.hi, env, line)
            stack.append(_LoopFrame(stmt, lo, hi, env))
        case Call(command=command, args=args):
            _call(command, args, env, stack, turtle, output, segments, line)
        case _:
            raise ExecError("TYPE_ERROR", f"cannot execute {stmt!r}", line)


def _range_bound(expr: Expr, env: Env, line: int) -> int:
    value = _eval(expr, env, line)
    if not _is_number(value) or abs(value - round(value)) > 1e-9:
        raise ExecError("TYPE_ERROR", "range bounds must be whole numbers", line)
    return int(round(value))


def _call(
    command: str,
    args: list[Expr],
    env: Env,
    stack: list,
    turtle: TurtleState,
    output: list[str],
    segments: list[Segment],
    line: int,
):
    if command in ("fd", "bk", "rt", "lt", "speed"):
        amount = _numeric_arg(command, args, env, line)
        if command == "fd":
            _move(turtle, amount, segments)
        elif command == "bk":
            _move(turtle, -amount, segments)
        elif command == "rt":
            turtle.heading = (turtle.heading + amount) % 360.0
        elif command == "lt":
            turtle.heading = (turtle.heading - amount) % 360.0
        else:
            turtle.speed = amount
        return
    if command == "pen":
        turtle.pen_color = _pen_arg(args, env, line)
        return
    if command == "write":
        if len(args) != 1:
            raise ExecError("TYPE_ERROR", "write takes exactly one value", line)
        output.append(format_value(_eval(args[0], env, line)))
        return
    # anything else is a user-defined function
    try:
        value = env.lookup(command)
    except KeyError:
        raise ExecError("UNKNOWN_COMMAND", f"unknown command {command!r}", line) from None
    if not isinstance(value, FuncValue):
        raise ExecError("UNKNOWN_COMMAND", f"{command!r} is not callable", line)
    if len(args) != len(value.params):
        raise ExecError(
            "TYPE_ERROR",
            f"{command!r} takes {len(value.params)} argument(s), got {len(args)}",
            line,
        )
    call_env = Env(parent=value.env)
    for param, arg in zip(value.params, args):
        call_env.vars[param] = _eval(arg, env, line)
    stack.append(_BodyFrame(list(value.body), 0, call_env))


def _move(turtle: TurtleState, distance: float, segments: list[Segment]):
    radians = math.radians(turtle.heading)
    nx = turtle.x + distance * math.sin(radians)
    ny = turtle.y + distance * math.cos(radians)
    if turtle.pen_color != "none":
        segments.append(Segment((turtle.x, turtle.y), (nx, ny), turtle.pen_color))
    turtle.x = nx
    turtle.y = ny


def _numeric_arg(command: str, args: list[Expr], env: Env, line: int) -> float:
    if len(args) != 1:
        raise ExecError("TYPE_ERROR", f"{command} takes exactly one number", line)
    value = _eval(args[0], env, line)
    if not _is_number(value):
        raise ExecError("TYPE_ERROR", f"{command} needs a number", line)
    return float(value)


def _pen_arg(args: list[Expr], env: Env, line: int) -> str:
    allowed = PEN_COLORS | {"none"}
    if len(args) == 1 and isinstance(args[0], Var) and args[0].name in allowed:
        return args[0].name
    if len(args) == 1:
        value = _eval(args[0], env, line)
        if isinstance(value, str) and value in allowed:
            return value
    raise ExecError(
        "TYPE_ERROR",
        "pen takes one of: " + ", ".join(sorted(allowed)),
        line,
    )
