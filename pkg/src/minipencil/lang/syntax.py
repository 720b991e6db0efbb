"""AST node definitions.

Statement nodes record the 1-based source line they started on; the field is
excluded from equality so trees compare structurally regardless of where
(or whether) they were parsed from text.
"""

from dataclasses import dataclass, field


class Expr:
    pass


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class FloatLit(Expr):
    value: float


@dataclass
class StrLit(Expr):
    value: str


@dataclass
class Var(Expr):
    name: str


@dataclass
class Binary(Expr):
    op: str  # one of + - * / % > < >= <= == !=
    lhs: Expr
    rhs: Expr


@dataclass
class RangeExpr(Expr):
    """Inclusive [lo..hi] range; legal only as a for-loop iterable."""

    lo: Expr
    hi: Expr


class Stmt:
    pass


@dataclass
class Assign(Stmt):
    name: str
    value: Expr
    line: int = field(default=0, compare=False)


@dataclass
class ElseIf:
    cond: Expr
    body: list[Stmt]


@dataclass
class If(Stmt):
    cond: Expr
    then_body: list[Stmt]
    elifs: list[ElseIf] = field(default_factory=list)
    else_body: list[Stmt] | None = None
    line: int = field(default=0, compare=False)


@dataclass
class ForIn(Stmt):
    var: str | None  # None for the bare `for [a..b]` form
    iterable: RangeExpr
    body: list[Stmt] = field(default_factory=list)
    line: int = field(default=0, compare=False)


@dataclass
class Call(Stmt):
    command: str
    args: list[Expr] = field(default_factory=list)
    line: int = field(default=0, compare=False)


@dataclass
class FuncDef(Stmt):
    name: str
    params: list[str]
    body: list[Stmt] = field(default_factory=list)
    line: int = field(default=0, compare=False)


@dataclass
class Program:
    statements: list[Stmt] = field(default_factory=list)
