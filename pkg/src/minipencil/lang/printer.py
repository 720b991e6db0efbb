"""Canonical formatter: 2-space indents, spaced operators, minimal parens.

format_program is the shared text form of a tree: parsing its output always
rebuilds a structurally identical tree, and formatting is a fixpoint on
already-canonical text.
"""

from .syntax import (
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

INDENT = "  "

_PRECEDENCE = {
    ">": 1,
    "<": 1,
    ">=": 1,
    "<=": 1,
    "==": 1,
    "!=": 1,
    "+": 2,
    "-": 2,
    "*": 3,
    "/": 3,
    "%": 3,
}
_ATOM_PRECEDENCE = 9


def format_program(program: Program) -> str:
    out: list[str] = []
    for stmt in program.statements:
        _stmt(stmt, 0, out)
    return "".join(out)


def format_stmt(stmt: Stmt, depth: int = 0) -> str:
    out: list[str] = []
    _stmt(stmt, depth, out)
    return "".join(out)


def _stmt(stmt: Stmt, depth: int, out: list[str]):
    pad = INDENT * depth
    match stmt:
        case Assign(name=name, value=value):
            out.append(f"{pad}{name} = {format_expr(value)}\n")
        case Call(command=command, args=args):
            if args:
                rendered = ", ".join(format_expr(a) for a in args)
                out.append(f"{pad}{command} {rendered}\n")
            else:
                out.append(f"{pad}{command}\n")
        case If(cond=cond, then_body=then_body, elifs=elifs, else_body=else_body):
            out.append(f"{pad}if {format_expr(cond)}\n")
            _body(then_body, depth + 1, out)
            for clause in elifs:
                out.append(f"{pad}else if {format_expr(clause.cond)}\n")
                _body(clause.body, depth + 1, out)
            if else_body is not None:
                out.append(f"{pad}else\n")
                _body(else_body, depth + 1, out)
        case ForIn(var=var, iterable=iterable, body=body):
            if var is None:
                out.append(f"{pad}for {_range_text(iterable)}\n")
            else:
                out.append(f"{pad}for {var} in {_range_text(iterable)}\n")
            _body(body, depth + 1, out)
        case FuncDef(name=name, params=params, body=body):
            out.append(f"{pad}{name} = ({', '.join(params)}) ->\n")
            _body(body, depth + 1, out)
        case _:
            raise TypeError(f"not a statement: {stmt!r}")


def _body(stmts: list[Stmt], depth: int, out: list[str]):
    for stmt in stmts:
        _stmt(stmt, depth, out)


def format_expr(expr: Expr) -> str:
    match expr:
        case IntLit(value=v):
            return str(v)
        case FloatLit(value=v):
            return repr(v)
        case StrLit(value=v):
            return _quote(v)
        case Var(name=name):
            return name
        case Binary(op=op, lhs=lhs, rhs=rhs):
            prec = _PRECEDENCE[op]
            left = _child(lhs, prec, right_side=False)
            right = _child(rhs, prec, right_side=True)
            return f"{left} {op} {right}"
        case RangeExpr():
            return _range_text(expr)
        case _:
            raise TypeError(f"not an expression: {expr!r}")


def format_range_endpoint(expr: Expr) -> str:
    # endpoints sit at additive precedence in the grammar
    return _wrap_if(format_expr(expr), _precedence_of(expr) < 2)


def _range_text(rng: RangeExpr) -> str:
    return f"[{format_range_endpoint(rng.lo)}..{format_range_endpoint(rng.hi)}]"


def _child(expr: Expr, parent_prec: int, right_side: bool) -> str:
    prec = _precedence_of(expr)
    # arithmetic associates left, so only a same-precedence right child needs
    # parens; comparisons do not chain at all, so both sides do
    needs = prec < parent_prec or (
        prec == parent_prec and (right_side or parent_prec == 1)
    )
    return _wrap_if(format_expr(expr), needs)


def _precedence_of(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PRECEDENCE[expr.op]
    return _ATOM_PRECEDENCE


def _wrap_if(text: str, needs_parens: bool) -> str:
    return f"({text})" if needs_parens else text


def _quote(value: str) -> str:
    body = (
        value.replace("\\", "\\\\")
        .replace("'", "\\'")
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )
    return f"'{body}'"
