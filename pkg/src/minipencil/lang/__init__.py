"""Lexer, parser, AST, and canonical formatter for the MiniPencil language."""

from .lexer import tokenize
from .parser import INDENT_UNIT, parse, parse_expression
from .printer import format_expr, format_program, format_stmt
from .syntax import (
    Assign,
    Binary,
    Call,
    ElseIf,
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
from .tokens import RESERVED_WORDS, Token, TokenKind

__all__ = [
    "Assign",
    "Binary",
    "Call",
    "ElseIf",
    "Expr",
    "FloatLit",
    "ForIn",
    "FuncDef",
    "If",
    "INDENT_UNIT",
    "IntLit",
    "Program",
    "RangeExpr",
    "RESERVED_WORDS",
    "Stmt",
    "StrLit",
    "Token",
    "TokenKind",
    "Var",
    "format_expr",
    "format_program",
    "format_stmt",
    "parse",
    "parse_expression",
    "tokenize",
]
