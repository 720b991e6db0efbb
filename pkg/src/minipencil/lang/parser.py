"""Indentation-aware recursive-descent parser.

Lines are grouped by physical line, each carrying an indent level (leading
spaces / 2). Block bodies must sit exactly one level deeper than their
header; a body line at the header's own indent is the INDENT_MISMATCH case
rather than a silent reinterpretation. Parsing fails fast on the first
error.
"""

from dataclasses import dataclass

from ..diagnostics import SourceError, error
from .lexer import tokenize
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

INDENT_UNIT = 2

_COMPARISON_OPS = (">", "<", ">=", "<=", "==", "!=")


@dataclass
class _Line:
    level: int
    tokens: list[Token]
    number: int


def _fail(code: str, message: str, line: int, col: int):
    raise SourceError([error(code, message, line, col)])


def _logical_lines(tokens: list[Token]) -> list[_Line]:
    lines: list[_Line] = []
    current: list[Token] = []
    indent = 0

    def flush():
        nonlocal indent
        if current:
            first = current[0]
            if indent % INDENT_UNIT != 0:
                _fail(
                    "INDENT_MISMATCH",
                    f"indentation must be a multiple of {INDENT_UNIT} spaces, got {indent}",
                    first.line,
                    1,
                )
            lines.append(_Line(indent // INDENT_UNIT, list(current), first.line))
        current.clear()
        indent = 0

    for tok in tokens:
        if tok.kind is TokenKind.INDENT:
            indent = tok.value
        elif tok.kind is TokenKind.NEWLINE:
            flush()
        elif tok.kind is TokenKind.EOF:
            flush()
        else:
            current.append(tok)
    return lines


class _Cursor:
    """Walks the tokens of one logical line."""

    def __init__(self, line: _Line, start: int = 0):
        self.tokens = line.tokens
        self.i = start
        self.line_no = line.number

    def peek(self, ahead: int = 0) -> Token | None:
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def end_col(self) -> int:
        last = self.tokens[-1]
        return last.col + len(last.lexeme)

    def take(self, code: str, what: str) -> Token:
        if self.at_end():
            _fail(code, f"expected {what} but the line ended", self.line_no, self.end_col())
        return self.advance()

    def expect_op(self, lexeme: str):
        tok = self.take("UNEXPECTED_TOKEN", f"'{lexeme}'")
        if not tok.is_op(lexeme):
            _fail("UNEXPECTED_TOKEN", f"expected '{lexeme}', got {tok.lexeme!r}", tok.line, tok.col)

    def expect_end(self):
        if not self.at_end():
            tok = self.peek()
            _fail("UNEXPECTED_TOKEN", f"unexpected {tok.lexeme!r} at end of statement", tok.line, tok.col)


class _Parser:
    def __init__(self, lines: list[_Line]):
        self.lines = lines
        self.pos = 0

    # ---- statement level -------------------------------------------------

    def program(self) -> Program:
        stmts = self._body(0)
        if self.pos < len(self.lines):
            line = self.lines[self.pos]
            _fail(
                "INDENT_MISMATCH",
                "unexpected indent: line does not belong to any open block",
                line.number,
                line.tokens[0].col,
            )
        return Program(stmts)

    def _body(self, level: int) -> list[Stmt]:
        stmts: list[Stmt] = []
        while self.pos < len(self.lines) and self.lines[self.pos].level == level:
            stmts.append(self._statement(level))
            if self.pos < len(self.lines) and self.lines[self.pos].level > level:
                line = self.lines[self.pos]
                _fail(
                    "INDENT_MISMATCH",
                    "unexpected indent: line does not belong to any open block",
                    line.number,
                    line.tokens[0].col,
                )
        return stmts

    def _statement(self, level: int) -> Stmt:
        line = self.lines[self.pos]
        first = line.tokens[0]
        if first.kind is not TokenKind.IDENT:
            _fail("UNEXPECTED_TOKEN", f"statement cannot start with {first.lexeme!r}", first.line, first.col)
        word = first.lexeme
        if word == "if":
            return self._if_stmt(level)
        if word == "for":
            return self._for_stmt(level)
        if word == "else":
            _fail("UNEXPECTED_TOKEN", "'else' without a matching 'if'", first.line, first.col)
        second = line.tokens[1] if len(line.tokens) > 1 else None
        if second is not None and second.is_op("="):
            return self._assign_or_funcdef(level)
        return self._call_stmt()

    def _call_stmt(self) -> Call:
        line = self.lines[self.pos]
        cur = _Cursor(line, start=1)
        name = line.tokens[0].lexeme
        args: list[Expr] = []
        if not cur.at_end():
            args.append(self._expr(cur))
            while not cur.at_end() and cur.peek().is_op(","):
                cur.advance()
                args.append(self._expr(cur))
        cur.expect_end()
        self.pos += 1
        return Call(name, args, line=line.number)

    def _assign_or_funcdef(self, level: int) -> Stmt:
        line = self.lines[self.pos]
        name = line.tokens[0].lexeme
        params = self._match_funcdef_header(line)
        if params is not None:
            self.pos += 1
            body = self._block(level, line.number)
            return FuncDef(name, params, body, line=line.number)
        cur = _Cursor(line, start=2)
        value = self._expr(cur)
        cur.expect_end()
        self.pos += 1
        return Assign(name, value, line=line.number)

    @staticmethod
    def _match_funcdef_header(line: _Line) -> list[str] | None:
        # name = ( ident, ... ) ->   with nothing after the arrow
        toks = line.tokens
        if len(toks) < 5 or not toks[2].is_op("(") or not toks[-1].is_op("->"):
            return None
        params: list[str] = []
        j = 3
        if toks[j].is_op(")"):
            j += 1
        else:
            while True:
                if toks[j].kind is not TokenKind.IDENT or toks[j].lexeme in RESERVED_WORDS:
                    return None
                params.append(toks[j].lexeme)
                j += 1
                if j >= len(toks):
                    return None
                if toks[j].is_op(","):
                    j += 1
                    if j >= len(toks):
                        return None
                    continue
                if toks[j].is_op(")"):
                    j += 1
                    break
                return None
        return params if j == len(toks) - 1 else None

    def _if_stmt(self, level: int) -> If:
        line = self.lines[self.pos]
        cur = _Cursor(line, start=1)
        cond = self._expr(cur)
        cur.expect_end()
        self.pos += 1
        then_body = self._block(level, line.number)
        elifs: list[ElseIf] = []
        else_body: list[Stmt] | None = None
        while (
            self.pos < len(self.lines)
            and self.lines[self.pos].level == level
            and self.lines[self.pos].tokens[0].kind is TokenKind.IDENT
            and self.lines[self.pos].tokens[0].lexeme == "else"
        ):
            eline = self.lines[self.pos]
            cur = _Cursor(eline, start=1)
            nxt = cur.peek()
            if nxt is not None and nxt.kind is TokenKind.IDENT and nxt.lexeme == "if":
                cur.advance()
                econd = self._expr(cur)
                cur.expect_end()
                self.pos += 1
                elifs.append(ElseIf(econd, self._block(level, eline.number)))
                continue
            if nxt is None:
                self.pos += 1
                else_body = self._block(level, eline.number)
                break
            _fail("UNEXPECTED_TOKEN", f"unexpected {nxt.lexeme!r} after 'else'", nxt.line, nxt.col)
        return If(cond, then_body, elifs, else_body, line=line.number)

    def _for_stmt(self, level: int) -> ForIn:
        line = self.lines[self.pos]
        cur = _Cursor(line, start=1)
        var: str | None = None
        t0, t1 = cur.peek(), cur.peek(1)
        if (
            t0 is not None
            and t0.kind is TokenKind.IDENT
            and t1 is not None
            and t1.kind is TokenKind.IDENT
            and t1.lexeme == "in"
        ):
            if t0.lexeme in RESERVED_WORDS:
                _fail("UNEXPECTED_TOKEN", f"{t0.lexeme!r} cannot be a loop variable", t0.line, t0.col)
            var = t0.lexeme
            cur.advance()
            cur.advance()
        rng = self._range(cur)
        cur.expect_end()
        self.pos += 1
        body = self._block(level, line.number)
        return ForIn(var, rng, body, line=line.number)

    def _block(self, header_level: int, header_line: int) -> list[Stmt]:
        want = header_level + 1
        nxt = self.lines[self.pos] if self.pos < len(self.lines) else None
        if nxt is None or nxt.level < want:
            if nxt is not None and nxt.level == header_level:
                _fail(
                    "INDENT_MISMATCH",
                    "line follows a block header at the header's own indent; the body must be indented",
                    nxt.number,
                    nxt.tokens[0].col,
                )
            _fail("EMPTY_BODY", "block header has an empty body", header_line, 1)
        if nxt.level > want:
            _fail(
                "INDENT_MISMATCH",
                "body is indented too deeply for its header",
                nxt.number,
                nxt.tokens[0].col,
            )
        return self._body(want)

    # ---- expression level ------------------------------------------------

    def _range(self, cur: _Cursor) -> RangeExpr:
        tok = cur.take("UNEXPECTED_TOKEN", "'['")
        if tok.kind is not TokenKind.RANGE_OPEN:
            _fail("UNEXPECTED_TOKEN", f"expected '[', got {tok.lexeme!r}", tok.line, tok.col)
        lo = self._additive(cur)
        cur.expect_op("..")
        hi = self._additive(cur)
        tok = cur.take("UNEXPECTED_TOKEN", "']'")
        if tok.kind is not TokenKind.RANGE_CLOSE:
            _fail("UNEXPECTED_TOKEN", f"expected ']', got {tok.lexeme!r}", tok.line, tok.col)
        return RangeExpr(lo, hi)

    def _expr(self, cur: _Cursor) -> Expr:
        lhs = self._additive(cur)
        nxt = cur.peek()
        if nxt is not None and nxt.kind is TokenKind.OP and nxt.lexeme in _COMPARISON_OPS:
            cur.advance()
            rhs = self._additive(cur)
            return Binary(nxt.lexeme, lhs, rhs)
        return lhs

    def _additive(self, cur: _Cursor) -> Expr:
        node = self._multiplicative(cur)
        while True:
            nxt = cur.peek()
            if nxt is not None and nxt.kind is TokenKind.OP and nxt.lexeme in ("+", "-"):
                cur.advance()
                node = Binary(nxt.lexeme, node, self._multiplicative(cur))
            else:
                return node

    def _multiplicative(self, cur: _Cursor) -> Expr:
        node = self._unary(cur)
        while True:
            nxt = cur.peek()
            if nxt is not None and nxt.kind is TokenKind.OP and nxt.lexeme in ("*", "/", "%"):
                cur.advance()
                node = Binary(nxt.lexeme, node, self._unary(cur))
            else:
                return node

    def _unary(self, cur: _Cursor) -> Expr:
        nxt = cur.peek()
        if nxt is not None and nxt.is_op("-"):
            num = cur.peek(1)
            if num is not None and num.kind is TokenKind.INT:
                cur.advance()
                cur.advance()
                return IntLit(-num.value)
            if num is not None and num.kind is TokenKind.FLOAT:
                cur.advance()
                cur.advance()
                return FloatLit(-num.value)
            _fail("UNEXPECTED_TOKEN", "unary '-' must be followed by a number", nxt.line, nxt.col)
        return self._primary(cur)

    def _primary(self, cur: _Cursor) -> Expr:
        tok = cur.take("UNEXPECTED_TOKEN", "an expression")
        if tok.kind is TokenKind.INT:
            return IntLit(tok.value)
        if tok.kind is TokenKind.FLOAT:
            return FloatLit(tok.value)
        if tok.kind is TokenKind.STRING:
            return StrLit(tok.value)
        if tok.kind is TokenKind.IDENT:
            if tok.lexeme in RESERVED_WORDS:
                _fail(
                    "UNEXPECTED_TOKEN",
                    f"reserved word {tok.lexeme!r} cannot be used in an expression",
                    tok.line,
                    tok.col,
                )
            return Var(tok.lexeme)
        if tok.is_op("("):
            inner = self._expr(cur)
            cur.expect_op(")")
            return inner
        _fail("UNEXPECTED_TOKEN", f"unexpected {tok.lexeme!r} in expression", tok.line, tok.col)


def parse(source: str) -> Program:
    """Parse source text into a Program; raises SourceError on any defect."""
    return _Parser(_logical_lines(tokenize(source))).program()


def parse_expression(text: str) -> Expr:
    """Parse a single-line expression (handy for tests and tooling)."""
    lines = _logical_lines(tokenize(text))
    if len(lines) != 1:
        _fail("UNEXPECTED_TOKEN", "expected exactly one expression line", 1, 1)
    cur = _Cursor(lines[0])
    expr = _Parser(lines)._expr(cur)
    cur.expect_end()
    return expr
