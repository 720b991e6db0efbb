"""Lexer: measures indentation, strips // comments, fuses multi-char operators.

Fails fast: the first lexical error raises SourceError with one diagnostic.
"""

from ..diagnostics import SourceError, error
from .tokens import Token, TokenKind

_TWO_CHAR_OPS = ("->", "..", ">=", "<=", "==", "!=")
_ONE_CHAR_OPS = "=+-*/%><(),"

_ESCAPES = {"n": "\n", "t": "\t", "'": "'", "\\": "\\"}


def tokenize(source: str) -> list[Token]:
    """Split source into tokens.

    Indent tokens are emitted only for lines that carry content and start
    with at least one space; their value is the space count. A newline token
    closes every physical line except an unterminated final one. The list
    always ends with eof.
    """
    source = source.replace("\r\n", "\n")
    lines = source.split("\n")
    tokens: list[Token] = []
    for idx, text in enumerate(lines):
        line_no = idx + 1
        i = 0
        n = len(text)
        while i < n and text[i] in " \t":
            if text[i] == "\t":
                raise SourceError(
                    [error("INDENT_TAB", "tab character in leading whitespace", line_no, i + 1)]
                )
            i += 1
        indent = i
        line_tokens: list[Token] = []
        while i < n:
            ch = text[i]
            if ch in " \t":
                i += 1
                continue
            if text.startswith("//", i):
                break
            if ch == "'":
                tok, i = _scan_string(text, i, line_no)
                line_tokens.append(tok)
                continue
            if ch.isdigit():
                tok, i = _scan_number(text, i, line_no)
                line_tokens.append(tok)
                continue
            if ch.isalpha() or ch == "_":
                j = i + 1
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                line_tokens.append(Token(TokenKind.IDENT, text[i:j], line_no, i + 1))
                i = j
                continue
            if ch == "[":
                line_tokens.append(Token(TokenKind.RANGE_OPEN, "[", line_no, i + 1))
                i += 1
                continue
            if ch == "]":
                line_tokens.append(Token(TokenKind.RANGE_CLOSE, "]", line_no, i + 1))
                i += 1
                continue
            if text[i : i + 2] in _TWO_CHAR_OPS:
                line_tokens.append(Token(TokenKind.OP, text[i : i + 2], line_no, i + 1))
                i += 2
                continue
            if ch in _ONE_CHAR_OPS:
                line_tokens.append(Token(TokenKind.OP, ch, line_no, i + 1))
                i += 1
                continue
            raise SourceError(
                [error("UNEXPECTED_TOKEN", f"unexpected character {ch!r}", line_no, i + 1)]
            )
        if line_tokens:
            if indent > 0:
                tokens.append(Token(TokenKind.INDENT, " " * indent, line_no, 1, indent))
            tokens.extend(line_tokens)
        if idx < len(lines) - 1:
            tokens.append(Token(TokenKind.NEWLINE, "\n", line_no, len(text) + 1))
    tokens.append(Token(TokenKind.EOF, "", len(lines), len(lines[-1]) + 1))
    return tokens


def _scan_string(text: str, start: int, line_no: int) -> tuple[Token, int]:
    # start points at the opening quote
    j = start + 1
    n = len(text)
    parts: list[str] = []
    while j < n:
        c = text[j]
        if c == "\\":
            if j + 1 >= n:
                break
            parts.append(_ESCAPES.get(text[j + 1], text[j + 1]))
            j += 2
        elif c == "'":
            return (
                Token(TokenKind.STRING, text[start : j + 1], line_no, start + 1, "".join(parts)),
                j + 1,
            )
        else:
            parts.append(c)
            j += 1
    raise SourceError(
        [error("UNTERMINATED_STRING", "string literal is not closed", line_no, start + 1)]
    )


def _scan_number(text: str, start: int, line_no: int) -> tuple[Token, int]:
    n = len(text)
    j = start
    while j < n and text[j].isdigit():
        j += 1
    is_float = False
    # a dot starts a fraction only when followed by a digit, so `1..5` stays
    # integer-dot-dot-integer
    if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
        is_float = True
        j += 1
        while j < n and text[j].isdigit():
            j += 1
    if j < n and text[j] in "eE":
        k = j + 1
        if k < n and text[k] in "+-":
            k += 1
        if k < n and text[k].isdigit():
            is_float = True
            j = k
            while j < n and text[j].isdigit():
                j += 1
    lexeme = text[start:j]
    if is_float:
        return Token(TokenKind.FLOAT, lexeme, line_no, start + 1, float(lexeme)), j
    return Token(TokenKind.INT, lexeme, line_no, start + 1, int(lexeme)), j
