"""Token stream the lexer hands to the parser."""

from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    IDENT = "identifier"
    INT = "integer"
    FLOAT = "float"
    STRING = "string-literal"
    OP = "operator"
    RANGE_OPEN = "range-open"
    RANGE_CLOSE = "range-close"
    NEWLINE = "newline"
    INDENT = "indent-level"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int  # 1-based
    col: int  # 1-based
    # int/float for number tokens, unescaped text for strings,
    # leading-space count for indent tokens.
    value: object = None

    def is_op(self, lexeme: str) -> bool:
        return self.kind is TokenKind.OP and self.lexeme == lexeme


# Reserved words the expression grammar may not use as variable names.
RESERVED_WORDS = frozenset({"if", "else", "for", "in"})
