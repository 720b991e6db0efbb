"""Block-model data structures: a token stream marked up with block/socket tags.

The stream interleaves structural tags with the literal text of the program,
so concatenating every text, line-break, and indent lexeme reproduces the
canonical source exactly. Serialization is a fixed-attribute-order XML-like
format (.blx) built for byte-stable golden files.
"""

from dataclasses import dataclass, field
from enum import Enum

from .diagnostics import Diagnostic, SourceError, error


class MarkupKind(Enum):
    BLOCK_START = "block-start"
    BLOCK_END = "block-end"
    SOCKET_START = "socket-start"
    SOCKET_END = "socket-end"
    TEXT = "text"
    LINE_BREAK = "line-break"
    INDENT = "indent-marker"


@dataclass(frozen=True)
class MarkupToken:
    kind: MarkupKind
    lexeme: str = ""
    attrs: tuple[tuple[str, str], ...] = ()

    def attr(self, name: str) -> str | None:
        for key, value in self.attrs:
            if key == name:
                return value
        return None


def block_start(block_type: str, block_id: int) -> MarkupToken:
    return MarkupToken(
        MarkupKind.BLOCK_START, attrs=(("type", block_type), ("id", str(block_id)))
    )


def block_end() -> MarkupToken:
    return MarkupToken(MarkupKind.BLOCK_END)


def socket_start(name: str) -> MarkupToken:
    return MarkupToken(MarkupKind.SOCKET_START, attrs=(("name", name),))


def socket_end() -> MarkupToken:
    return MarkupToken(MarkupKind.SOCKET_END)


def text(lexeme: str) -> MarkupToken:
    return MarkupToken(MarkupKind.TEXT, lexeme)


def line_break() -> MarkupToken:
    return MarkupToken(MarkupKind.LINE_BREAK, "\n")


def indent_marker(spaces: str) -> MarkupToken:
    return MarkupToken(MarkupKind.INDENT, spaces)


@dataclass
class BlockDocument:
    tokens: list[MarkupToken] = field(default_factory=list)

    def block_ids(self) -> list[int]:
        return [
            int(tok.attr("id"))
            for tok in self.tokens
            if tok.kind is MarkupKind.BLOCK_START
        ]


@dataclass(frozen=True)
class LayoutRow:
    row_index: int
    depth: int  # blocks open when the row starts
    block_ids: tuple[int, ...]  # blocks that start on this row
    leading_blank: bool


class MarkupError(SourceError):
    """Malformed .blx markup; offset points at the offending byte."""

    def __init__(self, message: str, markup: str, offset: int):
        self.offset = offset
        line = markup.count("\n", 0, offset) + 1
        col = offset - (markup.rfind("\n", 0, offset) + 1) + 1
        diag = error("MARKUP_MALFORMED", f"{message} (byte offset {offset})", line, col)
        super().__init__([diag])


def project_text(doc: BlockDocument) -> str:
    """Concatenate the document's textual payload: the source it mirrors."""
    return "".join(
        tok.lexeme
        for tok in doc.tokens
        if tok.kind in (MarkupKind.TEXT, MarkupKind.LINE_BREAK, MarkupKind.INDENT)
    )


# ---------------------------------------------------------------------------
# serialization


def _escape(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape(value).replace('"', "&quot;")


def _unescape(value: str) -> str:
    return (
        value.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", '"')
        .replace("&amp;", "&")
    )


def to_markup(doc: BlockDocument) -> str:
    """Serialize a document to .blx text; from_markup inverts this exactly."""
    parts: list[str] = []
    for tok in doc.tokens:
        if tok.kind is MarkupKind.BLOCK_START:
            parts.append(
                f'<block type="{_escape_attr(tok.attr("type"))}" id="{tok.attr("id")}">'
            )
        elif tok.kind is MarkupKind.BLOCK_END:
            parts.append("</block>")
        elif tok.kind is MarkupKind.SOCKET_START:
            parts.append(f'<socket name="{_escape_attr(tok.attr("name"))}">')
        elif tok.kind is MarkupKind.SOCKET_END:
            parts.append("</socket>")
        else:
            parts.append(_escape(tok.lexeme))
    return "".join(parts)


_TAG_STARTS = ("<block ", "</block>", "<socket ", "</socket>")


def from_markup(markup: str) -> BlockDocument:
    """Parse .blx text back into a BlockDocument, validating nesting and ids."""
    tokens: list[MarkupToken] = []
    stack: list[str] = []  # "block" / "socket"
    seen_ids: set[int] = set()
    at_line_start = True
    i = 0
    n = len(markup)
    while i < n:
        if markup[i] == "<":
            if markup.startswith("<block ", i):
                tok, i = _parse_block_tag(markup, i)
                if stack and stack[-1] == "socket":
                    raise MarkupError("block may not appear inside a socket", markup, i)
                block_id = int(tok.attr("id"))
                if block_id in seen_ids:
                    raise MarkupError(f"duplicate block id {block_id}", markup, i)
                seen_ids.add(block_id)
                stack.append("block")
                tokens.append(tok)
            elif markup.startswith("</block>", i):
                if not stack or stack[-1] != "block":
                    raise MarkupError("mismatched </block>", markup, i)
                stack.pop()
                tokens.append(block_end())
                i += len("</block>")
            elif markup.startswith("<socket ", i):
                tok, i = _parse_socket_tag(markup, i)
                if not stack or stack[-1] != "block":
                    raise MarkupError("socket must appear directly inside a block", markup, i)
                stack.append("socket")
                tokens.append(tok)
            elif markup.startswith("</socket>", i):
                if not stack or stack[-1] != "socket":
                    raise MarkupError("mismatched </socket>", markup, i)
                stack.pop()
                tokens.append(socket_end())
                i += len("</socket>")
            else:
                raise MarkupError("unrecognized tag", markup, i)
        else:
            j = markup.find("<", i)
            if j == -1:
                j = n
            raw = _unescape(markup[i:j])
            inside_socket = bool(stack) and stack[-1] == "socket"
            at_line_start = _emit_raw(tokens, raw, at_line_start, inside_socket, markup, i)
            i = j
    if stack:
        raise MarkupError(f"unclosed <{stack[-1]}> at end of input", markup, n)
    return BlockDocument(tokens)


def _emit_raw(
    tokens: list[MarkupToken],
    raw: str,
    at_line_start: bool,
    inside_socket: bool,
    markup: str,
    offset: int,
) -> bool:
    # tags contribute no visible characters, so line-start state is tracked
    # across segments and only text/indent/line-break tokens change it
    if inside_socket:
        if "\n" in raw:
            raise MarkupError("socket content may not span lines", markup, offset)
        if raw:
            tokens.append(text(raw))
            at_line_start = False
        return at_line_start
    i = 0
    n = len(raw)
    while i < n:
        if raw[i] == "\n":
            tokens.append(line_break())
            i += 1
            at_line_start = True
            continue
        if at_line_start and raw[i] == " ":
            j = i
            while j < n and raw[j] == " ":
                j += 1
            tokens.append(indent_marker(raw[i:j]))
            i = j
            at_line_start = False
            continue
        j = raw.find("\n", i)
        if j == -1:
            j = n
        tokens.append(text(raw[i:j]))
        i = j
        at_line_start = False
    return at_line_start


def _parse_attr(markup: str, i: int, name: str) -> tuple[str, int]:
    prefix = f'{name}="'
    if not markup.startswith(prefix, i):
        raise MarkupError(f'expected {name}="..." attribute', markup, i)
    i += len(prefix)
    j = markup.find('"', i)
    if j == -1:
        raise MarkupError("unterminated attribute value", markup, i)
    return _unescape(markup[i:j]), j + 1


def _parse_block_tag(markup: str, i: int) -> tuple[MarkupToken, int]:
    start = i
    i += len("<block ")
    block_type, i = _parse_attr(markup, i, "type")
    if not markup.startswith(" ", i):
        raise MarkupError("expected space between attributes", markup, i)
    raw_id, i = _parse_attr(markup, i + 1, "id")
    if not markup.startswith(">", i):
        raise MarkupError("unterminated <block> tag", markup, start)
    try:
        block_id = int(raw_id)
    except ValueError:
        raise MarkupError(f"block id must be an integer, got {raw_id!r}", markup, start) from None
    return block_start(block_type, block_id), i + 1


def _parse_socket_tag(markup: str, i: int) -> tuple[MarkupToken, int]:
    start = i
    i += len("<socket ")
    name, i = _parse_attr(markup, i, "name")
    if not markup.startswith(">", i):
        raise MarkupError("unterminated <socket> tag", markup, start)
    return socket_start(name), i + 1


# ---------------------------------------------------------------------------
# layout


def layout(doc: BlockDocument) -> list[LayoutRow]:
    """One row per source line: nesting depth, started blocks, spacing flag.

    The spacing rule marks a top-level block whose type differs from the
    previous top-level block's type; renderers draw those rows with a visual
    gap. Depth counts the blocks already open when the row begins, so an
    `else` row reports the depth of the block it belongs to plus one.
    """
    rows: list[LayoutRow] = []
    open_blocks = 0
    row_depth = 0
    row_ids: list[int] = []
    row_started = False
    prev_top_type: str | None = None
    row_top_type: str | None = None
    leading_blank = False

    def begin_row():
        nonlocal row_depth, row_ids, row_started, leading_blank, row_top_type
        row_depth = open_blocks
        row_ids = []
        row_started = True
        leading_blank = False
        row_top_type = None

    def flush_row():
        nonlocal row_started, prev_top_type
        rows.append(LayoutRow(len(rows), row_depth, tuple(row_ids), leading_blank))
        if row_top_type is not None:
            prev_top_type = row_top_type
        row_started = False

    for tok in doc.tokens:
        if tok.kind in (MarkupKind.BLOCK_END, MarkupKind.SOCKET_END):
            if tok.kind is MarkupKind.BLOCK_END:
                open_blocks -= 1
            continue
        if not row_started and tok.kind is not MarkupKind.LINE_BREAK:
            begin_row()
        if tok.kind is MarkupKind.BLOCK_START:
            block_id = int(tok.attr("id"))
            row_ids.append(block_id)
            if open_blocks == 0:
                block_type = tok.attr("type")
                row_top_type = block_type
                if prev_top_type is not None and block_type != prev_top_type:
                    leading_blank = True
            open_blocks += 1
        elif tok.kind is MarkupKind.LINE_BREAK:
            if not row_started:
                begin_row()
            flush_row()
    if row_started:
        flush_row()
    return rows
