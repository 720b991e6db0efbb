"""Hybrid editing sessions: text is the single source of truth and the block
model is rederived after every applied edit.

A failed reparse keeps the last good block model and marks it stale; the flag
clears only when a reparse succeeds. Each session serializes its mutations
behind a lock, so distinct sessions can be edited concurrently.
"""

import threading
import uuid
from dataclasses import dataclass, field

from .adapter import ast_to_blocks, instantiate, palette_item
from .blocks import BlockDocument
from .diagnostics import Diagnostic, SourceError
from .lang import TokenKind, parse, tokenize
from .lang.parser import INDENT_UNIT


class EngineError(Exception):
    """Rejected editing request (bad palette id, out-of-range target, ...)."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


@dataclass
class EditResult:
    text: str
    blocks: BlockDocument
    diagnostics: list[Diagnostic]
    revision: int
    stale: bool
    changed_line_range: tuple[int, int] | None


@dataclass
class Session:
    id: str
    text: str = ""
    blocks: BlockDocument = field(default_factory=BlockDocument)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    revision: int = 0
    stale: bool = False
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)


def new_session(initial_text: str = "") -> Session:
    session = Session(id=uuid.uuid4().hex[:12], text=initial_text)
    _resync(session)
    return session


def current_state(session: Session) -> tuple[str, BlockDocument, list[Diagnostic], int]:
    """Consistent snapshot: all four fields come from the same revision."""
    with session.lock:
        return session.text, session.blocks, list(session.diagnostics), session.revision


def snapshot(session: Session) -> EditResult:
    with session.lock:
        return EditResult(
            session.text,
            session.blocks,
            list(session.diagnostics),
            session.revision,
            session.stale,
            None,
        )


def drop_block(session: Session, palette_id: str, target_line: int) -> EditResult:
    """Insert a palette item's code before target_line at the indent of the
    enclosing body (a line directly after a block header goes into that
    header's body)."""
    item = palette_item(palette_id)
    if item is None:
        raise EngineError("UNKNOWN_PALETTE_ID", f"no palette item {palette_id!r}")
    with session.lock:
        lines = _content_lines(session.text)
        if not 0 <= target_line <= len(lines):
            raise EngineError(
                "LINE_OUT_OF_RANGE",
                f"target line {target_line} outside 0..{len(lines)}",
            )
        snippet = instantiate(item, _insertion_indent(lines, target_line))
        new_lines = lines[:target_line] + _content_lines(snippet) + lines[target_line:]
        return _apply(session, "".join(f"{line}\n" for line in new_lines))


def edit_text(
    session: Session,
    start_line: int,
    start_col: int,
    end_line: int,
    end_col: int,
    replacement: str,
) -> EditResult:
    """Replace the half-open range (0-based lines/cols) with new text and
    resync. On parse failure the previous blocks stay, marked stale."""
    with session.lock:
        text = session.text
        raw_lines = text.split("\n")
        start = _offset(raw_lines, start_line, start_col)
        end = _offset(raw_lines, end_line, end_col)
        if end < start:
            raise EngineError("RANGE_OUT_OF_BOUNDS", "range end precedes its start")
        return _apply(session, text[:start] + replacement + text[end:])


def _apply(session: Session, new_text: str) -> EditResult:
    old_text = session.text
    session.text = new_text
    session.revision += 1
    _resync(session)
    return EditResult(
        session.text,
        session.blocks,
        list(session.diagnostics),
        session.revision,
        session.stale,
        _changed_range(old_text, new_text),
    )


def _resync(session: Session):
    try:
        program = parse(session.text)
    except SourceError as err:
        session.diagnostics = list(err.diagnostics)
        session.stale = True
        return
    session.blocks = ast_to_blocks(program)
    session.diagnostics = []
    session.stale = False


# ---------------------------------------------------------------------------
# text geometry helpers


def _content_lines(text: str) -> list[str]:
    """Lines excluding the phantom empty line after a trailing newline."""
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def _offset(raw_lines: list[str], line: int, col: int) -> int:
    if not 0 <= line < len(raw_lines) or not 0 <= col <= len(raw_lines[line]):
        raise EngineError(
            "RANGE_OUT_OF_BOUNDS", f"position {line}:{col} outside the document"
        )
    return sum(len(text) + 1 for text in raw_lines[:line]) + col


def _changed_range(old: str, new: str) -> tuple[int, int] | None:
    if old == new:
        return None
    old_lines = old.split("\n")
    new_lines = new.split("\n")
    start = 0
    limit = min(len(old_lines), len(new_lines))
    while start < limit and old_lines[start] == new_lines[start]:
        start += 1
    end_old = len(old_lines) - 1
    end_new = len(new_lines) - 1
    while end_old >= start and end_new >= start and old_lines[end_old] == new_lines[end_new]:
        end_old -= 1
        end_new -= 1
    if end_new < start:
        # pure deletion: report the seam line
        end_new = min(start, len(new_lines) - 1)
    return start, end_new


def _indent_level(line: str) -> int:
    return (len(line) - len(line.lstrip(" "))) // INDENT_UNIT


def _header_info(line: str) -> str | None:
    """Classify a raw line: "else" for else / else-if lines, "block" for any
    other body-opening header, None for plain statements."""
    try:
        toks = [
            t
            for t in tokenize(line)
            if t.kind not in (TokenKind.NEWLINE, TokenKind.EOF, TokenKind.INDENT)
        ]
    except SourceError:
        content = line.strip()
        if content.startswith("else"):
            return "else"
        if content.startswith(("if ", "for ")) or content.endswith("->"):
            return "block"
        return None
    if not toks:
        return None
    first = toks[0]
    if first.kind is TokenKind.IDENT:
        if first.lexeme == "else":
            return "else"
        if first.lexeme in ("if", "for") and len(toks) > 1:
            return "block"
    if toks[-1].is_op("->"):
        return "block"
    return None


def _insertion_indent(lines: list[str], target: int) -> int:
    # a drop directly after a block header must land in that header's body
    k = target - 1
    while k >= 0 and not lines[k].strip():
        k -= 1
    if k >= 0 and _header_info(lines[k]) is not None:
        return _indent_level(lines[k]) + 1
    # otherwise join the body of the line being displaced; an else/else-if
    # line keeps the dropped block inside the branch that precedes it
    k = target
    while k < len(lines) and not lines[k].strip():
        k += 1
    if k < len(lines):
        if _header_info(lines[k]) == "else":
            return _indent_level(lines[k]) + 1
        return _indent_level(lines[k])
    return 0
