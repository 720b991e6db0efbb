"""MiniPencil: a hybrid block/text programming environment for a small
indentation-sensitive turtle language.

Dropping a palette block into the editor becomes source code instantly, and
editing the text rederives the block model; the interpreter and grader make
classroom exercises machine-checkable.
"""

from .adapter import (
    BUILTIN_COMMANDS,
    PaletteItem,
    ast_to_blocks,
    block_type_of,
    blocks_to_text,
    instantiate,
    palette,
    palette_item,
    palette_json,
)
from .blocks import (
    BlockDocument,
    LayoutRow,
    MarkupError,
    MarkupKind,
    MarkupToken,
    from_markup,
    layout,
    to_markup,
)
from .diagnostics import Diagnostic, SourceError
from .engine import (
    EditResult,
    EngineError,
    Session,
    current_state,
    drop_block,
    edit_text,
    new_session,
    snapshot,
)
from .interpreter import (
    DEFAULT_STEP_LIMIT,
    ExecError,
    ExecutionTrace,
    PEN_COLORS,
    RuntimeDiagnostic,
    Segment,
    TurtleState,
    eval_expr,
    format_value,
    run,
)
from .lang import format_expr, format_program, parse, parse_expression, tokenize

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_COMMANDS",
    "BlockDocument",
    "DEFAULT_STEP_LIMIT",
    "Diagnostic",
    "EditResult",
    "EngineError",
    "ExecError",
    "ExecutionTrace",
    "LayoutRow",
    "MarkupError",
    "MarkupKind",
    "MarkupToken",
    "PEN_COLORS",
    "PaletteItem",
    "RuntimeDiagnostic",
    "Segment",
    "Session",
    "SourceError",
    "TurtleState",
    "ast_to_blocks",
    "block_type_of",
    "blocks_to_text",
    "current_state",
    "drop_block",
    "edit_text",
    "eval_expr",
    "format_expr",
    "format_program",
    "format_value",
    "from_markup",
    "instantiate",
    "layout",
    "new_session",
    "palette",
    "palette_item",
    "palette_json",
    "parse",
    "parse_expression",
    "run",
    "snapshot",
    "to_markup",
    "tokenize",
]
