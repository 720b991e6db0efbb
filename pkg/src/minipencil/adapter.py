"""Language adapter: maps programs to block documents and back, and owns the
palette of droppable command templates.

The block emission mirrors the canonical formatter line for line, so the
document's text projection always equals format_program of the same tree.
"""

from dataclasses import dataclass

from .blocks import (
    BlockDocument,
    block_end,
    block_start,
    indent_marker,
    line_break,
    project_text,
    socket_end,
    socket_start,
    text,
)
from .lang import (
    Assign,
    Call,
    ForIn,
    FuncDef,
    If,
    Program,
    Stmt,
    format_expr,
    parse,
)
from .lang.printer import INDENT, format_range_endpoint

# commands the turtle runtime understands; calls to anything else are
# user-defined functions
BUILTIN_COMMANDS = ("fd", "bk", "rt", "lt", "speed", "pen", "write")


@dataclass(frozen=True)
class PaletteItem:
    id: str
    category: str  # movement | output | control | variables | functions
    label: str
    template: str  # canonical text with default socket values
    socket_names: tuple[str, ...]


_PALETTE: tuple[PaletteItem, ...] = (
    PaletteItem("fd", "movement", "Forward", "fd 100\n", ("args",)),
    PaletteItem("bk", "movement", "Back", "bk 100\n", ("args",)),
    PaletteItem("rt", "movement", "Turn right", "rt 45\n", ("args",)),
    PaletteItem("lt", "movement", "Turn left", "lt 45\n", ("args",)),
    PaletteItem("speed", "movement", "Speed", "speed 2\n", ("args",)),
    PaletteItem("pen", "movement", "Pen color", "pen red\n", ("args",)),
    PaletteItem("write", "output", "Write", "write 'hello'\n", ("args",)),
    PaletteItem(
        "if-else",
        "control",
        "If / else",
        "if x > 0\n  fd 100\nelse\n  rt 45\n",
        ("cond",),
    ),
    PaletteItem("for-range", "control", "Repeat", "for [1..5]\n  fd 100\n", ("first", "last")),
    PaletteItem(
        "for-in",
        "control",
        "For each",
        "for x in [1..5]\n  fd 100\n",
        ("var", "first", "last"),
    ),
    PaletteItem("assignment", "variables", "Set variable", "x = 7\n", ("name", "value")),
    PaletteItem(
        "func-def",
        "functions",
        "Define function",
        "square = (size) ->\n  fd size\n",
        ("name", "params"),
    ),
    PaletteItem("func-call", "functions", "Call function", "square 50\n", ("args",)),
)


def palette() -> list[PaletteItem]:
    return list(_PALETTE)


def palette_item(item_id: str) -> PaletteItem | None:
    for item in _PALETTE:
        if item.id == item_id:
            return item
    return None


def palette_json() -> list[dict]:
    """The palette as plain data, the document served to UIs."""
    return [
        {
            "id": item.id,
            "category": item.category,
            "label": item.label,
            "template": item.template,
            "sockets": list(item.socket_names),
        }
        for item in _PALETTE
    ]


def instantiate(item: PaletteItem, indent_level: int) -> str:
    """Re-indent the item's template for insertion at the given nesting level."""
    if indent_level < 0:
        raise ValueError("indent_level must be >= 0")
    pad = INDENT * indent_level
    lines = item.template.splitlines()
    return "".join(f"{pad}{line}\n" for line in lines)


# ---------------------------------------------------------------------------
# program -> blocks


def block_type_of(stmt: Stmt) -> str:
    match stmt:
        case Assign():
            return "assignment"
        case FuncDef():
            return "func-def"
        case If():
            return "if-else"
        case ForIn(var=var):
            return "for-in" if var is not None else "for-range"
        case Call(command=command):
            return command if command in BUILTIN_COMMANDS else "func-call"
    raise TypeError(f"not a statement: {stmt!r}")


class _Emitter:
    def __init__(self):
        self.tokens = []
        self.next_id = 1

    def block(self, block_type: str):
        token = block_start(block_type, self.next_id)
        self.next_id += 1
        self.tokens.append(token)

    def socket(self, name: str, content: str):
        self.tokens.append(socket_start(name))
        if content:
            self.tokens.append(text(content))
        self.tokens.append(socket_end())

    def text(self, lexeme: str):
        if lexeme:
            self.tokens.append(text(lexeme))

    def newline(self):
        self.tokens.append(line_break())

    def indent(self, depth: int):
        if depth > 0:
            self.tokens.append(indent_marker(INDENT * depth))

    def end(self):
        self.tokens.append(block_end())

    def stmt(self, stmt: Stmt, depth: int):
        self.indent(depth)
        self.block(block_type_of(stmt))
        match stmt:
            case Assign(name=name, value=value):
                self.socket("name", name)
                self.text(" = ")
                self.socket("value", format_expr(value))
                self.end()
                self.newline()
            case Call(command=command, args=args):
                if args:
                    self.text(f"{command} ")
                    self.socket("args", ", ".join(format_expr(a) for a in args))
                else:
                    self.text(command)
                self.end()
                self.newline()
            case If(cond=cond, then_body=then_body, elifs=elifs, else_body=else_body):
                self.text("if ")
                self.socket("cond", format_expr(cond))
                self.newline()
                self.body(then_body, depth + 1)
                for clause in elifs:
                    self.indent(depth)
                    self.text("else if ")
                    self.socket("cond", format_expr(clause.cond))
                    self.newline()
                    self.body(clause.body, depth + 1)
                if else_body is not None:
                    self.indent(depth)
                    self.text("else")
                    self.newline()
                    self.body(else_body, depth + 1)
                self.end()
            case ForIn(var=var, iterable=rng, body=body):
                lo = format_range_endpoint(rng.lo)
                hi = format_range_endpoint(rng.hi)
                if var is None:
                    self.text("for [")
                else:
                    self.text("for ")
                    self.socket("var", var)
                    self.text(" in [")
                self.socket("first", lo)
                self.text("..")
                self.socket("last", hi)
                self.text("]")
                self.newline()
                self.body(body, depth + 1)
                self.end()
            case FuncDef(name=name, params=params, body=body):
                self.socket("name", name)
                self.text(" = (")
                self.socket("params", ", ".join(params))
                self.text(") ->")
                self.newline()
                self.body(body, depth + 1)
                self.end()
            case _:
                raise TypeError(f"not a statement: {stmt!r}")

    def body(self, stmts: list[Stmt], depth: int):
        for stmt in stmts:
            self.stmt(stmt, depth)


def ast_to_blocks(program: Program) -> BlockDocument:
    emitter = _Emitter()
    emitter.body(program.statements, 0)
    return BlockDocument(emitter.tokens)


def blocks_to_text(doc: BlockDocument) -> str:
    """Line-by-line projection of a block document back to source text."""
    return project_text(doc)


def _check_palette():
    for item in _PALETTE:
        parse(item.template)


_check_palette()
