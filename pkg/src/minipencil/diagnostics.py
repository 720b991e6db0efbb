"""Diagnostic records shared by every stage that can reject input."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    code: str
    message: str
    line: int  # 1-based
    col: int  # 1-based

    def render(self) -> str:
        return f"{self.line}:{self.col}: {self.severity}: {self.code}: {self.message}"


def error(code: str, message: str, line: int, col: int) -> Diagnostic:
    return Diagnostic("error", code, message, line, col)


class SourceError(Exception):
    """Source text was rejected; carries the diagnostics explaining why."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.render() for d in self.diagnostics))
