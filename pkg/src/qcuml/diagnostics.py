"""Diagnostics shared by the parser, the lowering pass, the validator and the readers."""

from __future__ import annotations

import re
from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One finding: a rule id (``R1``..``R11``) or an error code (``E-...``)."""

    rule: str
    message: str
    severity: str = ERROR
    elements: tuple[str, ...] = ()
    line: int | None = None
    column: int | None = None

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    @property
    def location(self) -> str | None:
        if self.line is None:
            return None
        return f"{self.line}:{self.column}"

    def as_dict(self) -> dict:
        elements = list(self.elements)
        if not elements and self.location is not None:
            elements = [self.location]
        return {
            "rule": self.rule,
            "severity": self.severity,
            "elements": elements,
            "message": self.message,
        }

    def __str__(self) -> str:
        where = self.location or ",".join(self.elements)
        prefix = f"{where}: " if where else ""
        return f"{prefix}{self.severity} {self.rule}: {self.message}"


def _natural(text: str) -> tuple:
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", text))


def sort_key(diag: Diagnostic) -> tuple:
    """Order by rule (numerically for R-rules), then element ids, then location."""
    match = re.fullmatch(r"R(\d+)", diag.rule)
    rule_key = (0, int(match.group(1)), "") if match else (1, 0, diag.rule)
    return (
        rule_key,
        tuple(_natural(e) for e in diag.elements),
        diag.line or 0,
        diag.column or 0,
        diag.message,
    )


class QcumlError(Exception):
    """Raised when an operation fails; carries the diagnostics that explain why."""

    def __init__(self, diagnostics: list[Diagnostic] | Diagnostic):
        if isinstance(diagnostics, Diagnostic):
            diagnostics = [diagnostics]
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @property
    def codes(self) -> list[str]:
        return [d.rule for d in self.diagnostics]


class CircuitError(QcumlError):
    pass


class QasmError(QcumlError):
    pass


class ModelError(QcumlError):
    pass


class TransformError(QcumlError):
    pass


class XmiError(QcumlError):
    pass


class RenderError(QcumlError):
    pass


def error(rule: str, message: str, **kwargs) -> Diagnostic:
    return Diagnostic(rule, message, ERROR, **kwargs)
