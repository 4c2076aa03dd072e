"""Tokenizer for the OpenQASM 2.0 subset."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..diagnostics import QasmError, error

KEYWORDS = frozenset(
    {"OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure", "reset", "barrier", "if", "pi"}
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<real>(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<integer>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<symbol>->|==|[;,\[\](){}+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | integer | real | symbol | string | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens, dropping whitespace and ``//`` comments.

    The list always ends with an ``eof`` token. Raises :class:`QasmError`
    (``E-SYNTAX``) on the first character that starts no token.
    """
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            if text[pos] == '"':
                msg = "unterminated string literal"
            else:
                msg = f"unexpected character {text[pos]!r}"
            raise QasmError(error("E-SYNTAX", msg, line=line, column=column))
        kind = match.lastgroup
        value = match.group()
        if kind == "name":
            kind = "keyword" if value in KEYWORDS else "identifier"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, column))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens
