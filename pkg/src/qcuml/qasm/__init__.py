"""OpenQASM 2.0 front end (lexer, parser, lowering) and back end (emitter)."""

from .emit import emit, format_op
from .lexer import Token, tokenize
from .lower import lower
from .parser import Program, parse, parse_expression


def load(text: str, name: str = "circuit"):
    """Parse and lower in one step."""
    return lower(parse(text), name)


__all__ = ["Program", "Token", "emit", "format_op", "load", "lower", "parse", "parse_expression", "tokenize"]
