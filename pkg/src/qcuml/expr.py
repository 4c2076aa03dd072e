"""Gate parameter expressions.

Parameters are kept as expression trees rather than floats so that ``pi/2``
survives a round trip through QASM and XMI unchanged. Two expressions are
equal when their trees are equal; ``0.50`` and ``.5`` normalize to the same
literal, but ``pi/2`` and ``pi*0.5`` stay different.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

_REAL = re.compile(r"(?P<int>\d*)(?:\.(?P<frac>\d*))?(?:[eE](?P<exp>[+-]?\d+))?")


def normalize_literal(text: str) -> str:
    """Canonical spelling of a numeric literal: ``.5`` -> ``0.5``, ``2.50E+03`` -> ``2.5e3``."""
    match = _REAL.fullmatch(text)
    if match is None or not (match.group("int") or match.group("frac")):
        raise ValueError(f"not a numeric literal: {text!r}")
    whole = match.group("int").lstrip("0") or "0"
    frac = match.group("frac")
    exp = match.group("exp")
    if frac is None and exp is None:
        return whole
    frac = (frac or "").rstrip("0") or "0"
    out = f"{whole}.{frac}"
    if exp is not None:
        out += f"e{int(exp)}"
    return out


@dataclass(frozen=True)
class Num:
    text: str

    def __post_init__(self):
        object.__setattr__(self, "text", normalize_literal(self.text))


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "ParamExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ParamExpr"
    right: "ParamExpr"

    def __post_init__(self):
        if self.op not in _PRECEDENCE:
            raise ValueError(f"unknown operator {self.op!r}")


ParamExpr = Union[Num, Pi, Neg, BinOp]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_UNARY = 3


def _prec(expr: ParamExpr) -> int:
    if isinstance(expr, BinOp):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Neg):
        return _UNARY
    return 5


def to_text(expr: ParamExpr) -> str:
    """Render with the fewest parentheses that re-parse to the same tree."""
    if isinstance(expr, Num):
        return expr.text
    if isinstance(expr, Pi):
        return "pi"
    if isinstance(expr, Neg):
        inner = to_text(expr.operand)
        # ``-a^b`` already parses as ``-(a^b)``; anything looser needs parens
        if _prec(expr.operand) < _UNARY:
            inner = f"({inner})"
        return f"-{inner}"
    prec = _PRECEDENCE[expr.op]
    left, right = to_text(expr.left), to_text(expr.right)
    if expr.op == "^":
        # right-associative; the left operand must be atomic
        if _prec(expr.left) <= prec:
            left = f"({left})"
        if _prec(expr.right) < _UNARY:
            right = f"({right})"
    else:
        if _prec(expr.left) < prec:
            left = f"({left})"
        if isinstance(expr.right, BinOp) and _prec(expr.right) <= prec:
            right = f"({right})"
    return f"{left}{expr.op}{right}"


def evaluate(expr: ParamExpr) -> float:
    if isinstance(expr, Num):
        return float(expr.text)
    if isinstance(expr, Pi):
        return math.pi
    if isinstance(expr, Neg):
        return -evaluate(expr.operand)
    a, b = evaluate(expr.left), evaluate(expr.right)
    if expr.op == "+":
        return a + b
    if expr.op == "-":
        return a - b
    if expr.op == "*":
        return a * b
    if expr.op == "/":
        return a / b
    return a**b
