"""Recursive-descent parser producing a statement-level AST."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..diagnostics import Diagnostic, QasmError, error
from ..expr import BinOp, Neg, Num, ParamExpr, Pi
from .lexer import Token, tokenize

QELIB = "qelib1.inc"


@dataclass(frozen=True)
class Arg:
    """``name`` or ``name[index]``; ``index`` is None for a whole register."""

    name: str
    index: int | None
    line: int
    column: int


@dataclass(frozen=True)
class RegDecl:
    kind: str  # "qreg" | "creg"
    name: str
    size: int
    line: int
    column: int


@dataclass(frozen=True)
class GateApp:
    name: str
    params: tuple[ParamExpr, ...]
    args: tuple[Arg, ...]
    line: int
    column: int


@dataclass(frozen=True)
class MeasureStmt:
    qubit: Arg
    bit: Arg
    line: int
    column: int


@dataclass(frozen=True)
class ResetStmt:
    qubit: Arg
    line: int
    column: int


@dataclass(frozen=True)
class BarrierStmt:
    args: tuple[Arg, ...]
    line: int
    column: int


Statement = Union[GateApp, MeasureStmt, ResetStmt, BarrierStmt]


@dataclass(frozen=True)
class Program:
    version: str
    includes: tuple[str, ...]
    body: tuple[Union[RegDecl, Statement], ...]

    @property
    def declarations(self) -> list[RegDecl]:
        return [node for node in self.body if isinstance(node, RegDecl)]

    @property
    def statements(self) -> list[Statement]:
        return [node for node in self.body if not isinstance(node, RegDecl)]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, code: str, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise QasmError(error(code, message, line=tok.line, column=tok.column))

    def unexpected(self, wanted: str):
        found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        self.fail("E-SYNTAX", f"expected {wanted}, found {found}")

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("symbol", "keyword"):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            self.unexpected(repr(text))
        return tok

    def expect_kind(self, kind: str, wanted: str) -> Token:
        if self.tok.kind != kind:
            self.unexpected(wanted)
        return self.advance()

    # -- program structure ------------------------------------------------

    def header(self) -> str:
        if self.tok.text != "OPENQASM":
            self.fail("E-VERSION", "program must start with 'OPENQASM 2.0;'")
        self.advance()
        version = self.tok
        if version.kind not in ("real", "integer") or version.text not in ("2.0",):
            self.fail("E-VERSION", f"unsupported OpenQASM version {version.text!r}; only 2.0 is supported")
        self.advance()
        self.expect(";")
        return version.text

    def include(self) -> str:
        start = self.expect("include")
        path = self.expect_kind("string", "a quoted include path")
        self.expect(";")
        name = path.text[1:-1]
        if name != QELIB:
            self.fail("E-SYNTAX", f"only {QELIB!r} may be included, not {name!r}", start)
        return name

    def statement(self):
        tok = self.tok
        if tok.kind == "keyword":
            if tok.text in ("qreg", "creg"):
                return self.regdecl()
            if tok.text == "measure":
                return self.measure()
            if tok.text == "reset":
                return self.reset()
            if tok.text == "barrier":
                return self.barrier()
            if tok.text == "if":
                self.fail("E-CLASSICAL-IF", "classically controlled 'if' statements are not supported")
            if tok.text in ("gate", "opaque"):
                self.fail("E-UNSUPPORTED-GATE", f"{tok.text} declarations are not supported")
            if tok.text == "include":
                self.fail("E-SYNTAX", "include must directly follow the version header")
            if tok.text == "OPENQASM":
                self.fail("E-SYNTAX", "duplicate version header")
        if tok.kind == "identifier":
            return self.gateapp()
        self.unexpected("a statement")

    def regdecl(self) -> RegDecl:
        kw = self.advance()
        name = self.expect_kind("identifier", "a register name")
        self.expect("[")
        size = self.expect_kind("integer", "a register size")
        self.expect("]")
        self.expect(";")
        return RegDecl(kw.text, name.text, int(size.text), kw.line, kw.column)

    def arg(self) -> Arg:
        name = self.expect_kind("identifier", "a register name")
        index = None
        if self.accept("["):
            index = int(self.expect_kind("integer", "an index").text)
            self.expect("]")
        return Arg(name.text, index, name.line, name.column)

    def arglist(self) -> tuple[Arg, ...]:
        args = [self.arg()]
        while self.accept(","):
            args.append(self.arg())
        return tuple(args)

    def gateapp(self) -> GateApp:
        name = self.advance()
        params: list[ParamExpr] = []
        if self.accept("("):
            if not self.accept(")"):
                params.append(self.expr())
                while self.accept(","):
                    params.append(self.expr())
                self.expect(")")
        args = self.arglist()
        self.expect(";")
        return GateApp(name.text, tuple(params), args, name.line, name.column)

    def measure(self) -> MeasureStmt:
        kw = self.advance()
        qubit = self.arg()
        self.expect("->")
        bit = self.arg()
        self.expect(";")
        return MeasureStmt(qubit, bit, kw.line, kw.column)

    def reset(self) -> ResetStmt:
        kw = self.advance()
        qubit = self.arg()
        self.expect(";")
        return ResetStmt(qubit, kw.line, kw.column)

    def barrier(self) -> BarrierStmt:
        kw = self.advance()
        args = self.arglist()
        self.expect(";")
        return BarrierStmt(args, kw.line, kw.column)

    # -- parameter expressions ---------------------------------------------
    # expr  := term (("+" | "-") term)*
    # term  := unary (("*" | "/") unary)*
    # unary := "-" unary | power
    # power := atom ("^" unary)?

    def expr(self) -> ParamExpr:
        node = self.term()
        while self.tok.kind == "symbol" and self.tok.text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ParamExpr:
        node = self.unary()
        while self.tok.kind == "symbol" and self.tok.text in ("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> ParamExpr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> ParamExpr:
        base = self.atom()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> ParamExpr:
        tok = self.tok
        if tok.kind in ("integer", "real"):
            self.advance()
            return Num(tok.text)
        if tok.kind == "keyword" and tok.text == "pi":
            self.advance()
            return Pi()
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "identifier":
            self.fail("E-SYNTAX", f"unsupported name {tok.text!r} in parameter expression")
        self.unexpected("a parameter expression")

    def recover(self) -> None:
        """Skip past the end of the broken statement (``;`` or a ``{...}`` block)."""
        depth = 0
        while self.tok.kind != "eof":
            tok = self.advance()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1
                if depth <= 0:
                    return
            elif tok.text == ";" and depth == 0:
                return


def parse(text: str) -> Program:
    """Parse OpenQASM 2.0 source.

    Raises :class:`QasmError` carrying every diagnostic found; the parser
    resynchronizes at statement boundaries so one bad line does not hide
    the next.
    """
    parser = _Parser(tokenize(text))
    diagnostics: list[Diagnostic] = []
    version = parser.header()
    includes = []
    if parser.tok.text == "include":
        try:
            includes.append(parser.include())
        except QasmError as exc:
            diagnostics.extend(exc.diagnostics)
            parser.recover()
    body = []
    while parser.tok.kind != "eof":
        try:
            body.append(parser.statement())
        except QasmError as exc:
            diagnostics.extend(exc.diagnostics)
            parser.recover()
    if diagnostics:
        raise QasmError(diagnostics)
    return Program(version, tuple(includes), tuple(body))


def parse_expression(text: str) -> ParamExpr:
    """Parse a standalone parameter expression such as ``-pi/4``."""
    parser = _Parser(tokenize(text))
    node = parser.expr()
    if parser.tok.kind != "eof":
        parser.unexpected("end of expression")
    return node
