"""Semantic lowering of a parsed program into a :class:`~qcuml.circuit.Circuit`."""

from __future__ import annotations

from ..circuit import (
    REGISTER_NAME,
    Barrier,
    BitRef,
    Circuit,
    ControlledGate,
    Gate,
    Measure,
    QubitRef,
    RegisterDecl,
    Reset,
    check_op,
)
from ..diagnostics import CircuitError, Diagnostic, QasmError, error
from ..gates import CONTROLLED_GATES, PLAIN_GATES
from .parser import QELIB, Arg, BarrierStmt, GateApp, MeasureStmt, Program, RegDecl, ResetStmt


class _Lowering:
    def __init__(self, program: Program):
        self.program = program
        self.qregs: dict[str, int] = {}
        self.cregs: dict[str, int] = {}
        self.qreg_decls: list[RegisterDecl] = []
        self.creg_decls: list[RegisterDecl] = []
        self.ops = []
        self.diagnostics: list[Diagnostic] = []

    def report(self, code: str, message: str, node) -> None:
        self.diagnostics.append(error(code, message, line=node.line, column=node.column))

    def declare(self, decl: RegDecl) -> None:
        if not REGISTER_NAME.fullmatch(decl.name):
            self.report("E-SYNTAX", f"invalid register name {decl.name!r}", decl)
        elif decl.name in self.qregs or decl.name in self.cregs:
            self.report("E-DUPLICATE-REGISTER", f"register {decl.name!r} declared twice", decl)
        elif decl.size < 1:
            self.report("E-INDEX-RANGE", f"register {decl.name!r} must have size >= 1", decl)
        elif decl.kind == "qreg":
            self.qregs[decl.name] = decl.size
            self.qreg_decls.append(RegisterDecl(decl.name, decl.size))
        else:
            self.cregs[decl.name] = decl.size
            self.creg_decls.append(RegisterDecl(decl.name, decl.size))

    def expand(self, arg: Arg, registers: dict[str, int], kind: str) -> list[tuple[str, int]]:
        """Resolve ``arg`` to ``(register, index)`` pairs; a bare register expands to all of it."""
        if arg.name not in registers:
            other = self.cregs if kind == "qreg" else self.qregs
            hint = f" ({arg.name!r} is a {'creg' if kind == 'qreg' else 'qreg'})" if arg.name in other else ""
            raise QasmError(error("E-UNKNOWN-REGISTER", f"no {kind} named {arg.name!r}{hint}",
                                  line=arg.line, column=arg.column))
        size = registers[arg.name]
        if arg.index is None:
            return [(arg.name, i) for i in range(size)]
        if arg.index >= size:
            raise QasmError(error("E-INDEX-RANGE", f"{arg.name}[{arg.index}] out of range for size {size}",
                                  line=arg.line, column=arg.column))
        return [(arg.name, arg.index)]

    def broadcast(self, stmt, operands: list[list[tuple[str, int]]], args) -> list[tuple]:
        sizes = {len(ops) for ops, arg in zip(operands, args) if arg.index is None}
        if len(sizes) > 1:
            raise QasmError(error("E-BROADCAST-MISMATCH", "register operands have different sizes",
                                  line=stmt.line, column=stmt.column))
        width = sizes.pop() if sizes else 1
        return [tuple(ops[k] if arg.index is None else ops[0] for ops, arg in zip(operands, args))
                for k in range(width)]

    def gate(self, stmt: GateApp) -> list:
        name = stmt.name
        if QELIB not in self.program.includes:
            raise QasmError(error("E-UNSUPPORTED-GATE", f"gate {name!r} used without include \"{QELIB}\"",
                                  line=stmt.line, column=stmt.column))
        if name in PLAIN_GATES:
            base, n_controls, arity = name, 0, PLAIN_GATES[name]
        elif name in CONTROLLED_GATES:
            base, n_controls = CONTROLLED_GATES[name]
            arity = PLAIN_GATES[base]
        else:
            raise QasmError(error("E-UNSUPPORTED-GATE", f"unsupported gate {name!r}",
                                  line=stmt.line, column=stmt.column))
        if len(stmt.params) != arity:
            raise QasmError(error("E-PARAM-ARITY", f"{name} takes {arity} parameter(s), got {len(stmt.params)}",
                                  line=stmt.line, column=stmt.column))
        if len(stmt.args) != n_controls + 1:
            raise QasmError(error("E-OPERAND-ARITY",
                                  f"{name} takes {n_controls + 1} qubit operand(s), got {len(stmt.args)}",
                                  line=stmt.line, column=stmt.column))
        operands = [self.expand(arg, self.qregs, "qreg") for arg in stmt.args]
        ops = []
        for combo in self.broadcast(stmt, operands, stmt.args):
            refs = [QubitRef(*pair) for pair in combo]
            if n_controls == 0:
                ops.append(Gate(name, refs[0], stmt.params))
            else:
                ops.append(ControlledGate(base, tuple(refs[:-1]), refs[-1], stmt.params))
        return ops

    def measure(self, stmt: MeasureStmt) -> list:
        qubits = self.expand(stmt.qubit, self.qregs, "qreg")
        bits = self.expand(stmt.bit, self.cregs, "creg")
        if (stmt.qubit.index is None) != (stmt.bit.index is None) or len(qubits) != len(bits):
            raise QasmError(error("E-BROADCAST-MISMATCH", "measure operands must both be single bits "
                                  "or registers of equal size", line=stmt.line, column=stmt.column))
        return [Measure(QubitRef(*q), BitRef(*b)) for q, b in zip(qubits, bits)]

    def reset(self, stmt: ResetStmt) -> list:
        return [Reset(QubitRef(*q)) for q in self.expand(stmt.qubit, self.qregs, "qreg")]

    def barrier(self, stmt: BarrierStmt) -> list:
        refs = []
        for arg in stmt.args:
            refs.extend(QubitRef(*q) for q in self.expand(arg, self.qregs, "qreg"))
        return [Barrier(tuple(refs))]

    def run(self, name: str) -> Circuit:
        handlers = {GateApp: self.gate, MeasureStmt: self.measure, ResetStmt: self.reset, BarrierStmt: self.barrier}
        for node in self.program.body:
            if isinstance(node, RegDecl):
                self.declare(node)
                continue
            try:
                ops = handlers[type(node)](node)
                for op in ops:
                    check_op(op, self.qregs, self.cregs)
            except QasmError as exc:
                self.diagnostics.extend(exc.diagnostics)
            except CircuitError as exc:
                self.diagnostics.extend(
                    error(d.rule, d.message, line=node.line, column=node.column) for d in exc.diagnostics
                )
            else:
                self.ops.extend(ops)
        if self.diagnostics:
            raise QasmError(self.diagnostics)
        return Circuit(name, tuple(self.qreg_decls), tuple(self.creg_decls), tuple(self.ops))


def lower(program: Program, name: str = "circuit") -> Circuit:
    """Resolve registers and gates; raise :class:`QasmError` with every problem found."""
    return _Lowering(program).run(name)
