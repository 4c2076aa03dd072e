"""Canonical OpenQASM 2.0 text from a circuit."""

from __future__ import annotations

from ..circuit import Barrier, Circuit, ControlledGate, Gate, Measure, Reset, canonicalize
from ..expr import to_text


def _params(params) -> str:
    return f"({', '.join(to_text(p) for p in params)})" if params else ""


def format_op(op) -> str:
    if isinstance(op, Gate):
        return f"{op.mnemonic}{_params(op.params)} {op.target};"
    if isinstance(op, ControlledGate):
        return f"{op.mnemonic}{_params(op.params)} {', '.join(map(str, op.qubits))};"
    if isinstance(op, Measure):
        return f"measure {op.qubit} -> {op.bit};"
    if isinstance(op, Reset):
        return f"reset {op.qubit};"
    if isinstance(op, Barrier):
        return f"barrier {', '.join(map(str, op.qubits))};"
    raise TypeError(f"not a quantum op: {op!r}")


def emit(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    lines += [f"qreg {r.name}[{r.size}];" for r in circuit.qregs]
    lines += [f"creg {r.name}[{r.size}];" for r in circuit.cregs]
    lines += [format_op(op) for op in canonicalize(circuit).ops]
    return "\n".join(lines) + "\n"
