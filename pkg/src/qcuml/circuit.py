"""Quantum circuit IR: registers, ops, dependency DAG and canonical order."""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass, field
from typing import Union

from . import _kernels
from .diagnostics import CircuitError, error
from .expr import ParamExpr
from .gates import CONTROLLED_BY_BASE, PLAIN_GATES

REGISTER_NAME = re.compile(r"[a-z][A-Za-z0-9_]*")
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class RegisterDecl:
    name: str
    size: int


@dataclass(frozen=True, order=True)
class QubitRef:
    register: str
    index: int

    def __str__(self) -> str:
        return f"{self.register}[{self.index}]"


@dataclass(frozen=True, order=True)
class BitRef:
    register: str
    index: int

    def __str__(self) -> str:
        return f"{self.register}[{self.index}]"


@dataclass(frozen=True)
class Gate:
    """Uncontrolled gate on one qubit."""

    mnemonic: str
    target: QubitRef
    params: tuple[ParamExpr, ...] = ()

    @property
    def qubits(self) -> tuple[QubitRef, ...]:
        return (self.target,)


@dataclass(frozen=True)
class ControlledGate:
    """``base_mnemonic`` applied to ``target`` under one or two controls (``cx`` is base ``x``)."""

    base_mnemonic: str
    controls: tuple[QubitRef, ...]
    target: QubitRef
    params: tuple[ParamExpr, ...] = ()

    @property
    def qubits(self) -> tuple[QubitRef, ...]:
        return (*self.controls, self.target)

    @property
    def mnemonic(self) -> str | None:
        return CONTROLLED_BY_BASE.get((self.base_mnemonic, len(self.controls)))


@dataclass(frozen=True)
class Measure:
    qubit: QubitRef
    bit: BitRef

    @property
    def qubits(self) -> tuple[QubitRef, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class Reset:
    qubit: QubitRef

    @property
    def qubits(self) -> tuple[QubitRef, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class Barrier:
    qubits: tuple[QubitRef, ...]


QuantumOp = Union[Gate, ControlledGate, Measure, Reset, Barrier]


def check_op(op: QuantumOp, qregs: dict[str, int], cregs: dict[str, int]) -> None:
    """Raise :class:`CircuitError` if ``op`` is not well-formed against the given registers."""
    qubits = op.qubits
    if not qubits:
        raise CircuitError(error("E-DUPLICATE-OPERAND", "barrier needs at least one qubit"))
    for ref in qubits:
        if ref.register not in qregs:
            raise CircuitError(error("E-UNKNOWN-REGISTER", f"no qreg named {ref.register!r}"))
        if not 0 <= ref.index < qregs[ref.register]:
            raise CircuitError(
                error("E-INDEX-RANGE", f"{ref} out of range for qreg of size {qregs[ref.register]}")
            )
    if len(set(qubits)) != len(qubits):
        raise CircuitError(
            error("E-DUPLICATE-OPERAND", f"repeated qubit operand in {', '.join(map(str, qubits))}")
        )
    if isinstance(op, Measure):
        bit = op.bit
        if bit.register not in cregs:
            raise CircuitError(error("E-UNKNOWN-REGISTER", f"no creg named {bit.register!r}"))
        if not 0 <= bit.index < cregs[bit.register]:
            raise CircuitError(
                error("E-INDEX-RANGE", f"{bit} out of range for creg of size {cregs[bit.register]}")
            )
    elif isinstance(op, Gate):
        arity = PLAIN_GATES.get(op.mnemonic)
        if arity is None:
            raise CircuitError(error("E-UNSUPPORTED-GATE", f"unsupported gate {op.mnemonic!r}"))
        if len(op.params) != arity:
            raise CircuitError(
                error("E-PARAM-ARITY", f"{op.mnemonic} takes {arity} parameter(s), got {len(op.params)}")
            )
    elif isinstance(op, ControlledGate):
        if op.mnemonic is None:
            raise CircuitError(
                error(
                    "E-UNSUPPORTED-GATE",
                    f"no supported gate applies {op.base_mnemonic!r} with {len(op.controls)} control(s)",
                )
            )
        arity = PLAIN_GATES[op.base_mnemonic]
        if len(op.params) != arity:
            raise CircuitError(
                error("E-PARAM-ARITY", f"{op.mnemonic} takes {arity} parameter(s), got {len(op.params)}")
            )


@dataclass(frozen=True)
class Circuit:
    """Ops over declared registers. Construction validates every invariant."""

    name: str
    qregs: tuple[RegisterDecl, ...]
    cregs: tuple[RegisterDecl, ...] = ()
    ops: tuple[QuantumOp, ...] = ()
    _offsets: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        for attr in ("qregs", "cregs", "ops"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if not IDENTIFIER.fullmatch(self.name):
            raise CircuitError(error("E-SYNTAX", f"circuit name {self.name!r} is not an identifier"))
        seen = set()
        for reg in (*self.qregs, *self.cregs):
            if not REGISTER_NAME.fullmatch(reg.name):
                raise CircuitError(error("E-SYNTAX", f"invalid register name {reg.name!r}"))
            if reg.name in seen:
                raise CircuitError(error("E-DUPLICATE-REGISTER", f"register {reg.name!r} declared twice"))
            if reg.size < 1:
                raise CircuitError(error("E-INDEX-RANGE", f"register {reg.name!r} has size {reg.size}"))
            seen.add(reg.name)
        qregs = {r.name: r.size for r in self.qregs}
        cregs = {r.name: r.size for r in self.cregs}
        for op in self.ops:
            check_op(op, qregs, cregs)
        offsets, base = {}, 0
        for reg in self.qregs:
            offsets[reg.name] = base
            base += reg.size
        object.__setattr__(self, "_offsets", offsets)

    @property
    def num_qubits(self) -> int:
        return sum(r.size for r in self.qregs)

    def qubit_index(self, ref: QubitRef) -> int:
        """Global index of ``ref``: qregs laid out in declaration order."""
        return self._offsets[ref.register] + ref.index

    def all_qubits(self) -> list[QubitRef]:
        return [QubitRef(r.name, i) for r in self.qregs for i in range(r.size)]

    def with_ops(self, ops) -> "Circuit":
        return Circuit(self.name, self.qregs, self.cregs, tuple(ops))


def append_op(circuit: Circuit, op: QuantumOp) -> Circuit:
    check_op(op, {r.name: r.size for r in circuit.qregs}, {r.name: r.size for r in circuit.cregs})
    # already validated; skip re-checking the existing ops
    new = object.__new__(Circuit)
    object.__setattr__(new, "name", circuit.name)
    object.__setattr__(new, "qregs", circuit.qregs)
    object.__setattr__(new, "cregs", circuit.cregs)
    object.__setattr__(new, "ops", (*circuit.ops, op))
    object.__setattr__(new, "_offsets", circuit._offsets)
    return new


@dataclass(frozen=True)
class DepDag:
    """Precedence between op indices: ``(i, j)`` means op ``i`` must run before op ``j``."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]

    @property
    def nodes(self) -> range:
        return range(self.num_nodes)

    def predecessors(self, j: int) -> list[int]:
        return [i for i, k in self.edges if k == j]

    def successors(self, i: int) -> list[int]:
        return [k for j, k in self.edges if j == i]


def _flatten(circuit: Circuit) -> tuple[array, array]:
    offsets = array("q", [0])
    qubits = array("q")
    index = circuit.qubit_index
    for op in circuit.ops:
        qubits.extend(index(q) for q in op.qubits)
        offsets.append(len(qubits))
    return offsets, qubits


def dependency_dag(circuit: Circuit) -> DepDag:
    """Edges link consecutive ops on each qubit; barriers count as ops on all their qubits."""
    offsets, qubits = _flatten(circuit)
    edges = _kernels.dag_edges(offsets, qubits, circuit.num_qubits)
    return DepDag(len(circuit.ops), tuple(edges))


def canonical_order(circuit: Circuit) -> list[int]:
    offsets, qubits = _flatten(circuit)
    return list(_kernels.canonical_order(offsets, qubits, circuit.num_qubits))


def canonicalize(circuit: Circuit) -> Circuit:
    """Deterministic topological sort of the dependency DAG.

    Among ready ops, emit the one whose first operand comes first in
    (qreg declaration order, index); ties go to the earlier op.
    """
    order = canonical_order(circuit)
    if order == list(range(len(circuit.ops))):
        return circuit
    ops = circuit.ops
    return Circuit(circuit.name, circuit.qregs, circuit.cregs, tuple(ops[i] for i in order))


def circuits_equivalent(a: Circuit, b: Circuit) -> bool:
    if a.qregs != b.qregs or a.cregs != b.cregs:
        return False
    if len(a.ops) != len(b.ops):
        return False
    return canonicalize(a).ops == canonicalize(b).ops
