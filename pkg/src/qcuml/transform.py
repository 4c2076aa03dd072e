"""Circuit <-> activity-diagram mappings.

Forward (``circuit_to_uml``): one partition per qubit, each lane a chain of
actions opened by a fork and closed by a join; barriers become a join
followed by a fork over their lanes. Controlled gates become a send signal
action per control and one accept event action on the target, linked by
constraint edges.

Backward (``uml_to_circuit``) validates, walks every lane and rebuilds the
ops, then canonicalizes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from graphlib import TopologicalSorter

from .circuit import (
    IDENTIFIER,
    Barrier,
    BitRef,
    Circuit,
    ControlledGate,
    Gate,
    Measure,
    QubitRef,
    RegisterDecl,
    Reset,
    canonicalize,
)
from .diagnostics import CircuitError, TransformError, error
from .uml.model import (
    CONSTRAINT_LABEL,
    EdgeKind,
    GateInfo,
    MeasureInfo,
    ModelBuilder,
    NodeKind,
    StereotypeKind,
    UmlModel,
    canonical_ids,
    walk_lane,
)
from .uml.validate import validate

S = StereotypeKind
K = NodeKind


@dataclass(frozen=True)
class PairBinding:
    send: str
    accept: str
    constraint: str
    op_index: int


class _Forward:
    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self.b = ModelBuilder("activity", circuit.name)
        self.counter = 0
        self.lanes: dict[QubitRef, str] = {}
        self.cursor: dict[QubitRef, str] = {}
        self.stores: dict[str, str] = {}
        self.bindings: list[PairBinding] = []

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def node(self, kind: NodeKind, name: str, qubit: QubitRef | None = None, stereotype=None, **info) -> str:
        node_id = self.fresh("n")
        self.b.add_node(node_id, kind, name, self.lanes[qubit] if qubit is not None else None, **info)
        if stereotype is not None:
            self.b.apply_stereotype(node_id, stereotype)
        return node_id

    def flow(self, source: str, target: str, label: str | None = None, kind=EdgeKind.ControlFlow) -> str:
        return self.b.add_edge(self.fresh("f"), kind, source, target, label).id

    def lane_name(self, qubit: QubitRef) -> str:
        return f"{qubit.register}{qubit.index}"

    def chain(self, qubit: QubitRef, node_id: str) -> None:
        self.flow(self.cursor[qubit], node_id, self.lane_name(qubit))
        self.cursor[qubit] = node_id

    def run(self) -> UmlModel:
        c = self.circuit
        b = self.b
        b.apply_stereotype("activity", S.QuantumCircuit)
        qubits = c.all_qubits()
        for q in qubits:
            pid = b.add_partition(f"p_{self.lane_name(q)}", self.lane_name(q)).id
            b.apply_stereotype(pid, S.Qubit)
            self.lanes[q] = pid
        initial = self.node(K.InitialNode, "initial")
        for reg in c.cregs:
            self.stores[reg.name] = self.node(K.DataStoreNode, reg.name, upper_bound=reg.size)
        if len(qubits) > 1:
            fork = self.node(K.ForkNode, "fork")
            self.flow(initial, fork)
            self.cursor = dict.fromkeys(qubits, fork)
        else:
            self.cursor = dict.fromkeys(qubits, initial)

        for index, op in enumerate(c.ops):
            self.op(index, op)

        final_sources = list(self.cursor.items())
        if len(qubits) > 1:
            join = self.node(K.JoinNode, "join")
            for q, last in final_sources:
                self.flow(last, join, self.lane_name(q))
            final = self.node(K.ActivityFinalNode, "final")
            self.flow(join, final)
        else:
            final = self.node(K.ActivityFinalNode, "final")
            (q, last), = final_sources
            self.flow(last, final, self.lane_name(q))
        return b.build()

    def op(self, index: int, op) -> None:
        if isinstance(op, Gate):
            n = self.node(K.CallOperationAction, op.mnemonic, op.target, S.QuantumGate,
                          gate_info=GateInfo(op.mnemonic, op.params))
            self.chain(op.target, n)
        elif isinstance(op, ControlledGate):
            sends = []
            for ctrl in op.controls:
                s = self.node(K.SendSignalAction, "control", ctrl, S.ControlledQubit)
                self.chain(ctrl, s)
                sends.append(s)
            acc = self.node(K.AcceptEventAction, op.base_mnemonic, op.target, S.QuantumGate,
                            gate_info=GateInfo(op.base_mnemonic, op.params))
            self.chain(op.target, acc)
            for s in sends:
                edge = self.flow(s, acc, CONSTRAINT_LABEL, EdgeKind.Constraint)
                self.bindings.append(PairBinding(s, acc, edge, index))
        elif isinstance(op, Measure):
            n = self.node(K.ValueSpecificationAction, "measure", op.qubit, S.Measure,
                          measure_info=MeasureInfo(op.bit.register, op.bit.index))
            self.chain(op.qubit, n)
            self.flow(n, self.stores[op.bit.register], str(op.bit), EdgeKind.ObjectFlow)
        elif isinstance(op, Reset):
            n = self.node(K.ValueSpecificationAction, "reset", op.qubit, S.Reset)
            self.chain(op.qubit, n)
        elif isinstance(op, Barrier):
            if len(op.qubits) < 2:
                return  # nothing to synchronize
            join = self.node(K.JoinNode, "barrier")
            for q in op.qubits:
                self.flow(self.cursor[q], join, self.lane_name(q))
            fork = self.node(K.ForkNode, "barrier")
            self.flow(join, fork)
            for q in op.qubits:
                self.cursor[q] = fork
        else:
            raise TypeError(f"not a quantum op: {op!r}")


def circuit_to_uml(circuit: Circuit) -> UmlModel:
    """Model ``circuit`` as a stereotyped activity diagram with canonical ids ``e1, e2, ...``."""
    if circuit.num_qubits < 1:
        raise TransformError(error("E-NO-QUBITS", "a circuit needs at least one qubit"))
    return canonical_ids(_Forward(circuit).run())


_LABEL = re.compile(r"(?P<reg>[A-Za-z_][A-Za-z0-9_]*)\[(?P<bit>\d+)\]")


def _register_prefix(names: list[str]) -> str | None:
    """``["q0", "q1"]`` -> ``"q"``; None unless lanes are exactly prefix0..prefixN-1."""
    if not names or not names[0].endswith("0"):
        return None
    prefix = names[0][:-1]
    if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", prefix):
        return None
    if names != [f"{prefix}{i}" for i in range(len(names))]:
        return None
    return prefix


def uml_to_circuit(model: UmlModel) -> Circuit:
    """Rebuild the circuit a conformant model describes.

    Raises :class:`TransformError` with the validator's diagnostics when the
    model is not conformant, ``E-AMBIGUOUS-REGISTER`` when lane names do not
    spell one register, and ``E-BIT-UNLABELED`` for a measure whose object
    flow lacks a ``reg[i]`` label.
    """
    problems = [d for d in validate(model) if d.is_error]
    if problems:
        raise TransformError(problems)

    names = [p.name for p in model.partitions]
    prefix = _register_prefix(names)
    if prefix is None:
        raise TransformError(error("E-AMBIGUOUS-REGISTER", f"lane names {names} do not form one register",
                                   elements=tuple(p.id for p in model.partitions)))
    qubit_of = {p.id: QubitRef(prefix, i) for i, p in enumerate(model.partitions)}
    qubit_by_lane = {p.name: qubit_of[p.id] for p in model.partitions}
    nodes = model.node_by_id

    # pseudo-node for every op: sends fold into their accept; barrier joins stand for barriers
    group = {e.source: e.target for e in model.edges if e.kind is EdgeKind.Constraint}

    def is_barrier_join(node_id: str) -> bool:
        node = nodes[node_id]
        if node.kind is not K.JoinNode:
            return False
        (out,) = model.outgoing(node_id, EdgeKind.ControlFlow)
        return nodes[out.target].kind is K.ForkNode

    graph: dict[str, set[str]] = {}
    for part in model.partitions:
        walk = walk_lane(model, part)
        previous = None
        for node_id in walk.path:
            node = nodes[node_id]
            if node.kind.is_action:
                event = group.get(node_id, node_id)
            elif is_barrier_join(node_id):
                event = node_id
            else:
                continue
            graph.setdefault(event, set())
            if previous is not None:
                graph[event].add(previous)
            previous = event

    position = {n.id: k for k, n in enumerate(model.nodes)}
    sorter = TopologicalSorter(graph)
    sorter.prepare()
    order = []
    while sorter.is_active():
        ready = sorted(sorter.get_ready(), key=position.__getitem__)
        for event in ready:
            order.append(event)
            sorter.done(event)

    bits_seen: dict[str, int] = {}
    ops = []
    for event in order:
        node = nodes[event]
        qubit = qubit_of.get(node.partition)
        if node.kind is K.CallOperationAction:
            ops.append(Gate(node.gate_info.mnemonic, qubit, node.gate_info.params))
        elif node.kind is K.AcceptEventAction:
            controls = tuple(qubit_of[nodes[e.source].partition] for e in model.incoming(event, EdgeKind.Constraint))
            ops.append(ControlledGate(node.gate_info.mnemonic, controls, qubit, node.gate_info.params))
        elif node.kind is K.ValueSpecificationAction and model.stereotype_of[event] is S.Reset:
            ops.append(Reset(qubit))
        elif node.kind is K.ValueSpecificationAction:
            (flow,) = model.outgoing(event, EdgeKind.ObjectFlow)
            store = nodes[flow.target]
            match = _LABEL.fullmatch(flow.label or "")
            if match is None or match.group("reg") != store.name:
                raise TransformError(error("E-BIT-UNLABELED",
                                           f"object flow {flow.id!r} needs a label '{store.name}[i]'",
                                           elements=(flow.id,)))
            bit = int(match.group("bit"))
            bits_seen[store.name] = max(bits_seen.get(store.name, -1), bit)
            ops.append(Measure(qubit, BitRef(store.name, bit)))
        elif node.kind is K.JoinNode:
            lanes = [e.label for e in model.incoming(event, EdgeKind.ControlFlow)]
            ops.append(Barrier(tuple(qubit_by_lane[lane] for lane in lanes)))

    cregs = []
    for store in model.nodes_of(K.DataStoreNode):
        size = store.upper_bound if store.upper_bound is not None else bits_seen.get(store.name, 0) + 1
        cregs.append(RegisterDecl(store.name, size))
    name = model.activity.name if IDENTIFIER.fullmatch(model.activity.name) else "circuit"
    try:
        circuit = Circuit(name, (RegisterDecl(prefix, len(names)),), tuple(cregs), tuple(ops))
    except CircuitError as exc:
        raise TransformError(exc.diagnostics) from None
    return canonicalize(circuit)
