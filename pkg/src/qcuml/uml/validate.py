"""Profile well-formedness rules R1..R11."""

from __future__ import annotations

from collections import Counter
from graphlib import CycleError, TopologicalSorter

from ..diagnostics import Diagnostic, error, sort_key
from ..gates import CONTROLLED_BY_BASE, PLAIN_GATES
from .model import (
    ACTION_KINDS,
    EdgeKind,
    NodeKind,
    StereotypeKind,
    UmlModel,
    reachable_from_initial,
    reaching,
    walk_lane,
)

S = StereotypeKind
K = NodeKind

ALLOWED_METACLASSES = {
    S.QuantumCircuit: {"Activity"},
    S.Qubit: {"ActivityPartition"},
    S.QuantumGate: {K.CallOperationAction.value, K.AcceptEventAction.value},
    S.ControlledQubit: {K.SendSignalAction.value},
    S.Measure: {K.ValueSpecificationAction.value},
    S.Reset: {K.ValueSpecificationAction.value},
}


def _r1(model: UmlModel):
    if model.stereotype_of.get(model.activity.id) is not S.QuantumCircuit:
        yield error("R1", "the activity must carry <<quantum circuit>>", elements=(model.activity.id,))


def _r2(model: UmlModel):
    if not model.partitions:
        yield error("R2", "the activity needs at least one partition", elements=(model.activity.id,))
    names = Counter(p.name for p in model.partitions)
    for p in model.partitions:
        if model.stereotype_of.get(p.id) is not S.Qubit:
            yield error("R2", f"partition {p.name!r} must carry <<qubit>>", elements=(p.id,))
        if names[p.name] > 1:
            yield error("R2", f"partition name {p.name!r} is not unique", elements=(p.id,))


def _r3(model: UmlModel):
    for kind in (K.InitialNode, K.ActivityFinalNode):
        found = model.nodes_of(kind)
        if len(found) != 1:
            yield error("R3", f"expected exactly one {kind.value}, found {len(found)}",
                        elements=tuple(n.id for n in found) or (model.activity.id,))
    for node in model.nodes_of(K.InitialNode):
        if model.incoming(node.id, EdgeKind.ControlFlow) or len(model.outgoing(node.id, EdgeKind.ControlFlow)) != 1:
            yield error("R3", "the initial node needs exactly one outgoing and no incoming control flow",
                        elements=(node.id,))
    for node in model.nodes_of(K.ActivityFinalNode):
        if model.outgoing(node.id, EdgeKind.ControlFlow) or len(model.incoming(node.id, EdgeKind.ControlFlow)) != 1:
            yield error("R3", "the final node needs exactly one incoming and no outgoing control flow",
                        elements=(node.id,))


def _r4(model: UmlModel):
    nodes = model.node_by_id
    stereo = model.stereotype_of
    for edge in model.edges:
        if edge.kind is not EdgeKind.Constraint:
            continue
        src, dst = nodes[edge.source], nodes[edge.target]
        if src.kind is not K.SendSignalAction or dst.kind is not K.AcceptEventAction:
            yield error("R4", "constraints must run from a send signal action to an accept event action",
                        elements=(edge.id,))
        elif src.partition == dst.partition:
            yield error("R4", "control and target of a constraint share a partition", elements=(edge.id,))
    for node in model.nodes_of(K.SendSignalAction):
        if stereo.get(node.id) is not S.ControlledQubit:
            yield error("R4", "send signal action must carry <<controlled qubit>>", elements=(node.id,))
        constraints = model.outgoing(node.id, EdgeKind.Constraint)
        if len(constraints) != 1:
            yield error("R4", f"send signal action has {len(constraints)} constraint(s), expected exactly one",
                        elements=(node.id,))
    for node in model.nodes_of(K.AcceptEventAction):
        if stereo.get(node.id) is not S.QuantumGate:
            yield error("R4", "accept event action must carry <<quantum gate>>", elements=(node.id,))
        constraints = model.incoming(node.id, EdgeKind.Constraint)
        if not constraints:
            yield error("R4", "accept event action has no incoming constraint", elements=(node.id,))
        lanes = [nodes[e.source].partition for e in constraints]
        if len(set(lanes)) != len(lanes):
            yield error("R4", "two controls of one gate share a partition", elements=(node.id,))


def _r5(model: UmlModel):
    initials = model.nodes_of(K.InitialNode)
    finals = model.nodes_of(K.ActivityFinalNode)
    if len(initials) != 1 or len(finals) != 1:
        return  # R3 already reports this
    forward = reachable_from_initial(model, (EdgeKind.ControlFlow,))
    backward = reaching(model, {finals[0].id})
    for node in model.nodes:
        if node.kind is K.DataStoreNode:
            continue
        if node.id not in forward:
            yield error("R5", f"{node.kind.value} {node.name!r} is not reachable from the initial node",
                        elements=(node.id,))
        elif node.id not in backward:
            yield error("R5", f"{node.kind.value} {node.name!r} does not reach the final node",
                        elements=(node.id,))


def _r6(model: UmlModel):
    nodes = model.node_by_id
    for node in model.nodes_of(K.ForkNode):
        ins = model.incoming(node.id, EdgeKind.ControlFlow)
        outs = model.outgoing(node.id, EdgeKind.ControlFlow)
        if len(ins) != 1 or len(outs) < 2:
            yield error("R6", f"fork needs 1 incoming and >= 2 outgoing flows, has {len(ins)} and {len(outs)}",
                        elements=(node.id,))
        elif nodes[ins[0].source].kind not in (K.InitialNode, K.JoinNode):
            yield error("R6", "a fork must follow the initial node or a join", elements=(node.id,))
    for node in model.nodes_of(K.JoinNode):
        ins = model.incoming(node.id, EdgeKind.ControlFlow)
        outs = model.outgoing(node.id, EdgeKind.ControlFlow)
        if len(ins) < 2 or len(outs) != 1:
            yield error("R6", f"join needs >= 2 incoming and 1 outgoing flow, has {len(ins)} and {len(outs)}",
                        elements=(node.id,))
        elif nodes[outs[0].target].kind not in (K.ForkNode, K.ActivityFinalNode):
            yield error("R6", "a join must lead to a fork or the final node", elements=(node.id,))
    yield from _balance(model)


def _balance(model: UmlModel):
    """Every path must open and close the same number of fork/join regions."""
    initials = model.nodes_of(K.InitialNode)
    if len(initials) != 1:
        return
    graph: dict[str, set[str]] = {n.id: set() for n in model.nodes}
    for e in model.edges:
        if e.kind is EdgeKind.ControlFlow:
            graph[e.target].add(e.source)
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError:
        return  # R10 reports cycles
    level_in: dict[str, int] = {initials[0].id: 0}
    bad: set[str] = set()
    for node_id in order:
        if node_id not in level_in:
            continue
        kind = model.node_by_id[node_id].kind
        level = level_in[node_id] + (kind is K.ForkNode) - (kind is K.JoinNode)
        if level < 0:
            bad.add(node_id)
            continue
        for e in model.outgoing(node_id, EdgeKind.ControlFlow):
            seen = level_in.setdefault(e.target, level)
            if seen != level:
                bad.add(e.target)
    for node in model.nodes_of(K.ActivityFinalNode):
        if level_in.get(node.id, 0) != 0:
            bad.add(node.id)
    for node_id in sorted(bad):
        yield error("R6", "fork and join nodes are unbalanced on the paths reaching this node",
                    elements=(node_id,))


def _r7(model: UmlModel):
    nodes = model.node_by_id
    stereo = model.stereotype_of
    for node in model.nodes_of(K.ValueSpecificationAction):
        kind = stereo.get(node.id)
        flows = model.outgoing(node.id, EdgeKind.ObjectFlow)
        if kind not in (S.Measure, S.Reset):
            yield error("R7", "value specification action must carry <<measure>> or <<reset>>",
                        elements=(node.id,))
        elif kind is S.Measure and (len(flows) != 1 or nodes[flows[0].target].kind is not K.DataStoreNode):
            yield error("R7", "a measure needs exactly one object flow into a data store", elements=(node.id,))
    for edge in model.edges:
        if edge.kind is EdgeKind.ObjectFlow and stereo.get(edge.source) is not S.Measure:
            yield error("R7", "object flows may only leave <<measure>> actions", elements=(edge.id,))


def _r8(model: UmlModel):
    nodes = model.node_by_id
    for node in model.nodes:
        if node.kind not in ACTION_KINDS:
            continue
        ins = model.incoming(node.id, EdgeKind.ControlFlow)
        outs = model.outgoing(node.id, EdgeKind.ControlFlow)
        if len(ins) > 1 or len(outs) > 1:
            yield error("R8", "an action inside a lane may not branch or merge control flow", elements=(node.id,))
        lane = model.partition_by_id[node.partition].name if node.partition in model.partition_by_id else None
        for e in ins + outs:
            other = nodes[e.source if e in ins else e.target]
            if e.label != lane or (other.kind in ACTION_KINDS and other.partition != node.partition):
                yield error("R8", f"control flow {e.id!r} leaves or mislabels lane {lane!r}",
                            elements=(e.id,))
    if len(model.nodes_of(K.InitialNode)) != 1:
        return
    for part in model.partitions:
        walk = walk_lane(model, part)
        if walk.problem:
            yield error("R8", walk.problem, elements=walk.problem_elements or (part.id,))


def _r9(model: UmlModel):
    for app in model.stereotypes:
        meta = model.metaclass_of(app.element)
        if meta not in ALLOWED_METACLASSES[app.kind]:
            yield error("R9", f"<<{app.kind.value}>> cannot extend {meta}", elements=(app.element,))


def _r10(model: UmlModel):
    group = {}
    for e in model.edges:
        if e.kind is EdgeKind.Constraint:
            group[e.source] = e.target
    graph: dict[str, set[str]] = {}
    for n in model.nodes:
        graph.setdefault(group.get(n.id, n.id), set())
    for e in model.edges:
        if e.kind is EdgeKind.ControlFlow:
            graph[group.get(e.target, e.target)].add(group.get(e.source, e.source))
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        cycle = tuple(sorted(set(exc.args[1])))
        yield error("R10", "control flow is cyclic once controlled-gate pairs are merged", elements=cycle)


def _r11(model: UmlModel):
    stereo = model.stereotype_of
    for node in model.nodes_of(K.CallOperationAction):
        if stereo.get(node.id) is not S.QuantumGate:
            yield error("R11", "call operation action must carry <<quantum gate>>", elements=(node.id,))
        info = node.gate_info
        if info is None or info.mnemonic not in PLAIN_GATES:
            yield error("R11", f"gate {info.mnemonic if info else None!r} is not supported", elements=(node.id,))
        elif len(info.params) != PLAIN_GATES[info.mnemonic]:
            yield error("R11", f"{info.mnemonic} takes {PLAIN_GATES[info.mnemonic]} parameter(s)",
                        elements=(node.id,))
    for node in model.nodes_of(K.AcceptEventAction):
        n_controls = len(model.incoming(node.id, EdgeKind.Constraint))
        if n_controls == 0:
            continue  # R4
        info = node.gate_info
        base = info.mnemonic if info else None
        if (base, n_controls) not in CONTROLLED_BY_BASE:
            yield error("R11", f"no supported gate applies {base!r} under {n_controls} control(s)",
                        elements=(node.id,))
        elif len(info.params) != PLAIN_GATES[base]:
            yield error("R11", f"{base} takes {PLAIN_GATES[base]} parameter(s)", elements=(node.id,))


RULES = (_r1, _r2, _r3, _r4, _r5, _r6, _r7, _r8, _r9, _r10, _r11)


def validate(model: UmlModel) -> list[Diagnostic]:
    """All rule violations, sorted by rule number and then element id. Empty means conformant."""
    found = {d for rule in RULES for d in rule(model)}
    return sorted(found, key=sort_key)
