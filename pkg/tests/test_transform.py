from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuit_gen import random_circuit
from mutations import find
from qcuml.circuit import (
    Barrier,
    Circuit,
    ControlledGate,
    Gate,
    Measure,
    QubitRef,
    RegisterDecl,
    Reset,
    circuits_equivalent,
)
from qcuml.diagnostics import TransformError
from qcuml.transform import circuit_to_uml, uml_to_circuit
from qcuml.uml import EdgeKind, ModelBuilder, NodeKind, StereotypeKind, validate, walk_lane

K, S = NodeKind, StereotypeKind


def census(model):
    return Counter(n.kind for n in model.nodes), Counter(e.kind for e in model.edges)


def barrier_pairs(model):
    """Interior join nodes whose single outgoing flow enters a fork."""
    nodes = model.node_by_id
    return [j for j in model.nodes_of(K.JoinNode)
            if any(nodes[e.target].kind is K.ForkNode for e in model.outgoing(j.id, EdgeKind.ControlFlow))]


def test_teleport_census(teleport_model):
    nodes, edges = census(teleport_model)
    assert nodes == {
        K.InitialNode: 1, K.ActivityFinalNode: 1, K.ForkNode: 3, K.JoinNode: 3, K.CallOperationAction: 2,
        K.SendSignalAction: 4, K.AcceptEventAction: 4, K.ValueSpecificationAction: 2, K.DataStoreNode: 2,
    }
    assert edges == {EdgeKind.Constraint: 4, EdgeKind.ObjectFlow: 2, EdgeKind.ControlFlow: 25}
    assert [p.name for p in teleport_model.partitions] == ["q0", "q1", "q2"]
    assert all(teleport_model.stereotype_of[p.id] is S.Qubit for p in teleport_model.partitions)
    assert [n.name for n in teleport_model.nodes_of(K.DataStoreNode)] == ["msg", "register"]
    assert sorted(n.name for n in teleport_model.nodes_of(K.AcceptEventAction)) == ["x", "x", "x", "z"]
    assert len(barrier_pairs(teleport_model)) == 2


def test_ids_are_canonical(teleport_model):
    assert teleport_model.element_ids() == [f"e{k}" for k in range(1, 58)]


def test_empty_one_qubit_circuit():
    c = Circuit("empty", (RegisterDecl("q", 1),))
    model = circuit_to_uml(c)
    nodes, edges = census(model)
    assert nodes == {K.InitialNode: 1, K.ActivityFinalNode: 1}
    assert edges == {EdgeKind.ControlFlow: 1}
    assert len(model.partitions) == 1
    assert validate(model) == []
    assert uml_to_circuit(model) == c


def test_no_qubits_rejected():
    with pytest.raises(TransformError) as exc:
        circuit_to_uml(Circuit("c", ()))
    assert exc.value.codes == ["E-NO-QUBITS"]


def test_teleport_round_trip(teleport, teleport_model):
    back = uml_to_circuit(teleport_model)
    assert circuits_equivalent(teleport, back)
    assert back == teleport  # canonical order of the listing is the listing


def test_single_qubit_barrier_has_no_image():
    q = QubitRef("q", 0)
    c = Circuit("c", (RegisterDecl("q", 1),), (), (Gate("h", q), Barrier((q,)), Gate("x", q)))
    assert census(circuit_to_uml(c))[0][K.JoinNode] == 0
    assert uml_to_circuit(circuit_to_uml(c)).ops == (Gate("h", q), Gate("x", q))


def test_barrier_operand_order_survives():
    q = [QubitRef("q", i) for i in range(3)]
    c = Circuit("c", (RegisterDecl("q", 3),), (), (Barrier((q[2], q[0], q[1])),))
    assert uml_to_circuit(circuit_to_uml(c)) == c


def test_removed_control_flow_gives_r5(teleport_model):
    (h,) = find(teleport_model, K.CallOperationAction, "q0")
    (into_h,) = teleport_model.incoming(h.id, EdgeKind.ControlFlow)
    with pytest.raises(TransformError) as exc:
        uml_to_circuit(teleport_model.without_edges(into_h.id))
    assert "R5" in exc.value.codes


def test_inconsistent_lane_names(teleport_model):
    parts = tuple(replace(p, name=name) for p, name in zip(teleport_model.partitions, ["q0", "r1", "q2"]))
    edges = tuple(replace(e, label={"q1": "r1"}.get(e.label, e.label)) for e in teleport_model.edges)
    model = replace(teleport_model, partitions=parts, edges=edges)
    assert validate(model) == []
    with pytest.raises(TransformError) as exc:
        uml_to_circuit(model)
    assert exc.value.codes == ["E-AMBIGUOUS-REGISTER"]


def test_other_register_name(teleport_model):
    rename = {"q0": "a0", "q1": "a1", "q2": "a2"}
    parts = tuple(replace(p, name=rename[p.name]) for p in teleport_model.partitions)
    edges = tuple(replace(e, label=rename.get(e.label, e.label)) for e in teleport_model.edges)
    back = uml_to_circuit(replace(teleport_model, partitions=parts, edges=edges))
    assert back.qregs == (RegisterDecl("a", 3),)


def test_unlabeled_measure_flow(teleport_model):
    flow = teleport_model.nodes_of(K.ValueSpecificationAction)[0]
    (obj,) = teleport_model.outgoing(flow.id, EdgeKind.ObjectFlow)
    model = replace(teleport_model, edges=tuple(replace(e, label=None) if e == obj else e
                                                for e in teleport_model.edges))
    with pytest.raises(TransformError) as exc:
        uml_to_circuit(model)
    assert exc.value.codes == ["E-BIT-UNLABELED"]


def test_store_without_upper_bound_sized_by_bits(teleport_model):
    b = ModelBuilder.from_model(teleport_model)
    b.nodes = [replace(n, upper_bound=None) for n in b.nodes]
    back = uml_to_circuit(b.build())
    assert back.cregs == (RegisterDecl("msg", 1), RegisterDecl("register", 1))


def expected_lane(circuit, qubit):
    """What a lane should show for ``qubit``: one entry per op touching it, in program order."""
    out = []
    for op in circuit.ops:
        if qubit not in op.qubits:
            continue
        if isinstance(op, Gate):
            out.append(("CallOperationAction", op.mnemonic))
        elif isinstance(op, ControlledGate):
            out.append(("AcceptEventAction", op.base_mnemonic) if op.target == qubit
                       else ("SendSignalAction", "control"))
        elif isinstance(op, Measure):
            out.append(("ValueSpecificationAction", "measure"))
        elif isinstance(op, Reset):
            out.append(("ValueSpecificationAction", "reset"))
        elif len(op.qubits) > 1:
            out.append(("JoinNode", "barrier"))
    return out


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_sound_and_lossless(rng):
    c = random_circuit(rng)
    model = circuit_to_uml(c)
    assert validate(model) == []
    assert circuits_equivalent(c, uml_to_circuit(model))

    nodes = model.node_by_id
    for part, qubit in zip(model.partitions, c.all_qubits()):
        seen = [(nodes[n].kind.value, nodes[n].name) for n in walk_lane(model, part).path
                if nodes[n].kind.is_action or (nodes[n].kind is K.JoinNode and nodes[n].name == "barrier")]
        assert seen == expected_lane(c, qubit)

    n_controls = sum(len(op.controls) for op in c.ops if isinstance(op, ControlledGate))
    assert census(model)[1][EdgeKind.Constraint] == n_controls
    assert len(barrier_pairs(model)) == sum(isinstance(op, Barrier) for op in c.ops)
