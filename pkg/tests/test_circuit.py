import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuit_gen import random_circuit
from qcuml.circuit import (
    Barrier,
    BitRef,
    Circuit,
    ControlledGate,
    Gate,
    Measure,
    QubitRef,
    RegisterDecl,
    append_op,
    canonicalize,
    circuits_equivalent,
    dependency_dag,
)
from qcuml.diagnostics import CircuitError
from qcuml.expr import Num

q = [QubitRef("q", i) for i in range(5)]


def brute_force_edges(circuit):
    """(i, j) iff they share a qubit that no op strictly between them touches."""
    ops = circuit.ops
    edges = set()
    for j in range(len(ops)):
        for i in range(j):
            for qubit in set(ops[i].qubits) & set(ops[j].qubits):
                if not any(qubit in ops[k].qubits for k in range(i + 1, j)):
                    edges.add((i, j))
    return edges


def brute_force_canonical(circuit):
    """Scan every remaining op each step; pick the smallest (first qubit, position) among ready ones."""
    edges = brute_force_edges(circuit)
    flat = {ref: k for k, ref in enumerate(circuit.all_qubits())}
    done, order = set(), []
    while len(order) < len(circuit.ops):
        ready = [j for j in range(len(circuit.ops))
                 if j not in done and all(i in done for i, k in edges if k == j)]
        j = min(ready, key=lambda j: (flat[circuit.ops[j].qubits[0]], j))
        done.add(j)
        order.append(j)
    return [circuit.ops[j] for j in order]


def test_append_minimal():
    c = Circuit("c", (RegisterDecl("q", 1),))
    c2 = append_op(c, Gate("h", q[0]))
    assert len(c2.ops) == 1 and len(c.ops) == 0


def test_append_control_equals_target():
    c = Circuit("c", (RegisterDecl("q", 2),))
    with pytest.raises(CircuitError) as exc:
        append_op(c, ControlledGate("x", (q[0],), q[0]))
    assert exc.value.codes == ["E-DUPLICATE-OPERAND"]


def test_append_bit_out_of_range():
    c = Circuit("c", (RegisterDecl("q", 3),), (RegisterDecl("msg", 1),))
    with pytest.raises(CircuitError) as exc:
        append_op(c, Measure(q[2], BitRef("msg", 1)))
    assert exc.value.codes == ["E-INDEX-RANGE"]


@pytest.mark.parametrize(
    "op, code",
    [
        (Gate("h", QubitRef("r", 0)), "E-UNKNOWN-REGISTER"),
        (Gate("swap", q[0]), "E-UNSUPPORTED-GATE"),
        (Gate("rz", q[0]), "E-PARAM-ARITY"),
        (Gate("h", q[0], (Num("1"),)), "E-PARAM-ARITY"),
        (ControlledGate("y", (q[0], q[1]), q[2]), "E-UNSUPPORTED-GATE"),
        (Barrier((q[0], q[0])), "E-DUPLICATE-OPERAND"),
        (Measure(q[0], BitRef("q", 0)), "E-UNKNOWN-REGISTER"),
    ],
)
def test_append_errors(op, code):
    c = Circuit("c", (RegisterDecl("q", 3),), (RegisterDecl("c", 1),))
    with pytest.raises(CircuitError) as exc:
        append_op(c, op)
    assert exc.value.codes == [code]


@pytest.mark.parametrize(
    "qregs, cregs",
    [
        ((RegisterDecl("q", 0),), ()),
        ((RegisterDecl("q", 1),), (RegisterDecl("q", 1),)),
        ((RegisterDecl("Q", 1),), ()),
    ],
)
def test_register_invariants(qregs, cregs):
    with pytest.raises(CircuitError):
        Circuit("c", qregs, cregs)


# Predecessors of each teleportation op, worked out by hand from the last op on each qubit.
TELEPORT_PREDECESSORS = {
    0: set(),  # h q[1]
    1: {0},  # cx q[1], q[2]
    2: {1},  # barrier
    3: {2},  # cx q[0], q[1]
    4: {3},  # h q[0]
    5: {2, 3, 4},  # barrier: q2 last touched by the first barrier
    6: {5},  # measure q[0]
    7: {5, 6},  # cz q[0], q[2]
    8: {5},  # measure q[1]
    9: {7, 8},  # cx q[1], q[2]
}


def test_teleport_dag_matches_hand_built(teleport):
    dag = dependency_dag(teleport)
    assert {j: set(dag.predecessors(j)) for j in dag.nodes} == TELEPORT_PREDECESSORS
    assert dag.predecessors(0) == []
    assert dag.predecessors(6) == [5]


def test_single_op_dag():
    c = Circuit("c", (RegisterDecl("q", 1),), (), (Gate("h", q[0]),))
    dag = dependency_dag(c)
    assert dag.num_nodes == 1 and dag.edges == ()


def test_teleport_canonical_is_source_order(teleport):
    assert canonicalize(teleport).ops == teleport.ops


def test_independent_gates_sorted_by_qubit():
    c = Circuit("c", (RegisterDecl("q", 2),), (), (Gate("h", q[1]), Gate("h", q[0])))
    assert canonicalize(c).ops == (Gate("h", q[0]), Gate("h", q[1]))


def test_tie_break_uses_qreg_declaration_order():
    a, b = QubitRef("a", 0), QubitRef("b", 0)
    c = Circuit("c", (RegisterDecl("b", 1), RegisterDecl("a", 1)), (), (Gate("h", a), Gate("x", b)))
    assert canonicalize(c).ops == (Gate("x", b), Gate("h", a))


def test_equivalent_with_measures_in_other_order(teleport):
    # both measures hang off the second barrier only, so measuring q[1] first is the same circuit
    ops = list(teleport.ops)
    ops.insert(6, ops.pop(8))
    assert circuits_equivalent(teleport, teleport.with_ops(ops))


def test_swapping_measure_lines_moves_cz(teleport):
    # exchanging source lines 12 and 14 also puts cz q[0], q[2] before measure q[0]
    ops = list(teleport.ops)
    ops[6], ops[8] = ops[8], ops[6]
    assert not circuits_equivalent(teleport, teleport.with_ops(ops))


def test_not_equivalent_without_last_cx(teleport):
    assert not circuits_equivalent(teleport, teleport.with_ops(teleport.ops[:-1]))


def test_equivalence_compares_registers(teleport):
    renamed = Circuit("teleport", teleport.qregs, tuple(reversed(teleport.cregs)), teleport.ops)
    assert not circuits_equivalent(teleport, renamed)


def test_reflexive(teleport):
    assert circuits_equivalent(teleport, teleport)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_dag_matches_brute_force_and_is_acyclic(rng):
    c = random_circuit(rng)
    dag = dependency_dag(c)
    assert set(dag.edges) == brute_force_edges(c)
    assert all(i < j for i, j in dag.edges)  # program order is a topological order


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_canonicalize_matches_brute_force(rng):
    c = random_circuit(rng)
    assert list(canonicalize(c).ops) == brute_force_canonical(c)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_canonicalize_idempotent_and_dag_preserving(rng):
    c = random_circuit(rng)
    once = canonicalize(c)
    assert canonicalize(once) == once
    assert circuits_equivalent(c, once)
    # the reordered circuit keeps every per-qubit op sequence
    for qubit in c.all_qubits():
        assert [op for op in c.ops if qubit in op.qubits] == [op for op in once.ops if qubit in op.qubits]


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False), st.randoms(use_true_random=False))
def test_equivalence_is_an_equivalence_relation(rng, other_rng):
    a = random_circuit(rng)
    b = canonicalize(a)
    # a different linear extension: canonical order of the reversed program, reversed back
    c = a.with_ops(reversed(brute_force_canonical(a.with_ops(reversed(a.ops)))))
    d = random_circuit(other_rng)
    family = [a, b, c, d]
    for x in family:
        assert circuits_equivalent(x, x)
        for y in family:
            assert circuits_equivalent(x, y) == circuits_equivalent(y, x)
            for z in family:
                if circuits_equivalent(x, y) and circuits_equivalent(y, z):
                    assert circuits_equivalent(x, z)
    assert circuits_equivalent(a, c)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_chained_circuit_is_fixed_point(rng):
    c = random_circuit(rng)
    chained = [c.ops[0]] if c.ops else []
    for op in c.ops[1:]:
        if set(op.qubits) & set(chained[-1].qubits):
            chained.append(op)
    c = c.with_ops(chained)
    assert canonicalize(c).ops == c.ops
