"""Random well-formed circuits for property tests.

One generator serves both hypothesis (via ``st.randoms``) and the seeded
acceptance corpus. Barriers always span >= 2 qubits: a one-qubit barrier
has no UML image, so it cannot survive the model round trip.
"""

from __future__ import annotations

import random

from qcuml.circuit import Barrier, BitRef, Circuit, ControlledGate, Gate, Measure, QubitRef, RegisterDecl, Reset
from qcuml.expr import BinOp, Neg, Num, Pi
from qcuml.gates import CONTROLLED_GATES, PLAIN_GATES

LITERALS = ["0", "1", "2", "3", "0.5", "0.25", "3.14159", "1.5e-3", "10"]


def random_expr(rng: random.Random, depth: int = 2):
    if depth == 0 or rng.random() < 0.4:
        return Pi() if rng.random() < 0.4 else Num(rng.choice(LITERALS))
    if rng.random() < 0.2:
        return Neg(random_expr(rng, depth - 1))
    return BinOp(rng.choice("+-*/^"), random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def random_circuit(rng: random.Random, max_qubits: int = 5, max_ops: int = 30, name: str = "rand") -> Circuit:
    n = rng.randint(1, max_qubits)
    qubits = [QubitRef("q", i) for i in range(n)]
    cregs = [RegisterDecl(reg, rng.randint(1, 3)) for reg in rng.sample(["c", "m"], rng.randint(0, 2))]
    kinds = ["gate", "gate", "reset"]
    if n >= 2:
        kinds += ["controlled", "controlled", "barrier"]
    if cregs:
        kinds += ["measure", "measure"]
    ops = []
    for _ in range(rng.randint(0, max_ops)):
        kind = rng.choice(kinds)
        if kind == "gate":
            mnemonic = rng.choice(sorted(PLAIN_GATES))
            params = tuple(random_expr(rng) for _ in range(PLAIN_GATES[mnemonic]))
            ops.append(Gate(mnemonic, rng.choice(qubits), params))
        elif kind == "controlled":
            options = sorted(m for m, (_, k) in CONTROLLED_GATES.items() if k + 1 <= n)
            base, k = CONTROLLED_GATES[rng.choice(options)]
            picked = rng.sample(qubits, k + 1)
            params = tuple(random_expr(rng) for _ in range(PLAIN_GATES[base]))
            ops.append(ControlledGate(base, tuple(picked[:-1]), picked[-1], params))
        elif kind == "measure":
            reg = rng.choice(cregs)
            ops.append(Measure(rng.choice(qubits), BitRef(reg.name, rng.randrange(reg.size))))
        elif kind == "reset":
            ops.append(Reset(rng.choice(qubits)))
        else:
            ops.append(Barrier(tuple(rng.sample(qubits, rng.randint(2, n)))))
    return Circuit(name, (RegisterDecl("q", n),), tuple(cregs), tuple(ops))


def corpus(size: int, seed: int = 20240607) -> list[Circuit]:
    rng = random.Random(seed)
    return [random_circuit(rng, name=f"c{k}") for k in range(size)]
