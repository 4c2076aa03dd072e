"""The supported subset of the qelib1 gate library.

Plain gates map to their parameter count. Controlled gates map to
``(base mnemonic, number of controls)``; their parameter count is the base's.
"""

from __future__ import annotations

PLAIN_GATES: dict[str, int] = {
    "id": 0,
    "x": 0,
    "y": 0,
    "z": 0,
    "h": 0,
    "s": 0,
    "sdg": 0,
    "t": 0,
    "tdg": 0,
    "rx": 1,
    "ry": 1,
    "rz": 1,
    "u1": 1,
    "u2": 2,
    "u3": 3,
}

CONTROLLED_GATES: dict[str, tuple[str, int]] = {
    "cx": ("x", 1),
    "cy": ("y", 1),
    "cz": ("z", 1),
    "ch": ("h", 1),
    "crz": ("rz", 1),
    "cu1": ("u1", 1),
    "ccx": ("x", 2),
}

CONTROLLED_BY_BASE: dict[tuple[str, int], str] = {v: k for k, v in CONTROLLED_GATES.items()}


def param_arity(mnemonic: str) -> int | None:
    """Parameter count for a plain or controlled mnemonic, ``None`` if unsupported."""
    if mnemonic in PLAIN_GATES:
        return PLAIN_GATES[mnemonic]
    if mnemonic in CONTROLLED_GATES:
        return PLAIN_GATES[CONTROLLED_GATES[mnemonic][0]]
    return None


def controlled_mnemonic(base: str, n_controls: int) -> str | None:
    return CONTROLLED_BY_BASE.get((base, n_controls))
