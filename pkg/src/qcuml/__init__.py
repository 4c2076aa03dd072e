"""Translate OpenQASM 2.0 programs to and from UML activity diagrams stereotyped
with a quantum circuit profile."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .circuit import (
    Barrier,
    BitRef,
    Circuit,
    ControlledGate,
    DepDag,
    Gate,
    Measure,
    QubitRef,
    RegisterDecl,
    Reset,
    append_op,
    canonicalize,
    circuits_equivalent,
    dependency_dag,
)
from .diagnostics import Diagnostic, QcumlError
from .qasm import emit, load, lower, parse
from .serialization import read_xmi, write_plantuml, write_xmi
from .transform import circuit_to_uml, uml_to_circuit
from .uml import UmlModel, validate

__all__ = [
    "KERNEL_BACKEND", "Barrier", "BitRef", "Circuit", "ControlledGate", "DepDag", "Diagnostic", "Gate", "Measure",
    "QcumlError", "QubitRef", "RegisterDecl", "Reset", "UmlModel", "append_op", "canonicalize",
    "circuit_to_uml", "circuits_equivalent", "dependency_dag", "emit", "load", "lower", "parse", "read_xmi",
    "uml_to_circuit", "validate", "write_plantuml", "write_xmi",
]
