"""Stabilizer-code circuit synthesis with exact state-vector verification.

Qubit indices are 0-based everywhere: qubit 0 is the leftmost letter of a
Pauli string and the leftmost bit of a ket.
"""

from .circuit import Circuit, Gate, gate_counts, optimize_trivial_z, parse_circuit, serialize
from .codes import CodeSpec, builtin, load_code, verify_roundtrip
from .f2linalg import CheckMatrix, StandardForm, css_check_matrix, logical_operators, to_standard_form
from .pauli import PauliString, multiply, parse_pauli, symplectic_product
from .route import CouplingGraph, Layout, decompose_swaps, grid_graph, is_compliant, route
from .sim import StateVector, apply_gate, eigencheck, init_basis, run
from .synth import SyndromeTable, correction_lookup, synth_encoder, synth_syndrome, syndrome_table

__version__ = "0.1.0"
