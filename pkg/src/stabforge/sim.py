"""Dense state-vector simulation.

Amplitude index convention: qubit 0 is the most significant bit, so
``|q0 q1 ... q_{n-1}>`` reads left to right like a written ket.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate
from .pauli import PauliString

MAX_QUBITS = 16
DEFAULT_TOL = 1e-9

_SQ2 = 1 / np.sqrt(2)
GATE_MATRICES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class SimulationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != 1 << self.n:
            raise SimulationError(f"{amps.size} amplitudes for {self.n} qubits")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def probability(self, qubit: int) -> float:
        """Probability that measuring ``qubit`` yields 1."""
        t = self.amps.reshape([2] * self.n)
        sel = [slice(None)] * self.n
        sel[qubit] = 1
        part = t[tuple(sel)]
        return float(np.vdot(part, part).real)

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(self.n + other.n, np.kron(self.amps, other.amps))


def _check_width(n: int) -> None:
    if n > MAX_QUBITS:
        raise SimulationError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")


def init_basis(n: int, bits: str) -> StateVector:
    """Computational basis state ``|bits>``."""
    _check_width(n)
    if len(bits) != n or any(b not in "01" for b in bits):
        raise SimulationError(f"expected {n} bits of 0/1, got {bits!r}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[int(bits, 2) if bits else 0] = 1.0
    return StateVector(n, amps)


def product_state(qubit_states) -> StateVector:
    """Tensor product of single-qubit ``(a, b)`` amplitude pairs."""
    amps = np.array([1.0 + 0j])
    for a, b in qubit_states:
        amps = np.kron(amps, np.array([a, b], dtype=complex))
    return StateVector(len(qubit_states), amps)


def random_product_state(n: int, rng: np.random.Generator) -> StateVector:
    pairs = []
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        pairs.append((v[0], v[1]))
    return product_state(pairs)


def _apply_1q(t: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    t = np.moveaxis(t, q, 0)
    t = np.tensordot(m, t, axes=([1], [0]))
    return np.moveaxis(t, 0, q)


def _controlled(t: np.ndarray, m: np.ndarray, controls, target: int, n: int) -> np.ndarray:
    out = t.copy()
    sel = [slice(None)] * n
    for c in controls:
        sel[c] = 1
    sel = tuple(sel)
    sub = t[sel]
    # target axis index inside the sliced view shifts down past fixed controls
    axis = target - sum(1 for c in controls if c < target)
    out[sel] = _apply_1q(sub, m, axis)
    return out


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    """Apply one unitary gate; ``MEASURE`` must go through ``run``."""
    n = s.n
    if any(q >= n for q in g.qubits):
        raise SimulationError(f"{g.text()} out of range for {n} qubits")
    t = s.amps.reshape([2] * n)
    kind = g.kind
    if kind in GATE_MATRICES:
        t = _apply_1q(t, GATE_MATRICES[kind], g.qubits[0])
    elif kind in ("CX", "CY", "CZ"):
        t = _controlled(t, GATE_MATRICES[kind[1]], g.qubits[:1], g.qubits[1], n)
    elif kind == "CCX":
        t = _controlled(t, GATE_MATRICES["X"], g.qubits[:2], g.qubits[2], n)
    elif kind == "SWAP":
        t = np.swapaxes(t, *g.qubits)
    elif kind == "MEASURE":
        raise SimulationError("MEASURE is not unitary; use run()")
    else:
        raise SimulationError(f"unsupported gate {kind}")
    return StateVector(n, t.reshape(-1))


@dataclass(frozen=True)
class Measurement:
    qubit: int
    cbit: int
    p1: float
    outcome: int
    deterministic: bool


@dataclass(frozen=True)
class RunResult:
    final: StateVector
    cbits: tuple[int, ...]
    transcript: tuple[Measurement, ...]

    @property
    def all_deterministic(self) -> bool:
        return all(m.deterministic for m in self.transcript)


def _measure(s: StateVector, qubit: int, rng, tol: float):
    p1 = s.probability(qubit)
    if p1 <= tol:
        outcome, det = 0, True
    elif p1 >= 1 - tol:
        outcome, det = 1, True
    else:
        outcome, det = int(rng.random() < p1), False
    t = s.amps.reshape([2] * s.n).copy()
    sel = [slice(None)] * s.n
    sel[qubit] = 1 - outcome
    t[tuple(sel)] = 0
    amps = t.reshape(-1)
    amps = amps / np.sqrt(np.vdot(amps, amps).real)
    return StateVector(s.n, amps), p1, outcome, det


def run(c: Circuit, s0: StateVector, seed: int | None = 0, tol: float = DEFAULT_TOL) -> RunResult:
    """Simulate ``c`` from ``s0``; measurements sample only when not
    deterministic to within ``tol``."""
    if c.nqubits != s0.n:
        raise SimulationError(f"circuit width {c.nqubits} != state width {s0.n}")
    _check_width(s0.n)
    rng = np.random.default_rng(seed)
    s = s0
    cbits = [0] * c.ncbits
    transcript = []
    for g in c.gates:
        if g.kind == "MEASURE":
            s, p1, outcome, det = _measure(s, g.qubits[0], rng, tol)
            cbits[g.cbit] = outcome
            transcript.append(Measurement(g.qubits[0], g.cbit, p1, outcome, det))
        else:
            s = apply_gate(s, g)
    return RunResult(s, tuple(cbits), tuple(transcript))


def apply_pauli_error(s: StateVector, e: PauliString) -> StateVector:
    """Multiply the state by the Pauli operator ``e``, phase included."""
    if e.n != s.n:
        raise SimulationError(f"Pauli width {e.n} != state width {s.n}")
    t = s.amps.reshape([2] * s.n)
    for q in range(s.n):
        letter = e.letter(q)
        if letter != "I":
            t = _apply_1q(t, GATE_MATRICES[letter], q)
    return StateVector(s.n, (1j ** e.phase) * t.reshape(-1))


def overlap(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|``."""
    if a.n != b.n:
        raise SimulationError(f"width mismatch {a.n} vs {b.n}")
    return float(abs(np.vdot(a.amps, b.amps)))


def equiv_up_to_phase(a: StateVector, b: StateVector, tol: float = DEFAULT_TOL) -> bool:
    return overlap(a, b) >= 1 - tol


def eigencheck(s: StateVector, p: PauliString, tol: float = DEFAULT_TOL) -> int | None:
    """+1 or -1 if ``s`` is an eigenstate of ``p`` with that eigenvalue,
    else None."""
    ps = apply_pauli_error(s, p).amps
    if np.allclose(ps, s.amps, rtol=0, atol=tol):
        return 1
    if np.allclose(ps, -s.amps, rtol=0, atol=tol):
        return -1
    return None


def permute_qubits(s: StateVector, perm) -> StateVector:
    """Relabel qubits: qubit ``i`` of the result is qubit ``perm[i]`` of ``s``."""
    t = s.amps.reshape([2] * s.n)
    return StateVector(s.n, np.transpose(t, list(perm)).reshape(-1))


def partial_trace_keep(s: StateVector, keep: list[int]) -> np.ndarray:
    """Reduced density matrix on ``keep`` (in that order)."""
    rest = [q for q in range(s.n) if q not in keep]
    t = np.transpose(s.amps.reshape([2] * s.n), keep + rest)
    m = t.reshape(1 << len(keep), -1)
    return m @ m.conj().T


def dump(s: StateVector, cutoff: float = 1e-12) -> str:
    """One ``|bits> re im`` line per amplitude above ``cutoff``, by index."""
    lines = []
    for idx in np.nonzero(np.abs(s.amps) > cutoff)[0]:
        a = s.amps[idx]
        re = 0.0 if abs(a.real) <= cutoff else a.real
        im = 0.0 if abs(a.imag) <= cutoff else a.imag
        lines.append(f"|{idx:0{s.n}b}> {re:.10f} {im:.10f}")
    return "\n".join(lines)


def amplitude_map(s: StateVector, cutoff: float = 1e-12) -> dict[str, complex]:
    return {
        f"{idx:0{s.n}b}": complex(s.amps[idx])
        for idx in np.nonzero(np.abs(s.amps) > cutoff)[0]
    }
