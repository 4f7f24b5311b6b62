"""Circuit intermediate representation and its line-oriented text format.

Gates are applied in list order.  The text format is::

    qubits 3
    cbits 1
    H 0
    CX 0 1        # control then target
    CCX 0 1 2     # two controls then target
    SWAP 1 2
    M 2 -> 0

Blank lines and ``#`` comments are ignored; all indices are 0-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

SINGLE = ("H", "S", "X", "Y", "Z")
CONTROLLED = ("CX", "CY", "CZ")
KINDS = SINGLE + CONTROLLED + ("CCX", "SWAP", "MEASURE")
ARITY = {**{k: 1 for k in SINGLE}, **{k: 2 for k in CONTROLLED}, "CCX": 3, "SWAP": 2, "MEASURE": 1}

# controlled gate for each single-qubit Pauli letter
CONTROLLED_PAULI = {"X": "CX", "Y": "CY", "Z": "CZ"}


class CircuitError(ValueError):
    """Invalid gate or circuit."""


class CircuitParseError(CircuitError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    cbit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise CircuitError(
                f"{self.kind} takes {ARITY[self.kind]} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"{self.kind} has repeated operand in {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError(f"negative qubit index in {self.qubits}")
        if self.kind == "MEASURE":
            if self.cbit is None or self.cbit < 0:
                raise CircuitError("MEASURE needs a non-negative classical bit")
        elif self.cbit is not None:
            raise CircuitError(f"{self.kind} does not take a classical bit")

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def touched(self) -> tuple[int, ...]:
        """Qubits whose computational-basis value the gate may change."""
        if self.kind == "SWAP":
            return self.qubits
        return (self.qubits[-1],)

    def text(self) -> str:
        if self.kind == "MEASURE":
            return f"M {self.qubits[0]} -> {self.cbit}"
        return " ".join([self.kind, *map(str, self.qubits)])


@dataclass(frozen=True)
class Circuit:
    nqubits: int
    ncbits: int = 0
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.nqubits < 0 or self.ncbits < 0:
            raise CircuitError("register sizes must be non-negative")
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        for q in g.qubits:
            if q >= self.nqubits:
                raise CircuitError(f"{g.text()}: qubit {q} out of range (width {self.nqubits})")
        if g.cbit is not None and g.cbit >= self.ncbits:
            raise CircuitError(f"{g.text()}: cbit {g.cbit} out of range ({self.ncbits} cbits)")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.nqubits, self.ncbits, tuple(gates))

    def extended(self, gates: Iterable[Gate]) -> "Circuit":
        return self.with_gates(self.gates + tuple(gates))

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)


class CircuitBuilder:
    """Mutable helper for assembling a ``Circuit`` gate by gate."""

    def __init__(self, nqubits: int, ncbits: int = 0):
        self.nqubits = nqubits
        self.ncbits = ncbits
        self.gates: list[Gate] = []

    def add(self, kind: str, *qubits: int, cbit: int | None = None) -> "CircuitBuilder":
        self.gates.append(Gate(kind, qubits, cbit))
        return self

    def measure(self, qubit: int, cbit: int) -> "CircuitBuilder":
        return self.add("MEASURE", qubit, cbit=cbit)

    def build(self) -> Circuit:
        return Circuit(self.nqubits, self.ncbits, tuple(self.gates))


def gate_counts(c: Circuit) -> dict[str, int]:
    """Number of gates of every kind; absent kinds map to 0."""
    counts = Counter(g.kind for g in c.gates)
    return {k: counts.get(k, 0) for k in KINDS}


def serialize(c: Circuit) -> str:
    lines = [f"qubits {c.nqubits}", f"cbits {c.ncbits}"]
    lines += [g.text() for g in c.gates]
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CircuitParseError(lineno, f"expected an integer, got {tok!r}") from None


def parse_circuit(text: str) -> Circuit:
    nqubits = ncbits = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head in ("qubits", "cbits"):
            if len(toks) != 2:
                raise CircuitParseError(lineno, f"'{head}' takes one integer")
            val = _parse_int(toks[1], lineno)
            if head == "qubits":
                nqubits = val
            else:
                ncbits = val
            continue
        if nqubits is None:
            raise CircuitParseError(lineno, "gate before 'qubits' header")
        try:
            if head == "M":
                if len(toks) != 4 or toks[2] != "->":
                    raise CircuitParseError(lineno, "measurement must read 'M <q> -> <c>'")
                gate = Gate("MEASURE", (_parse_int(toks[1], lineno),), _parse_int(toks[3], lineno))
            elif head in ARITY and head != "MEASURE":
                gate = Gate(head, tuple(_parse_int(t, lineno) for t in toks[1:]))
            else:
                raise CircuitParseError(lineno, f"unknown gate {head!r}")
        except CircuitParseError:
            raise
        except CircuitError as exc:
            raise CircuitParseError(lineno, str(exc)) from None
        gates.append((lineno, gate))
    if nqubits is None:
        raise CircuitParseError(0, "missing 'qubits' header")
    circ = Circuit(nqubits, ncbits or 0)
    for lineno, g in gates:
        try:
            circ._check(g)
        except CircuitError as exc:
            raise CircuitParseError(lineno, str(exc)) from None
    return circ.with_gates(g for _, g in gates)


def optimize_trivial_z(c: Circuit, zero_init: Iterable[int]) -> Circuit:
    """Drop Z and controlled-Z gates that act on a qubit still in |0>.

    A qubit in ``zero_init`` is assumed to hold |0> until some kept gate
    uses it as a target (or either side of a SWAP).
    """
    fresh = set(zero_init)
    kept = []
    for g in c.gates:
        if g.kind in ("Z", "CZ") and g.target in fresh:
            continue
        kept.append(g)
        fresh.difference_update(g.touched())
    return c.with_gates(kept)
