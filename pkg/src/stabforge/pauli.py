"""Pauli strings in the binary symplectic representation.

A ``PauliString`` on ``n`` qubits is ``i**phase`` times a tensor product of
single-qubit letters.  Letter ``j`` is encoded by the bit pair
``(xbits[j], zbits[j])``: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).  Here ``Y``
always means the Hermitian matrix [[0, -i], [i, 0]], so ``Y = i X Z``.

Qubit 0 is the leftmost letter of the text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

LETTERS = "IXZY"  # indexed by x + 2*z

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}

# exponent of i picked up by letter_a * letter_b, indexed [a][b] with I,X,Z,Y order
_PRODUCT_PHASE = (
    (0, 0, 0, 0),  # I
    (0, 0, 3, 1),  # X.X = I, X.Z = -iY, X.Y = iZ
    (0, 1, 0, 3),  # Z.X = iY, Z.Z = I, Z.Y = -iX
    (0, 3, 1, 0),  # Y.X = -iZ, Y.Z = iX, Y.Y = I
)


class PauliError(ValueError):
    """Raised for malformed Pauli text or mismatched widths."""


@dataclass(frozen=True)
class PauliString:
    xbits: tuple[int, ...]
    zbits: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        if len(self.xbits) != len(self.zbits):
            raise PauliError("xbits and zbits must have equal length")
        object.__setattr__(self, "xbits", tuple(int(b) & 1 for b in self.xbits))
        object.__setattr__(self, "zbits", tuple(int(b) & 1 for b in self.zbits))
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @property
    def n(self) -> int:
        return len(self.xbits)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """Weight-one Pauli ``letter`` on ``qubit``, identity elsewhere."""
        if not 0 <= qubit < n:
            raise PauliError(f"qubit {qubit} out of range for n={n}")
        text = ["I"] * n
        text[qubit] = letter
        return parse_pauli("".join(text))

    @classmethod
    def from_symplectic(cls, vec: Sequence[int], phase: int = 0) -> "PauliString":
        """Build from a length-2n ``[x | z]`` bit vector."""
        vec = [int(b) for b in vec]
        if len(vec) % 2:
            raise PauliError("symplectic vector must have even length")
        n = len(vec) // 2
        return cls(tuple(vec[:n]), tuple(vec[n:]), phase)

    def symplectic(self) -> np.ndarray:
        return np.array(self.xbits + self.zbits, dtype=np.uint8)

    def letter(self, j: int) -> str:
        return LETTERS[self.xbits[j] + 2 * self.zbits[j]]

    @property
    def letters(self) -> str:
        return "".join(self.letter(j) for j in range(self.n))

    @property
    def weight(self) -> int:
        return sum(1 for x, z in zip(self.xbits, self.zbits) if x or z)

    def support(self) -> list[int]:
        return [j for j in range(self.n) if self.xbits[j] or self.zbits[j]]

    def is_identity(self) -> bool:
        return self.weight == 0

    def permuted(self, perm: Sequence[int]) -> "PauliString":
        """Relabel qubits: position ``i`` of the result holds qubit ``perm[i]``."""
        return PauliString(
            tuple(self.xbits[p] for p in perm),
            tuple(self.zbits[p] for p in perm),
            self.phase,
        )

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        if self.phase == 0:
            return self.letters
        return _PHASE_TEXT[self.phase] + self.letters

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"


def parse_pauli(text: str) -> PauliString:
    """Parse a letter string such as ``"XZZXI"``; the phase is always +1."""
    if not text:
        raise PauliError("empty Pauli string")
    xs, zs = [], []
    for pos, ch in enumerate(text):
        if ch not in LETTERS:
            raise PauliError(f"invalid Pauli letter {ch!r} at position {pos}")
        code = LETTERS.index(ch)
        xs.append(code & 1)
        zs.append(code >> 1)
    return PauliString(tuple(xs), tuple(zs))


def _check_width(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise PauliError(f"width mismatch: {a.n} vs {b.n}")


def symplectic_product(a: PauliString, b: PauliString) -> int:
    """0 if ``a`` and ``b`` commute, 1 if they anticommute."""
    _check_width(a, b)
    total = 0
    for ax, az, bx, bz in zip(a.xbits, a.zbits, b.xbits, b.zbits):
        total += ax * bz + az * bx
    return total & 1


def commutes(a: PauliString, b: PauliString) -> bool:
    return symplectic_product(a, b) == 0


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Operator product ``a @ b`` with the phase tracked exactly."""
    _check_width(a, b)
    phase = a.phase + b.phase
    for ax, az, bx, bz in zip(a.xbits, a.zbits, b.xbits, b.zbits):
        phase += _PRODUCT_PHASE[ax + 2 * az][bx + 2 * bz]
    return PauliString(
        tuple(x ^ y for x, y in zip(a.xbits, b.xbits)),
        tuple(x ^ y for x, y in zip(a.zbits, b.zbits)),
        phase,
    )


def product(paulis: Iterable[PauliString], n: int) -> PauliString:
    """Left-to-right product of ``paulis``; identity when empty."""
    acc = PauliString.identity(n)
    for p in paulis:
        acc = multiply(acc, p)
    return acc


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense ``2**n`` matrix of ``p`` (qubit 0 is the most significant factor)."""
    mats = {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    out = np.array([[1.0 + 0j]])
    for ch in p.letters:
        out = np.kron(out, mats[ch])
    return (1j ** p.phase) * out
