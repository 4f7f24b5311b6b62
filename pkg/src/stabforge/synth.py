"""Encoder and syndrome-measurement circuit synthesis, syndrome tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import CONTROLLED_PAULI, Circuit, CircuitBuilder
from .f2linalg import InvalidStabilizerError, StandardForm
from .pauli import PauliString, symplectic_product


class CodePropertyError(ValueError):
    """The code cannot support a single-error lookup table."""


def synth_encoder(sf: StandardForm) -> Circuit:
    """Encoding circuit over the standard-form qubit order.

    Message qubits sit at positions ``n-k .. n-1``; the rest start in |0>.
    Each encoded X is applied controlled on its message qubit (its Z part
    acts on |0> and is dropped), then every X-type generator row ``i < r``
    gets H (plus S when its own letter is Y) on qubit ``i`` followed by
    controlled Paulis from qubit ``i`` onto the rest of the row.
    """
    n, k, r = sf.n, sf.k, sf.r
    x, z = sf.hs.xblock, sf.hs.zblock
    if x.shape != (n - k, n) or not 0 <= r <= n - k:
        raise ValueError("malformed standard form")
    b = CircuitBuilder(n)
    for i in range(k):
        ctrl = n - k + i
        xl = sf.xlogical[i]
        for j in range(n):
            if j != ctrl and xl[j]:
                b.add("CX", ctrl, j)
    for i in range(r):
        if not x[i, i]:
            raise ValueError(f"row {i} lacks its X pivot")
        b.add("H", i)
        if z[i, i]:
            b.add("S", i)
        for j in range(n):
            if j == i:
                continue
            letter = "IXZY"[x[i, j] + 2 * z[i, j]]
            if letter != "I":
                b.add(CONTROLLED_PAULI[letter], i, j)
    return b.build()


def check_commuting(generators: Sequence[PauliString]) -> None:
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            if symplectic_product(generators[i], generators[j]):
                raise InvalidStabilizerError(
                    f"generators {i} ({generators[i]}) and {j} ({generators[j]}) anticommute"
                )


def synth_syndrome(generators: Sequence[PauliString], n: int) -> Circuit:
    """Ancilla-based measurement of every generator.

    Generator ``i`` uses ancilla ``n+i`` and classical bit ``i``:
    H, controlled Paulis onto its support, H, measure.
    """
    for g in generators:
        if g.n != n:
            raise ValueError(f"generator {g} has width {g.n}, expected {n}")
    check_commuting(generators)
    m = len(generators)
    b = CircuitBuilder(n + m, m)
    for i, g in enumerate(generators):
        a = n + i
        b.add("H", a)
        for j in g.support():
            b.add(CONTROLLED_PAULI[g.letter(j)], a, j)
        b.add("H", a)
        b.measure(a, i)
    return b.build()


def syndrome_of(error: PauliString, generators: Sequence[PauliString]) -> tuple[int, ...]:
    return tuple(symplectic_product(error, g) for g in generators)


def syndrome_decimal(bits: Sequence[int]) -> int:
    """Generator 0 is the most significant bit."""
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def single_qubit_errors(n: int, letters: str = "XZY") -> list[PauliString]:
    """Errors in table order: for each qubit, each letter of ``letters``."""
    return [PauliString.single(n, q, ch) for q in range(n) for ch in letters]


@dataclass(frozen=True)
class SyndromeTable:
    generators: tuple[PauliString, ...]
    entries: tuple[tuple[PauliString, tuple[int, ...]], ...]

    @property
    def n(self) -> int:
        return self.generators[0].n

    def lookup_map(self) -> dict[tuple[int, ...], PauliString]:
        return {s: e for e, s in self.entries}

    def rows(self) -> list[dict]:
        return [
            {
                "error": e.letters,
                "syndrome": "".join(map(str, s)),
                "decimal": syndrome_decimal(s),
            }
            for e, s in self.entries
        ]

    def to_lines(self) -> str:
        """``error=IYIII syndrome=1101 decimal=13`` per entry."""
        return "\n".join(
            f"error={r['error']} syndrome={r['syndrome']} decimal={r['decimal']}"
            for r in self.rows()
        )

    def to_text(self) -> str:
        m = len(self.generators)
        width = len(str(self.n - 1))
        head = " ".join(str(j).rjust(width) for j in range(self.n))
        mcols = " ".join(f"M{i + 1}" for i in range(m))
        lines = [f"{head} | {mcols} | decimal"]
        for e, s in self.entries:
            letters = " ".join(ch.rjust(width) for ch in e.letters)
            bits = " ".join(str(b).rjust(len(f"M{i + 1}")) for i, b in enumerate(s))
            lines.append(f"{letters} | {bits} | {syndrome_decimal(s)}")
        return "\n".join(lines)


def syndrome_table(
    generators: Sequence[PauliString], n: int, letters: str = "XZY"
) -> SyndromeTable:
    """All single-qubit errors (plus identity, last) and their syndromes.

    Raises ``CodePropertyError`` if two listed errors share a syndrome.
    """
    gens = tuple(generators)
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} has width {g.n}, expected {n}")
    check_commuting(gens)
    errors = single_qubit_errors(n, letters) + [PauliString.identity(n)]
    entries = []
    seen: dict[tuple[int, ...], PauliString] = {}
    for e in errors:
        s = syndrome_of(e, gens)
        if s in seen:
            raise CodePropertyError(
                f"errors {seen[s].letters} and {e.letters} share syndrome {''.join(map(str, s))}"
            )
        seen[s] = e
        entries.append((e, s))
    return SyndromeTable(gens, tuple(entries))


def correction_lookup(t: SyndromeTable, s: Sequence[int]) -> PauliString | None:
    """Single-qubit correction for syndrome ``s``; None if uncorrectable."""
    s = tuple(int(b) for b in s)
    if len(s) != len(t.generators):
        raise ValueError(f"syndrome has {len(s)} bits, table expects {len(t.generators)}")
    return t.lookup_map().get(s)
