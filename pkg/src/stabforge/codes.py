"""Code catalog, code-spec files and end-to-end verification pipelines."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .circuit import Circuit, optimize_trivial_z, parse_circuit
from .f2linalg import (
    CheckMatrix,
    F2Error,
    InvalidStabilizerError,
    RankDeficiencyError,
    StandardForm,
    css_check_matrix,
    to_standard_form,
)
from .pauli import PauliError, PauliString, parse_pauli, symplectic_product
from .sim import (
    DEFAULT_TOL,
    StateVector,
    amplitude_map,
    apply_pauli_error,
    eigencheck,
    init_basis,
    overlap,
    partial_trace_keep,
    product_state,
    run,
)
from .synth import (
    correction_lookup,
    synth_encoder,
    synth_syndrome,
    syndrome_of,
    syndrome_table,
)


class CodeSpecError(ValueError):
    """Malformed or invalid code specification."""


class CommutationError(CodeSpecError):
    pass


class DependenceError(CodeSpecError):
    pass


class WidthError(CodeSpecError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    name: str
    n: int
    k: int
    generators: tuple[PauliString, ...]
    logical_x: tuple[PauliString, ...] | None = None
    logical_z: tuple[PauliString, ...] | None = None
    layout: str | None = None
    # single-qubit error letters the code is meant to correct
    correctable: str = "XZY"

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for attr in ("logical_x", "logical_z"):
            val = getattr(self, attr)
            if val is not None:
                object.__setattr__(self, attr, tuple(val))
        self.validate()

    def validate(self) -> None:
        every = list(self.generators) + list(self.logical_x or ()) + list(self.logical_z or ())
        for p in every:
            if p.n != self.n:
                raise WidthError(f"{self.name}: {p} has width {p.n}, expected n={self.n}")
        if len(self.generators) != self.n - self.k:
            raise WidthError(
                f"{self.name}: {len(self.generators)} generators, expected n-k={self.n - self.k}"
            )
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if symplectic_product(gens[i], gens[j]):
                    raise CommutationError(
                        f"{self.name}: generators {i} ({gens[i]}) and {j} ({gens[j]}) anticommute"
                    )
        try:
            self.check_matrix.validate()
        except RankDeficiencyError as exc:
            raise DependenceError(f"{self.name}: {exc}") from None
        for attr in ("logical_x", "logical_z"):
            for p in getattr(self, attr) or ():
                if len(getattr(self, attr)) != self.k:
                    raise WidthError(f"{self.name}: need {self.k} {attr} operators")
                for g in gens:
                    if symplectic_product(p, g):
                        raise CommutationError(f"{self.name}: {attr} {p} anticommutes with {g}")

    @property
    def check_matrix(self) -> CheckMatrix:
        return CheckMatrix.from_paulis(self.generators)

    def standard_form(self) -> StandardForm:
        return to_standard_form(self.check_matrix)

    def relabelled(self, perm: Sequence[int], name: str | None = None) -> "CodeSpec":
        """Same code with qubit ``perm[i]`` moved to position ``i``."""
        def rel(ps):
            return None if ps is None else tuple(p.permuted(perm) for p in ps)

        return CodeSpec(
            name or f"{self.name}-relabelled",
            self.n,
            self.k,
            rel(self.generators),
            rel(self.logical_x),
            rel(self.logical_z),
            self.layout,
            self.correctable,
        )

    def to_text(self) -> str:
        lines = [f"name {self.name}", f"n {self.n}", f"k {self.k}"]
        lines += [f"stabilizer {g.letters}" for g in self.generators]
        lines += [f"logical_x {p.letters}" for p in self.logical_x or ()]
        lines += [f"logical_z {p.letters}" for p in self.logical_z or ()]
        if self.layout:
            lines.append(f"layout {self.layout}")
        if self.correctable != "XZY":
            lines.append(f"correctable {self.correctable}")
        return "\n".join(lines) + "\n"


HAMMING_H = ("1101100", "1011010", "0111001")


def _spec(name, gens, lx=None, lz=None, correctable="XZY", k=1):
    gens = [parse_pauli(g) for g in gens]
    return CodeSpec(
        name,
        gens[0].n,
        k,
        tuple(gens),
        None if lx is None else tuple(parse_pauli(p) for p in lx),
        None if lz is None else tuple(parse_pauli(p) for p in lz),
        correctable=correctable,
    )


def _hamming_steane() -> CodeSpec:
    cm = css_check_matrix(HAMMING_H, HAMMING_H)
    return CodeSpec(
        "steane_hamming",
        7,
        1,
        tuple(cm.rows()),
        (parse_pauli("XXXXXXX"),),
        (parse_pauli("ZZZZZZZ"),),
    )


_BUILTINS = {
    "bitflip3": lambda: _spec("bitflip3", ["ZZI", "ZIZ"], correctable="X"),
    "phaseflip3": lambda: _spec("phaseflip3", ["XXI", "XIX"], correctable="Z"),
    "shor9": lambda: _spec(
        "shor9",
        [
            "ZZIIIIIII", "ZIZIIIIII", "IIIZZIIII", "IIIZIZIII",
            "IIIIIIZZI", "IIIIIIZIZ", "XXXXXXIII", "XXXIIIXXX",
        ],
    ),
    "five_qubit": lambda: _spec(
        "five_qubit", ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], ["XXXXX"], ["ZZZZZ"]
    ),
    "steane": lambda: _spec(
        "steane",
        ["XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI", "ZIZIZIZ"],
        ["XXXXXXX"],
        ["ZZZZZZZ"],
    ),
    "steane_hamming": _hamming_steane,
    "four_two_two": lambda: _spec("four_two_two", ["XXXX", "ZZZZ"], k=2),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> CodeSpec:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise CodeSpecError(
            f"unknown builtin code {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None


def parse_code(text: str, base_dir: Path | None = None) -> CodeSpec:
    fields: dict = {"stabilizer": [], "logical_x": [], "logical_z": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        value = value.strip()
        if not value:
            raise CodeSpecError(f"line {lineno}: '{key}' needs a value")
        try:
            if key in ("stabilizer", "logical_x", "logical_z"):
                fields[key].append(parse_pauli(value))
            elif key in ("n", "k"):
                fields[key] = int(value)
            elif key in ("name", "correctable"):
                fields[key] = value
            elif key == "layout":
                path = Path(value)
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                fields[key] = str(path)
            else:
                raise CodeSpecError(f"line {lineno}: unknown key {key!r}")
        except (PauliError, ValueError) as exc:
            if isinstance(exc, CodeSpecError):
                raise
            raise CodeSpecError(f"line {lineno}: {exc}") from None
    for key in ("n", "k"):
        if key not in fields:
            raise CodeSpecError(f"missing '{key}' line")
    if not fields["stabilizer"]:
        raise CodeSpecError("no 'stabilizer' lines")
    try:
        return CodeSpec(
            fields.get("name", "unnamed"),
            fields["n"],
            fields["k"],
            tuple(fields["stabilizer"]),
            tuple(fields["logical_x"]) or None,
            tuple(fields["logical_z"]) or None,
            fields.get("layout"),
            fields.get("correctable", "XZY"),
        )
    except F2Error as exc:
        raise CodeSpecError(str(exc)) from None


def load_code(source) -> CodeSpec:
    """Load ``builtin:<name>`` or a code-spec file path."""
    source = str(source)
    if source.startswith("builtin:"):
        return builtin(source.split(":", 1)[1])
    path = Path(source)
    return parse_code(path.read_text(), path.parent)


# --- encoding helpers ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Encoding:
    """A code compiled to an encoder, in the standard-form qubit order."""

    spec: CodeSpec
    sf: StandardForm
    encoder: Circuit

    @property
    def perm(self) -> tuple[int, ...]:
        return self.sf.perm

    def generators_in_encoder_order(self) -> list[PauliString]:
        return [g.permuted(self.perm) for g in self.spec.generators]

    def to_encoder_order(self, p: PauliString) -> PauliString:
        return p.permuted(self.perm)

    def encode(self, logical_bits: str) -> StateVector:
        n, k = self.spec.n, self.spec.k
        if len(logical_bits) != k:
            raise ValueError(f"expected {k} logical bits, got {logical_bits!r}")
        return run(self.encoder, init_basis(n, "0" * (n - k) + logical_bits)).final

    def encode_original_order(self, logical_bits: str) -> StateVector:
        from .sim import permute_qubits

        return permute_qubits(self.encode(logical_bits), self.sf.inverse_perm())


def compile_code(spec: CodeSpec, optimize: bool = True) -> Encoding:
    sf = spec.standard_form()
    enc = synth_encoder(sf)
    if optimize:
        enc = optimize_trivial_z(enc, range(spec.n - spec.k))
    return Encoding(spec, sf, enc)


def logical_inputs(k: int) -> list[str]:
    return [format(i, f"0{k}b") for i in range(1 << k)]


def generator_signs(encoding: Encoding, logical_bits: str) -> list[int | None]:
    """Eigenvalue of every original generator on an encoded basis state."""
    s = encoding.encode(logical_bits)
    return [eigencheck(s, g) for g in encoding.generators_in_encoder_order()]


# --- round trip ------------------------------------------------------------


@dataclass
class RoundTripReport:
    code: str
    logical_input: str
    error: str
    expected_syndrome: str
    measured_syndrome: str
    correction: str | None
    fidelity: float
    deterministic: bool
    verdict: bool
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.verdict else "FAIL"
        corr = self.correction if self.correction is not None else "uncorrectable"
        text = (
            f"{status} {self.code} |{self.logical_input}> error={self.error} "
            f"syndrome={self.measured_syndrome} correction={corr} fidelity={self.fidelity:.12f}"
        )
        return text + (f" ({self.note})" if self.note else "")


def _split_data(state: StateVector, ndata: int, ancilla_bits: Sequence[int]) -> StateVector:
    """Data-register state once the ancillas are known to hold ``ancilla_bits``."""
    nanc = state.n - ndata
    idx = 0
    for b in ancilla_bits:
        idx = (idx << 1) | int(b)
    block = state.amps.reshape(1 << ndata, 1 << nanc)[:, idx]
    norm = np.linalg.norm(block)
    return StateVector(ndata, block / norm)


def verify_roundtrip(
    spec: CodeSpec,
    logical_input: str,
    error: PauliString,
    seed: int | None = 0,
    tol: float = DEFAULT_TOL,
    encoding: Encoding | None = None,
) -> RoundTripReport:
    """Encode, corrupt, extract the syndrome, correct and compare.

    ``error`` and the syndrome table use the code's own qubit labels; they
    are carried into the encoder's qubit order when the standard form
    relabelled qubits.
    """
    if error.n != spec.n or error.weight > 1:
        raise ValueError(f"error must be identity or single-qubit on {spec.n} qubits")
    enc = encoding or compile_code(spec)
    n = spec.n
    table = syndrome_table(spec.generators, n, spec.correctable)
    expected = syndrome_of(error, spec.generators)
    clean = enc.encode(logical_input)

    notes = []
    signs = [eigencheck(clean, g) for g in enc.generators_in_encoder_order()]
    if any(s != 1 for s in signs):
        notes.append(f"encoded state is not a +1 eigenstate of every generator: {signs}")

    corrupted = apply_pauli_error(clean, enc.to_encoder_order(error))
    gens = enc.generators_in_encoder_order()
    syn_circ = synth_syndrome(gens, n)
    full = corrupted.tensor(init_basis(len(gens), "0" * len(gens)))
    result = run(syn_circ, full, seed=seed, tol=tol)
    measured = result.cbits
    deterministic = result.all_deterministic
    if not deterministic:
        notes.append("syndrome measurement was not deterministic")

    data = _split_data(result.final, n, measured)
    if overlap(data, corrupted) < 1 - tol:
        notes.append("syndrome extraction disturbed the data")
    correction = correction_lookup(table, measured)
    if correction is None:
        fidelity = overlap(data, clean)
        notes.append("uncorrectable syndrome")
        corr_text = None
    else:
        fixed = apply_pauli_error(data, enc.to_encoder_order(correction))
        fidelity = overlap(fixed, clean)
        corr_text = correction.letters
    verdict = (
        correction is not None
        and fidelity >= 1 - tol
        and tuple(measured) == expected
        and deterministic
        and all(s == 1 for s in signs)
    )
    if not enc.sf.is_identity_perm:
        notes.append(f"encoder qubit order {list(enc.perm)}")
    return RoundTripReport(
        code=spec.name,
        logical_input=logical_input,
        error=error.letters,
        expected_syndrome="".join(map(str, expected)),
        measured_syndrome="".join(map(str, measured)),
        correction=corr_text,
        fidelity=fidelity,
        deterministic=deterministic,
        verdict=verdict,
        note="; ".join(notes),
    )


def exhaustive_cases(spec: CodeSpec) -> list[tuple[str, PauliString]]:
    """Every logical basis input crossed with the identity and every
    correctable single-qubit error."""
    errors = [PauliString.identity(spec.n)] + [
        PauliString.single(spec.n, q, ch) for q in range(spec.n) for ch in spec.correctable
    ]
    return [(bits, e) for bits in logical_inputs(spec.k) for e in errors]


def verify_exhaustive(spec: CodeSpec, seed: int | None = 0, tol: float = DEFAULT_TOL):
    enc = compile_code(spec)
    return [
        verify_roundtrip(spec, bits, e, seed=seed, tol=tol, encoding=enc)
        for bits, e in exhaustive_cases(spec)
    ]


# --- reference codewords ---------------------------------------------------

_FIVE_ZERO_PLUS = "00000 10010 01001 10100 01010 00101"
_FIVE_ZERO_MINUS = "11011 00110 11000 11101 00011 11110 01111 10001 01100 10111"
_FIVE_ONE_PLUS = "00100 11001 00111 00010 11100 00001 10000 01110 10011 01000"
_FIVE_ONE_MINUS = "11111 01101 10110 01011 10101 11010"
_STEANE_ZERO = "0000000 1111000 1100110 1010101 0011110 0101101 0110011 1001011"
_STEANE_ONE = "0000111 1111111 1100001 1010010 0011001 0101010 0110100 1001100"


def _signed(plus: str, minus: str, scale: float) -> dict[str, complex]:
    out = {b: complex(scale) for b in plus.split()}
    out.update({b: complex(-scale) for b in minus.split()})
    return out


REFERENCE_CODEWORDS = {
    ("five_qubit", "0"): _signed(_FIVE_ZERO_PLUS, _FIVE_ZERO_MINUS, 0.25),
    ("five_qubit", "1"): _signed(_FIVE_ONE_PLUS, _FIVE_ONE_MINUS, 0.25),
    ("steane", "0"): _signed(_STEANE_ZERO, "", 1 / (2 * np.sqrt(2))),
    ("steane", "1"): _signed(_STEANE_ONE, "", 1 / (2 * np.sqrt(2))),
}


@dataclass
class AmplitudeCheck:
    code: str
    logical_input: str
    rows: list[tuple[str, complex, complex | None]] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    eigen: dict[str, int | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(v == 1 for v in self.eigen.values())

    def listing(self) -> str:
        lines = []
        for basis, got, want in self.rows:
            want_txt = "-" if want is None else f"{want.real:+.6f}"
            lines.append(f"|{basis}> sim={got.real:+.6f}{got.imag:+.6f}i ref={want_txt}")
        return "\n".join(lines)


def verify_codeword_amplitudes(
    spec: CodeSpec, logical_input: str, tol: float = DEFAULT_TOL
) -> AmplitudeCheck:
    """Compare the encoder's output amplitudes against a stored expansion.

    The state is compared in the code's own qubit order.  Independently of
    the expansion, the state must be a +1 eigenstate of every generator
    and of the encoded Z (``-1`` for input 1 when k == 1).
    """
    ref = REFERENCE_CODEWORDS.get((spec.name, logical_input))
    if ref is None:
        raise CodeSpecError(f"no reference expansion for {spec.name} |{logical_input}>")
    enc = compile_code(spec)
    state = enc.encode_original_order(logical_input)
    got = amplitude_map(state)
    check = AmplitudeCheck(spec.name, logical_input)
    for basis in sorted(set(got) | set(ref)):
        g = got.get(basis, 0j)
        w = ref.get(basis)
        check.rows.append((basis, g, w))
        if w is None or abs(g - w) > tol:
            check.mismatches.append(basis)
    for i, gen in enumerate(spec.generators):
        check.eigen[f"M{i + 1}"] = eigencheck(state, gen, tol)
    for i, lz in enumerate(spec.logical_z or ()):
        val = eigencheck(state, lz, tol)
        want = 1 if logical_input[i] == "0" else -1
        check.eigen[f"Zbar{i + 1}"] = 1 if val == want else val
    return check


# --- hand-built Shor circuits ---------------------------------------------


def _data_circuit(name: str) -> Circuit:
    text = resources.files("stabforge").joinpath("data", name).read_text()
    return parse_circuit(text)


def shor_encoder_circuit() -> Circuit:
    return _data_circuit("shor9_encoder.circ")


def shor_decoder_circuit() -> Circuit:
    return _data_circuit("shor9_decoder.circ")


SHOR_MESSAGES = {
    "0": (1.0, 0.0),
    "1": (0.0, 1.0),
    "+": (1 / np.sqrt(2), 1 / np.sqrt(2)),
    "+i": (1 / np.sqrt(2), 1j / np.sqrt(2)),
}


def shor_circuit_roundtrip(
    error: PauliString, message=(1.0, 0.0), tol: float = DEFAULT_TOL
) -> RoundTripReport:
    """Run the hand-built nine-qubit encoder, ``error`` and the majority-vote
    decoder; pass iff qubit 0 ends in the message state."""
    if error.n != 9:
        raise ValueError("Shor circuits act on 9 qubits")
    a, b = message
    phi = np.array([a, b], dtype=complex)
    phi /= np.linalg.norm(phi)
    start = product_state([tuple(phi)] + [(1, 0)] * 8)
    encoded = run(shor_encoder_circuit(), start).final
    decoded = run(shor_decoder_circuit(), apply_pauli_error(encoded, error)).final
    rho = partial_trace_keep(decoded, [0])
    fidelity = float(np.real(phi.conj() @ rho @ phi))
    note = "" if error.weight <= 1 else "multi-qubit error exceeds code capability"
    return RoundTripReport(
        code="shor9-circuit",
        logical_input=f"{complex(phi[0]):.4f},{complex(phi[1]):.4f}",
        error=error.letters,
        expected_syndrome="",
        measured_syndrome="",
        correction=None,
        fidelity=fidelity,
        deterministic=True,
        verdict=fidelity >= 1 - tol,
        note=note,
    )
