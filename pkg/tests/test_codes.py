import pytest

from conftest import SHOR_OPERATORS
from stabforge.codes import (
    BUILTIN_NAMES,
    CodeSpecError,
    CommutationError,
    DependenceError,
    REFERENCE_CODEWORDS,
    SHOR_MESSAGES,
    WidthError,
    builtin,
    compile_code,
    exhaustive_cases,
    generator_signs,
    load_code,
    parse_code,
    shor_circuit_roundtrip,
    verify_codeword_amplitudes,
    verify_exhaustive,
    verify_roundtrip,
)
from stabforge.pauli import PauliString, parse_pauli
from stabforge.sim import eigencheck
from stabforge.synth import CodePropertyError

FIVE_FILE = """\
# five-qubit perfect code
name five
n 5
k 1
stabilizer XZZXI
stabilizer IXZZX
stabilizer XIXZZ
stabilizer ZXIXZ
logical_x XXXXX
logical_z ZZZZZ
"""


class TestCatalog:
    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_builtins_validate(self, name):
        spec = builtin(name)
        assert len(spec.generators) == spec.n - spec.k
        assert parse_code(spec.to_text()) == spec

    def test_unknown_builtin(self):
        with pytest.raises(CodeSpecError, match="unknown builtin"):
            builtin("golay")

    def test_load_file(self, tmp_path):
        path = tmp_path / "five.code"
        path.write_text(FIVE_FILE)
        spec = load_code(path)
        assert spec.name == "five" and spec.n == 5
        assert spec.generators == builtin("five_qubit").generators
        assert load_code("builtin:steane").name == "steane"

    @pytest.mark.parametrize(
        "text,exc,fragment",
        [
            ("n 2\nk 0\nstabilizer XI\nstabilizer ZI\n", CommutationError, "anticommute"),
            ("n 3\nk 0\nstabilizer ZZI\nstabilizer IZZ\nstabilizer ZIZ\n", DependenceError, "dependent"),
            ("n 3\nk 1\nstabilizer ZZI\nstabilizer ZZ\n", WidthError, "width"),
            ("n 3\nk 2\nstabilizer ZZI\nstabilizer IZZ\n", WidthError, "n-k"),
            ("n 3\nk 1\nstabilizer ZQI\n", CodeSpecError, "line 3"),
            ("n 3\nk 1\nbogus 4\n", CodeSpecError, "unknown key"),
            ("k 1\nstabilizer ZZ\n", CodeSpecError, "missing 'n'"),
            ("n 2\nk 1\nstabilizer ZZ\nlogical_x XI\n", CommutationError, "logical_x"),
        ],
    )
    def test_bad_specs(self, text, exc, fragment):
        with pytest.raises(exc, match=fragment):
            parse_code(text)

    def test_relabelled(self, steane_hamming):
        perm = steane_hamming.standard_form().perm
        r = steane_hamming.relabelled(perm, "x")
        assert r.generators[0].letters == "XIIXXXI"
        assert r.standard_form().is_identity_perm


class TestRoundTrip:
    def test_five_qubit_single(self, five):
        r = verify_roundtrip(five, "1", parse_pauli("IYIII"))
        assert r.verdict and r.measured_syndrome == "1101" and r.correction == "IYIII"
        assert "PASS five_qubit |1> error=IYIII syndrome=1101" in r.line()

    def test_steane_table_frame(self, steane_table_frame):
        r = verify_roundtrip(steane_table_frame, "0", parse_pauli("IIIZIII"))
        assert r.measured_syndrome == "110000" and int(r.measured_syndrome, 2) == 48
        assert r.verdict

    def test_steane_hamming_notes_relabelling(self, steane_hamming):
        r = verify_roundtrip(steane_hamming, "1", parse_pauli("XIIIIII"))
        assert r.verdict
        assert "encoder qubit order" in r.note

    def test_rejects_multi_qubit(self, five):
        with pytest.raises(ValueError):
            verify_roundtrip(five, "0", parse_pauli("XXIII"))

    def test_exhaustive_counts(self, five):
        assert len(exhaustive_cases(five)) == 32
        assert len(exhaustive_cases(builtin("four_two_two"))) == 4 * 13

    @pytest.mark.parametrize("name", ["bitflip3", "phaseflip3", "steane_hamming"])
    def test_exhaustive_other_codes(self, name):
        assert all(r.verdict for r in verify_exhaustive(builtin(name)))

    def test_distance_two_code_has_no_table(self):
        with pytest.raises(CodePropertyError):
            verify_exhaustive(builtin("four_two_two"))

    def test_generator_signs_positive(self, five):
        enc = compile_code(five)
        assert generator_signs(enc, "0") == [1, 1, 1, 1]
        assert generator_signs(enc, "1") == [1, 1, 1, 1]


class TestReference:
    @pytest.mark.parametrize("key", sorted(REFERENCE_CODEWORDS))
    def test_expansions(self, key):
        name, bits = key
        check = verify_codeword_amplitudes(builtin(name), bits)
        assert check.ok, check.listing()

    def test_missing_reference(self):
        with pytest.raises(CodeSpecError):
            verify_codeword_amplitudes(builtin("bitflip3"), "0")


class TestShor:
    def test_generic_pipeline_eigenstates(self):
        enc = compile_code(builtin("shor9"))
        ops = [parse_pauli(p) for p in SHOR_OPERATORS]
        for bits in "01":
            s = enc.encode_original_order(bits)
            assert all(eigencheck(s, op) == 1 for op in ops)

    @pytest.mark.parametrize("label", sorted(SHOR_MESSAGES))
    def test_hand_built_circuits(self, label):
        msg = SHOR_MESSAGES[label]
        for q in range(9):
            for ch in "XYZ":
                rep = shor_circuit_roundtrip(PauliString.single(9, q, ch), msg)
                assert rep.verdict, rep.line()

    def test_two_errors_in_one_block_fail(self):
        rep = shor_circuit_roundtrip(parse_pauli("XXIIIIIII"), SHOR_MESSAGES["+"])
        assert not rep.verdict
        assert "exceeds" in rep.note

    def test_three_qubit_examples(self):
        r = verify_roundtrip(builtin("bitflip3"), "1", parse_pauli("IIX"))
        assert r.measured_syndrome == "01" and r.verdict
        r = verify_roundtrip(builtin("phaseflip3"), "1", parse_pauli("ZII"))
        assert r.measured_syndrome == "11" and r.verdict
