import json
import subprocess
import sys
from importlib import resources

import pytest

from stabforge.circuit import parse_circuit
from stabforge.cli import main

DATA = resources.files("stabforge").joinpath("data")


def cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def bell(tmp_path):
    p = tmp_path / "bell.circ"
    p.write_text("qubits 2\ncbits 2\nH 0\nCX 0 1\nM 0 -> 0\nM 1 -> 1\n")
    return p


def test_standard_form_text(capsys):
    code, out, _ = cli(capsys, "standard-form", "builtin:steane_hamming")
    assert code == 0
    assert "permutation (new<-old, 0-based) = 0<-4, 1<-5, 2<-6, 3<-0, 4<-1, 5<-3, 6<-2" in out
    assert "Xbar[0] = 0001101|0000000" in out


def test_standard_form_json(capsys):
    code, out, _ = cli(capsys, "standard-form", "builtin:five_qubit", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert data["hs"][0] == "10001|11011" and data["r"] == 4


def test_synth_needs_one_mode(capsys):
    assert cli(capsys, "synth", "builtin:five_qubit")[0] == 1
    assert cli(capsys, "synth", "builtin:five_qubit", "--encoder", "--syndrome")[0] == 1


def test_synth_output_parses(capsys):
    code, out, _ = cli(capsys, "synth", "builtin:five_qubit", "--encoder", "--optimize")
    assert code == 0
    assert parse_circuit(out).count("CZ") == 4


def test_output_is_byte_identical(capsys):
    first = cli(capsys, "synth", "builtin:steane", "--syndrome")[1]
    second = cli(capsys, "synth", "builtin:steane", "--syndrome")[1]
    assert first == second


def test_table_lines(capsys):
    code, out, _ = cli(capsys, "table", "builtin:steane_hamming", "--encoder-order", "--lines")
    assert code == 0
    assert "error=IIIZIII syndrome=110000 decimal=48" in out.splitlines()


def test_table_degenerate(capsys):
    code, _, err = cli(capsys, "table", "builtin:shor9")
    assert code == 2 and "share syndrome" in err


def test_simulate(capsys, bell):
    code, out, _ = cli(capsys, "simulate", str(bell), "--seed", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] in ("cbits 00", "cbits 11")
    code, out, _ = cli(capsys, "simulate", str(bell), "--json", "--seed", "4")
    data = json.loads(out)
    assert data["measurements"][0]["deterministic"] is False
    assert data["measurements"][1]["deterministic"] is True


def test_simulate_env_seed(capsys, bell, monkeypatch):
    monkeypatch.setenv("STABFORGE_SEED", "4")
    a = cli(capsys, "simulate", str(bell))[1]
    b = cli(capsys, "simulate", str(bell), "--seed", "4")[1]
    assert a == b
    monkeypatch.setenv("STABFORGE_SEED", "abc")
    assert cli(capsys, "simulate", str(bell))[0] == 1


def test_simulate_bad_init(capsys, bell):
    assert cli(capsys, "simulate", str(bell), "--init", "101")[0] == 2


def test_invalid_circuit(capsys, tmp_path):
    p = tmp_path / "bad.circ"
    p.write_text("qubits 2\nCX 0 0\n")
    code, _, err = cli(capsys, "simulate", str(p))
    assert code == 2 and "line 2" in err


def test_missing_file(capsys):
    assert cli(capsys, "simulate", "/nonexistent.circ")[0] == 2


def test_verify_exhaustive(capsys):
    code, out, _ = cli(capsys, "verify", "builtin:five_qubit", "--exhaustive", "--jobs", "2")
    assert code == 0 and out.splitlines()[-1] == "32/32 cases passed"


def test_verify_json(capsys):
    code, out, _ = cli(capsys, "verify", "builtin:five_qubit", "--error", "IIIIY", "--logical", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] == data["total"] == 1
    assert data["cases"][0]["measured_syndrome"] == "0111"


def test_verify_bad_error(capsys):
    assert cli(capsys, "verify", "builtin:five_qubit", "--error", "XXQ")[0] == 2
    assert cli(capsys, "verify", "builtin:five_qubit", "--error", "XX")[0] == 2


def test_route(capsys, tmp_path):
    enc = tmp_path / "enc.circ"
    enc.write_text(cli(capsys, "synth", "builtin:five_qubit", "--encoder", "--optimize")[1])
    layout = str(DATA.joinpath("five_qubit_encoder.layout"))
    code, out, _ = cli(capsys, "route", str(enc), "--layout", layout, "--reference", "3")
    assert code == 0
    assert "# swaps 2 (reference 3)" in out and "# compliant yes" in out
    code, out, _ = cli(capsys, "route", str(enc), "--layout", layout, "--decompose", "--json")
    data = json.loads(out)
    assert data["gate_counts"]["SWAP"] == 0
    assert data["gate_counts"]["CX"] == 2 + 3 * data["swap_count"]


def test_route_rejects_ccx(capsys):
    code, _, err = cli(capsys, "route", str(DATA.joinpath("shor9_decoder.circ")),
                       "--layout", str(DATA.joinpath("five_qubit_syndrome.layout")))
    assert code == 2 and "CCX" in err


def test_report(capsys):
    path = str(DATA.joinpath("shor9_encoder.circ"))
    code, out, _ = cli(capsys, "report", path, "--json")
    counts = json.loads(out)["circuits"][0]["gate_counts"]
    assert code == 0 and counts["CX"] == 8 and counts["H"] == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nope"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stabforge", "table", "builtin:bitflip3", "--lines"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "error=IIX syndrome=01 decimal=1" in proc.stdout
