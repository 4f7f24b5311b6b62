import numpy as np
import pytest

from stabforge.codes import builtin
from stabforge.pauli import parse_pauli


# Five-qubit standard form, logicals and syndrome table.
FIVE_HS = [
    "10001|11011",
    "01001|00110",
    "00101|11000",
    "00011|10111",
]
FIVE_XBAR = "00001|10010"
FIVE_ZBAR = "00000|11111"

FIVE_TABLE = [
    ("XIIII", "0001", 1), ("ZIIII", "1010", 10), ("YIIII", "1011", 11),
    ("IXIII", "1000", 8), ("IZIII", "0101", 5), ("IYIII", "1101", 13),
    ("IIXII", "1100", 12), ("IIZII", "0010", 2), ("IIYII", "1110", 14),
    ("IIIXI", "0110", 6), ("IIIZI", "1001", 9), ("IIIYI", "1111", 15),
    ("IIIIX", "0011", 3), ("IIIIZ", "0100", 4), ("IIIIY", "0111", 7),
    ("IIIII", "0000", 0),
]

# Hamming-CSS Steane code after the standard-form relabelling.
STEANE_HS = [
    "1001110|0000000",
    "0101011|0000000",
    "0010111|0000000",
    "0000000|1011001",
    "0000000|1100101",
    "0000000|1110010",
]
STEANE_PERM = (4, 5, 6, 0, 1, 3, 2)
STEANE_XBAR = "0001101|0000000"
STEANE_ZBAR = "0000000|0110001"

STEANE_TABLE = [
    ("XIIIIII", "000100", 4), ("ZIIIIII", "100000", 32), ("YIIIIII", "100100", 36),
    ("IXIIIII", "000010", 2), ("IZIIIII", "010000", 16), ("IYIIIII", "010010", 18),
    ("IIXIIII", "000001", 1), ("IIZIIII", "001000", 8), ("IIYIIII", "001001", 9),
    ("IIIXIII", "000110", 6), ("IIIZIII", "110000", 48), ("IIIYIII", "110110", 54),
    ("IIIIXII", "000101", 5), ("IIIIZII", "101000", 40), ("IIIIYII", "101101", 45),
    ("IIIIIXI", "000111", 7), ("IIIIIZI", "111000", 56), ("IIIIIYI", "111111", 63),
    ("IIIIIIX", "000011", 3), ("IIIIIIZ", "011000", 24), ("IIIIIIY", "011011", 27),
    ("IIIIIII", "000000", 0),
]

# (H, S, CX, CY, CZ)
TABLE_III = {
    "five_encoder": (4, 2, 2, 2, 4),
    "five_syndrome": (8, 0, 8, 0, 8),
    "steane_encoder": (3, 0, 11, 0, 0),
    "steane_syndrome": (12, 0, 12, 0, 12),
}

SHOR_OPERATORS = [
    "ZZIIIIIII", "ZIZIIIIII", "IIIZZIIII", "IIIZIZIII",
    "IIIIIIZZI", "IIIIIIZIZ", "XXXXXXIII", "XXXIIIXXX",
]


def row_text(row) -> str:
    row = np.asarray(row)
    n = len(row) // 2
    return "".join(map(str, row[:n])) + "|" + "".join(map(str, row[n:]))


def tally(counts) -> tuple[int, ...]:
    return tuple(counts[k] for k in ("H", "S", "CX", "CY", "CZ"))


@pytest.fixture
def five():
    return builtin("five_qubit")


@pytest.fixture
def steane_hamming():
    return builtin("steane_hamming")


@pytest.fixture
def steane_table_frame(steane_hamming):
    """Hamming-CSS Steane generators relabelled into standard-form order."""
    sf = steane_hamming.standard_form()
    return steane_hamming.relabelled(sf.perm, "steane_table")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def paulis(*texts):
    return [parse_pauli(t) for t in texts]


_CRITERIA: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Records a PASS/FAIL line for the acceptance summary."""
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0] if marker else request.node.name
    detail = {}
    yield detail
    failed = getattr(request.node, "_call_failed", True)
    extra = f" ({detail['info']})" if "info" in detail else ""
    _CRITERIA[label] = f"{'FAIL' if failed else 'PASS'} {label}{extra}"


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if call.when == "call":
        item._call_failed = rep.failed
    return rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(_CRITERIA[label])
