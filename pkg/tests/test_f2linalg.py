import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIVE_HS, FIVE_XBAR, FIVE_ZBAR, STEANE_HS, STEANE_PERM, row_text
from stabforge.codes import HAMMING_H, builtin
from stabforge.f2linalg import (
    CheckMatrix,
    CSSConstructionError,
    F2Error,
    InvalidStabilizerError,
    RankDeficiencyError,
    as_bits,
    css_check_matrix,
    logical_operators,
    rank,
    rref,
    row_space_contains,
    to_standard_form,
)
from stabforge.pauli import multiply, parse_pauli, symplectic_product

SOURCES = ("five_qubit", "steane", "steane_hamming", "bitflip3", "phaseflip3", "four_two_two", "shor9")


def sym(u, v) -> int:
    n = len(u) // 2
    return int((u[:n] @ v[n:] + u[n:] @ v[:n]) % 2)


def matrix_from(texts) -> CheckMatrix:
    return CheckMatrix.from_paulis([parse_pauli(t) for t in texts])


@st.composite
def scrambled_codes(draw):
    """A catalog code with qubits shuffled and generators recombined."""
    spec = builtin(draw(st.sampled_from(SOURCES)))
    perm = draw(st.permutations(range(spec.n)))
    gens = [g.permuted(perm) for g in spec.generators]
    m = len(gens)
    for _ in range(draw(st.integers(0, 2 * m))):
        i = draw(st.integers(0, m - 1))
        j = draw(st.integers(0, m - 1))
        if i != j:
            gens[i] = multiply(gens[i], gens[j])
    order = draw(st.permutations(range(m)))
    return CheckMatrix.from_paulis([gens[i] for i in order])


class TestBasics:
    def test_as_bits_strings(self):
        assert as_bits("101 011").tolist() == [[1, 0, 1], [0, 1, 1]]
        with pytest.raises(F2Error):
            as_bits([[2, 0]])

    def test_rank_and_rref(self):
        m = as_bits(["110", "011", "101"])
        assert rank(m) == 2
        red, pivots = rref(m)
        assert pivots == [0, 1]
        assert red.tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]

    def test_row_space_contains(self):
        m = as_bits(HAMMING_H)
        assert row_space_contains(m, m[0] ^ m[1])
        assert not row_space_contains(m, [1, 0, 0, 0, 0, 0, 0])

    def test_check_matrix_layout(self):
        h = matrix_from(["XZZXI"])
        assert row_text(h.joint[0]) == "10010|01100"
        assert h.n == 5 and h.k == 4
        assert h.text() == "[10010 | 01100]"


class TestStandardForm:
    def test_five_qubit(self, five):
        sf = five.standard_form()
        assert [row_text(r) for r in sf.hs.joint] == FIVE_HS
        assert sf.r == 4 and sf.is_identity_perm
        xl, zl = logical_operators(sf)
        assert row_text(xl[0]) == FIVE_XBAR and row_text(zl[0]) == FIVE_ZBAR
        xs, zs = sf.logical_paulis()
        assert xs[0].letters == "ZIIZX" and zs[0].letters == "ZZZZZ"
        b = sf.blocks()
        assert b["A2"].ravel().tolist() == [1, 1, 1, 1]
        assert b["C2"].ravel().tolist() == [1, 0, 0, 1]
        assert b["B"].tolist() == [[1, 1, 0, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 0, 1, 1]]

    def test_steane_hamming(self, steane_hamming):
        sf = steane_hamming.standard_form()
        assert sf.perm == STEANE_PERM
        assert [row_text(r) for r in sf.hs.joint] == STEANE_HS
        b = sf.blocks()
        assert b["A1"].tolist() == [[1, 1, 1], [1, 0, 1], [0, 1, 1]]
        assert b["A2"].ravel().tolist() == [0, 1, 1]
        assert b["D"].tolist() == [[1, 0, 1], [1, 1, 0], [1, 1, 1]]
        assert b["E"].ravel().tolist() == [1, 1, 0]
        assert not b["B"].any() and not b["C1"].any() and not b["C2"].any()
        assert sf.inverse_perm() == (3, 4, 6, 5, 0, 1, 2)

    def test_fixed_point(self, five, steane_hamming):
        for spec in (five, steane_hamming):
            sf = spec.standard_form()
            again = to_standard_form(sf.hs)
            assert again.hs == sf.hs and again.is_identity_perm

    def test_rank_deficient(self):
        with pytest.raises(RankDeficiencyError):
            to_standard_form(matrix_from(["ZZI", "IZZ", "ZIZ"]))

    def test_anticommuting(self):
        with pytest.raises(InvalidStabilizerError, match="anticommute"):
            to_standard_form(matrix_from(["XI", "ZI"]))

    @settings(max_examples=60, deadline=None)
    @given(scrambled_codes())
    def test_invariants(self, h):
        sf = to_standard_form(h)
        n, k, r = sf.n, sf.k, sf.r
        x, z = sf.hs.xblock, sf.hs.zblock
        m = n - k - r
        assert np.array_equal(x[:r, :r], np.eye(r, dtype=np.uint8))
        assert not x[r:].any()
        assert np.array_equal(z[r:, r : r + m], np.eye(m, dtype=np.uint8))
        # same stabilizer group after relabelling
        src = h.permuted(sf.perm).joint
        assert rank(np.vstack([src, sf.hs.joint])) == rank(src) == n - k
        rows = list(sf.hs.joint)
        for i in range(len(rows)):
            for j in range(len(rows)):
                assert sym(rows[i], rows[j]) == 0
        for lx in list(sf.xlogical) + list(sf.zlogical):
            assert all(sym(lx, row) == 0 for row in rows)
        for i in range(k):
            for j in range(k):
                assert sym(sf.xlogical[i], sf.zlogical[j]) == int(i == j)
                assert sym(sf.xlogical[i], sf.xlogical[j]) == 0
                assert sym(sf.zlogical[i], sf.zlogical[j]) == 0


class TestCSS:
    def test_repetition(self):
        h = css_check_matrix([[1, 1]], [[1, 1]])
        assert [p.letters for p in h.rows()] == ["XX", "ZZ"]

    def test_hamming(self):
        h = css_check_matrix(HAMMING_H, HAMMING_H)
        assert h.nrows == 6 and h.k == 1
        rows = h.rows()
        assert all(symplectic_product(a, b) == 0 for a in rows for b in rows)

    def test_not_dual_containing(self):
        with pytest.raises(CSSConstructionError, match="h2 row 0 and h1 row 0"):
            css_check_matrix([[1, 0]], [[1, 1]])

    def test_width_mismatch(self):
        with pytest.raises(F2Error):
            css_check_matrix([[1, 1, 0]], [[1, 1]])
