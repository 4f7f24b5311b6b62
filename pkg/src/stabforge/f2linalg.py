"""GF(2) linear algebra for stabilizer check matrices.

Binary matrices are plain ``numpy.uint8`` arrays holding 0/1.  A
``CheckMatrix`` keeps the X and Z halves of an ``(n-k) x 2n`` stabilizer
matrix separately.  ``to_standard_form`` reduces one to the block layout

    [ I1 A1 A2 | B  C1 C2 ]      rows 0..r-1
    [ 0  0  0  | D  I2 E  ]      rows r..n-k-1

relabelling qubits where needed, and ``logical_operators`` reads encoded
X and Z operators off the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .pauli import PauliString, symplectic_product


class F2Error(ValueError):
    """Dimension or shape problem in a GF(2) computation."""


class InvalidStabilizerError(F2Error):
    """Generators do not pairwise commute."""


class RankDeficiencyError(F2Error):
    """Generators are linearly dependent over GF(2)."""


class CSSConstructionError(F2Error):
    """The two classical check matrices are not dual-containing."""


def as_bits(m) -> np.ndarray:
    """Coerce lists, strings of 0/1 rows, or arrays into a 2D uint8 matrix."""
    if isinstance(m, str):
        m = m.split()
    if isinstance(m, (list, tuple)) and m and isinstance(m[0], str):
        m = [[int(c) for c in row] for row in m]
    arr = np.array(m, dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise F2Error(f"expected a 2D bit matrix, got shape {arr.shape}")
    if np.any(arr > 1):
        raise F2Error("bit matrix entries must be 0 or 1")
    return arr


def bits_text(row) -> str:
    return "".join(str(int(b)) for b in row)


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and its pivot columns."""
    a = as_bits(m).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def row_space_contains(m: np.ndarray, v: Sequence[int]) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``m``."""
    m = as_bits(m)
    v = np.array(v, dtype=np.uint8).reshape(-1)
    if v.size != m.shape[1]:
        raise F2Error(f"vector length {v.size} != matrix width {m.shape[1]}")
    return rank(np.vstack([m, v])) == rank(m)


@dataclass(frozen=True, eq=False)
class CheckMatrix:
    """Stabilizer check matrix ``[xblock | zblock]`` for an [[n, k]] code."""

    xblock: np.ndarray
    zblock: np.ndarray

    def __post_init__(self):
        x, z = as_bits(self.xblock), as_bits(self.zblock)
        if x.shape != z.shape:
            raise F2Error(f"X block {x.shape} and Z block {z.shape} differ in shape")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "xblock", x)
        object.__setattr__(self, "zblock", z)

    @property
    def n(self) -> int:
        return self.xblock.shape[1]

    @property
    def k(self) -> int:
        return self.n - self.xblock.shape[0]

    @property
    def nrows(self) -> int:
        return self.xblock.shape[0]

    @property
    def joint(self) -> np.ndarray:
        return np.hstack([self.xblock, self.zblock])

    @classmethod
    def from_paulis(cls, gens: Sequence[PauliString]) -> "CheckMatrix":
        if not gens:
            raise F2Error("need at least one generator")
        widths = {g.n for g in gens}
        if len(widths) != 1:
            raise F2Error(f"generators have differing widths {sorted(widths)}")
        return cls(np.array([g.xbits for g in gens]), np.array([g.zbits for g in gens]))

    def rows(self) -> list[PauliString]:
        """Each row as a +1-phase Pauli string."""
        return [PauliString(tuple(x), tuple(z)) for x, z in zip(self.xblock, self.zblock)]

    def validate(self) -> None:
        """Raise unless rows pairwise commute and are independent."""
        rows = self.rows()
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if symplectic_product(rows[i], rows[j]):
                    raise InvalidStabilizerError(
                        f"rows {i} ({rows[i]}) and {j} ({rows[j]}) anticommute"
                    )
        if rank(self.joint) != self.nrows:
            raise RankDeficiencyError(
                f"rows are dependent: rank {rank(self.joint)} < {self.nrows}"
            )

    def permuted(self, perm: Sequence[int]) -> "CheckMatrix":
        perm = list(perm)
        return CheckMatrix(self.xblock[:, perm], self.zblock[:, perm])

    def __eq__(self, other):
        if not isinstance(other, CheckMatrix):
            return NotImplemented
        return np.array_equal(self.xblock, other.xblock) and np.array_equal(
            self.zblock, other.zblock
        )

    def __hash__(self):
        return hash((self.xblock.tobytes(), self.zblock.tobytes(), self.xblock.shape))

    def text(self) -> str:
        """Bracketed ``[X | Z]`` layout, one row per line."""
        return "\n".join(
            f"[{bits_text(x)} | {bits_text(z)}]" for x, z in zip(self.xblock, self.zblock)
        )


def css_check_matrix(h1, h2) -> CheckMatrix:
    """Check matrix ``[[h1, 0], [0, h2]]`` of the CSS code built from ``h1`` and ``h2``."""
    h1, h2 = as_bits(h1), as_bits(h2)
    if h1.shape[1] != h2.shape[1]:
        raise F2Error(f"h1 has {h1.shape[1]} columns but h2 has {h2.shape[1]}")
    overlap = (h2.astype(int) @ h1.T.astype(int)) % 2
    bad = np.argwhere(overlap)
    if bad.size:
        i, j = bad[0]
        raise CSSConstructionError(
            f"h2 row {i} and h1 row {j} have odd overlap; h2 . h1^T != 0"
        )
    n = h1.shape[1]
    x = np.vstack([h1, np.zeros((h2.shape[0], n), dtype=np.uint8)])
    z = np.vstack([np.zeros((h1.shape[0], n), dtype=np.uint8), h2])
    return CheckMatrix(x, z)


@dataclass(frozen=True, eq=False)
class StandardForm:
    """Result of ``to_standard_form``.

    ``perm[i]`` is the original qubit that sits at position ``i`` of ``hs``.
    """

    hs: CheckMatrix
    r: int
    perm: tuple[int, ...]
    source: CheckMatrix
    xlogical: np.ndarray = field(repr=False)
    zlogical: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.hs.n

    @property
    def k(self) -> int:
        return self.hs.k

    @property
    def is_identity_perm(self) -> bool:
        return self.perm == tuple(range(self.n))

    def blocks(self) -> dict[str, np.ndarray]:
        n, k, r = self.n, self.k, self.r
        m = n - k - r
        x, z = self.hs.xblock, self.hs.zblock
        return {
            "I1": x[:r, :r],
            "A1": x[:r, r : r + m],
            "A2": x[:r, r + m :],
            "B": z[:r, :r],
            "C1": z[:r, r : r + m],
            "C2": z[:r, r + m :],
            "D": z[r:, :r],
            "I2": z[r:, r : r + m],
            "E": z[r:, r + m :],
        }

    def logical_paulis(self) -> tuple[list[PauliString], list[PauliString]]:
        xs = [PauliString.from_symplectic(row) for row in self.xlogical]
        zs = [PauliString.from_symplectic(row) for row in self.zlogical]
        return xs, zs

    def inverse_perm(self) -> tuple[int, ...]:
        """``inv[q]`` is the standard-form position of original qubit ``q``."""
        inv = [0] * self.n
        for pos, q in enumerate(self.perm):
            inv[q] = pos
        return tuple(inv)


def _eliminate(x, z, rows, positions, block, order):
    """Gauss-Jordan on ``block`` ('x' or 'z') over ``rows`` using the qubit
    columns ``order[positions]``; non-pivot columns are moved behind the
    pivots, keeping relative order.  Mutates x, z and order; returns the
    number of pivots found."""
    mat = x if block == "x" else z
    row_lo, row_hi = rows
    pos_lo, pos_hi = positions
    r = row_lo
    deferred = []
    pivot_cols = []
    for p in range(pos_lo, pos_hi):
        col = order[p]
        hits = [i for i in range(r, row_hi) if mat[i, col]] if r < row_hi else []
        if not hits:
            deferred.append(col)
            continue
        i = hits[0]
        if i != r:
            x[[r, i]] = x[[i, r]]
            z[[r, i]] = z[[i, r]]
        for j in range(row_lo, row_hi):
            if j != r and mat[j, col]:
                x[j] ^= x[r]
                z[j] ^= z[r]
        pivot_cols.append(col)
        r += 1
    order[pos_lo:pos_hi] = pivot_cols + deferred
    return r - row_lo


def _systematic_x_columns(x: np.ndarray, r: int) -> list[int] | None:
    """Columns that are already unit vectors e_0..e_{r-1} of the X block
    (lowest index for each), or None if some row has no such column."""
    if r == 0 or np.any(x[r:]) or rank(x[:r]) != r:
        return None
    cols = []
    for i in range(r):
        unit = np.zeros(x.shape[0], dtype=np.uint8)
        unit[i] = 1
        found = [c for c in range(x.shape[1]) if np.array_equal(x[:, c], unit)]
        if not found:
            return None
        cols.append(found[0])
    return cols


def _reduce(h: CheckMatrix, x_first: list[int] | None):
    n, nrows = h.n, h.nrows
    x = h.xblock.copy()
    z = h.zblock.copy()
    if x_first is None:
        order = list(range(n))
        r = _eliminate(x, z, (0, nrows), (0, n), "x", order)
    else:
        r = len(x_first)
        order = x_first + [c for c in range(n) if c not in x_first]
    m = nrows - r
    got = _eliminate(x, z, (r, nrows), (r, n), "z", order)
    if got != m:
        raise RankDeficiencyError(f"Z stage found {got} pivots, expected {m}")
    return x[:, order], z[:, order], r, tuple(order)


def to_standard_form(h: CheckMatrix) -> StandardForm:
    """Row-reduce ``h`` to standard form, permuting qubits only if needed.

    Pivot columns are taken left to right; a column with no pivot among
    the remaining rows is moved behind the later columns.  When that would
    relabel qubits and the X block already holds the unit columns
    e_0..e_{r-1}, those columns are used as X pivots instead (no X-stage
    row operations at all).
    """
    h.validate()
    x, z, r, perm = _reduce(h, None)
    if perm != tuple(range(h.n)):
        cols = _systematic_x_columns(h.xblock, rank(h.xblock))
        if cols is not None:
            x, z, r, perm = _reduce(h, cols)
    hs = CheckMatrix(x, z)
    xl, zl = _logicals(hs, r)
    return StandardForm(hs=hs, r=r, perm=perm, source=h, xlogical=xl, zlogical=zl)


def _logicals(hs: CheckMatrix, r: int) -> tuple[np.ndarray, np.ndarray]:
    n, k = hs.n, hs.k
    m = n - k - r
    x, z = hs.xblock.astype(int), hs.zblock.astype(int)
    a2 = x[:r, r + m :]
    c1 = z[:r, r : r + m]
    c2 = z[:r, r + m :]
    e = z[r:, r + m :]
    eye = np.eye(k, dtype=int)
    v1 = (e.T @ c1.T + c2.T) % 2
    xl = np.zeros((k, 2 * n), dtype=np.uint8)
    xl[:, r : r + m] = e.T
    xl[:, r + m : n] = eye
    xl[:, n : n + r] = v1
    zl = np.zeros((k, 2 * n), dtype=np.uint8)
    zl[:, n : n + r] = a2.T
    zl[:, n + r + m :] = eye
    return xl, zl


def logical_operators(sf: StandardForm) -> tuple[np.ndarray, np.ndarray]:
    """Encoded X and Z operators as ``k x 2n`` ``[x | z]`` bit rows."""
    return sf.xlogical.copy(), sf.zlogical.copy()
