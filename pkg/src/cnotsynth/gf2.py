"""Dense linear algebra over GF(2) with bit-packed rows.

A matrix row is stored as a single Python integer: bit ``j`` of ``rows[i]``
holds entry ``(i, j)``.  XOR of two row integers is a whole-row addition,
which is the operation every elimination loop below is built from.  The
packing is an internal detail; all public behavior is defined bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "PluFactors",
    "SingularMatrixError",
    "identity",
    "inverse",
    "leading_minor_invertible",
    "mat_mul",
    "permutation_matrix",
    "plu_decompose",
    "random_invertible",
    "rank",
    "transpose",
]


class SingularMatrixError(ValueError):
    """A singular matrix was passed where an invertible one is required."""


class BitMatrix:
    """Dense GF(2) matrix with value semantics.

    Attributes:
        n_rows: number of rows.
        n_cols: number of columns.
        rows: list of ints; bit ``j`` of ``rows[i]`` is entry ``(i, j)``.
            Bits at positions >= ``n_cols`` are always zero.
    """

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[int] | None = None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        if rows is None:
            self.rows = [0] * n_rows
        else:
            if len(rows) != n_rows:
                raise ValueError(f"expected {n_rows} rows, got {len(rows)}")
            mask = (1 << n_cols) - 1
            self.rows = [r & mask for r in rows]

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_bits(cls, bits: Sequence[Sequence[int]]) -> "BitMatrix":
        n_rows = len(bits)
        n_cols = len(bits[0]) if n_rows else 0
        rows = []
        for line in bits:
            if len(line) != n_cols:
                raise ValueError("ragged rows")
            acc = 0
            for j, b in enumerate(line):
                if b not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                acc |= b << j
            rows.append(acc)
        return cls(n_rows, n_cols, rows)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        return cls.from_bits([[int(ch) for ch in line] for line in lines])

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        """Parse the matrix text format: a `rows cols` header line, then one
        line of '0'/'1' characters per row."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError(f"bad matrix header: {lines[0]!r}")
        n_rows, n_cols = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(body)}")
        rows = []
        for ln in body:
            if len(ln) != n_cols or set(ln) - {"0", "1"}:
                raise ValueError(f"bad matrix row: {ln!r}")
            rows.append(int(ln[::-1], 2) if ln else 0)
        return cls(n_rows, n_cols, rows)

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "BitMatrix":
        arr = np.asarray(arr)
        return cls.from_bits([[int(x) & 1 for x in row] for row in arr])

    # -- accessors ------------------------------------------------------

    def get(self, i: int, j: int) -> int:
        self._check_index(i, j)
        return (self.rows[i] >> j) & 1

    def set(self, i: int, j: int, value: int) -> None:
        self._check_index(i, j)
        if value & 1:
            self.rows[i] |= 1 << j
        else:
            self.rows[i] &= ~(1 << j)

    def _check_index(self, i: int, j: int) -> None:
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"index ({i}, {j}) out of range")

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int (bit i = entry (i, j))."""
        if not 0 <= j < self.n_cols:
            raise IndexError(f"column {j} out of range")
        acc = 0
        for i, r in enumerate(self.rows):
            acc |= ((r >> j) & 1) << i
        return acc

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.n_rows, self.n_cols, list(self.rows))

    def to_text(self) -> str:
        out = [f"{self.n_rows} {self.n_cols}"]
        for r in self.rows:
            out.append(format(r, f"0{self.n_cols}b")[::-1] if self.n_cols else "")
        return "\n".join(out) + "\n"

    def to_numpy(self, dtype=np.uint8) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=dtype)
        for i, r in enumerate(self.rows):
            while r:
                lsb = r & -r
                out[i, lsb.bit_length() - 1] = 1
                r ^= lsb
        return out

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PluFactors:
    """Factorization ``a == P @ L @ U``.

    ``perm`` maps row index i of the input to the row of ``L @ U`` holding it:
    ``a.rows[i] == (L @ U).rows[perm[i]]``.  ``lower`` is unit lower
    triangular, ``upper`` is upper triangular with unit diagonal (GF(2)).
    """

    perm: tuple[int, ...]
    lower: "BitMatrix"
    upper: "BitMatrix"


def identity(n: int) -> BitMatrix:
    return BitMatrix(n, n, [1 << i for i in range(n)])


def permutation_matrix(perm: Sequence[int]) -> BitMatrix:
    """Matrix P with ``P.get(i, perm[i]) == 1``, so ``P @ M`` places row
    ``perm[i]`` of M at row i."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    return BitMatrix(n, n, [1 << p for p in perm])


def transpose(a: BitMatrix) -> BitMatrix:
    out = [0] * a.n_cols
    for i, r in enumerate(a.rows):
        while r:
            lsb = r & -r
            out[lsb.bit_length() - 1] |= 1 << i
            r ^= lsb
    return BitMatrix(a.n_cols, a.n_rows, out)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.n_cols != b.n_rows:
        raise ValueError(f"dimension mismatch: {a.n_cols} vs {b.n_rows}")
    rows = []
    brows = b.rows
    for r in a.rows:
        acc = 0
        while r:
            lsb = r & -r
            acc ^= brows[lsb.bit_length() - 1]
            r ^= lsb
        rows.append(acc)
    return BitMatrix(a.n_rows, b.n_cols, rows)


def mat_vec(a: BitMatrix, v: int) -> int:
    """Product ``a @ v`` with v a column vector packed as an int."""
    acc = 0
    for i, r in enumerate(a.rows):
        acc |= ((r & v).bit_count() & 1) << i
    return acc


def rank(a: BitMatrix) -> int:
    rows = [r for r in a.rows if r]
    rk = 0
    pivots: list[int] = []  # rows in echelon form, by descending pivot bit
    for r in rows:
        for p in pivots:
            low = p & -p
            if r & low:
                r ^= p
        if r:
            pivots.append(r)
            rk += 1
    return rk


def inverse(a: BitMatrix) -> BitMatrix:
    """Matrix inverse; raises SingularMatrixError when no inverse exists."""
    if a.n_rows != a.n_cols:
        raise SingularMatrixError("only square matrices can be inverted")
    n = a.n_rows
    # Augmented rows [A | I], with the identity in bits n..2n-1.
    work = [a.rows[i] | (1 << (n + i)) for i in range(n)]
    for j in range(n):
        piv = None
        for i in range(j, n):
            if (work[i] >> j) & 1:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[j], work[piv] = work[piv], work[j]
        for i in range(n):
            if i != j and (work[i] >> j) & 1:
                work[i] ^= work[j]
    return BitMatrix(n, n, [w >> n for w in work])


def plu_decompose(a: BitMatrix) -> PluFactors:
    """PLU factorization with deterministic pivoting (first nonzero scanning
    downward).  Raises SingularMatrixError on singular input."""
    if a.n_rows != a.n_cols:
        raise SingularMatrixError("PLU requires a square matrix")
    n = a.n_rows
    u = list(a.rows)
    lo = [0] * n  # strictly-lower part of L, row-packed
    origin = list(range(n))  # origin[r] = input row currently at position r
    for j in range(n):
        piv = None
        for i in range(j, n):
            if (u[i] >> j) & 1:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != j:
            u[j], u[piv] = u[piv], u[j]
            lo[j], lo[piv] = lo[piv], lo[j]
            origin[j], origin[piv] = origin[piv], origin[j]
        for i in range(j + 1, n):
            if (u[i] >> j) & 1:
                u[i] ^= u[j]
                lo[i] |= 1 << j
    perm = [0] * n
    for r, orig in enumerate(origin):
        perm[orig] = r
    lower = BitMatrix(n, n, [lo[i] | (1 << i) for i in range(n)])
    upper = BitMatrix(n, n, u)
    return PluFactors(tuple(perm), lower, upper)


def leading_minor_invertible(a: BitMatrix, k: int) -> bool:
    """Whether the leading principal k x k minor is invertible (1 <= k <= n)."""
    if not 1 <= k <= min(a.n_rows, a.n_cols):
        raise ValueError(f"minor order {k} out of range")
    mask = (1 << k) - 1
    sub = BitMatrix(k, k, [a.rows[i] & mask for i in range(k)])
    return rank(sub) == k


def random_invertible(n: int, rng: np.random.Generator | int | None = None) -> BitMatrix:
    """Uniformly random invertible n x n matrix (rejection sampling)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    n_bytes = (n + 7) // 8
    mask = (1 << n) - 1
    while True:
        rows = [
            int.from_bytes(rng.bytes(n_bytes), "little") & mask for _ in range(n)
        ]
        m = BitMatrix(n, n, rows)
        if rank(m) == n:
            return m
