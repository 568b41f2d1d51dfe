"""Dense linear algebra over GF(2).

Vectors and matrices are immutable values; every operation returns a new
object. Storage is bit-packed: a row is a single Python int with bit j
holding column j, so a row operation is one word-parallel xor no matter how
wide the matrix is. Rank/elimination work on copies, never on the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class SingularMatrixError(ValueError):
    """A matrix that had to be invertible is not."""


@dataclass(frozen=True)
class BitVector:
    """Length-n vector over GF(2), packed into an int (bit i = entry i)."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits out of range for length {self.n}")

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for e in entries:
            if e & 1:
                bits |= 1 << n
            n += 1
        return cls(n, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.n

    def entries(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.entries())


def zero_vector(n: int) -> BitVector:
    return BitVector(n, 0)


def unit_vector(n: int, i: int) -> BitVector:
    if not 0 <= i < n:
        raise ValueError(f"unit index {i} out of range for length {n}")
    return BitVector(n, 1 << i)


@dataclass(frozen=True)
class BitMatrix:
    """rows x cols matrix over GF(2); row i packed as int (bit j = entry i,j)."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.row_bits) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row bits out of range for width {self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], cols: int | None = None) -> "BitMatrix":
        packed = []
        width = cols
        for row in rows:
            ent = list(row)
            if width is None:
                width = len(ent)
            elif len(ent) != width:
                raise ValueError("ragged rows")
            bits = 0
            for j, e in enumerate(ent):
                if e & 1:
                    bits |= 1 << j
            packed.append(bits)
        if width is None:
            width = 0
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        """Rows as '0'/'1' strings, e.g. ["110", "010", "001"]."""
        return cls.from_rows([[int(c) for c in r] for r in rows])

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_bits[i])

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.row_bits[i] >> j) & 1

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.row_bits):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BitMatrix(
            self.rows, self.cols,
            tuple(a ^ b for a, b in zip(self.row_bits, other.row_bits)),
        )

    def to_strings(self) -> list[str]:
        return [str(self.row(i)) for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def zero_matrix(rows: int, cols: int) -> BitMatrix:
    return BitMatrix(rows, cols, (0,) * rows)


def identity(n: int) -> BitMatrix:
    return BitMatrix(n, n, tuple(1 << i for i in range(n)))


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) product: row i of the result xors together the rows of b picked
    by the set bits of row i of a."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.cols} vs {b.rows}")
    out = []
    brows = b.row_bits
    for rbits in a.row_bits:
        acc = 0
        r = rbits
        while r:
            t = r & -r
            acc ^= brows[t.bit_length() - 1]
            r ^= t
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    if m.cols != v.n:
        raise ValueError("dimension mismatch")
    bits = 0
    for i, rbits in enumerate(m.row_bits):
        if (rbits & v.bits).bit_count() & 1:
            bits |= 1 << i
    return BitVector(m.rows, bits)


def transpose(m: BitMatrix) -> BitMatrix:
    cols = [0] * m.cols
    for i, rbits in enumerate(m.row_bits):
        r = rbits
        while r:
            t = r & -r
            cols[t.bit_length() - 1] |= 1 << i
            r ^= t
    return BitMatrix(m.cols, m.rows, tuple(cols))


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a set of bit-packed rows. Consumes nothing; rows are ints."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            b = row.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = row
                r += 1
                break
            row ^= p
    return r


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.row_bits)


def inverse(m: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse; raises SingularMatrixError below full rank."""
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    work = list(m.row_bits)
    aug = [1 << i for i in range(n)]
    row_at = 0
    for col in range(n):
        pivot = None
        for i in range(row_at, n):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            raise SingularMatrixError(f"rank < {n}")
        work[row_at], work[pivot] = work[pivot], work[row_at]
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        prow, paug = work[row_at], aug[row_at]
        for i in range(n):
            if i != row_at and (work[i] >> col) & 1:
                work[i] ^= prow
                aug[i] ^= paug
        row_at += 1
    return BitMatrix(n, n, tuple(aug))


def solve(m: BitMatrix, v: BitVector) -> BitVector | None:
    """One solution x of m·x = v, or None if the system is inconsistent."""
    if m.rows != v.n:
        raise ValueError("dimension mismatch")
    work = [(m.row_bits[i], (v.bits >> i) & 1) for i in range(m.rows)]
    pivots: dict[int, tuple[int, int]] = {}
    for row, rhs in work:
        while row:
            b = row.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = (row, rhs)
                break
            row ^= p[0]
            rhs ^= p[1]
        else:
            if rhs:
                return None
    # free variables are 0; each pivot equation only involves lower bits,
    # so settle pivots from low bit to high
    x = 0
    for b in sorted(pivots):
        row, rhs = pivots[b]
        if (row & x).bit_count() & 1 != rhs:
            x |= 1 << b
    return BitVector(m.cols, x)


def _rref_rows(rows: list[int]) -> list[int]:
    """Reduced row echelon form of bit-packed rows (pivot = highest set bit),
    returned sorted by pivot descending. Deterministic for any input order."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            b = row.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = row
                break
            row ^= p
    # clear above-pivot bits
    for b in sorted(pivots):
        row = pivots[b]
        for b2 in pivots:
            if b2 > b and (pivots[b2] >> b) & 1:
                pivots[b2] ^= row
    return [pivots[b] for b in sorted(pivots, reverse=True)]


def nullspace_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {x : m·x = 0}, in reduced echelon normal form."""
    n = m.cols
    pivots: dict[int, int] = {}
    for row in m.row_bits:
        while row:
            b = row.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = row
                break
            row ^= p
    basis = []
    free = [j for j in range(n) if j not in pivots]
    for f in free:
        # start with x_f = 1, solve pivot equations from low to high bit
        x = 1 << f
        for b in sorted(pivots):
            if (pivots[b] & x).bit_count() & 1:
                x |= 1 << b
        basis.append(x)
    basis = _rref_rows(basis)
    return [BitVector(n, b) for b in basis]


def image_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the column space, in reduced echelon normal form."""
    cols = transpose(m)
    return [BitVector(m.rows, b) for b in _rref_rows(list(cols.row_bits))]


def solve_commutant(a: BitMatrix) -> list[BitMatrix]:
    """Basis of the commutant {X : X·A == A·X}, as the kernel of the linear
    map X -> XA xor AX on the n^2-dimensional space of matrices.

    Output is normalized to reduced echelon form over the flattened
    coordinates (row-major, entry (i,j) -> bit i*n+j), so it is deterministic.
    """
    if not a.is_square():
        raise ValueError("commutant of non-square matrix")
    n = a.rows
    at = transpose(a)
    # equation for result entry (i,j): sum_b X[i][b]*A[b][j] + sum_c A[i][c]*X[c][j] = 0
    eqs = []
    for i in range(n):
        for j in range(n):
            row = 0
            colj = at.row_bits[j]  # bits b where A[b][j] = 1
            c = colj
            while c:
                t = c & -c
                row ^= 1 << (i * n + (t.bit_length() - 1))
                c ^= t
            r = a.row_bits[i]  # bits c where A[i][c] = 1
            while r:
                t = r & -r
                row ^= 1 << ((t.bit_length() - 1) * n + j)
                r ^= t
            eqs.append(row)
    kern = nullspace_basis(BitMatrix(n * n, n * n, tuple(eqs)))
    out = []
    for v in kern:
        rows = tuple((v.bits >> (i * n)) & ((1 << n) - 1) for i in range(n))
        out.append(BitMatrix(n, n, rows))
    return out
