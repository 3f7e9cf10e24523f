"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row integer is the entry in column ``j`` (LSB is column 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed.

    ``line`` and ``column`` are 1-based and point at the first bad character.
    """

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        if self.ncols < 0:
            raise ValueError("ncols must be nonnegative")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} has bits outside {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, size: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(size)), size)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for line in data:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, b in enumerate(line) if b & 1))
        return cls(tuple(rows), ncols)

    @classmethod
    def from_strings(cls, lines: Sequence[str], ncols: int | None = None) -> BitMatrix:
        """Build from '0'/'1' strings, one per row (column 0 first)."""
        if ncols is None:
            ncols = len(lines[0]) if lines else 0
        rows = []
        for i, line in enumerate(lines):
            if len(line) != ncols:
                raise MatrixFormatError(
                    f"expected {ncols} characters, got {len(line)}", i + 1, min(len(line), ncols) + 1
                )
            rows.append(_parse_bits(line, i + 1))
        return cls(tuple(rows), ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return [format_row(r, self.ncols) for r in self.rows]

    def transpose(self) -> BitMatrix:
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(tuple(out), len(self.rows))

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.ncols != self.ncols:
            raise ValueError("column mismatch in vstack")
        return BitMatrix(self.rows + other.rows, self.ncols)

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def format_row(row: int, ncols: int) -> str:
    return "".join("1" if (row >> j) & 1 else "0" for j in range(ncols))


def _parse_bits(text: str, line_no: int = 1) -> int:
    value = 0
    for j, ch in enumerate(text):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise MatrixFormatError(f"unexpected character {ch!r}", line_no, j + 1)
    return value


def parse_row(text: str) -> int:
    return _parse_bits(text)


def parse_matrix_text(text: str) -> BitMatrix:
    """Parse the text form: one row per line, characters '0'/'1' only."""
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        return BitMatrix((), 0)
    return BitMatrix.from_strings(lines)


def format_matrix_text(a: BitMatrix) -> str:
    return "".join(s + "\n" for s in a.to_strings())


def parity(x: int) -> int:
    return x.bit_count() & 1


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        t = 0
        while r:
            if r & 1:
                acc ^= b.rows[t]
            r >>= 1
            t += 1
        out.append(acc)
    return BitMatrix(tuple(out), b.ncols)


def _echelon(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Fully reduced echelon basis; pivot of each basis row is its lowest set bit.

    Returns (basis, pivots) with basis sorted by pivot column.
    """
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            low = v & -v
            basis = [b ^ v if b & low else b for b in basis]
            basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return basis, [(b & -b).bit_length() - 1 for b in basis]


def rank(a: BitMatrix) -> int:
    return len(_echelon(a.rows)[0])


def det(a: BitMatrix) -> int:
    """1 if the square matrix is invertible over GF(2), else 0 (0x0 gives 1)."""
    if a.nrows != a.ncols:
        raise ValueError(f"det of non-square {a.shape} matrix")
    return int(rank(a) == a.nrows)


def rref(a: BitMatrix) -> BitMatrix:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    basis, _ = _echelon(a.rows)
    return BitMatrix(tuple(basis) + (0,) * (a.nrows - len(basis)), a.ncols)


def row_basis(a: BitMatrix) -> BitMatrix:
    """RREF with the zero rows dropped."""
    return BitMatrix(tuple(_echelon(a.rows)[0]), a.ncols)


def kernel_basis(a: BitMatrix) -> BitMatrix:
    """Basis of {x : a x^T = 0}, one vector per free column."""
    basis, pivots = _echelon(a.rows)
    pivot_mask = sum(1 << p for p in pivots)
    out = []
    for f in range(a.ncols):
        bit = 1 << f
        if pivot_mask & bit:
            continue
        v = bit
        for b, p in zip(basis, pivots):
            if b & bit:
                v |= 1 << p
        out.append(v)
    return BitMatrix(tuple(out), a.ncols)


def in_row_space(v: int, a: BitMatrix) -> bool:
    basis, _ = _echelon(a.rows)
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v == 0


def same_row_space(a: BitMatrix, b: BitMatrix) -> bool:
    if a.ncols != b.ncols:
        return False
    return _echelon(a.rows)[0] == _echelon(b.rows)[0]


def span(a: BitMatrix) -> Iterator[int]:
    """All 2^r combinations of the rows in Gray-code order, starting at 0."""
    rows = a.rows
    v = 0
    yield v
    for i in range(1, 1 << len(rows)):
        v ^= rows[(i & -i).bit_length() - 1]
        yield v
