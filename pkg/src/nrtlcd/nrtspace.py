"""The NRT metric space M_{n,s}(F_2).

A vector v = [v_1; ...; v_n] is stored flat: block i (0-based) occupies bits
i*s .. i*s+s-1, and position j (1-based, as in the literature) of that block
is bit i*s + j - 1.  The NRT weight of a block is the 1-based position of its
last nonzero entry, which is just ``block.bit_length()`` in this layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, NamedTuple, Sequence

from .gf2core import BitMatrix, MatrixFormatError, format_row, parse_row, parity


class Shape(NamedTuple):
    """Row-weight occupancy (e0, e1, e2) of a vector in M_{n,2}."""

    e0: int
    e1: int
    e2: int

    @property
    def weight(self) -> int:
        return self.e1 + 2 * self.e2

    def __str__(self) -> str:
        return f"({self.e0},{self.e1},{self.e2})"


@dataclass(frozen=True)
class NrtVector:
    n: int
    s: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.s < 1:
            raise ValueError("n and s must be positive")
        if not 0 <= self.bits < 1 << (self.n * self.s):
            raise ValueError("vector has bits outside n*s positions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> NrtVector:
        n, s = len(rows), len(rows[0])
        bits = 0
        for i, row in enumerate(rows):
            if len(row) != s:
                raise ValueError("ragged rows")
            for j, b in enumerate(row):
                if b & 1:
                    bits |= 1 << (i * s + j)
        return cls(n, s, bits)

    @classmethod
    def from_flat(cls, flat: Sequence[int], n: int, s: int) -> NrtVector:
        if len(flat) != n * s:
            raise ValueError(f"need {n * s} entries, got {len(flat)}")
        return cls(n, s, sum(1 << j for j, b in enumerate(flat) if b & 1))

    @classmethod
    def parse(cls, text: str, n: int | None = None, s: int | None = None) -> NrtVector:
        """Read either n lines of s characters, or one flat line (needs n or s)."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise MatrixFormatError("empty vector", 1, 1)
        if len(lines) == 1 and (n is not None or s is not None):
            flat = lines[0]
            if n is None:
                n = len(flat) // s
            if s is None:
                s = len(flat) // n
            if n * s != len(flat):
                raise MatrixFormatError(f"length {len(flat)} is not {n}*{s}", 1, len(flat) + 1)
            return cls(n, s, parse_row(flat))
        width = len(lines[0])
        bits = 0
        for i, ln in enumerate(lines):
            if len(ln) != width:
                raise MatrixFormatError(f"expected {width} characters", i + 1, min(len(ln), width) + 1)
            try:
                bits |= parse_row(ln) << (i * width)
            except MatrixFormatError as exc:
                raise MatrixFormatError("unexpected character", i + 1, exc.column) from None
        return cls(len(lines), width, bits)

    @property
    def rows(self) -> list[list[int]]:
        return [[(self.bits >> (i * self.s + j)) & 1 for j in range(self.s)] for i in range(self.n)]

    def block(self, i: int) -> int:
        return (self.bits >> (i * self.s)) & ((1 << self.s) - 1)

    def flat(self) -> BitMatrix:
        return BitMatrix((self.bits,), self.n * self.s)

    def to_text(self) -> str:
        return "".join(format_row(self.block(i), self.s) + "\n" for i in range(self.n))

    def __add__(self, other: NrtVector) -> NrtVector:
        _check_same(self, other)
        return NrtVector(self.n, self.s, self.bits ^ other.bits)


def _check_same(u: NrtVector, v: NrtVector) -> None:
    if (u.n, u.s) != (v.n, v.s):
        raise ValueError(f"vectors live in different spaces: {u.n}x{u.s} vs {v.n}x{v.s}")


def nrt_row_weight(row: Sequence[int]) -> int:
    for j in range(len(row), 0, -1):
        if row[j - 1]:
            return j
    return 0


def weight_bits(bits: int, n: int, s: int) -> int:
    mask = (1 << s) - 1
    total = 0
    for i in range(n):
        total += ((bits >> (i * s)) & mask).bit_length()
    return total


@lru_cache(maxsize=64)
def _weight_table(n: int, s: int) -> tuple[int, ...]:
    return tuple(weight_bits(v, n, s) for v in range(1 << (n * s)))


def weight_function(n: int, s: int) -> Callable[[int], int]:
    """Fast weight of a flat bit pattern; table-driven when n*s is small."""
    if n * s <= 16:
        return _weight_table(n, s).__getitem__
    return lambda bits: weight_bits(bits, n, s)


def nrt_weight(v: NrtVector) -> int:
    return weight_bits(v.bits, v.n, v.s)


def nrt_distance_vec(u: NrtVector, v: NrtVector) -> int:
    _check_same(u, v)
    return weight_bits(u.bits ^ v.bits, u.n, u.s)


def _reverse(block: int, s: int) -> int:
    return int(format(block, f"0{s}b")[::-1], 2) if block else 0


@lru_cache(maxsize=32)
def _reverse_table(s: int) -> tuple[int, ...]:
    return tuple(_reverse(b, s) for b in range(1 << s))


def reverse_blocks(bits: int, n: int, s: int) -> int:
    """Ordered flip of a single flat vector: reverse each s-bit block."""
    if n == 1 and s > 12:
        return _reverse(bits, s)
    mask = (1 << s) - 1
    if s <= 12:
        table = _reverse_table(s)
        out = 0
        for i in range(n):
            out |= table[(bits >> (i * s)) & mask] << (i * s)
        return out
    return sum(_reverse((bits >> (i * s)) & mask, s) << (i * s) for i in range(n))


def inner_bits(u: int, v: int, n: int, s: int) -> int:
    return parity(u & reverse_blocks(v, n, s))


def nrt_inner(u: NrtVector, v: NrtVector) -> int:
    """sum_i sum_j u_{i,j} v_{i,s-j+1} over F_2."""
    _check_same(u, v)
    return inner_bits(u.bits, v.bits, u.n, u.s)


def flip(a: BitMatrix) -> BitMatrix:
    """Reverse the column order of every row."""
    return BitMatrix(tuple(_reverse(r, a.ncols) for r in a.rows), a.ncols)


def ordered_flip(a: BitMatrix, n: int, s: int) -> BitMatrix:
    if n < 1 or s < 1 or a.ncols != n * s:
        raise ValueError(f"{a.ncols} columns do not split into {n} blocks of {s}")
    return BitMatrix(tuple(reverse_blocks(r, n, s) for r in a.rows), a.ncols)


def circ(a: BitMatrix) -> BitMatrix:
    """A° = flip(A)^T."""
    return flip(a).transpose()


def dagger(a: BitMatrix, n: int, s: int) -> BitMatrix:
    """A† = Oflip(A)^T, i.e. the blocks' A_i° stacked vertically."""
    return ordered_flip(a, n, s).transpose()


def shape_of(v: NrtVector) -> Shape:
    if v.s != 2:
        raise ValueError("shapes are defined only for s = 2")
    return shape_bits(v.bits, v.n)


def shape_bits(bits: int, n: int) -> Shape:
    counts = [0, 0, 0]
    for i in range(n):
        counts[((bits >> (2 * i)) & 3).bit_length()] += 1
    return Shape(*counts)


def shapes(n: int) -> list[Shape]:
    """Delta_{n,2} ordered by (e2, e1)."""
    return [Shape(n - e1 - e2, e1, e2) for e2 in range(n + 1) for e1 in range(n - e2 + 1)]


def shape_count(n: int, e: Shape | Sequence[int]) -> int:
    """Number of vectors in M_{n,2} with the given shape."""
    e0, e1, e2 = e
    if min(e0, e1, e2) < 0 or e0 + e1 + e2 != n:
        raise ValueError(f"{tuple(e)} is not a shape for n={n}")
    return factorial(n) // (factorial(e0) * factorial(e1) * factorial(e2)) << e2
