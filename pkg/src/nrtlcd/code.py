"""Linear codes in M_{n,s}(F_2): distance, duality, LCD test, canonical forms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .gf2core import BitMatrix, det, kernel_basis, mat_mul, rank, span
from .nrtspace import dagger, ordered_flip, weight_function

ORACLE_MAX_BITS = 20


@dataclass(frozen=True)
class NrtCode:
    n: int
    s: int
    gen: BitMatrix

    def __post_init__(self) -> None:
        if self.n < 1 or self.s < 1:
            raise ValueError("n and s must be positive")
        if self.gen.ncols != self.n * self.s:
            raise ValueError(f"generator has {self.gen.ncols} columns, expected {self.n * self.s}")
        if rank(self.gen) != self.gen.nrows:
            raise ValueError("generator rows are linearly dependent")

    @property
    def k(self) -> int:
        return self.gen.nrows

    @property
    def length(self) -> int:
        return self.n * self.s

    @classmethod
    def from_strings(cls, n: int, s: int, rows: list[str]) -> NrtCode:
        return cls(n, s, BitMatrix.from_strings(rows, n * s))

    def codewords(self) -> Iterator[int]:
        return span(self.gen)

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s, "k": self.k, "generator": self.gen.to_strings()}

    @classmethod
    def from_json(cls, obj: dict) -> NrtCode:
        n, s = int(obj["n"]), int(obj["s"])
        code = cls(n, s, BitMatrix.from_strings(list(obj["generator"]), n * s))
        if "k" in obj and int(obj["k"]) != code.k:
            raise ValueError(f"declared k={obj['k']} but generator has {code.k} rows")
        return code


def load_code(path: str | Path) -> NrtCode:
    return NrtCode.from_json(json.loads(Path(path).read_text()))


def save_code(code: NrtCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code.to_json()) + "\n")


@dataclass(frozen=True)
class CodeSummary:
    n: int
    s: int
    k: int
    d_N: int
    is_lcd: bool
    is_mds: bool


def min_weight(rows: tuple[int, ...], n: int, s: int, floor: int = 0) -> int:
    """Minimum weight over nonzero combinations of ``rows``.

    Stops as soon as a weight <= ``floor`` is seen and returns it; callers
    maximizing distance use that to abandon hopeless candidates.
    """
    wf = weight_function(n, s)
    best = n * s + 1
    v = 0
    for i in range(1, 1 << len(rows)):
        v ^= rows[(i & -i).bit_length() - 1]
        w = wf(v)
        if w < best:
            best = w
            if best <= floor:
                break
    return best


def min_distance(c: NrtCode) -> int:
    if c.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    return min_weight(c.gen.rows, c.n, c.s)


def gram_matrix(c: NrtCode) -> BitMatrix:
    """G G†; its (a,b) entry is the NRT inner product of rows a and b."""
    return mat_mul(c.gen, dagger(c.gen, c.n, c.s))


def dual_code(c: NrtCode) -> NrtCode:
    # <u,g> = u . Oflip(g), so the dual is the null space of Oflip(G)
    return NrtCode(c.n, c.s, kernel_basis(ordered_flip(c.gen, c.n, c.s)))


def is_lcd(c: NrtCode) -> bool:
    return det(gram_matrix(c)) == 1


def is_lcd_oracle(c: NrtCode, max_bits: int | None = ORACLE_MAX_BITS) -> bool:
    """LCD test straight from the definition: C + C⊥ must be the whole space."""
    if max_bits is not None and c.length > max_bits:
        raise ValueError(f"n*s = {c.length} exceeds oracle limit {max_bits}")
    dual = dual_code(c)
    return rank(c.gen.vstack(dual.gen)) == c.k + dual.k == c.length


def _echelon_top(rows: tuple[int, ...]) -> list[int]:
    """Reduced basis whose pivot is the highest set bit, sorted by pivot."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v >> (b.bit_length() - 1) & 1:
                v ^= b
        if v:
            top = 1 << (v.bit_length() - 1)
            basis = [b ^ v if b & top else b for b in basis]
            basis.append(v)
    basis.sort(key=int.bit_length)
    return basis


def standard_form(c: NrtCode) -> tuple[NrtCode, tuple[int, ...]]:
    """Row-reduce a code in M_{1,s} so row i ends in a pivot at column d_i.

    Returns the new code and its type (d_1 < ... < d_k); d_1 is the minimum
    distance since each codeword's weight is the largest pivot it uses.
    """
    if c.n != 1:
        raise ValueError("standard form is defined for n = 1")
    basis = _echelon_top(c.gen.rows)
    return NrtCode(1, c.s, BitMatrix(tuple(basis), c.s)), tuple(b.bit_length() for b in basis)


def block_echelon_form(c: NrtCode, isometry: bool = False) -> NrtCode:
    """Generator [G_1|...|G_n] in block echelon form.

    Rows are reduced block by block (pivot = last nonzero position inside the
    block) and ordered by their first nonzero block, so the rows vanishing on
    G_1..G_i are always the last ones.  Rows with a pivot in G_1 come first,
    ordered by increasing NRT weight.  Pivots of rows leading in the same
    block are distinct.

    Only row operations are used by default, so the code itself is unchanged.
    With ``isometry=True`` the entries of G_1 below each pivot are also
    cleared by column operations (adding a later column of the block into an
    earlier one), which makes the nonzero rows of G_1 canonical vectors.  That
    yields an NRT-isometric code with the same distance, but LCD-ness is not
    preserved by such maps.
    """
    n, s = c.n, c.s
    mask = (1 << s) - 1
    remaining = list(c.gen.rows)
    ordered: list[int] = []
    for i in range(n):
        shift = i * s
        basis: list[int] = []
        pivots: list[int] = []
        rest: list[int] = []
        for v in remaining:
            for b, p in zip(basis, pivots):
                if v >> p & 1:
                    v ^= b
            block = (v >> shift) & mask
            if block:
                p = shift + block.bit_length() - 1
                basis = [b ^ v if b >> p & 1 else b for b in basis]
                ordered = [b ^ v if b >> p & 1 else b for b in ordered]
                basis.append(v)
                pivots.append(p)
            elif v:
                rest.append(v)
        order = sorted(range(len(basis)), key=lambda t: pivots[t])
        ordered.extend(basis[t] for t in order)
        remaining = rest
    if remaining:
        raise AssertionError("rows left over after block reduction")
    if isometry:
        ordered = _canonize_first_block(ordered, s)
    return NrtCode(n, s, BitMatrix(tuple(ordered), n * s))


def _canonize_first_block(rows: list[int], s: int) -> list[int]:
    mask = (1 << s) - 1
    out = list(rows)
    for r in rows:
        block = r & mask
        if not block:
            continue
        p = block.bit_length() - 1
        for j in range(p):
            if block >> j & 1:
                # column p added into column j (p > j preserves row weights)
                out = [v ^ (1 << j) if v >> p & 1 else v for v in out]
    return out


def summarize(c: NrtCode) -> CodeSummary:
    d = min_distance(c)
    return CodeSummary(c.n, c.s, c.k, d, is_lcd(c), d == c.length - c.k + 1)
