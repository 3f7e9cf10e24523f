from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st

from nrtlcd.code import NrtCode
from nrtlcd.gf2core import BitMatrix, rank
from nrtlcd.nrtspace import NrtVector


@st.composite
def bit_matrices(draw, max_rows: int = 6, max_cols: int = 8, nrows=None, ncols=None) -> BitMatrix:
    r = draw(st.integers(0, max_rows)) if nrows is None else nrows
    c = draw(st.integers(0, max_cols)) if ncols is None else ncols
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BitMatrix(tuple(rows), c)


@st.composite
def dims(draw, max_bits: int = 12, min_s: int = 1) -> tuple[int, int]:
    s = draw(st.integers(min_s, min(6, max_bits)))
    n = draw(st.integers(1, max(1, max_bits // s)))
    return n, s


@st.composite
def vectors(draw, n: int, s: int) -> NrtVector:
    return NrtVector(n, s, draw(st.integers(0, (1 << (n * s)) - 1)))


@st.composite
def codes(draw, max_bits: int = 12, max_k: int = 4, n=None, s=None, min_s: int = 1) -> NrtCode:
    if n is None or s is None:
        n, s = draw(dims(max_bits, min_s))
    k = draw(st.integers(1, min(max_k, n * s)))
    rows = draw(st.lists(st.integers(1, (1 << (n * s)) - 1), min_size=k, max_size=k))
    gen = BitMatrix(tuple(rows), n * s)
    assume(rank(gen) == k)
    return NrtCode(n, s, gen)
