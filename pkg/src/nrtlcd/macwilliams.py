"""Shape enumerators on M_{n,2}(F_2) and the MacWilliams transform between a
code and its NRT dual.

Three ways of getting the kernel B_e(e*) are provided:

* ``kernel_direct``: the character sum over all vectors of shape e against a
  fixed vector of shape e*.  Slow, but definitional.
* ``kernel_product``: closed form obtained from the per-row kernel
  (z0 + z1 + 2 z2)^{e*0} (z0 + z1 - 2 z2)^{e*1} (z0 - z1)^{e*2}.
* ``kernel_formula``: the product formula as usually printed, whose first
  binomial has upper index e*0 + e*1 - e*2.  It disagrees with the other
  two and is kept only so the disagreement can be reported.

Transforms use ``kernel_product``, which the test suite checks against
``kernel_direct``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .code import NrtCode
from .nrtspace import Shape, shape_bits, shape_count, shapes

DIRECT_MAX_N = 8


class KernelInconsistencyError(ArithmeticError):
    """A transform produced a non-integral or negative count."""


@dataclass(frozen=True)
class ShapeDistribution:
    n: int
    counts: Mapping[Shape, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for e, a in self.counts.items():
            e = Shape(*e)
            if e.e0 + e.e1 + e.e2 != self.n or min(e) < 0:
                raise ValueError(f"{e} is not a shape for n={self.n}")
            if a < 0:
                raise ValueError(f"negative count at {e}")
            if a:
                clean[e] = a
        object.__setattr__(self, "counts", dict(sorted(clean.items(), key=lambda kv: (kv[0].e2, kv[0].e1))))

    def __getitem__(self, e: Shape) -> int:
        return self.counts.get(Shape(*e), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def vector(self) -> list[int]:
        return [self[e] for e in shapes(self.n)]

    @classmethod
    def from_vector(cls, n: int, values: Iterable[int]) -> ShapeDistribution:
        return cls(n, dict(zip(shapes(n), values)))

    def to_json(self) -> dict[str, int]:
        return {str(e): a for e, a in self.counts.items()}


@lru_cache(maxsize=16)
def _shape_index_table(n: int) -> tuple[int, ...]:
    index = {e: i for i, e in enumerate(shapes(n))}
    return tuple(index[shape_bits(v, n)] for v in range(1 << (2 * n)))


def shape_distribution(c: NrtCode) -> ShapeDistribution:
    if c.s != 2:
        raise ValueError("shape distributions need s = 2")
    counts = [0] * len(shapes(c.n))
    if c.n <= 10:
        table = _shape_index_table(c.n)
        for v in c.codewords():
            counts[table[v]] += 1
        return ShapeDistribution.from_vector(c.n, counts)
    tally: dict[Shape, int] = {}
    for v in c.codewords():
        e = shape_bits(v, c.n)
        tally[e] = tally.get(e, 0) + 1
    return ShapeDistribution(c.n, tally)


def _binom(top: int, bottom: int) -> int:
    if top < 0 or bottom < 0 or bottom > top:
        return 0
    return comb(top, bottom)


def _check_shapes(e: Shape, e_star: Shape, n: int) -> tuple[Shape, Shape]:
    e, e_star = Shape(*e), Shape(*e_star)
    for x in (e, e_star):
        if min(x) < 0 or sum(x) != n:
            raise ValueError(f"{x} is not a shape for n={n}")
    return e, e_star


def kernel_formula(e: Shape, e_star: Shape, n: int) -> int:
    """The printed product formula, evaluated literally.

    Binomials with a negative upper index count as 0.
    """
    e, es = _check_shapes(e, e_star, n)
    t1 = sum(
        (-1) ** j * _binom(es.e2, j) * _binom(es.e0 + es.e1 - es.e2, e.e1 - j) for j in range(e.e1 + 1)
    )
    t2 = sum((-1) ** j * _binom(es.e1, j) * _binom(es.e0, e.e2 - j) for j in range(e.e2 + 1))
    return (1 << e.e2) * t1 * t2


def kernel_product(e: Shape, e_star: Shape, n: int) -> int:
    e, es = _check_shapes(e, e_star, n)
    # rows of weight 2 in v come from the e*0 + e*1 rows where u_i has no
    # weight-2 entry; the rest split into weight 1 and weight 0
    t2 = sum((-1) ** j * _binom(es.e1, j) * _binom(es.e0, e.e2 - j) for j in range(e.e2 + 1))
    t1 = sum(
        (-1) ** j * _binom(es.e2, j) * _binom(es.e0 + es.e1 - e.e2, e.e1 - j) for j in range(e.e1 + 1)
    )
    return (1 << e.e2) * t1 * t2


def _swap_pairs(bits: int, n: int) -> int:
    lo = int("01" * n, 2) if n else 0
    return ((bits & lo) << 1) | ((bits >> 1) & lo)


def representative(e_star: Shape, n: int) -> int:
    """Canonical vector of shape e*: e*0 zero rows, then (1,0) rows, then (0,1) rows."""
    e0, e1, e2 = e_star
    bits = 0
    for i in range(e0, e0 + e1):
        bits |= 1 << (2 * i)
    for i in range(e0 + e1, n):
        bits |= 2 << (2 * i)
    return bits


def kernel_direct(e: Shape, e_star: Shape, n: int, u: int | None = None, max_n: int = DIRECT_MAX_N) -> int:
    """sum over v with shape(v) = e of (-1)^<v,u>, for u of shape e*."""
    if n > max_n:
        raise ValueError(f"n={n} exceeds the brute-force limit {max_n}")
    e, e_star = _check_shapes(e, e_star, n)
    if u is None:
        u = representative(e_star, n)
    elif shape_bits(u, n) != e_star:
        raise ValueError(f"representative has shape {shape_bits(u, n)}, not {e_star}")
    # block form u1 v2 + u2 v1 == parity(v & swapped(u))
    su = _swap_pairs(u, n)
    total = 0
    for v in range(1 << (2 * n)):
        if shape_bits(v, n) == e:
            total += -1 if (v & su).bit_count() & 1 else 1
    return total


@lru_cache(maxsize=32)
def kernel_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows indexed by e, columns by e*, both in ``shapes(n)`` order."""
    sh = shapes(n)
    return tuple(tuple(kernel_product(e, es, n) for es in sh) for e in sh)


def macwilliams_transform(dist: ShapeDistribution, k: int) -> ShapeDistribution:
    """Shape distribution of the dual code from that of a k-dimensional code."""
    if dist.total != 1 << k:
        raise ValueError(f"distribution sums to {dist.total}, not 2^{k}")
    n = dist.n
    a = dist.vector()
    out = []
    for e, row in zip(shapes(n), kernel_table(n)):
        acc = sum(b * x for b, x in zip(row, a) if x)
        q, r = divmod(acc, 1 << k)
        if r or q < 0:
            raise KernelInconsistencyError(f"transform gives {acc}/2^{k} at shape {e}")
        out.append(q)
    result = ShapeDistribution.from_vector(n, out)
    if result.total != 1 << (2 * n - k):
        raise KernelInconsistencyError(f"dual distribution sums to {result.total}, not 2^{2 * n - k}")
    return result


def lcd_disjointness(dist: ShapeDistribution, dual: ShapeDistribution) -> dict[str, bool]:
    """A_e + A'_e <= |{v : shape(v) = e}|, read literally and with the shared
    zero word set aside."""
    n = dist.n
    zero = Shape(n, 0, 0)
    literal = all(dist[e] + dual[e] <= shape_count(n, e) for e in shapes(n))
    nonzero = all(dist[e] + dual[e] <= shape_count(n, e) for e in shapes(n) if e != zero)
    return {"literal": literal, "zero_excluded": nonzero}
