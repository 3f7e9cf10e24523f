"""Closed-form bounds for NRT codes, in exact rational arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .macwilliams import ShapeDistribution, kernel_table
from .nrtspace import Shape, shape_count, shapes


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Fraction | None
    applicable: bool
    satisfied: bool | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "value": None if self.value is None else _render(self.value),
            "applicable": self.applicable,
            "satisfied": self.satisfied,
        }


def _render(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def singleton(n: int, s: int, k: int) -> int:
    if not 1 <= k <= n * s:
        raise ValueError(f"k={k} outside 1..{n * s}")
    return n * s - k + 1


def delta_crit(q: int, s: int) -> Fraction:
    if q < 2 or s < 1:
        raise ValueError("need q >= 2 and s >= 1")
    return 1 - Fraction(q**s - 1, s * q**s * (q - 1))


def plotkin_max_size(n: int, s: int, q: int, d: int) -> Fraction | None:
    """Upper bound d / (d - n s delta_crit) on q^k, or None when d is too small."""
    t = n * s * delta_crit(q, s)
    if d <= t:
        return None
    return Fraction(d) / (d - t)


class Nx2Upper(NamedTuple):
    bound: int
    plotkin_value: Fraction
    beats_singleton: bool | None


def lcd_nx2_upper(n: int, k: int) -> Nx2Upper:
    """floor(5n / (2^k - 1)) capped by Singleton for s = 2.

    ``beats_singleton`` reports n > (2^k - 1)(k - 1) / (2^{k+1} - 7), the
    regime where 5n/(2^k - 1) < 2n - k + 1; it is None for k = 1 where the
    denominator is not positive.
    """
    if k < 1:
        raise ValueError("k must be positive")
    value = Fraction(5 * n, 2**k - 1)
    bound = min(2 * n - k + 1, value.numerator // value.denominator)
    denom = 2 ** (k + 1) - 7
    flag = None if denom <= 0 else n > Fraction((2**k - 1) * (k - 1), denom)
    return Nx2Upper(bound, value, flag)


def plotkin_nx2_distance(n: int, k: int) -> int:
    """Largest d allowed by the Plotkin bound for an [n x 2, k] code.

    Either d <= 5n/4 (bound silent) or 2^k <= d / (d - 5n/4), i.e.
    d <= 5n 2^k / (4 (2^k - 1)); the second is always the larger.
    """
    if k < 1:
        raise ValueError("k must be positive")
    value = Fraction(5 * n * 2**k, 4 * (2**k - 1))
    return min(2 * n - k + 1, value.numerator // value.denominator)


def _multinomial(n: int, e: Shape) -> int:
    return factorial(n) // (factorial(e.e0) * factorial(e.e1) * factorial(e.e2))


def lp_bound_check(dist: ShapeDistribution, n: int, k: int, literal: bool = False) -> dict[Shape, bool]:
    """Per-shape check of 2^k A_e <= sum_{e*} A_{e*} [N_e - B_e(e*)].

    By default N_e counts all vectors of shape e (multinomial times 2^{e2}),
    and at the zero shape the common zero word is allowed once in both the
    code and its dual.  ``literal=True`` uses the bare multinomial and no
    zero-word allowance.
    """
    if dist.n != n:
        raise ValueError(f"distribution is for n={dist.n}, not {n}")
    if dist.total != 1 << k:
        raise ValueError(f"distribution sums to {dist.total}, not 2^{k}")
    a = dist.vector()
    total = 1 << k
    zero = Shape(n, 0, 0)
    out = {}
    for e, row in zip(shapes(n), kernel_table(n)):
        coef = _multinomial(n, e) if literal else shape_count(n, e)
        rhs = sum(x * (coef - b) for b, x in zip(row, a))
        if e == zero and not literal:
            rhs += total
        out[e] = total * dist[e] <= rhs
    return out


def all_bounds(n: int, s: int, k: int, d: int | None = None, q: int = 2) -> list[BoundReport]:
    """Every bound that applies to [n x s, k] codes, checked against d if given."""
    reports = []
    sb = singleton(n, s, k)
    reports.append(BoundReport("singleton", Fraction(sb), True, None if d is None else d <= sb))
    dc = delta_crit(q, s)
    reports.append(BoundReport("delta_crit", dc, True))
    if d is not None:
        pm = plotkin_max_size(n, s, q, d)
        reports.append(
            BoundReport("plotkin_max_size", pm, pm is not None, None if pm is None else q**k <= pm)
        )
    if s == 2 and q == 2:
        up = lcd_nx2_upper(n, k)
        reports.append(BoundReport("lcd_nx2_upper", Fraction(up.bound), True, None if d is None else d <= up.bound))
        reports.append(BoundReport("lcd_nx2_upper_raw", up.plotkin_value, up.beats_singleton is not None))
        pd = plotkin_nx2_distance(n, k)
        reports.append(BoundReport("plotkin_nx2_distance", Fraction(pd), True, None if d is None else d <= pd))
    return reports
