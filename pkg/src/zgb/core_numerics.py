"""Special-function kernels: even Bernoulli numbers, rising products, log-Gamma.

Bernoulli numbers are generated once, exactly, with ``fractions.Fraction`` and
kept in an immutable table. Floating values are derived from the exact ones.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import comb

import mpmath

from .errors import CapacityError, DomainError, PoleError

__all__ = [
    "BernoulliTable",
    "bernoulli",
    "bernoulli_float",
    "default_table",
    "set_default_table",
    "rising_product",
    "log_gamma",
    "akiyama_tanigawa",
]

DEFAULT_DEPTH = 64
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _even_bernoulli_exact(depth: int) -> tuple[Fraction, ...]:
    # sum_{r=0}^{n} C(n+1, r) B_r = 0 with B_1 = -1/2; odd B_r (r >= 3) vanish.
    values = [Fraction(1)]
    for m in range(1, depth // 2 + 1):
        n = 2 * m
        acc = Fraction(n + 1) * Fraction(-1, 2)
        for j in range(m):
            acc += comb(n + 1, 2 * j) * values[j]
        values.append(-acc / (n + 1))
    return tuple(values)


def akiyama_tanigawa(n: int) -> list[Fraction]:
    """Bernoulli numbers B_0..B_n by the Akiyama-Tanigawa triangle.

    Uses the B_1 = +1/2 convention; even-index values agree with every
    convention. Independent of the recurrence behind :class:`BernoulliTable`
    and used to audit it.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


class BernoulliTable:
    """Immutable table of B_0, B_2, ..., B_depth as exact rationals.

    ``table[k]`` returns B_{2k}. Float and mpmath views are computed from the
    exact values, never by a floating recurrence.
    """

    __slots__ = ("_depth", "_exact", "_floats")

    def __init__(self, depth: int = DEFAULT_DEPTH):
        if depth < 0 or depth % 2:
            raise DomainError("table depth must be a non-negative even integer")
        self._depth = depth
        self._exact = _even_bernoulli_exact(depth)
        self._floats = tuple(float(b) for b in self._exact)

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def exact(self) -> tuple[Fraction, ...]:
        return self._exact

    @property
    def floats(self) -> tuple[float, ...]:
        return self._floats

    def __len__(self):
        return len(self._exact)

    def __getitem__(self, k):
        return self._exact[k]

    def mp(self, k):
        b = self._exact[k]
        return mpmath.mpf(b.numerator) / b.denominator

    def __repr__(self):
        return f"BernoulliTable(depth={self._depth})"


_TABLE = BernoulliTable(DEFAULT_DEPTH)


def default_table() -> BernoulliTable:
    return _TABLE


def set_default_table(table: BernoulliTable) -> BernoulliTable:
    """Install ``table`` process-wide and return the previous one.

    log_gamma needs B_2..B_22, so shallower tables are refused.
    """
    global _TABLE
    if table.depth < 22:
        raise CapacityError("log_gamma needs a Bernoulli table of depth >= 22", achievable=22)
    previous, _TABLE = _TABLE, table
    return previous


def bernoulli(index: int, table: BernoulliTable | None = None) -> Fraction:
    """Exact even-index Bernoulli number B_index."""
    table = table or _TABLE
    if index < 0 or index % 2:
        raise DomainError(f"Bernoulli index must be even and non-negative, got {index}")
    if index > table.depth:
        raise CapacityError(
            f"B_{index} exceeds the table depth {table.depth}", achievable=table.depth
        )
    return table[index // 2]


def bernoulli_float(index: int, table: BernoulliTable | None = None) -> float:
    table = table or _TABLE
    bernoulli(index, table)
    return table.floats[index // 2]


def rising_product(s, mu: int):
    """Product (s+1)(s+2)...(s+2mu-2); equals 1 for mu = 1.

    Works for Python numbers and mpmath values alike.
    """
    if mu < 1:
        raise DomainError("mu must be >= 1")
    prod = 1
    for j in range(1, 2 * mu - 1):
        prod = prod * (s + j)
    return prod


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(s) -> complex:
    """log Gamma(s) on the branch continuous off the negative real axis.

    Shifts the argument to Re s >= 16 with the recurrence and applies the
    Stirling series with Bernoulli coefficients. Matches the usual
    ``loggamma`` convention, so ``Im log_gamma(1/4 + it/2)`` is continuous
    in t as the Riemann-Siegel theta function requires.
    """
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma argument must be finite, got {s!r}")
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")

    correction = 0j
    shift = max(0, math.ceil(16.0 - z.real))
    for k in range(shift):
        correction += cmath.log(z + k)
    w = z + shift

    # Stirling: (w-1/2) log w - w + log(2 pi)/2 + sum B_2k / (2k(2k-1) w^(2k-1))
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    power = inv
    for k in range(1, 12):
        series += _TABLE.floats[k] / (2 * k * (2 * k - 1)) * power
        power *= inv2
    value = (w - 0.5) * cmath.log(w) - w + _HALF_LOG_2PI + series
    return value - correction
