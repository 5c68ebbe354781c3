"""Gram-Backlund (Euler-Maclaurin) continuation of zeta and its factor form.

With partial sum S_N(s) = sum_{n=1}^{N-1} n^-s,

    Z_GB(s) = S_N + N^(1-s)/(s-1) + N^-s/2
              + s * sum_mu B_2mu/(2mu)! (s+1)...(s+2mu-2) N^(-s-2mu+1)

    F_GB(s) = N^(s-1)/s * S_N + 1/(2Ns)
              + sum_mu B_2mu/(2mu)! (s+1)...(s+2mu-2) N^(-2mu)

    Q(s) = 1/(s(1-s))

so that N^(s-1)/s * Z_GB = F_GB - Q term by term, and Z_GB = 0 iff F_GB = Q
away from s = 0, 1.

The mu-series is asymptotic. By default it is cut just before its smallest
term, and the reported error is four times the first omitted term. With
``fixed=True`` exactly ``mu_max`` terms are summed. That turns Z_GB and F_GB
into fixed analytic functions of s, which is what circle quadrature needs.

Every evaluator accepts Python numbers, :class:`ComplexPoint`, or mpmath
values. mpmath inputs are evaluated at the ambient ``mpmath.mp`` precision.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from . import core_numerics
from .core_numerics import log_gamma
from .errors import CapacityError, DomainError, ParameterError, PoleError

__all__ = [
    "ComplexPoint",
    "EvalParams",
    "ZetaValue",
    "DEFAULT_TOL",
    "SAFETY",
    "dirichlet_oracle",
    "evaluate_zeta",
    "auto_params",
    "q_of",
    "f_gb",
    "check_factor_identity",
    "reflect_zeta",
    "zeta_pole_removed",
]

DEFAULT_TOL = 1e-12
SAFETY = 4.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = X + iY; ``s_prime`` is the shift s - 1/2 = eps + i eta."""

    X: float
    Y: float

    @classmethod
    def of(cls, s) -> "ComplexPoint":
        if isinstance(s, ComplexPoint):
            return s
        z = complex(s)
        return cls(z.real, z.imag)

    @property
    def s(self) -> complex:
        return complex(self.X, self.Y)

    @property
    def s_prime(self) -> complex:
        return complex(self.X - 0.5, self.Y)

    @property
    def epsilon(self) -> float:
        return self.X - 0.5

    @property
    def eta(self) -> float:
        return self.Y

    def conj(self) -> "ComplexPoint":
        return ComplexPoint(self.X, -self.Y)

    def __complex__(self):
        return self.s


@dataclass(frozen=True)
class EvalParams:
    """Truncation policy: partial-sum node N, tail length mu_max, target tol."""

    N: int
    mu_max: int
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ParameterError(f"N must be an integer >= 2, got {self.N}")
        if int(self.mu_max) != self.mu_max or self.mu_max < 1:
            raise ParameterError(f"mu_max must be an integer >= 1, got {self.mu_max}")
        depth = core_numerics.default_table().depth
        if 2 * self.mu_max > depth:
            raise ParameterError(
                f"2*mu_max = {2 * self.mu_max} exceeds the Bernoulli table depth {depth}"
            )
        if not self.tol > 0:
            raise ParameterError("tol must be positive")

    def as_dict(self) -> dict:
        return {"N": self.N, "mu_max": self.mu_max, "tol": self.tol}


class ZetaValue(NamedTuple):
    value: complex
    error: float
    ok: bool
    params: EvalParams
    mu_used: int


def _is_mp(s) -> bool:
    return isinstance(s, (mpmath.mpc, mpmath.mpf))


def _coerce(s):
    if isinstance(s, ComplexPoint):
        return s.s
    if _is_mp(s):
        return mpmath.mpc(s)
    return complex(s)


@lru_cache(maxsize=8)
def _tail_coefficients(table) -> tuple[float, ...]:
    # B_2mu / (2mu)! rounded once from the exact rational; index 0 unused.
    return tuple(float(table[m] / math.factorial(2 * m)) for m in range(len(table)))


def _tail_coefficient(mu: int, mp: bool):
    table = core_numerics.default_table()
    if mp:
        return table.mp(mu) / mpmath.factorial(2 * mu)
    return _tail_coefficients(table)[mu]


def _max_mu() -> int:
    return len(core_numerics.default_table()) - 1


def _f_tail_terms(s, N: int, count: int, mp: bool) -> list:
    """F-form tail terms b_mu = B_2mu/(2mu)! * (s+1)...(s+2mu-2) * N^-2mu."""
    terms = []
    prod = 1
    inv_n2 = (mpmath.mpf(1) / N**2) if mp else 1.0 / (N * N)
    scale = inv_n2
    for mu in range(1, count + 1):
        if mu > 1:
            prod = prod * (s + 2 * mu - 3) * (s + 2 * mu - 2)
        terms.append(_tail_coefficient(mu, mp) * prod * scale)
        scale = scale * inv_n2
    return terms


def _truncation(s, params: EvalParams, fixed: bool):
    """Number of tail terms to keep and |first omitted F-form term|."""
    mp = _is_mp(s)
    avail = min(params.mu_max + 1, _max_mu())
    b = _f_tail_terms(s, params.N, avail, mp)
    mags = [abs(t) for t in b]

    def omitted(k):
        # magnitude of term k+1 (1-based) when k terms are kept
        if k < len(mags):
            return mags[k]
        return mags[-1]

    if fixed:
        return params.mu_max, omitted(params.mu_max)
    for mu in range(1, params.mu_max + 1):
        if mags[mu - 1] == 0:
            return params.mu_max, 0.0
        if mu >= 2 and mu < len(mags) and mags[mu] >= mags[mu - 1]:
            # term mu is the smallest one: keep mu-1 terms
            return mu - 1, mags[mu - 1]
    return params.mu_max, omitted(params.mu_max)


_SPF_CACHE: dict[int, list[int]] = {}


def _smallest_prime_factors(n: int) -> list[int]:
    spf = _SPF_CACHE.get(n)
    if spf is None:
        spf = list(range(n + 1))
        for p in range(2, int(n**0.5) + 1):
            if spf[p] == p:
                for q in range(p * p, n + 1, p):
                    if spf[q] == q:
                        spf[q] = p
        _SPF_CACHE[n] = spf
    return spf


def _partial_sum(s, N: int):
    """sum_{n=1}^{N-1} n^-s."""
    if _is_mp(s):
        spf = _smallest_prime_factors(N)
        pw = [mpmath.mpf(1)] * N
        total = mpmath.mpc(1)
        for n in range(2, N):
            p = spf[n]
            pw[n] = mpmath.exp(-s * mpmath.log(n)) if p == n else pw[p] * pw[n // p]
            total += pw[n]
        return total
    n = np.arange(1, N, dtype=float)
    return complex(np.exp(-s * np.log(n)).sum())


def _pow(base: int, expo):
    if _is_mp(expo):
        return mpmath.power(base, expo)
    return cmath.exp(expo * math.log(base))


def _check_finite(z, what):
    if not _is_mp(z) and not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what} must be finite, got {z!r}")


def dirichlet_oracle(s, terms: int = 100_000) -> complex:
    """Direct Dirichlet series with a midpoint-integral tail, valid for X > 1.

    The bare partial sum is within ``terms**-(X-1)/(X-1)`` of zeta. The tail
    correction ``(terms+1/2)^(1-s)/(s-1)`` removes that leading error, leaving
    O(|s(s+1)| terms^(-X-1)).
    """
    z = complex(_coerce(s))
    if not z.real > 1:
        raise DomainError(f"Dirichlet series diverges for Re s <= 1 (got {z})")
    if terms < 1:
        raise ParameterError("terms must be >= 1")
    total = 0j
    chunk = 1 << 18
    for start in range(1, terms + 1, chunk):
        n = np.arange(start, min(start + chunk, terms + 1), dtype=float)
        total += np.exp(-z * np.log(n)).sum()
    return total + (terms + 0.5) ** (1 - z) / (z - 1)


def _rounding_floor(s: complex, N: int) -> float:
    n = np.arange(1, N, dtype=float)
    bound = float(np.exp(-s.real * np.log(n)).sum())
    if s != 1:
        bound += abs(N ** (1 - s) / (s - 1))
    return SAFETY * _EPS * max(1.0, bound)


def auto_params(s, tol: float = DEFAULT_TOL) -> EvalParams:
    """Deterministic (N, mu_max) whose estimated remainder at s is below tol.

    N starts at max(10, ceil(2(|Y| + |X| + 1))) and is doubled only when no
    tail length within the Bernoulli table reaches tol.
    """
    if not tol > 0:
        raise ParameterError("tol must be positive")
    z = complex(_coerce(s))
    _check_finite(z, "s")
    N = max(10, math.ceil(2 * (abs(z.imag) + abs(z.real) + 1)))
    best = math.inf
    for _ in range(12):
        floor = _rounding_floor(z, N)
        if tol < floor:
            raise CapacityError(
                f"tolerance {tol:.3g} unreachable in binary64 at s={z}; "
                f"achievable ~{floor:.3g}",
                achievable=floor,
            )
        top = _max_mu()
        mags = [abs(t) for t in _f_tail_terms(z, N, top, mp=False)]
        scale = abs(z) * abs(N ** (1 - z)) * SAFETY
        for mu in range(1, top):
            if mu >= 2 and mags[mu - 1] >= mags[mu - 2]:
                break  # terms already growing, the series will not get there
            if scale * mags[mu] < tol:
                return EvalParams(N, mu, tol)
        best = min(best, scale * min(mags))
        N *= 2
    raise CapacityError(
        f"tolerance {tol:.3g} unreachable at s={z}; best estimate {best:.3g}",
        achievable=best,
    )


def _default_params(s, params, tol):
    if params is not None:
        return params
    z = complex(s) if not _is_mp(s) else complex(s)
    return auto_params(z, tol if tol is not None else DEFAULT_TOL)


def evaluate_zeta(s, params: EvalParams | None = None, *, tol: float | None = None,
                  fixed: bool = False) -> ZetaValue:
    """Truncated Gram-Backlund sum Z_GB(s) with an in-band error estimate.

    Raises :class:`PoleError` at s = 1. A loose error estimate is reported
    through ``ok`` rather than raised.
    """
    z = _coerce(s)
    _check_finite(z, "s")
    if z == 1:
        raise PoleError("Z_GB has a pole at s = 1")
    p = _default_params(z, params, tol)
    N = p.N
    keep, omitted = _truncation(z, p, fixed)
    n_pow = _pow(N, -z)
    value = _partial_sum(z, N) + N * n_pow / (z - 1) + n_pow / 2
    prod = 1
    # N^(-s-2mu+1) = N^-s * N^(1-2mu)
    n_scale = n_pow / N
    tail = 0
    for mu in range(1, keep + 1):
        if mu > 1:
            prod = prod * (z + 2 * mu - 3) * (z + 2 * mu - 2)
        tail += _tail_coefficient(mu, _is_mp(z)) * prod * n_scale
        n_scale = n_scale / (N * N)
    value += z * tail
    err = SAFETY * abs(z) * abs(N * n_pow) * omitted
    if not _is_mp(z):
        value = complex(value)
        err = float(err)
    return ZetaValue(value, err, err <= p.tol, p, keep)


def zeta_pole_removed(w, params: EvalParams | None = None, *,
                      tol: float | None = None) -> ZetaValue:
    """(w - 1) * Z_GB(w), finite at w = 1 where it equals 1."""
    z = _coerce(w)
    _check_finite(z, "w")
    p = _default_params(z, params, tol)
    N = p.N
    keep, omitted = _truncation(z, p, fixed=False)
    n_pow = _pow(N, -z)
    zm1 = z - 1
    value = zm1 * _partial_sum(z, N) + N * n_pow + zm1 * n_pow / 2
    prod = 1
    n_scale = n_pow / N
    tail = 0
    for mu in range(1, keep + 1):
        if mu > 1:
            prod = prod * (z + 2 * mu - 3) * (z + 2 * mu - 2)
        tail += _tail_coefficient(mu, _is_mp(z)) * prod * n_scale
        n_scale = n_scale / (N * N)
    value += zm1 * z * tail
    err = SAFETY * abs(zm1) * abs(z) * abs(N * n_pow) * omitted
    return ZetaValue(complex(value), float(err), err <= p.tol, p, keep)


def q_of(s):
    """Q(s) = 1/(s(1-s)), symmetric under s -> 1 - s."""
    z = _coerce(s)
    if z == 0 or z == 1:
        raise PoleError(f"Q has a pole at s = {z}")
    return 1 / (z * (1 - z))


def f_gb(s, params: EvalParams | None = None, *, tol: float | None = None,
         fixed: bool = False):
    """F_GB(s), the left-hand factor of Z_GB = 0  <=>  F_GB = Q.

    The partial sum runs over n = 1..N-1 with n^-s, the reading under which
    ``N^(s-1)/s * Z_GB = F_GB - Q`` holds identically.
    """
    z = _coerce(s)
    _check_finite(z, "s")
    if z == 0:
        raise PoleError("F_GB has a pole at s = 0")
    p = _default_params(z, params, tol)
    N = p.N
    keep, _ = _truncation(z, p, fixed)
    mp = _is_mp(z)
    value = _pow(N, z - 1) / z * _partial_sum(z, N) + 1 / (2 * N * z)
    tail = _f_tail_terms(z, N, keep, mp)
    value += mpmath.fsum(tail) if mp else sum(tail)
    return value if mp else complex(value)


def check_factor_identity(s, params: EvalParams | None = None, *,
                          tol: float | None = None) -> float:
    """|F_GB - Q - N^(s-1)/s * Z_GB| under one shared truncation."""
    z = _coerce(s)
    if z == 0 or z == 1:
        raise PoleError(f"factor identity undefined at s = {z}")
    p = _default_params(z, params, tol)
    zeta = evaluate_zeta(z, p).value
    lhs = f_gb(z, p) - q_of(z)
    rhs = _pow(p.N, z - 1) / z * zeta
    return float(abs(lhs - rhs))


def reflect_zeta(s, *, tol: float | None = None) -> ZetaValue:
    """zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s).

    Evaluated as -2^s pi^(s-1) [sin(pi s/2)/s] Gamma(1-s) [(w-1) zeta(w)] with
    w = 1 - s, which stays finite at s = 0 (value -1/2).
    """
    z = complex(_coerce(s))
    _check_finite(z, "s")
    if z.imag == 0 and z.real >= 1 and z.real == math.floor(z.real):
        raise DomainError(f"reflection formula is singular at s = {z.real:g}")
    w = 1 - z
    h = zeta_pole_removed(w, tol=tol)
    half = 0.5 * math.pi * z
    sinc = 0.5 * math.pi if z == 0 else cmath.sin(half) / z
    try:
        log_pref = z * math.log(2.0) + (z - 1) * math.log(math.pi) + log_gamma(w)
        pref = -cmath.exp(log_pref) * sinc
    except OverflowError as exc:
        raise CapacityError(f"reflection factors overflow at s = {z}") from exc
    if not (math.isfinite(pref.real) and math.isfinite(pref.imag)):
        raise CapacityError(f"reflection factors overflow at s = {z}")
    value = pref * h.value
    err = abs(pref) * h.error
    return ZetaValue(value, err, err <= h.params.tol, h.params, h.mu_used)
