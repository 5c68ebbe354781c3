"""Laurent coefficients on the circle s = 1/2 + rho e^{i theta} and parity split.

Coefficients come from the trapezoid rule on a uniform theta grid, which for
periodic analytic data is the length-K discrete Fourier transform:

    c_k = rho^-k * (1/K) sum_j f(1/2 + rho e^{i theta_j}) e^{-i k theta_j}

Even exponents form the part of f symmetric under s -> 1 - s (s' -> -s'),
odd exponents the anti-symmetric part.

Binary64 is not always enough. Around the circle F_GB spans up to
N^(rho+1/2) in magnitude, and unscaling by rho^-k amplifies rounding by
rho^|k|. :func:`expand` therefore estimates the digits required and moves the
sampling, the transform and later series evaluation to mpmath when needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import mpmath
import numpy as np

from .errors import DomainError, ParameterError, PoleError, SamplingError, ZGBError
from .zeta_gb import EvalParams, auto_params, f_gb, q_of

__all__ = [
    "INNER",
    "OUTER",
    "POLE_EXCLUSION",
    "GammaCircle",
    "QuartetPoint",
    "LaurentSeries",
    "annulus_of",
    "default_K",
    "sample_circle",
    "laurent_coeffs",
    "q_coeffs_closed_form",
    "split_parity",
    "eval_series",
    "parity_projections",
    "parity_orthogonality_check",
    "expand",
    "circle_params",
    "fgb_series",
    "q_series",
    "figure_series",
]

INNER = "inner"
OUTER = "outer"
POLE_EXCLUSION = 1e-3
TAIL_TOL = 1e-14
_EPS_DIGITS = 15.5


def annulus_of(rho: float) -> str:
    return INNER if rho < 0.5 else OUTER


def default_K(M_pos: int, M_neg: int) -> int:
    """Smallest power of two >= 8 * max window (and >= 16)."""
    need = max(16, 8 * max(M_pos, M_neg))
    return 1 << (need - 1).bit_length()


@dataclass(frozen=True)
class GammaCircle:
    """Quadrature circle of radius rho about s = 1/2 with K uniform nodes.

    ``dps`` selects mpmath sampling at that many digits; None means binary64.
    """

    rho: float
    K: int = 256
    dps: int | None = None
    delta_pole: float = POLE_EXCLUSION

    def __post_init__(self):
        if not self.rho > 0:
            raise ParameterError(f"rho must be positive, got {self.rho}")
        if abs(self.rho - 0.5) <= self.delta_pole:
            raise ParameterError(
                f"circle rho={self.rho} passes within {self.delta_pole} of the poles s=0, 1"
            )
        if self.K < 4 or self.K % 2:
            raise ParameterError(f"K must be an even integer >= 4, got {self.K}")

    @property
    def annulus_class(self) -> str:
        return annulus_of(self.rho)

    @property
    def thetas(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.K) / self.K

    def nodes(self) -> list:
        """Points s_j = 1/2 + rho e^{i theta_j}, j = 0..K-1."""
        if self.dps is None:
            w = np.exp(2j * np.pi * np.arange(self.K) / self.K)
            return list(0.5 + self.rho * w)
        with mpmath.workdps(self.dps):
            rho = mpmath.mpf(self.rho)
            half = mpmath.mpf(0.5)
            return [half + rho * mpmath.expjpi(mpmath.mpf(2 * j) / self.K)
                    for j in range(self.K)]


@dataclass(frozen=True)
class QuartetPoint:
    """Representative member s = 1/2 + rho e^{i alpha} of a hypothetical quartet."""

    rho: float
    alpha: float

    @classmethod
    def canonical(cls, rho: float) -> "QuartetPoint":
        return cls(rho, math.pi / 2)

    @property
    def epsilon(self) -> float:
        return self.rho * math.cos(self.alpha)

    @property
    def eta(self) -> float:
        return self.rho * math.sin(self.alpha)

    @property
    def s_prime(self) -> complex:
        return complex(self.epsilon, self.eta)

    @property
    def s(self) -> complex:
        return 0.5 + self.s_prime

    @property
    def is_canonical(self) -> bool:
        return self.alpha == math.pi / 2

    def is_offline_candidate(self) -> bool:
        """Strict off-line constraints: 0 < cos a < 1/(2 rho), sqrt(1-1/(4 rho^2)) < sin a < 1."""
        c, s = math.cos(self.alpha), math.sin(self.alpha)
        if self.rho <= 0.5:
            return False
        return 0 < c < 1 / (2 * self.rho) and math.sqrt(1 - 1 / (4 * self.rho**2)) < s < 1

    def is_admissible(self) -> bool:
        """arccos(1/(2 rho)) < alpha <= pi/2, the canonical end included."""
        if self.rho <= 0.5:
            return False
        return math.acos(1 / (2 * self.rho)) < self.alpha <= math.pi / 2


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Coefficients c_k of sum_k c_k s'^k over an exponent window.

    Coefficients are Python complex numbers, or mpmath values when ``dps`` is
    set; in the latter case evaluation runs at ``dps`` digits.
    """

    coeffs: Mapping[int, object]
    rho_used: float
    K: int | None = None
    dps: int | None = None
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        ordered = dict(sorted(self.coeffs.items()))
        object.__setattr__(self, "coeffs", MappingProxyType(ordered))
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    @property
    def annulus_class(self) -> str:
        return annulus_of(self.rho_used)

    @property
    def window(self) -> tuple[int, int]:
        if not self.coeffs:
            return (0, -1)
        ks = list(self.coeffs)
        return ks[0], ks[-1]

    def __getitem__(self, k: int):
        return self.coeffs.get(k, 0)

    def __len__(self):
        return len(self.coeffs)

    def complex_coeffs(self) -> dict[int, complex]:
        return {k: complex(c) for k, c in self.coeffs.items()}

    def _derive(self, coeffs, **meta) -> "LaurentSeries":
        return LaurentSeries(coeffs, self.rho_used, self.K, self.dps, {**self.meta, **meta})

    def even(self) -> "LaurentSeries":
        return self._derive({k: c for k, c in self.coeffs.items() if k % 2 == 0}, parity="even")

    def odd(self) -> "LaurentSeries":
        return self._derive({k: c for k, c in self.coeffs.items() if k % 2}, parity="odd")

    def __call__(self, s_prime):
        return eval_series(self, s_prime)


def sample_circle(f: Callable, circle: GammaCircle) -> list:
    """f at every node of the circle, in grid order.

    In extended mode f is called with mpmath values inside ``workdps``.
    """
    out = []
    nodes = circle.nodes()
    ctx = mpmath.workdps(circle.dps) if circle.dps else _NullCtx()
    with ctx:
        for j, s in enumerate(nodes):
            try:
                v = f(s)
            except (ZGBError, ZeroDivisionError, ArithmeticError) as exc:
                theta = 2 * math.pi * j / circle.K
                raise SamplingError(
                    f"evaluator failed at theta_{j} = {theta:.17g}: {exc}", theta=theta
                ) from exc
            out.append(v if circle.dps else complex(v))
    return out


class _NullCtx:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def _is_mp_samples(samples) -> bool:
    return len(samples) > 0 and isinstance(samples[0], (mpmath.mpc, mpmath.mpf))


def _fft_mp(x: list) -> list:
    """Forward DFT sum_j x_j e^{-2 pi i jk/n} at the ambient mpmath precision."""
    n = len(x)
    if n & (n - 1):
        return [mpmath.fsum(x[j] * mpmath.expjpi(mpmath.mpf(-2 * j * k % (2 * n)) / n)
                            for j in range(n)) for k in range(n)]
    bits = n.bit_length() - 1
    a = [None] * n
    for i in range(n):
        r = int(format(i, f"0{bits}b")[::-1], 2) if bits else 0
        a[r] = mpmath.mpc(x[i])
    tw = [mpmath.expjpi(mpmath.mpf(-2 * k) / n) for k in range(n // 2)]
    size = 2
    while size <= n:
        half = size // 2
        step = n // size
        for start in range(0, n, size):
            for k in range(half):
                t = tw[k * step] * a[start + k + half]
                u = a[start + k]
                a[start + k] = u + t
                a[start + k + half] = u - t
        size *= 2
    return a


def _scaled_spectrum(samples) -> list:
    """(1/K) DFT of the samples, i.e. c_k rho^k indexed by k mod K."""
    K = len(samples)
    if _is_mp_samples(samples):
        return [v / K for v in _fft_mp(samples)]
    return list(np.fft.fft(np.asarray(samples, dtype=complex)) / K)


def _dps_of(samples):
    return mpmath.mp.dps if _is_mp_samples(samples) else None


def laurent_coeffs(samples, rho: float, M_pos: int, M_neg: int, *,
                   dps: int | None = None) -> LaurentSeries:
    """Window [-M_neg, M_pos] of Laurent coefficients from uniform circle samples.

    Extended-precision samples must be passed inside the ``workdps`` they were
    produced at, or with ``dps`` given explicitly.
    """
    K = len(samples)
    if M_pos < 0 or M_neg < 0:
        raise ParameterError("window bounds must be non-negative")
    if K < 4 * max(M_pos, M_neg) + 4:
        raise ParameterError(
            f"K={K} violates the aliasing guard K >= 4*max(M_pos, M_neg)+4 "
            f"for window ({M_pos}, {M_neg})"
        )
    mp = _is_mp_samples(samples)
    if mp:
        dps = dps or mpmath.mp.dps
        with mpmath.workdps(dps):
            spec = _scaled_spectrum(samples)
            r = mpmath.mpf(rho)
            coeffs = {k: spec[k % K] / r**k for k in range(-M_neg, M_pos + 1)}
    else:
        dps = None
        spec = _scaled_spectrum(samples)
        coeffs = {k: complex(spec[k % K] * rho ** (-k)) for k in range(-M_neg, M_pos + 1)}
    return LaurentSeries(coeffs, rho, K, dps, {"M_pos": M_pos, "M_neg": M_neg})


def q_coeffs_closed_form(rho_class: str, k: int) -> float:
    """Exact Laurent coefficients of Q in s' = s - 1/2.

    Q = 4/(1 - 4 s'^2) inside |s'| < 1/2 and -sum_{m>=1} 4^(1-m) s'^(-2m) outside.
    """
    if rho_class not in (INNER, OUTER):
        raise ParameterError(f"unknown annulus class {rho_class!r}")
    if k % 2:
        return 0.0
    if rho_class == INNER:
        return float(4 ** (k // 2 + 1)) if k >= 0 else 0.0
    if k <= -2:
        return -(4.0 ** (1 + k // 2))
    return 0.0


def split_parity(series: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    return series.even(), series.odd()


def eval_series(series: LaurentSeries, s_prime) -> complex:
    """sum_k c_k s'^k over the stored window."""
    if not series.coeffs:
        return 0j
    lo, hi = series.window
    if s_prime == 0:
        if lo < 0 and any(series.coeffs[k] != 0 for k in series.coeffs if k < 0):
            raise PoleError("series has negative exponents and s' = 0")
        return complex(series.coeffs.get(0, 0))
    r = abs(complex(s_prime))
    if annulus_of(r) != series.annulus_class:
        raise ParameterError(
            f"|s'| = {r:g} lies outside the {series.annulus_class} annulus of the series"
        )
    if series.dps:
        with mpmath.workdps(series.dps):
            return complex(_horner(series, mpmath.mpc(s_prime)))
    return complex(_horner(series, complex(s_prime)))


def _horner(series: LaurentSeries, z):
    pos = [series.coeffs.get(k, 0) for k in range(max(0, series.window[0]), series.window[1] + 1)]
    neg = [series.coeffs.get(k, 0) for k in range(series.window[0], 0)]
    total = 0
    # positive powers (k >= max(0, lo)), Horner from the top
    acc = 0
    for c in reversed(pos):
        acc = acc * z + c
    start = max(0, series.window[0])
    total += acc * z**start if start else acc
    # negative powers: sum_{j>=1} c_{-j} z^{-j}
    if neg:
        inv = 1 / z
        acc = 0
        for c in neg:  # c_lo ... c_{-1}
            acc = acc * inv + c
        total += acc * inv
    return total


def parity_projections(f: Callable, circle: GammaCircle, m: int) -> dict[str, complex]:
    """Trapezoid projections of the parity parts of f onto modes 2m and 2m+1.

    The parts are formed from samples directly, F^S(theta) = (f(theta) +
    f(theta+pi))/2 and F^AS = (f(theta) - f(theta+pi))/2, independent of
    any coefficient table. Keys ``sym_even`` and ``antisym_odd`` carry C_2m and
    C_2m+1; ``antisym_even`` and ``sym_odd`` should vanish.
    """
    samples = sample_circle(f, circle)
    K = circle.K
    half = K // 2
    ctx = mpmath.workdps(circle.dps) if circle.dps else _NullCtx()
    with ctx:
        if circle.dps:
            sym = [(samples[j] + samples[(j + half) % K]) / 2 for j in range(K)]
            anti = [(samples[j] - samples[(j + half) % K]) / 2 for j in range(K)]
            rho = mpmath.mpf(circle.rho)

            def project(g, k):
                acc = mpmath.fsum(g[j] * mpmath.expjpi(mpmath.mpf(-2 * j * k % (2 * K)) / K)
                                  for j in range(K))
                return complex(acc / K / rho**k)
        else:
            arr = np.asarray(samples)
            rolled = np.roll(arr, -half)
            sym = (arr + rolled) / 2
            anti = (arr - rolled) / 2
            idx = np.arange(K)

            def project(g, k):
                phase = np.exp(-2j * np.pi * ((idx * k) % K) / K)
                return complex(np.sum(g * phase) / K * circle.rho ** (-k))

        return {
            "sym_even": project(sym, 2 * m),
            "antisym_even": project(anti, 2 * m),
            "sym_odd": project(sym, 2 * m + 1),
            "antisym_odd": project(anti, 2 * m + 1),
        }


def parity_orthogonality_check(f: Callable, circle: GammaCircle, m: int) -> tuple[float, float]:
    """Magnitudes of <F^AS, mode 2m> and <F^S, mode 2m+1>, both zero in exact arithmetic."""
    p = parity_projections(f, circle, m)
    return abs(p["antisym_even"]), abs(p["sym_odd"])


def _digits_needed(max_sample: float, rho: float, M_pos: int, M_neg: int) -> float:
    amp = max(M_neg * math.log10(rho), -M_pos * math.log10(rho), 0.0)
    return math.log10(max(max_sample, 1e-300)) + amp


def expand(f: Callable, rho: float, *, M_pos: int = 40, M_neg: int = 40,
           K: int | None = None, precision: str = "auto", dps: int | None = None,
           tail_tol: float = TAIL_TOL, adapt: bool = False,
           max_doublings: int = 4) -> LaurentSeries:
    """Sample f on the circle and return its windowed Laurent series.

    precision: "standard" forces binary64, "extended" forces mpmath, "auto"
    picks extended when rounding amplified by rho^|k| and the sample range
    would exceed roughly 1e-14 absolute on any coefficient.

    With ``adapt`` the window widens until the trailing scaled coefficients
    |c_k| rho^k drop below ``tail_tol``. In every mode K doubles while the
    spectrum near the Nyquist index exceeds ``tail_tol``, so windowed
    modes stay free of aliasing.
    """
    if precision not in ("auto", "standard", "extended"):
        raise ParameterError(f"unknown precision mode {precision!r}")
    K = K or default_K(M_pos, M_neg)
    probe = GammaCircle(rho, K)  # validates rho against the pole exclusion
    meta: dict[str, object] = {}
    for _ in range(max_doublings + 1):
        samples = sample_circle(f, GammaCircle(rho, K))
        peak = max(abs(v) for v in samples)
        need = _digits_needed(peak, rho, M_pos, M_neg)
        use_mp = precision == "extended" or (precision == "auto" and need > 1.0)
        work = None
        if use_mp:
            work = dps or int(math.ceil(need + _EPS_DIGITS + 6 + math.log10(K)))
            circle = GammaCircle(rho, K, work)
            samples = sample_circle(f, circle)
            with mpmath.workdps(work):
                spec = _scaled_spectrum(samples)
                mags = [float(abs(v)) for v in spec]
        else:
            spec = _scaled_spectrum(samples)
            mags = [float(abs(v)) for v in spec]
        band = range(3 * K // 8, 5 * K // 8)
        alias = max(mags[k] for k in band)
        lo_tail = max(mags[(-k) % K] for k in range(max(M_neg - 2, 0), M_neg + 1))
        hi_tail = max(mags[k % K] for k in range(max(M_pos - 2, 0), M_pos + 1))
        grow = adapt and max(lo_tail, hi_tail) > tail_tol
        if grow:
            if hi_tail > tail_tol:
                M_pos = int(math.ceil(M_pos * 1.5)) + 2
            if lo_tail > tail_tol and rho > 0.5:
                M_neg = int(math.ceil(M_neg * 1.5)) + 2
        if grow or alias > tail_tol or K < 4 * max(M_pos, M_neg) + 4:
            K = max(2 * K, default_K(M_pos, M_neg))
            continue
        break
    meta.update(
        K=K, dps=work, max_sample=peak, alias=alias, tail=max(lo_tail, hi_tail),
        precision="extended" if work else "standard",
    )
    if work:
        with mpmath.workdps(work):
            r = mpmath.mpf(rho)
            coeffs = {k: spec[k % K] / r**k for k in range(-M_neg, M_pos + 1)}
    else:
        coeffs = {k: complex(spec[k % K] * rho ** (-k)) for k in range(-M_neg, M_pos + 1)}
    meta.update(M_pos=M_pos, M_neg=M_neg)
    return LaurentSeries(coeffs, rho, K, work, meta)


def circle_params(rho: float, tol: float = 1e-12) -> EvalParams:
    """Truncation used for F_GB on the circle of radius rho: auto_params at 1/2 + i rho."""
    return auto_params(complex(0.5, rho), tol)


def _fgb_window(rho: float, N: int) -> tuple[int, int]:
    target = math.log(TAIL_TOL) - 4 * math.log(10)
    if rho < 0.5:
        # F_GB is analytic in |s'| < 1/2: coefficients decay like (2 rho)^k
        m_pos = int(math.ceil(target / math.log(2 * rho))) + 8
        return m_pos, 4
    a = rho * math.log(N)
    m_pos = 8
    # scaled Taylor size of exp(a w): a^k / k!
    while m_pos * math.log(a) - math.lgamma(m_pos + 1) > target or m_pos < a:
        m_pos += 1
    m_neg = int(math.ceil(target / -math.log(2 * rho))) + 4
    return m_pos + 8, m_neg


def fgb_series(rho: float, params: EvalParams | None = None, *, tol: float = 1e-12,
               precision: str = "auto", **kw) -> LaurentSeries:
    """Laurent series of the fixed-truncation F_GB on the circle of radius rho."""
    p = params or circle_params(rho, tol)
    M_pos, M_neg = _fgb_window(rho, p.N)
    M_pos = kw.pop("M_pos", M_pos)
    M_neg = kw.pop("M_neg", M_neg)

    def fn(s):
        return f_gb(s, p, fixed=True)

    series = expand(fn, rho, M_pos=M_pos, M_neg=M_neg, precision=precision,
                    adapt=kw.pop("adapt", True), **kw)
    meta = {**series.meta, "function": "fgb", **{f"param_{k}": v for k, v in p.as_dict().items()}}
    return LaurentSeries(series.coeffs, rho, series.K, series.dps, meta)


def q_series(rho: float, *, M: int = 40, precision: str = "auto", **kw) -> LaurentSeries:
    """Laurent series of Q on the circle of radius rho (default window +-40)."""
    series = expand(q_of, rho, M_pos=kw.pop("M_pos", M), M_neg=kw.pop("M_neg", M),
                    precision=precision, **kw)
    return LaurentSeries(series.coeffs, rho, series.K, series.dps,
                         {**series.meta, "function": "q"})


def figure_series(n_terms: int = 60) -> LaurentSeries:
    """sum_{m=1}^{n_terms} 4^-m s'^(-2m), whose sum is (1/4)/(s(s-1)) for |s'| > 1/2."""
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    coeffs = {-2 * m: 4.0 ** (-m) for m in range(1, n_terms + 1)}
    return LaurentSeries(coeffs, 1.0, None, None, {"function": "figure"})
