"""Null-condition residuals on the circle, critical-line zero scan, quartet maps.

At a zero of Z_GB the odd (anti-symmetric) Laurent part of F_GB must vanish
and the even part must equal Q. On the critical line, s' = i rho, these reduce
to two real sums:

    sum_m C_{2m+1} rho^{2m+1} (-1)^m = 0
    sum_m C_{2m}   rho^{2m}   (-1)^m = 1/(1/4 + rho^2)

Zeros are located with the Hardy function Z(t) (sign changes, bisection). The
residual sums are computed afterwards from a fresh Laurent extraction and
attached as verification, never used for the search.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import mpmath
from scipy import optimize

from .core_numerics import log_gamma
from .errors import CapacityError, DomainError, ParameterError
from .laurent import (
    OUTER,
    LaurentSeries,
    QuartetPoint,
    annulus_of,
    circle_params,
    fgb_series,
    q_coeffs_closed_form,
)
from .zeta_gb import EvalParams, evaluate_zeta, q_of

__all__ = [
    "ResidualReport",
    "ZeroCandidate",
    "antisym_residual",
    "full_system_residual",
    "critical_line_odd_residual",
    "critical_line_even_residual",
    "critical_line_even_sine",
    "q_on_critical_line",
    "hardy_theta",
    "hardy_z",
    "scan_critical_line",
    "residual_report",
    "quartet_alphas",
    "quartet_grid_scan",
]

HARDY_T_MAX = 1000.0
REALNESS_TOL = 1e-8
BISECT_XTOL = 1e-10


@dataclass(frozen=True)
class ResidualReport:
    """Null-condition residuals at one probe on the circle."""

    r_as_real: float
    r_as_imag: float
    r_sym: float
    r_total: float
    probe: QuartetPoint
    metadata: Mapping[str, object] = field(default_factory=dict)

    @property
    def r_as(self) -> float:
        return math.hypot(self.r_as_real, self.r_as_imag)

    def as_dict(self) -> dict:
        return {
            "rho": self.probe.rho,
            "alpha": self.probe.alpha,
            "epsilon": self.probe.epsilon,
            "eta": self.probe.eta,
            "r_as_real": self.r_as_real,
            "r_as_imag": self.r_as_imag,
            "r_sym": self.r_sym,
            "r_total": self.r_total,
        }


@dataclass(frozen=True)
class ZeroCandidate:
    rho: float
    bracket: tuple[float, float]
    oracle_ordinate: float
    residuals: ResidualReport | None = None
    odd_residual: float | None = None
    even_residual: float | None = None
    warnings: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        out = {
            "rho": self.rho,
            "bracket": list(self.bracket),
            "oracle_ordinate": self.oracle_ordinate,
            "odd_residual": self.odd_residual,
            "even_residual": self.even_residual,
            "warnings": list(self.warnings),
        }
        if self.residuals is not None:
            out["residuals"] = self.residuals.as_dict()
        return out


def _require_annulus(rho: float, series: LaurentSeries):
    if annulus_of(rho) != series.annulus_class:
        raise ParameterError(
            f"rho={rho:g} is in the {annulus_of(rho)} annulus but the series was "
            f"extracted in the {series.annulus_class} one"
        )


def _ctx(series: LaurentSeries):
    return mpmath.workdps(series.dps) if series.dps else mpmath.workdps(mpmath.mp.dps)


def _real(c):
    return c.real if hasattr(c, "real") else c


def _power_sum(series: LaurentSeries, rho, alpha, parity: int):
    """sum over k of the given parity of Re(c_k) (rho e^{i alpha})^k, at series precision."""
    with _ctx(series):
        mp = bool(series.dps)
        z = mpmath.mpf(rho) * mpmath.expj(mpmath.mpf(alpha)) if mp else complex(
            rho * math.cos(alpha), rho * math.sin(alpha))
        total = 0
        for k, c in series.coeffs.items():
            if k % 2 == parity:
                total += _real(c) * z**k
        return complex(total)


def antisym_residual(probe: QuartetPoint, odd_series: LaurentSeries) -> tuple[float, float]:
    """The cosine and sine sums of C_{2m+1} rho^{2m+1} at azimuth alpha."""
    _require_annulus(probe.rho, odd_series)
    if not odd_series.coeffs:
        return 0.0, 0.0
    v = _power_sum(odd_series, probe.rho, probe.alpha, parity=1)
    return v.real, v.imag


def full_system_residual(probe: QuartetPoint, odd_series: LaurentSeries) -> tuple[float, float]:
    """Both lines of the real-domain system built from

        Omega_c = sum C_{2m+1} rho^{2m} cos(2m alpha),
        Omega_s = sum C_{2m+1} rho^{2m} sin(2m alpha),

    each sum evaluated term by term with its own cosines and sines.
    """
    rho, alpha = probe.rho, probe.alpha
    if not abs(rho * math.cos(alpha)) < 0.5 or not rho * math.sin(alpha) > 0:
        raise DomainError(
            f"probe (rho={rho:g}, alpha={alpha:g}) violates |eps| < 1/2, eta > 0"
        )
    _require_annulus(rho, odd_series)
    with _ctx(odd_series):
        mp = bool(odd_series.dps)
        r = mpmath.mpf(rho) if mp else rho
        a = mpmath.mpf(alpha) if mp else alpha
        cos, sin = (mpmath.cos, mpmath.sin) if mp else (math.cos, math.sin)
        om_c = 0
        om_s = 0
        for k, c in odd_series.coeffs.items():
            if k % 2 == 0:
                continue
            two_m = k - 1
            w = _real(c) * r**two_m
            om_c += w * cos(two_m * a)
            om_s += w * sin(two_m * a)
        line1 = r * cos(a) * om_c - r * sin(a) * om_s
        line2 = r * sin(a) * om_c + r * cos(a) * om_s
        return float(line1), float(line2)


def _alternating(series: LaurentSeries, rho: float, parity: int):
    with _ctx(series):
        r = mpmath.mpf(rho) if series.dps else rho
        total = 0
        for k, c in series.coeffs.items():
            if k % 2 != parity:
                continue
            m = (k - parity) // 2
            term = _real(c) * r**k
            total += -term if m % 2 else term
        return float(total)


def critical_line_odd_residual(rho: float, odd_series: LaurentSeries) -> float:
    """|sum_m C_{2m+1} rho^{2m+1} (-1)^m|, i.e. |F^AS(1/2 + i rho)|."""
    _require_annulus(rho, odd_series)
    return abs(_alternating(odd_series, rho, 1))


def critical_line_even_residual(rho: float, even_series: LaurentSeries) -> float:
    """|sum_m C_{2m} rho^{2m} (-1)^m - 1/(1/4 + rho^2)|."""
    if rho == 0:
        raise DomainError("rho must be non-zero")
    _require_annulus(rho, even_series)
    return abs(_alternating(even_series, rho, 0) - 1.0 / (0.25 + rho * rho))


def critical_line_even_sine(rho: float, even_series: LaurentSeries) -> float:
    """sum_m C_{2m} rho^{2m} sin(m pi), zero term by term."""
    _require_annulus(rho, even_series)
    total = 0.0
    for k, c in even_series.coeffs.items():
        if k % 2 == 0:
            total += float(_real(c)) * rho**k * math.sin(k * math.pi / 2)
    return total


def q_on_critical_line(rho: float, terms: int = 400) -> float:
    """Q(1/2 + i rho) from the closed-form outer expansion of Q."""
    if rho <= 0.5:
        raise DomainError("outer expansion needs rho > 1/2")
    total = 0.0
    for m in range(1, terms + 1):
        k = -2 * m
        total += q_coeffs_closed_form(OUTER, k) * rho**k * (-1) ** m
    return total


def hardy_theta(t: float) -> float:
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi."""
    return log_gamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t: float, *, tol: float = 1e-12) -> float:
    """Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t."""
    if not abs(t) <= HARDY_T_MAX:
        raise CapacityError(f"|t| = {abs(t):g} beyond the supported range {HARDY_T_MAX:g}")
    z = evaluate_zeta(complex(0.5, t), tol=tol).value
    theta = hardy_theta(t)
    val = complex(math.cos(theta), math.sin(theta)) * z
    if abs(val.imag) > REALNESS_TOL:
        raise CapacityError(f"Hardy Z not real at t={t}: imaginary part {val.imag:.3g}")
    return val.real


def _mean_spacing(t: float) -> float:
    return 2 * math.pi / math.log(max(t, 2 * math.pi + 1) / (2 * math.pi))


def _sign_changes(f, a: float, b: float, pieces: int) -> int:
    xs = [a + (b - a) * i / pieces for i in range(pieces + 1)]
    vals = [f(x) for x in xs]
    return sum(1 for u, v in zip(vals, vals[1:]) if u * v < 0)


def residual_report(probe: QuartetPoint, series: LaurentSeries,
                    params: EvalParams | None = None) -> ResidualReport:
    """All null-condition residuals at a probe from one F_GB series."""
    even, odd = series.even(), series.odd()
    c, s = antisym_residual(probe, odd)
    with _ctx(series):
        if series.dps:
            sp = mpmath.mpf(probe.rho) * mpmath.expj(mpmath.mpf(probe.alpha))
            fs = complex(sum(_real(v) * sp**k for k, v in even.coeffs.items()))
        else:
            fs = complex(sum(_real(v) * probe.s_prime**k for k, v in even.coeffs.items()))
    r_sym = abs(fs - q_of(probe.s))
    p = params or _series_params(series)
    r_total = abs(evaluate_zeta(probe.s, p, fixed=True).value)
    meta = {"window": list(series.window), "K": series.K, "dps": series.dps,
            "N": p.N, "mu_max": p.mu_max}
    return ResidualReport(abs(c), abs(s), r_sym, r_total, probe, meta)


def _series_params(series: LaurentSeries) -> EvalParams:
    m = series.meta
    if "param_N" in m:
        return EvalParams(int(m["param_N"]), int(m["param_mu_max"]), float(m["param_tol"]))
    return circle_params(series.rho_used)


def scan_critical_line(rho_min: float, rho_max: float, step: float = 0.05, *,
                       residuals: bool = True, precision: str = "auto") -> list[ZeroCandidate]:
    """Zeros of zeta on the critical line with ordinates in [rho_min, rho_max].

    Walks the grid, brackets sign changes of Hardy's Z, bisects each bracket
    to 1e-10 and cross-checks with Brent's method. If ``residuals`` is set,
    each candidate carries its null-condition residuals from a fresh F_GB
    extraction at that radius.
    """
    if not (0 < rho_min < rho_max):
        raise ParameterError(f"need 0 < rho_min < rho_max, got ({rho_min}, {rho_max})")
    if not step > 0:
        raise ParameterError("step must be positive")
    n = int(math.floor((rho_max - rho_min) / step + 1e-9))
    grid = [rho_min + i * step for i in range(n + 1)]
    if grid[-1] < rho_max:
        grid.append(rho_max)
    vals = [hardy_z(t) for t in grid]

    found = []
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if fa == 0.0:
            found.append((a, a))
        elif fa * fb < 0:
            found.append((a, b))
    if vals[-1] == 0.0:
        found.append((grid[-1], grid[-1]))

    out = []
    for a, b in found:
        if a == b:
            root = oracle = a
        else:
            root = optimize.bisect(hardy_z, a, b, xtol=BISECT_XTOL, maxiter=200)
            oracle = optimize.brentq(hardy_z, a, b, xtol=1e-13, maxiter=200)
        flags = []
        if step > 0.25 * _mean_spacing(root):
            flags.append("step_coarse_for_local_zero_density")
        if a != b and _sign_changes(hardy_z, a, b, 8) > 1:
            flags.append("multiple_sign_changes_in_bracket")
        report = odd_r = even_r = None
        if residuals:
            p = circle_params(root)
            series = fgb_series(root, p, precision=precision)
            report = residual_report(QuartetPoint.canonical(root), series, p)
            odd_r = critical_line_odd_residual(root, series.odd())
            even_r = critical_line_even_residual(root, series.even())
        out.append(ZeroCandidate(root, (a, b), oracle, report, odd_r, even_r, tuple(flags)))
    out.sort(key=lambda c: c.rho)
    return out


def quartet_alphas(rho: float, alpha_count: int) -> list[float]:
    """alpha_count azimuths spanning (arccos(1/(2 rho)), pi/2], right end included."""
    if rho <= 0.5:
        raise DomainError("quartet geometry needs rho > 1/2")
    if alpha_count < 1:
        raise ParameterError("alpha_count must be >= 1")
    lo = math.acos(1 / (2 * rho))
    hi = math.pi / 2
    return [lo + (hi - lo) * j / alpha_count for j in range(1, alpha_count)] + [hi]


def quartet_grid_scan(rho: float, alpha_count: int,
                      series: LaurentSeries | None = None, *,
                      params: EvalParams | None = None,
                      precision: str = "auto") -> list[ResidualReport]:
    """Residual map over the admissible azimuths of a circle of radius rho.

    Purely observational. It shows where the null conditions are small on
    the circle and proves nothing about zeros off the critical line.
    """
    if rho <= 0.5:
        raise DomainError("quartet geometry needs rho > 1/2 (outer annulus)")
    alphas = quartet_alphas(rho, alpha_count)
    p = params or circle_params(rho)
    if series is None:
        series = fgb_series(rho, p, precision=precision)
    return [residual_report(QuartetPoint(rho, a), series, p) for a in alphas]
