"""Invariant suites run by ``zgb verify``.

Each check returns a row (identifier, worst residual, tolerance, passed). The
grids are drawn from a seeded generator so repeated runs emit identical
reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import core_numerics
from .laurent import GammaCircle, parity_orthogonality_check, q_coeffs_closed_form, q_series, annulus_of
from .zeta_gb import (
    auto_params,
    check_factor_identity,
    dirichlet_oracle,
    evaluate_zeta,
    f_gb,
    q_of,
    reflect_zeta,
)

SUITES = ("identity", "symmetry", "orthogonality", "oracle")


@dataclass(frozen=True)
class Check:
    id: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol

    def as_dict(self) -> dict:
        return {"id": self.id, "max_residual": self.residual, "tolerance": self.tol,
                "passed": self.passed}


def strip_points(rng: np.random.Generator, count: int, radius: float = 30.0) -> list[complex]:
    """Uniform points of the critical strip 0 < X < 1 with |s - 1/2| <= radius,
    kept 0.05 away from the poles at s = 0 and 1."""
    out = []
    while len(out) < count:
        s = complex(rng.uniform(0, 1), rng.uniform(-radius, radius))
        if abs(s - 0.5) <= radius and abs(s) > 0.05 and abs(s - 1) > 0.05:
            out.append(s)
    return out


def _worst(values) -> float:
    vals = list(values)
    return max(vals) if vals else 0.0


def suite_identity(rng, tol: float = 1e-10) -> list[Check]:
    pts = strip_points(rng, 200)
    return [Check("identity.factor_F_minus_Q", _worst(check_factor_identity(s) for s in pts), tol)]


def suite_symmetry(rng) -> list[Check]:
    pts = strip_points(rng, 100)
    q_refl = _worst(abs(q_of(1 - s) - q_of(s)) / abs(q_of(s)) for s in pts)
    zeta_conj = 0.0
    fgb_conj = 0.0
    for s in pts[:40]:
        p = auto_params(s)
        a = evaluate_zeta(s, p, fixed=True).value
        b = evaluate_zeta(s.conjugate(), p, fixed=True).value
        zeta_conj = max(zeta_conj, abs(b - a.conjugate()) / max(1.0, abs(a)))
        fa = f_gb(s, p, fixed=True)
        fb = f_gb(s.conjugate(), p, fixed=True)
        fgb_conj = max(fgb_conj, abs(fb - fa.conjugate()) / max(1.0, abs(fa)))
    return [
        Check("symmetry.Q_reflection", q_refl, 1e-13),
        Check("symmetry.zeta_conjugation", zeta_conj, 1e-13),
        Check("symmetry.F_conjugation", fgb_conj, 1e-13),
    ]


def suite_orthogonality(rng, tol: float = 1e-10) -> list[Check]:
    checks = []
    for rho in (1.0, 5.0):
        p = auto_params(complex(0.5, rho))
        dps = None if rho <= 2 else 40

        def fgb(s, p=p):
            return f_gb(s, p, fixed=True)

        for name, fn in (("F", fgb), ("Q", q_of)):
            circle = GammaCircle(rho, 256, dps)
            worst = _worst(max(parity_orthogonality_check(fn, circle, m)) for m in range(4))
            checks.append(Check(f"orthogonality.{name}.rho={rho:g}", worst, tol))
    return checks


def suite_oracle(rng) -> list[Check]:
    table = core_numerics.default_table()
    at = core_numerics.akiyama_tanigawa(table.depth)
    bern = _worst(float(abs(table[k] - at[2 * k])) for k in range(len(table)))
    checks = [Check("oracle.bernoulli_vs_akiyama_tanigawa", bern, 1e-300)]

    pts = [complex(x, y) for x, y in zip(rng.uniform(2, 6, 8), rng.uniform(-20, 20, 8))]
    diri = _worst(abs(evaluate_zeta(s).value - dirichlet_oracle(s)) for s in pts)
    checks.append(Check("oracle.zeta_vs_dirichlet", diri, 1e-10))

    pts = [complex(x, y) for x, y in zip(rng.uniform(-0.5, 1.5, 8), rng.uniform(1, 30, 8))]
    refl = _worst(abs(evaluate_zeta(s).value - reflect_zeta(s).value) for s in pts)
    checks.append(Check("oracle.zeta_vs_reflection", refl, 1e-8))

    series = q_series(1.0, precision="standard")
    qc = _worst(abs(series[k] - q_coeffs_closed_form(annulus_of(1.0), k)) for k in range(-40, 41))
    checks.append(Check("oracle.Q_coefficients_closed_form", qc, 1e-10))
    return checks


_RUNNERS: dict[str, Callable] = {
    "identity": suite_identity,
    "symmetry": suite_symmetry,
    "orthogonality": suite_orthogonality,
    "oracle": suite_oracle,
}


def run_suites(names, seed: int) -> dict:
    """Run the named suites and return a JSON-ready summary."""
    results = []
    for name in names:
        rng = np.random.default_rng([seed, SUITES.index(name)])
        try:
            checks = _RUNNERS[name](rng)
        except ArithmeticError as exc:
            # a numeric blow-up inside a suite is a failed invariant, not a crash
            checks = [Check(f"{name}.raised", math.inf, 0.0)]
            results.append({"suite": name, "error": str(exc),
                            "checks": [c.as_dict() for c in checks], "passed": False})
            continue
        results.append({"suite": name, "checks": [c.as_dict() for c in checks],
                        "passed": all(c.passed for c in checks)})
    failing = [c["id"] for r in results for c in r["checks"] if not c["passed"]]
    return {"suites": results, "failing": failing, "passed": not failing}
