"""Command-line front end: ``zgb <command> ...`` (or ``python -m zgb``).

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 pole or domain error, 4 annulus or parameter error (capacity errors
included).
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import core_numerics, emit, verify
from .config import RunConfig, load_config
from .errors import CapacityError, DomainError, ParameterError, ZGBError
from .laurent import (
    OUTER,
    annulus_of,
    circle_params,
    eval_series,
    fgb_series,
    figure_series,
    q_series,
    split_parity,
)
from .null_conditions import quartet_grid_scan, scan_critical_line
from .zeta_gb import evaluate_zeta

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_PARAM = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse literals like ``2``, ``0.5+14.1i``, ``-3-0.5j`` or ``2i``."""
    t = text.strip().replace(" ", "")
    if t.endswith("i"):
        t = t[:-1] + "j"
    try:
        z = complex(t)
    except ValueError:
        raise UsageError(f"cannot parse complex literal {text!r} (expected X+Yi)") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"complex literal {text!r} is not finite")
    return z


def _write(text: str, out: str | None, cfg: RunConfig):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    if not path.is_absolute():
        path = Path(cfg.output_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _precision(cfg: RunConfig) -> str:
    return cfg.precision_mode


def _expand_kw(cfg: RunConfig) -> dict:
    return {"K": cfg.K} if cfg.K else {}


def _coeff_rows(series):
    for k, c in series.complex_coeffs().items():
        yield k, c.real, c.imag


def _series_meta(series, rho: float) -> dict:
    meta = {"rho": rho, "annulus": annulus_of(rho), "K": series.K,
            "dps": series.dps, "window": list(series.window)}
    for key, val in series.meta.items():
        if key not in meta:
            meta[key] = val
    return meta


def cmd_eval(args, cfg: RunConfig) -> int:
    s = parse_complex(args.s)
    v = evaluate_zeta(s, tol=args.tol or cfg.tol)
    doc = emit.record("eval", s=s, value=v.value, error_estimate=v.error, ok=v.ok,
                      params_used=v.params.as_dict(), mu_used=v.mu_used)
    _write(emit.dumps(doc), args.out, cfg)
    return EXIT_OK


def _build_series(function: str, rho: float, window: int | None, cfg: RunConfig):
    kw = _expand_kw(cfg)
    if function == "q":
        return q_series(rho, M=window or 40, precision=_precision(cfg), **kw)
    p = circle_params(rho, cfg.tol)
    if window:
        kw.update(M_pos=window, M_neg=window, adapt=False)
    return fgb_series(rho, p, precision=_precision(cfg), **kw)


def cmd_coeffs(args, cfg: RunConfig) -> int:
    series = _build_series(args.function, args.rho, args.window, cfg)
    meta = {"function": args.function, **_series_meta(series, args.rho)}
    if args.format == "json":
        rows = [{"k": k, "re": re_, "im": im} for k, re_, im in _coeff_rows(series)]
        text = emit.dumps(emit.record("coefficients", metadata=meta, coefficients=rows))
    else:
        text = emit.csv_table(("k", "re", "im"), _coeff_rows(series), meta)
    _write(text, args.out, cfg)
    return EXIT_OK


def cmd_decompose(args, cfg: RunConfig) -> int:
    series = _build_series(args.function, args.rho, args.window, cfg)
    even, odd = split_parity(series)
    rows = [(k, "symmetric", r, i) for k, r, i in _coeff_rows(even)]
    rows += [(k, "antisymmetric", r, i) for k, r, i in _coeff_rows(odd)]
    rows.sort(key=lambda row: row[0])
    meta = {"function": args.function, **_series_meta(series, args.rho)}
    if args.s_prime is not None:
        sp = parse_complex(args.s_prime)
        meta["s_prime"] = sp
        meta["symmetric_value"] = eval_series(even, sp)
        meta["antisymmetric_value"] = eval_series(odd, sp)
    if args.format == "json":
        doc = emit.record("decomposition", metadata=meta,
                          coefficients=[{"k": k, "part": p, "re": r, "im": i} for k, p, r, i in rows])
        text = emit.dumps(doc)
    else:
        text = emit.csv_table(("k", "part", "re", "im"), rows, meta)
    _write(text, args.out, cfg)
    return EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    if not (0 < args.rho_min < args.rho_max):
        raise UsageError(f"need 0 < rho_min < rho_max, got {args.rho_min} {args.rho_max}")
    if not args.step > 0:
        raise UsageError("step must be positive")
    cands = scan_critical_line(args.rho_min, args.rho_max, args.step,
                               residuals=not args.no_residuals, precision=_precision(cfg))
    if args.format == "json":
        doc = emit.record("scan", rho_min=args.rho_min, rho_max=args.rho_max, step=args.step,
                          count=len(cands), candidates=[c.as_dict() for c in cands])
        text = emit.dumps(doc)
    else:
        header = ("rho", "bracket_lo", "bracket_hi", "oracle_ordinate", "odd_residual",
                  "even_residual", "r_as", "r_sym", "r_total", "warnings")
        rows = []
        for c in cands:
            r = c.residuals
            rows.append((c.rho, c.bracket[0], c.bracket[1], c.oracle_ordinate, c.odd_residual,
                         c.even_residual, r.r_as if r else None, r.r_sym if r else None,
                         r.r_total if r else None, ";".join(c.warnings)))
        text = emit.csv_table(header, rows, {"rho_min": args.rho_min, "rho_max": args.rho_max,
                                             "step": args.step, "count": len(cands)})
    _write(text, args.out, cfg)
    return EXIT_OK


def cmd_quartet_map(args, cfg: RunConfig) -> int:
    reports = quartet_grid_scan(args.rho, args.alpha_count, precision=_precision(cfg))
    fields = ("alpha", "epsilon", "eta", "r_as_real", "r_as_imag", "r_sym", "r_total")
    if args.format == "json":
        doc = emit.record("quartet_map", rho=args.rho, alpha_count=args.alpha_count,
                          note="observational residual map; not evidence of absence of zeros",
                          rows=[r.as_dict() for r in reports])
        text = emit.dumps(doc)
    else:
        rows = [tuple(r.as_dict()[f] for f in fields) for r in reports]
        text = emit.csv_table(fields, rows, {"rho": args.rho, "alpha_count": args.alpha_count})
    _write(text, args.out, cfg)
    return EXIT_OK


def figure_rows(rho: float, points: int):
    """Rows (theta, series Re/Im/Abs, closed Re/Im/Abs, |difference|)."""
    if annulus_of(rho) != OUTER or abs(rho - 0.5) <= 1e-3:
        raise ParameterError(f"figure data needs rho > 1/2 (outer annulus), got {rho}")
    if points < 1:
        raise UsageError("points must be >= 1")
    q = 1 / (4 * rho * rho)
    n_terms = max(1, min(100_000, math.ceil(math.log(1e-18) / math.log(q)) + 1))
    series = figure_series(n_terms)
    rows = []
    for j in range(points):
        theta = 2 * math.pi * j / points
        sp = complex(rho * math.cos(theta), rho * math.sin(theta))
        if j * 4 == points:
            sp = complex(0.0, rho)
        elif j * 2 == points:
            sp = complex(-rho, 0.0)
        elif j * 4 == 3 * points:
            sp = complex(0.0, -rho)
        s = 0.5 + sp
        ser = complex(eval_series(series, sp))
        closed = 0.25 / (s * (s - 1))
        rows.append((theta, ser.real, ser.imag, abs(ser), closed.real, closed.imag,
                     abs(closed), abs(ser - closed)))
    return rows


def cmd_figures(args, cfg: RunConfig) -> int:
    rows = figure_rows(args.rho, args.points)
    header = ("theta", "re", "im", "abs", "re_closed", "im_closed", "abs_closed", "agreement")
    text = emit.csv_table(header, rows, {"rho": args.rho, "points": args.points,
                                         "function": "sum_m 4^-m s'^-2m = (1/4)/(s(s-1))"})
    _write(text, args.out, cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    summary = verify.run_suites(names, cfg.seed)
    doc = emit.record("verify", suite=args.suite, seed=cfg.seed, **summary)
    _write(emit.dumps(doc), args.out, cfg)
    if not summary["passed"]:
        print("failing invariants: " + ", ".join(summary["failing"]), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML or JSON config file")
    common.add_argument("--precision", choices=("auto", "standard", "extended"))
    common.add_argument("--bernoulli-depth", type=int)
    common.add_argument("--K", type=int, dest="K", help="quadrature nodes (power of two)")
    common.add_argument("--output-dir")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="zgb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate Z_GB(s)")
    e.add_argument("s", help="complex literal, e.g. 0.5+14.134725i")
    e.add_argument("--tol", type=float)
    e.set_defaults(func=cmd_eval)

    for name, func, helptext in (("coeffs", cmd_coeffs, "Laurent coefficient table"),
                                 ("decompose", cmd_decompose, "parity split of a Laurent table")):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("function", choices=("fgb", "q"))
        c.add_argument("--rho", type=float, required=True)
        c.add_argument("--window", type=int, help="symmetric window M (default automatic)")
        c.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "decompose":
            c.add_argument("--s-prime", help="also evaluate both parts at this s'")
        c.set_defaults(func=func)

    s = sub.add_parser("scan", parents=[common], help="critical-line zeros in [rho_min, rho_max]")
    s.add_argument("rho_min", type=float)
    s.add_argument("rho_max", type=float)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--no-residuals", action="store_true")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_scan)

    q = sub.add_parser("quartet-map", parents=[common], help="residual map over azimuths")
    q.add_argument("rho", type=float)
    q.add_argument("--alpha-count", type=int, default=16)
    q.add_argument("--format", choices=("csv", "json"), default="csv")
    q.set_defaults(func=cmd_quartet_map)

    f = sub.add_parser("figures", parents=[common], help="data behind the circle figures")
    f.add_argument("--rho", type=float, default=1.0)
    f.add_argument("--points", type=int, default=64)
    f.set_defaults(func=cmd_figures)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("suite", nargs="?", default="all", choices=verify.SUITES + ("all",))
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config, overrides={
            "precision_mode": args.precision, "bernoulli_depth": args.bernoulli_depth,
            "K": args.K, "output_dir": args.output_dir, "seed": args.seed})
    except ParameterError as exc:
        print(f"zgb: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    previous = None
    try:
        if cfg.bernoulli_depth != core_numerics.default_table().depth:
            previous = core_numerics.set_default_table(
                core_numerics.BernoulliTable(cfg.bernoulli_depth))
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"zgb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"zgb: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParameterError, CapacityError) as exc:
        print(f"zgb: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except ZGBError as exc:
        print(f"zgb: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    finally:
        if previous is not None:
            core_numerics.set_default_table(previous)


if __name__ == "__main__":
    sys.exit(main())
