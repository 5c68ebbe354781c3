"""Run configuration: defaults < config file < ZGB_CONFIG < command-line flags."""
from __future__ import annotations

import json
import os
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from .errors import ParameterError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ENV_VAR = "ZGB_CONFIG"
PRECISION_MODES = ("auto", "standard", "extended")


@dataclass(frozen=True)
class RunConfig:
    """Every knob a command reads.

    precision_mode  "auto" picks mpmath only when binary64 cannot meet the
                    coefficient tolerances; "standard"/"extended" force one.
    tol             target absolute error for zeta evaluations.
    bernoulli_depth highest Bernoulli index B_depth in the table.
    K               quadrature nodes; 0 means automatic (doubling) policy.
    output_dir      base directory for relative --out paths.
    seed            seed for the random grids used by ``verify``.
    """

    precision_mode: str = "auto"
    tol: float = 1e-12
    bernoulli_depth: int = 64
    K: int = 0
    output_dir: str = "."
    seed: int = 20240517

    def __post_init__(self):
        if self.precision_mode not in PRECISION_MODES:
            raise ParameterError(f"precision_mode must be one of {PRECISION_MODES}")
        if not 0 < self.tol < 1:
            raise ParameterError("tol must lie in (0, 1)")
        if self.bernoulli_depth < 22 or self.bernoulli_depth % 2:
            raise ParameterError("bernoulli_depth must be an even integer >= 22")
        if self.K < 0 or (self.K and (self.K < 16 or self.K & (self.K - 1))):
            raise ParameterError("K must be 0 (automatic) or a power of two >= 16")

    def as_dict(self) -> dict:
        return asdict(self)


_CASTS = {"precision_mode": str, "tol": float, "bernoulli_depth": int, "K": int,
          "output_dir": str, "seed": int}


def _coerce(values: dict, source: str) -> dict:
    out = {}
    for key, val in values.items():
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise ParameterError(f"unknown config key {key!r} in {source}")
        try:
            out[key] = _CASTS[key](val)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"bad value for {key} in {source}: {val!r}") from exc
    return out


def read_config_file(path: str | os.PathLike) -> dict:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ParameterError(f"cannot read config {p}: {exc}") from exc
    try:
        if p.suffix.lower() == ".json":
            data = json.loads(raw)
        else:
            data = tomllib.loads(raw.decode())
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ParameterError(f"cannot parse config {p}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterError(f"config {p} must hold a table/object")
    data = data.get("zgb", data)
    return _coerce(data, str(p))


def parse_env(value: str) -> dict:
    """ZGB_CONFIG holds a config file path, a JSON object, or ``k=v`` pairs
    separated by commas or semicolons."""
    value = value.strip()
    if not value:
        return {}
    if value.startswith("{"):
        try:
            data = json.loads(value)
        except ValueError as exc:
            raise ParameterError(f"{ENV_VAR} is not valid JSON: {exc}") from exc
        return _coerce(data, ENV_VAR)
    if "=" not in value:
        return read_config_file(value)
    pairs = {}
    for item in value.replace(";", ",").split(","):
        if item.strip():
            k, _, v = item.partition("=")
            pairs[k.strip()] = v.strip()
    return _coerce(pairs, ENV_VAR)


def load_config(path: str | None = None, env: dict | None = None,
                overrides: dict | None = None) -> RunConfig:
    env = os.environ if env is None else env
    merged: dict = {}
    if path:
        merged.update(read_config_file(path))
    if env.get(ENV_VAR):
        merged.update(parse_env(env[ENV_VAR]))
    if overrides:
        merged.update(_coerce({k: v for k, v in overrides.items() if v is not None}, "flags"))
    return replace(RunConfig(), **merged)
