"""Byte-stable text emission: JSON records and CSV tables.

Floats are always rendered with 17 significant digits (``%.16e``), which
round-trips every binary64 value. Complex numbers become ``{"re", "im"}``
objects in JSON and two columns in CSV.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return _json({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "real") and hasattr(obj, "imag"):  # mpmath values
        return _json(complex(obj), indent, level)
    try:
        return _json(float(obj), indent, level)
    except (TypeError, ValueError):
        raise TypeError(f"cannot serialise {type(obj).__name__}") from None


def dumps(obj, indent: int = 2) -> str:
    return _json(obj, indent, 0) + "\n"


def record(kind: str, **payload) -> dict:
    """Top-level JSON document with the schema version first."""
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, str):
        if any(c in v for c in ',"\n'):
            return '"' + v.replace('"', '""') + '"'
        return v
    if isinstance(v, complex) or hasattr(v, "imag"):
        z = complex(v)
        im = fmt_float(z.imag)
        return fmt_float(z.real) + ("" if im.startswith("-") else "+") + im + "j"
    return fmt_float(float(v))


def csv_table(header: Sequence[str], rows: Iterable[Sequence], meta: dict | None = None) -> str:
    """CSV text with optional ``# key: value`` metadata lines on top."""
    lines = []
    if meta:
        lines.append(f"# schema_version: {SCHEMA_VERSION}")
        for k, v in meta.items():
            lines.append(f"# {k}: {_cell(v) if not isinstance(v, (list, tuple)) else ' '.join(_cell(x) for x in v)}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"
