"""Deterministic JSON and CSV emission.

Identical inputs must produce byte-identical output files, so floats
are always rendered with 17 significant digits (enough to round-trip a
double) instead of Python's shortest-repr rule, and no timestamps or
other run-dependent data ever enter a payload.
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable, Sequence

import numpy as np


def format_float(x: float) -> str:
    """Render a float with 17 significant digits (round-trip exact)."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def complex_pair(z: complex) -> list[float]:
    """A complex scalar as the [re, im] pair used in every JSON payload."""
    z = complex(z)
    return [z.real, z.imag]


def _render(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key, value in obj.items():
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)}")
            parts.append(f"{inner}{json.dumps(key)}: {_render(value, indent, level + 1)}")
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            return "[]"
        if all(
            item is None or isinstance(item, (bool, int, float, str, np.bool_, np.integer, np.floating))
            for item in items
        ):
            return "[" + ", ".join(_render(item, indent, level + 1) for item in items) + "]"
        parts = [f"{inner}{_render(item, indent, level + 1)}" for item in items]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)} deterministically")


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize to JSON text with a trailing newline.

    Scalar-only lists render inline; nested structures get one element
    per line.  Key order is preserved (payload builders fix it).
    """
    return _render(obj, indent, 0) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    """Render numeric rows as CSV with the 17-digit float format."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"
