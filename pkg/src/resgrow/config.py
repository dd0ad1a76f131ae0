"""Run configuration: tolerances and search parameters.

A single frozen dataclass carries every tunable used by the library.
Functions take an optional ``cfg`` argument defaulting to
``DEFAULT_CONFIG``; the CLI builds one from an optional JSON file plus
flag overrides.  No environment variables are consulted.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class RunConfig:
    # decomposition / solve accuracy
    tol_svd: float = 1e-10
    tol_solve: float = 1e-10
    tol_eig: float = 1e-8
    # a shift is treated as singular at or below this smallest singular value
    tol_singular: float = 1e-12
    # threshold for treating the growth quantities as numerically zero,
    # scaled by the appropriate power of the resolvent norm
    tol_zero: float = 1e-9
    # relative gap between the two largest singular values of the
    # resolvent below which the maximizing vector is flagged degenerate
    degeneracy_gap: float = 1e-6
    # samples per segment during the path line search / certification
    s_seg: int = 33
    s_cert: int = 129
    # path search limits
    max_steps: int = 10000
    max_halvings: int = 40
    seed: int = 0

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **kw)


DEFAULT_CONFIG = RunConfig()

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}
_INT_FIELDS = {"s_seg", "s_cert", "max_steps", "max_halvings", "seed"}


def config_from_dict(data: dict) -> RunConfig:
    """Build a RunConfig from a plain dict, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    kw = {}
    for key, value in data.items():
        if key not in _FIELD_TYPES:
            raise ValueError(f"unknown config key: {key!r}")
        if key in _INT_FIELDS:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"config key {key!r} must be an integer")
            kw[key] = value
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"config key {key!r} must be a number")
            kw[key] = float(value)
    return RunConfig(**kw)


def load_config(path: str) -> RunConfig:
    """Read a JSON config file.  Unknown keys are an error."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed config file {path}: {exc}") from exc
    return config_from_dict(data)
