"""Experiment configuration: embedded defaults, JSON overrides and validation.

A configuration is a nested dictionary.  Every experiment kind has a full
default tree; a user file (JSON) and command-line ``--set key.path=value``
overrides are merged on top, and the merged tree is validated leaf by leaf.
Errors carry the dotted path of the offending key.
"""

from __future__ import annotations

import copy
import json
import math
from pathlib import Path
from typing import Any, Callable

__all__ = ["ConfigError", "DEFAULTS", "KINDS", "load_config", "merge", "parse_assignment", "validate"]


class ConfigError(ValueError):
    """Schema violation; ``path`` is the dotted key path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


_FLOW = {"dt": 1e-3, "integrator": "IFRK4", "variant": "gauged", "nonlin_coeff": None, "output_stride": None,
         "max_dt": None, "adaptive": False, "courant": 0.25}

DEFAULTS: dict[str, dict[str, Any]] = {
    "sample": {"N": 8, "M": 1000, "B": 20.0, "seed": 0, "stream_id": 0, "min_ess": 10.0},
    "evolve": {"data": {"kind": "wiener", "N": 16, "seed": 0, "stream_id": 0, "B": 20.0, "path": None},
               "flow": {**_FLOW, "T": 1.0}},
    "gauge": {"data": {"kind": "wiener", "N": 8, "seed": 0, "stream_id": 0, "B": 20.0, "path": None},
              "flow": {**_FLOW, "T": 1.0, "variant": "ungauged"}, "direction": "forward", "tol": 1e-10},
    "conserve": {"data": {"kind": "gibbs", "N": 32, "seed": 0, "stream_id": 0, "B": 20.0, "path": None},
                 "flow": {**_FLOW, "T": 1.0}, "l2_tol": 1e-9, "H_tol": 1e-6},
    "liouville": {"Ns": [1, 2, 4], "times": [0.05, 0.1, 0.25], "samples": 3, "seed": 0,
                  "flow": {**_FLOW, "dt": 1e-4}, "det_tol": 1e-5,
                  "divergence": {"Ns": [1, 2, 4, 8], "samples": 100, "tol": 1e-6}},
    "invariance": {"N": 8, "B": 20.0, "M": 10000, "T": 1.0, "seed": 0, "stream_id": 0,
                   "observables": ["cos(re(1))", "clamp(abs2(2), 10)", "sin(im(3))"],
                   "threshold": 3.0, "control_factor": 1.1, "flow": {**_FLOW}},
    "smoothing": {"samples": 100, "Ns": [16, 32, 64, 128], "delta": 0.1, "T": 0.1, "seed": 0, "stream_id": 0,
                  "B": 20.0, "slope_tol": 0.05, "min_gap": 0.03, "flow": {**_FLOW, "dt": 1e-4, "courant": 0.125}},
    "cauchy": {"samples": 20, "Ns": [8, 16, 32, 64], "s": 0.55, "T": 0.1, "seed": 0, "stream_id": 0,
               "flow": {**_FLOW, "dt": 1e-4}},
    "xsb": {"parseval": {"N": 8, "T": 1.0, "seed": 0, "tol": 1e-8},
            "linear": {"N": 16, "s": 0.5, "b": 0.5, "window": "hann", "max_spread": 2.0},
            "calculus": {"delta1": 0.75, "delta2": 0.75, "a_max": 1e4, "points": 41, "max_ratio": 50.0}},
    "resonance": {"action": "suite", "kdv_max": 100, "zeta2_max": 64, "roots_bound": 50,
                  "cancel_samples": 10000, "cancel_tol": 1e-12, "count_budget": 16, "matrices": 1000,
                  "matrix_max_dim": 64, "seed": 0, "lemma": "2ci", "sizes": [8, 8, 8, 8, 8]},
}
KINDS = tuple(DEFAULTS)


# ---------------------------------------------------------------------------
# leaf validators
# ---------------------------------------------------------------------------

def _int(lo=None, hi=None):
    def check(v):
        if isinstance(v, bool) or not isinstance(v, int):
            return "must be an integer"
        if lo is not None and v < lo:
            return f"must be >= {lo}"
        if hi is not None and v > hi:
            return f"must be <= {hi}"
    return check


def _pos(strict=True, allow_inf=False):
    def check(v):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            return "must be a number"
        if math.isnan(v) or (math.isinf(v) and not allow_inf):
            return "must be finite"
        if (v <= 0) if strict else (v < 0):
            return "must be > 0" if strict else "must be >= 0"
    return check


def _real(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        return "must be a finite number"


def _choice(*opts):
    def check(v):
        if v not in opts:
            return f"must be one of {list(opts)}"
    return check


def _optional(inner):
    return lambda v: None if v is None else inner(v)


def _list(inner, increasing=False, min_len=1):
    def check(v):
        if not isinstance(v, list) or len(v) < min_len:
            return f"must be a list with at least {min_len} entries"
        for i, x in enumerate(v):
            msg = inner(x)
            if msg:
                return f"entry {i} {msg}"
        if increasing and any(b <= a for a, b in zip(v, v[1:])):
            return "must be strictly increasing"
    return check


def _str_list(v):
    if not isinstance(v, list) or not v or not all(isinstance(x, str) for x in v):
        return "must be a non-empty list of strings"


def _pow2(v):
    if isinstance(v, bool) or not isinstance(v, int) or v < 1 or v & (v - 1):
        return "must be a positive power of two"


_STEP_RULES = {
    "dt": _pos(), "integrator": _choice("IFRK4", "GL4"),
    "variant": _choice("gauged", "ungauged"), "nonlin_coeff": _optional(_choice(0, 0.0, 0.25, 1, 1.0)),
    "output_stride": _optional(_int(1)), "max_dt": _optional(_pos(allow_inf=True)),
    "adaptive": lambda v: None if isinstance(v, bool) else "must be true or false", "courant": _pos(),
}
# kinds whose horizon lives inside the flow section
_FLOW_RULES = {**_STEP_RULES, "T": _pos(strict=False)}
_DATA_RULES = {"kind": _choice("wiener", "gibbs", "file"), "N": _int(1, 4096), "seed": _int(0),
               "stream_id": _int(0), "B": _pos(allow_inf=True), "path": _optional(lambda v: None if isinstance(v, str)
                                                                                 else "must be a string")}

RULES: dict[str, dict[str, Callable]] = {
    "sample": {"N": _int(1, 4096), "M": _int(1), "B": _pos(allow_inf=True), "seed": _int(0), "stream_id": _int(0),
               "min_ess": _pos(strict=False)},
    "evolve": {"data": _DATA_RULES, "flow": _FLOW_RULES},
    "gauge": {"data": _DATA_RULES, "flow": _FLOW_RULES, "direction": _choice("forward", "inverse"),
              "tol": _pos()},
    "conserve": {"data": _DATA_RULES, "flow": _FLOW_RULES, "l2_tol": _pos(), "H_tol": _pos()},
    "liouville": {"Ns": _list(_int(1, 6)), "times": _list(_pos(strict=False)), "samples": _int(1),
                  "seed": _int(0), "flow": _STEP_RULES, "det_tol": _pos(),
                  "divergence": {"Ns": _list(_int(1, 256)), "samples": _int(1), "tol": _pos()}},
    "invariance": {"N": _int(1, 256), "B": _pos(allow_inf=True), "M": _int(2), "T": _pos(strict=False),
                   "seed": _int(0), "stream_id": _int(0), "observables": _str_list, "threshold": _pos(),
                   "control_factor": _optional(_pos()), "flow": _STEP_RULES},
    "smoothing": {"samples": _int(1), "Ns": _list(_int(1, 1024), increasing=True, min_len=2),
                  "delta": _pos(), "T": _pos(), "seed": _int(0), "stream_id": _int(0), "B": _pos(allow_inf=True),
                  "slope_tol": _pos(), "min_gap": _real, "flow": _STEP_RULES},
    "cauchy": {"samples": _int(1), "Ns": _list(_int(1, 1024), increasing=True, min_len=2), "s": _real,
               "T": _pos(), "seed": _int(0), "stream_id": _int(0), "flow": _STEP_RULES},
    "xsb": {"parseval": {"N": _int(1, 256), "T": _pos(), "seed": _int(0), "tol": _pos()},
            "linear": {"N": _int(1, 64), "s": _real, "b": _real, "window": _choice("box", "hann"),
                       "max_spread": _pos()},
            "calculus": {"delta1": _pos(), "delta2": _pos(), "a_max": _pos(strict=False), "points": _int(2),
                         "max_ratio": _pos()}},
    "resonance": {"action": _choice("suite", "kdv", "verify-zeta2", "roots", "count", "cancel", "matrix"),
                  "kdv_max": _int(1, 1000), "zeta2_max": _int(1, 64), "roots_bound": _int(1, 200),
                  "cancel_samples": _int(1), "cancel_tol": _pos(), "count_budget": _pow2, "matrices": _int(1),
                  "matrix_max_dim": _int(1, 512), "seed": _int(0), "lemma": _choice("1bi", "2ci"),
                  "sizes": _list(_pow2, min_len=5)},
}


def merge(base: dict, override: dict, path: str = "") -> dict:
    """Deep merge; unknown keys and type clashes between sections and leaves are rejected."""
    out = copy.deepcopy(base)
    for k, v in override.items():
        here = f"{path}.{k}" if path else k
        if k not in out:
            raise ConfigError(here, "unknown key")
        if isinstance(out[k], dict):
            if not isinstance(v, dict):
                raise ConfigError(here, "must be a section")
            out[k] = merge(out[k], v, here)
        else:
            out[k] = copy.deepcopy(v)
    return out


def validate(kind: str, cfg: dict) -> dict:
    if kind not in RULES:
        raise ConfigError("kind", f"must be one of {list(RULES)}")

    def walk(rules, tree, path):
        for k, rule in rules.items():
            here = f"{path}.{k}" if path else k
            if k not in tree:
                raise ConfigError(here, "missing")
            if isinstance(rule, dict):
                if not isinstance(tree[k], dict):
                    raise ConfigError(here, "must be a section")
                walk(rule, tree[k], here)
            else:
                msg = rule(tree[k])
                if msg:
                    raise ConfigError(here, msg)

    walk(RULES[kind], cfg, "")
    return cfg


def parse_assignment(text: str) -> tuple[list[str], Any]:
    """``a.b.c=value`` with ``value`` read as JSON when possible, else as a string."""
    if "=" not in text:
        raise ConfigError(text, "override must look like key.path=value")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip().split("."), value


def _nest(keys: list[str], value) -> dict:
    out: dict = {}
    cur = out
    for k in keys[:-1]:
        cur = cur.setdefault(k, {})
    cur[keys[-1]] = value
    return out


def load_config(kind: str, path: str | Path | None = None, overrides: list[str] | None = None) -> dict:
    """Defaults for ``kind``, then the JSON file at ``path``, then ``key=value`` overrides."""
    cfg = copy.deepcopy(DEFAULTS[kind])
    if path is not None:
        try:
            user = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise ConfigError("config", f"file {path} not found") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON ({exc})") from None
        if not isinstance(user, dict):
            raise ConfigError("config", "top level must be an object")
        user.pop("kind", None)
        cfg = merge(cfg, user)
    for item in overrides or []:
        cfg = merge(cfg, _nest(*parse_assignment(item)))
    return validate(kind, cfg)
