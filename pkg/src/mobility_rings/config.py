"""Flat key-value configuration files and their mapping onto ModelParams.

The file format is one ``key = value`` pair per line with ``#`` comments and
blank lines allowed.  Keys are exactly the parameter names below; ``delta``
is split into ``delta_re`` / ``delta_im``.  Command-line flags override file
values, which override defaults.
"""

from __future__ import annotations

from .model import ModelParams

#: config keys in canonical order
CONFIG_KEYS = (
    "v",
    "w",
    "lambda",
    "alpha",
    "theta",
    "h",
    "delta_re",
    "delta_im",
    "kappa",
    "num_cells",
    "boundary",
)

_FLOAT_KEYS = {"v", "w", "lambda", "alpha", "theta", "h", "delta_re", "delta_im"}
_INT_KEYS = {"kappa", "num_cells"}


def params_to_mapping(params: ModelParams) -> dict:
    """ModelParams as a flat {config key: value} mapping."""
    return {
        "v": params.v,
        "w": params.w,
        "lambda": params.lam,
        "alpha": params.alpha,
        "theta": params.theta,
        "h": params.h,
        "delta_re": params.delta.real,
        "delta_im": params.delta.imag,
        "kappa": params.kappa,
        "num_cells": params.num_cells,
        "boundary": params.boundary,
    }


def params_from_mapping(mapping: dict) -> ModelParams:
    """Build validated ModelParams from a flat mapping; unknown keys rejected."""
    unknown = set(mapping) - set(CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
    merged = params_to_mapping(ModelParams())
    merged.update(mapping)
    return ModelParams(
        v=float(merged["v"]),
        w=float(merged["w"]),
        lam=float(merged["lambda"]),
        alpha=float(merged["alpha"]),
        theta=float(merged["theta"]),
        h=float(merged["h"]),
        delta=complex(float(merged["delta_re"]), float(merged["delta_im"])),
        kappa=int(merged["kappa"]),
        num_cells=int(merged["num_cells"]),
        boundary=str(merged["boundary"]),
    )


def _parse_value(key: str, raw: str, path: str, lineno: int):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        return raw
    except ValueError as exc:
        raise ValueError(f"{path}:{lineno}: bad value for {key!r}: {raw!r}") from exc


def read_config_file(path: str) -> dict:
    """Parse a flat key-value config file into a {key: value} mapping."""
    mapping: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line.rstrip()!r}")
            key, raw = (part.strip() for part in text.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown configuration key {key!r}")
            mapping[key] = _parse_value(key, raw, path, lineno)
    return mapping


def dump_config(params: ModelParams) -> str:
    """Render the effective configuration in the same flat file format."""
    mapping = params_to_mapping(params)
    return "".join(f"{key} = {mapping[key]}\n" for key in CONFIG_KEYS)


def merge_config(defaults: ModelParams, file_mapping: dict, flag_mapping: dict) -> ModelParams:
    """defaults < config file < command-line flags."""
    merged = params_to_mapping(defaults)
    merged.update(file_mapping)
    merged.update({k: v for k, v in flag_mapping.items() if v is not None})
    return params_from_mapping(merged)
