"""Parameter sweeps: per-eigenvalue fractal dimension versus a swept parameter.

Every sweep point builds the Hamiltonian, diagonalizes it and emits one
record per eigenstate.  Points are independent tasks; completed points can be
checkpointed to disk (one file per parameter value, named by a content hash
of the parameters) so an interrupted sweep resumes without recomputation.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .config import params_to_mapping
from .eigen import EigensolverError, eigendecompose
from .localization import fractal_dimensions
from .model import ModelParams, build_hamiltonian

SWEEP_PARAMETERS = ("w_over_v", "h", "lambda", "theta", "delta_re", "delta_im")

CSV_HEADER = ("param", "eigen_index", "re_E", "im_E", "gamma")


@dataclass(frozen=True)
class SweepGrid:
    """A swept parameter, its values (strictly increasing) and the base point."""

    parameter: str
    values: tuple
    base: ModelParams

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"parameter must be one of {SWEEP_PARAMETERS}, got {self.parameter!r}")
        vals = tuple(float(x) for x in self.values)
        if not vals:
            raise ValueError("values must be nonempty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly increasing")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SweepRecord:
    """One (parameter value, eigenvalue, fractal dimension) triple."""

    param_value: float
    eigen_index: int
    re_E: float
    im_E: float
    gamma_fractal: float


@dataclass
class SweepResult:
    records: list
    failures: list  # (param_value, message) pairs for failed points


def apply_parameter(base: ModelParams, parameter: str, value: float) -> ModelParams:
    """The model at one sweep point.  ``w_over_v`` holds v fixed and sets w."""
    if parameter == "w_over_v":
        return replace(base, w=value * base.v)
    if parameter == "h":
        return replace(base, h=value)
    if parameter == "lambda":
        return replace(base, lam=value)
    if parameter == "theta":
        return replace(base, theta=value)
    if parameter == "delta_re":
        return replace(base, delta=complex(value, base.delta.imag))
    if parameter == "delta_im":
        return replace(base, delta=complex(base.delta.real, value))
    raise ValueError(f"unknown sweep parameter {parameter!r}")


def checkpoint_name(params: ModelParams, value: float) -> str:
    """Deterministic checkpoint filename from a content hash of (params, value)."""
    payload = json.dumps(
        {"params": params_to_mapping(params), "value": float(value)},
        sort_keys=True,
    )
    return "sweep_" + hashlib.sha256(payload.encode()).hexdigest()[:20] + ".npz"


def _sweep_point(grid: SweepGrid, value: float, checkpoint_dir: str | None) -> list:
    params = apply_parameter(grid.base, grid.parameter, value)
    path = None
    if checkpoint_dir is not None:
        path = os.path.join(checkpoint_dir, checkpoint_name(params, value))
        if os.path.exists(path):
            data = np.load(path)
            return _records_from_arrays(value, data["re_E"], data["im_E"], data["gamma"])
    spectrum = eigendecompose(build_hamiltonian(params), params=params)
    gamma = fractal_dimensions(spectrum)
    re_E = spectrum.eigenvalues.real
    im_E = spectrum.eigenvalues.imag
    if path is not None:
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            np.savez(fh, re_E=re_E, im_E=im_E, gamma=gamma, param_value=value)
        os.replace(tmp, path)
    return _records_from_arrays(value, re_E, im_E, gamma)


def _records_from_arrays(value, re_E, im_E, gamma) -> list:
    return [
        SweepRecord(
            param_value=float(value),
            eigen_index=int(k),
            re_E=float(re_E[k]),
            im_E=float(im_E[k]),
            gamma_fractal=float(gamma[k]),
        )
        for k in range(len(re_E))
    ]


def run_sweep(grid: SweepGrid, checkpoint_dir: str | None = None, workers: int = 1) -> SweepResult:
    """Run every sweep point; aggregation is by sorted parameter value.

    Point failures are recorded and the sweep continues.  With
    ``workers > 1`` points run in a process pool; results are merged in grid
    order, so the record stream is independent of completion order.
    """
    if checkpoint_dir is not None:
        os.makedirs(checkpoint_dir, exist_ok=True)
    records: list = []
    failures: list = []
    if workers <= 1:
        outcomes = []
        for value in grid.values:
            try:
                outcomes.append(_sweep_point(grid, value, checkpoint_dir))
            except EigensolverError as exc:
                outcomes.append(exc)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sweep_point, grid, value, checkpoint_dir) for value in grid.values
            ]
            outcomes = []
            for future in futures:
                try:
                    outcomes.append(future.result())
                except EigensolverError as exc:
                    outcomes.append(exc)
    for value, outcome in zip(grid.values, outcomes):
        if isinstance(outcome, Exception):
            failures.append((value, str(outcome)))
        else:
            records.extend(outcome)
    return SweepResult(records=records, failures=failures)


def slice_complex_plane(records: list, param_value: float) -> np.ndarray:
    """The (re_E, im_E, gamma) scatter for one parameter value, shape (L, 3)."""
    rows = [
        (r.re_E, r.im_E, r.gamma_fractal) for r in records if r.param_value == param_value
    ]
    if not rows:
        raise KeyError(f"no records at param_value={param_value!r}")
    return np.array(rows)


def write_records_csv(records: list, path: str) -> None:
    """Records as CSV with 17 significant digits (lossless for doubles)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                (
                    f"{r.param_value:.17g}",
                    r.eigen_index,
                    f"{r.re_E:.17g}",
                    f"{r.im_E:.17g}",
                    f"{r.gamma_fractal:.17g}",
                )
            )


def read_records_csv(path: str) -> list:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        records = []
        for lineno, row in enumerate(reader, start=2):
            try:
                records.append(
                    SweepRecord(
                        param_value=float(row[0]),
                        eigen_index=int(row[1]),
                        re_E=float(row[2]),
                        im_E=float(row[3]),
                        gamma_fractal=float(row[4]),
                    )
                )
            except (ValueError, IndexError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed sweep row {row!r}") from exc
        return records


def sweep_metadata(grid: SweepGrid, **extra) -> dict:
    """Sidecar metadata: everything needed to regenerate the sweep."""
    meta = {
        "tool": "mobility-rings",
        "version": __version__,
        "parameter": grid.parameter,
        "values": list(grid.values),
        "base_params": params_to_mapping(grid.base),
    }
    meta.update(extra)
    return meta


def write_metadata(meta: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
