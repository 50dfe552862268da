"""Command-line front end: spectrum, state, le, ring, sweep, plot.

Every model parameter can come from a flat config file (``--config``) and be
overridden by a flag of the same name; ``--dump-config`` prints the merged
configuration and exits.  Exit codes: 0 success, 2 validation error,
3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .config import dump_config, merge_config, params_to_mapping, read_config_file
from .eigen import EigensolverError, eigendecompose
from .localization import fractal_dimensions, spatial_profile
from .lyapunov import (
    RescaleOverflowError,
    TransferSettings,
    analytic_le,
    finite_le,
)
from .model import ModelParams, build_hamiltonian
from .rings import (
    TracerError,
    numeric_boundary,
    read_curve_csv,
    ring_k1,
    ring_k2,
    write_curve_csv,
)
from .svgplot import slice_scatter, sweep_heatmap
from .sweep import (
    SweepGrid,
    read_records_csv,
    run_sweep,
    slice_complex_plane,
    sweep_metadata,
    write_metadata,
    write_records_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

THREADS_ENV = "MOBILITY_RINGS_THREADS"

_PARAM_FLAGS = (
    ("v", float),
    ("w", float),
    ("lambda", float),
    ("alpha", float),
    ("theta", float),
    ("h", float),
    ("delta_re", float),
    ("delta_im", float),
    ("kappa", int),
    ("num_cells", int),
    ("boundary", str),
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat key = value config file")
    parser.add_argument(
        "--out", metavar="PATH", help="output file (required unless --dump-config)"
    )
    parser.add_argument("--threads", type=int, default=None, help="worker pool width")
    parser.add_argument(
        "--dump-config", action="store_true", help="print the merged configuration and exit"
    )
    group = parser.add_argument_group("model parameters")
    for key, typ in _PARAM_FLAGS:
        flag = "--" + key.replace("_", "-")
        if key == "boundary":
            group.add_argument(flag, dest=f"p_{key}", choices=("open", "periodic"))
        else:
            group.add_argument(flag, dest=f"p_{key}", type=typ)


def _params_from_args(args) -> ModelParams:
    if not args.dump_config and not args.out:
        raise ValueError("--out is required")
    file_mapping = read_config_file(args.config) if args.config else {}
    flag_mapping = {key: getattr(args, f"p_{key}") for key, _ in _PARAM_FLAGS}
    return merge_config(ModelParams(), file_mapping, flag_mapping)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}")
    return 1


def _settings_from_args(args) -> TransferSettings:
    return TransferSettings(
        num_quasicells=args.num_quasicells,
        theta_samples=args.theta_samples,
        rescale_every=args.rescale_every,
        norm=args.norm,
    )


def _write_sidecar(out_path: str, params: ModelParams, **extra) -> None:
    meta = {
        "tool": "mobility-rings",
        "version": __version__,
        "params": params_to_mapping(params),
    }
    meta.update(extra)
    with open(out_path + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_spectrum(args) -> int:
    params = _params_from_args(args)
    if args.dump_config:
        sys.stdout.write(dump_config(params))
        return EXIT_OK
    spectrum = eigendecompose(build_hamiltonian(params), params=params)
    gammas = fractal_dimensions(spectrum)
    ipr = np.sum(np.abs(spectrum.eigenvectors) ** 4, axis=0)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,re_E,im_E,gamma,ipr,residual\n")
        for k in range(len(spectrum)):
            E = spectrum.eigenvalues[k]
            fh.write(
                f"{k},{E.real:.17g},{E.imag:.17g},{gammas[k]:.17g},"
                f"{ipr[k]:.17g},{spectrum.residuals[k]:.17g}\n"
            )
    _write_sidecar(args.out, params, residual_tol=spectrum.tol)
    return EXIT_OK


def cmd_state(args) -> int:
    params = _params_from_args(args)
    if args.dump_config:
        sys.stdout.write(dump_config(params))
        return EXIT_OK
    spectrum = eigendecompose(build_hamiltonian(params), params=params)
    profile = spatial_profile(spectrum, args.index)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("site,weight\n")
        for site, weight in enumerate(profile):
            fh.write(f"{site},{weight:.17g}\n")
    E = spectrum.eigenvalues[args.index]
    _write_sidecar(args.out, params, state_index=args.index, re_E=E.real, im_E=E.imag)
    return EXIT_OK


def _parse_energy(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"energy must be 're' or 're,im', got {text!r}")


def _energy_list(args) -> list:
    energies = [_parse_energy(e) for e in args.energy or []]
    if args.grid is not None:
        re0, re1, nre, im0, im1, nim = args.grid
        for im in np.linspace(im0, im1, int(nim)):
            for re in np.linspace(re0, re1, int(nre)):
                energies.append(complex(re, im))
    if not energies:
        raise ValueError("no energies given: use --energy and/or --grid")
    return energies


def cmd_le(args) -> int:
    params = _params_from_args(args)
    if args.dump_config:
        sys.stdout.write(dump_config(params))
        return EXIT_OK
    settings = _settings_from_args(args)
    energies = _energy_list(args)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("re_E,im_E,gamma_le,gamma_analytic\n")
        for E in energies:
            gamma = finite_le(params, E, settings).gamma
            if params.kappa in (1, 2):
                analytic = f"{float(analytic_le(params, E)):.17g}"
            else:
                analytic = ""
            fh.write(f"{E.real:.17g},{E.imag:.17g},{gamma:.17g},{analytic}\n")
    _write_sidecar(
        args.out,
        params,
        num_quasicells=settings.num_quasicells,
        theta_samples=settings.theta_samples,
        rescale_every=settings.rescale_every,
        norm=settings.norm,
    )
    return EXIT_OK


def cmd_ring(args) -> int:
    params = _params_from_args(args)
    if args.dump_config:
        sys.stdout.write(dump_config(params))
        return EXIT_OK
    if args.method == "closed":
        if params.kappa == 1:
            curve = ring_k1(params, angular_resolution=args.resolution)
        elif params.kappa == 2:
            curve = ring_k2(params, angular_resolution=args.resolution)
        else:
            raise ValueError("closed-form boundary requires kappa in {1, 2}; use --method numeric")
    else:
        re0, re1, im0, im1 = args.grid
        xs = np.arange(re0, re1 + args.spacing / 2, args.spacing)
        ys = np.arange(im0, im1 + args.spacing / 2, args.spacing)
        E_grid = xs[:, None] + 1j * ys[None, :]
        curve = numeric_boundary(params, E_grid, epsilon=args.epsilon, h_ref=args.h_ref)
    write_curve_csv(curve, args.out)
    _write_sidecar(args.out, params, method=curve.method, components=len(curve.components))
    return EXIT_OK


def cmd_sweep(args) -> int:
    params = _params_from_args(args)
    if args.dump_config:
        sys.stdout.write(dump_config(params))
        return EXIT_OK
    if args.values:
        values = [float(x) for x in args.values.split(",")]
    else:
        values = list(np.linspace(args.start, args.stop, args.num))
    grid = SweepGrid(parameter=args.parameter, values=tuple(values), base=params)
    result = run_sweep(grid, checkpoint_dir=args.checkpoint_dir, workers=_threads(args))
    write_records_csv(result.records, args.out)
    meta = sweep_metadata(grid, failures=[[v, m] for v, m in result.failures])
    write_metadata(meta, args.out + ".meta.json")
    if result.failures:
        sys.stderr.write(f"warning: {len(result.failures)} sweep point(s) failed\n")
    return EXIT_OK


def cmd_plot(args) -> int:
    curves = []
    for path in args.ring or []:
        curves.extend(read_curve_csv(path))
    records = read_records_csv(args.sweep) if args.sweep else []
    if args.slice is not None:
        points = (
            slice_complex_plane(records, args.slice)
            if records
            else np.empty((0, 3))
        )
        svg = slice_scatter(points, curves=curves, title=args.title)
    else:
        if args.me_lines:
            meta_path = (args.sweep or "") + ".meta.json"
            if not os.path.exists(meta_path):
                raise ValueError("--me-lines needs the sweep metadata sidecar next to the CSV")
            with open(meta_path, "r", encoding="utf-8") as fh:
                meta = json.load(fh)
            base = meta["base_params"]
            v, lam, h = base["v"], base["lambda"], base["h"]
            values = np.asarray(meta["values"], dtype=float)
            radius = v * v * values / (lam * np.exp(abs(h)))
            curves.append(values + 1j * radius)
            curves.append(values - 1j * radius)
        svg = sweep_heatmap(
            records, curves=curves, bins=args.bins, xlabel=args.parameter_label, title=args.title
        )
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobility-rings",
        description="Spectra, Lyapunov exponents and mobility boundaries of a "
        "quasiperiodic dimerized chain.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="full eigendecomposition with localization measures")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("state", help="per-site weights of one eigenstate")
    _add_common(p)
    p.add_argument("--index", type=int, required=True, help="eigenstate index (spectral order)")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("le", help="finite-size Lyapunov exponents at given energies")
    _add_common(p)
    p.add_argument("--energy", action="append", metavar="RE[,IM]", help="repeatable")
    p.add_argument(
        "--grid",
        nargs=6,
        type=float,
        metavar=("RE0", "RE1", "NRE", "IM0", "IM1", "NIM"),
        help="rectangular energy grid",
    )
    p.add_argument("--num-quasicells", type=int, default=10_000)
    p.add_argument("--theta-samples", type=int, default=32)
    p.add_argument("--rescale-every", type=int, default=1)
    p.add_argument("--norm", choices=("frobenius", "spectral"), default="frobenius")
    p.set_defaults(func=cmd_le)

    p = sub.add_parser("ring", help="mobility boundary curves in the complex-energy plane")
    _add_common(p)
    p.add_argument("--method", choices=("closed", "numeric"), default="closed")
    p.add_argument("--resolution", type=int, default=2048, help="angles for closed forms")
    p.add_argument(
        "--grid", nargs=4, type=float, default=(-2.0, 2.0, -1.0, 1.0),
        metavar=("RE0", "RE1", "IM0", "IM1"), help="numeric contour window",
    )
    p.add_argument("--spacing", type=float, default=0.01)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--h-ref", type=float, default=14.0)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("sweep", help="per-eigenvalue fractal dimension over a parameter range")
    _add_common(p)
    p.add_argument(
        "--parameter",
        choices=("w_over_v", "h", "lambda", "theta", "delta_re", "delta_im"),
        default="w_over_v",
    )
    p.add_argument("--values", help="comma-separated explicit values")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=2.0)
    p.add_argument("--num", type=int, default=201)
    p.add_argument("--checkpoint-dir", help="resume interrupted sweeps from here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="render sweep and/or boundary CSV files as SVG")
    p.add_argument("--sweep", metavar="CSV", help="sweep records")
    p.add_argument("--ring", action="append", metavar="CSV", help="boundary curve(s), repeatable")
    p.add_argument("--slice", type=float, default=None, help="complex-plane mode at this value")
    p.add_argument("--me-lines", action="store_true", help="overlay analytic boundary lines")
    p.add_argument("--bins", type=int, default=256)
    p.add_argument("--title", default="")
    p.add_argument("--parameter-label", default="w/v")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, IndexError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except (EigensolverError, RescaleOverflowError, TracerError, FloatingPointError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
