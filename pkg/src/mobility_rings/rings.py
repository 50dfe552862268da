"""Mobility boundaries in the complex-energy plane.

For ``kappa = 1`` the boundary is a circle around ``delta``; for
``kappa = 2`` it is the level set |z| |z^2 - v^2 - w^2| = v^2 w^2 e^{-|h|} / lam
of z = E - delta, traced in polar coordinates by solving a cubic in r^2 for
each angle.  For arbitrary ``kappa`` (and as a cross-check of the closed
forms) the boundary is extracted as a contour of the numerically measured
large-``|h|`` branch of the Lyapunov exponent.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .lyapunov import TransferSettings, asymptote_intercept, le_grid
from .model import ModelParams

METHOD_K1 = "closed_form_k1"
METHOD_K2 = "traced_k2"
METHOD_NUMERIC = "numeric_contour"

DEFAULT_ANGULAR_RESOLUTION = 2048
DEFAULT_CONTOUR_LEVEL = 1e-3


class TracerError(RuntimeError):
    """Root assembly lost continuity while tracing a boundary."""


@dataclass
class RingCurve:
    """A mobility boundary as closed polylines in the complex-energy plane."""

    components: list
    params: ModelParams
    method: str

    def all_points(self) -> np.ndarray:
        if not self.components:
            return np.empty(0, dtype=complex)
        return np.concatenate(self.components)


def count_components(curve: RingCurve) -> int:
    """Number of disjoint closed components of the boundary."""
    return len(curve.components)


def ring_k1(params: ModelParams, angular_resolution: int = DEFAULT_ANGULAR_RESOLUTION) -> RingCurve:
    """The kappa=1 boundary: one circle of radius |v w| / (lam e^{|h|}) around delta.

    Returns an explicit empty curve when ``lam == 0`` (no boundary, the whole
    plane is on the extended side of the closed form).
    """
    if params.v == 0 or params.w == 0:
        raise ValueError("ring_k1 requires v != 0 and w != 0")
    if params.lam == 0:
        return RingCurve(components=[], params=params, method=METHOD_K1)
    radius = abs(params.v * params.w) / (params.lam * math.exp(abs(params.h)))
    phi = 2.0 * np.pi * np.arange(angular_resolution + 1) / angular_resolution
    phi[-1] = 0.0
    pts = params.delta + radius * np.exp(1j * phi)
    pts[-1] = pts[0]
    return RingCurve(components=[pts], params=params, method=METHOD_K1)


def _cubic_roots_positive(b2: float, b1: float, b0: float) -> np.ndarray:
    """Positive real roots of u^3 + b2 u^2 + b1 u + b0, ascending.

    Closed-form (trigonometric for three real roots, Cardano otherwise)
    followed by a Newton polish; the number of real roots is decided by the
    sign of the discriminant, which also resolves ties at root collisions.
    """
    p = b1 - b2 * b2 / 3.0
    q = 2.0 * b2**3 / 27.0 - b2 * b1 / 3.0 + b0
    disc = -4.0 * p**3 - 27.0 * q * q
    shift = -b2 / 3.0
    if disc >= 0.0 and p < 0.0:
        s = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * s)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg)
        roots = [s * math.cos((phi - 2.0 * math.pi * k) / 3.0) + shift for k in range(3)]
    else:
        half = -q / 2.0
        rad = math.sqrt(max(q * q / 4.0 + p**3 / 27.0, 0.0))
        roots = [math.copysign(abs(half + rad) ** (1 / 3), half + rad)
                 + math.copysign(abs(half - rad) ** (1 / 3), half - rad) + shift]
    out = []
    for u in roots:
        for _ in range(3):
            f = ((u + b2) * u + b1) * u + b0
            df = (3.0 * u + 2.0 * b2) * u + b1
            if df != 0.0:
                step = f / df
                if abs(step) < 1.0 + abs(u):
                    u -= step
        if u > 0.0:
            out.append(u)
    return np.sort(np.array(out))


def ring_k2(params: ModelParams, angular_resolution: int = DEFAULT_ANGULAR_RESOLUTION) -> RingCurve:
    """The kappa=2 boundary traced from the polar cubic.

    About the center delta, writing z = r e^{i phi}, points on the level set
    satisfy u^3 - 2 a cos(2 phi) u^2 + a^2 u - c^2 = 0 with u = r^2,
    a = v^2 + w^2 and c = v^2 w^2 e^{-|h|} / lam.  The one-or-three positive
    roots per angle are assembled into closed components by continuity.
    """
    if params.v == 0 or params.w == 0:
        raise ValueError("ring_k2 requires v != 0 and w != 0")
    if params.lam == 0:
        return RingCurve(components=[], params=params, method=METHOD_K2)
    M = int(angular_resolution)
    if M < 16:
        raise ValueError("angular_resolution must be at least 16")
    a = params.v**2 + params.w**2
    c = params.v**2 * params.w**2 * math.exp(-abs(params.h)) / params.lam
    phis = 2.0 * np.pi * np.arange(M) / M
    radii = [np.sqrt(_cubic_roots_positive(-2.0 * a * math.cos(2.0 * p), a * a, -c * c))
             for p in phis]
    components = [
        params.delta + loop for loop in _assemble_polar_branches(phis, radii)
    ]
    return RingCurve(components=components, params=params, method=METHOD_K2)


def _assemble_polar_branches(phis, radii) -> list:
    """Stitch per-angle radial crossings into closed loops.

    Nodes are (angle index, crossing index).  Between adjacent angles,
    crossings connect in sorted radial order; when the crossing count drops
    by two, the closest adjacent pair on the richer side annihilates at a
    fold and is joined directly.  Every node then has exactly two
    connections, and the loops are the cycles of that graph.
    """
    M = len(phis)
    links: dict = {}

    def add_link(node_a, node_b):
        links.setdefault(node_a, []).append(node_b)
        links.setdefault(node_b, []).append(node_a)

    for k in range(M):
        k2 = (k + 1) % M
        ra, rb = radii[k], radii[k2]
        na, nb = len(ra), len(rb)
        if abs(na - nb) not in (0, 2) or min(na, nb) < 1:
            raise TracerError(
                f"crossing count changed from {na} to {nb} near phi={phis[k]:.6f}; "
                "increase angular_resolution"
            )
        ia, ib = list(range(na)), list(range(nb))
        if na > nb:
            j = int(np.argmin(np.diff(ra)))
            add_link((k, j), (k, j + 1))
            ia = ia[:j] + ia[j + 2:]
        elif nb > na:
            j = int(np.argmin(np.diff(rb)))
            add_link((k2, j), (k2, j + 1))
            ib = ib[:j] + ib[j + 2:]
        gaps = [abs(ra[i] - rb[j]) for i, j in zip(ia, ib)]
        if gaps and max(gaps) > 0.35 * max(1.0, ra.max()):
            raise TracerError(
                f"branch match jumped by {max(gaps):.3g} near phi={phis[k]:.6f} "
                "without a root collision; increase angular_resolution"
            )
        for i, j in zip(ia, ib):
            add_link((k, i), (k2, j))

    for node, nbrs in links.items():
        if len(nbrs) != 2:
            raise TracerError(f"branch graph is not closed at angle index {node[0]}")

    loops = []
    seen = set()
    for start in sorted(links):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [n for n in links[cur] if n != prev]
            step = nxt[0] if nxt else prev
            if step == start:
                break
            cycle.append(step)
            seen.add(step)
            prev, cur = cur, step
        pts = np.array([radii[k][i] * np.exp(1j * phis[k]) for k, i in cycle])
        loops.append(np.append(pts, pts[0]))
    return loops


def ring_k2_residual(params: ModelParams, E) -> np.ndarray:
    """Level-set residual of the kappa=2 boundary; zero exactly on the curve.

    lam |z| |z^2 - v^2 - w^2| e^{|h|} / (v^2 w^2) - 1 with z = E - delta.
    """
    z = np.asarray(E, dtype=complex) - params.delta
    a = params.v**2 + params.w**2
    scale = params.v**2 * params.w**2
    return params.lam * np.abs(z) * np.abs(z * z - a) * np.exp(abs(params.h)) / scale - 1.0


def ring_k2_residual_alt(params: ModelParams, E) -> np.ndarray:
    """Alternative published algebraic form of the kappa=2 boundary relation.

    Differs from :func:`ring_k2_residual` in two terms (a ``x^2 + y^2`` where
    the level-set expansion has ``x^2 - y^2``, and a right-hand factor
    ``e^{lam h}`` where the level set has ``lam e^{h}``), so the two vanish on
    different curves except on special slices.  Kept for comparison only.
    """
    z = np.asarray(E, dtype=complex) - params.delta
    x, y = z.real, z.imag
    v, w, lam, h = params.v, params.w, params.lam, params.h
    u = x * x + y * y
    lhs = (
        u * u / (v**4 * w**2)
        - 2.0 * (x * x - y * y) / (v**2 * w**2)
        + 1.0 / w**2
        - (2.0 * u - w**2) / v**4
        + 2.0 / v**2
    )
    rhs = (w / np.exp(lam * h)) ** 2 / u
    return lhs - rhs


def enclosed_counts(curve: RingCurve, points) -> list:
    """How many of ``points`` fall inside each closed component (by winding)."""
    pts = np.asarray(points, dtype=complex).ravel()
    out = []
    for comp in curve.components:
        z = comp[:, np.newaxis] - pts[np.newaxis, :]
        turns = np.angle(z[1:] / z[:-1]).sum(axis=0)
        out.append(int(np.count_nonzero(np.abs(turns) > np.pi)))
    return out


def count_populated_components(curve: RingCurve, points) -> int:
    """Number of components that enclose at least one of ``points``.

    Companion to :func:`count_components` for spectra whose eigenvalues
    populate only some of the traced loops.
    """
    return sum(1 for n in enclosed_counts(curve, points) if n > 0)


def _grid_axes(E_grid: np.ndarray):
    if E_grid.ndim != 2 or min(E_grid.shape) < 4:
        raise ValueError("E_grid must be a 2-D rectangular grid (at least 4x4)")
    xs = E_grid[:, 0].real
    ys = E_grid[0, :].imag
    if not (np.allclose(E_grid.real, xs[:, None]) and np.allclose(E_grid.imag, ys[None, :])):
        raise ValueError("E_grid must be a rectangular grid: E[i, j] = x_i + 1j * y_j")
    return xs, ys


def numeric_boundary(
    params: ModelParams,
    E_grid: np.ndarray,
    settings: TransferSettings | None = None,
    epsilon: float = DEFAULT_CONTOUR_LEVEL,
    field: str = "asymptote",
    h_ref: float = 14.0,
) -> RingCurve:
    """Boundary for arbitrary parameters as a contour of a numeric exponent field.

    ``field="asymptote"`` (default) contours ``asymptote_intercept + |h|``,
    the numerically measured branch whose zero set is the phase boundary;
    this works for any ``kappa`` and complex ``delta`` and is the
    cross-method check of the closed forms.  ``field="finite"`` contours the
    plain finite-size exponent of :func:`le_grid` instead; its
    ``epsilon``-level set hugs the extended part of the spectrum rather than
    the rings, because away from the real axis the finite exponent is
    dominated by the other branch (see the lyapunov module docstring).

    Emits a warning when a contour touches the grid edge (enlarge the grid).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    E_grid = np.asarray(E_grid, dtype=complex)
    xs, ys = _grid_axes(E_grid)
    if field == "asymptote":
        F = asymptote_intercept(params, E_grid, settings, h_ref=h_ref) + abs(params.h)
    elif field == "finite":
        F = le_grid(params, E_grid, settings)
    else:
        raise ValueError(f"field must be 'asymptote' or 'finite', got {field!r}")

    from skimage import measure

    components = []
    open_contours = 0
    for contour in measure.find_contours(F, epsilon):
        x = np.interp(contour[:, 0], np.arange(xs.size), xs)
        y = np.interp(contour[:, 1], np.arange(ys.size), ys)
        pts = x + 1j * y
        if abs(pts[0] - pts[-1]) > 1e-9:
            open_contours += 1
            pts = np.append(pts, pts[0])
        else:
            pts[-1] = pts[0]
        components.append(pts)
    if open_contours:
        warnings.warn(
            f"{open_contours} contour(s) touch the grid edge; enlarge E_grid",
            RuntimeWarning,
        )
    return RingCurve(components=components, params=params, method=METHOD_NUMERIC)


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two curves (or point arrays)."""
    from scipy.spatial import cKDTree

    pa = a.all_points() if isinstance(a, RingCurve) else np.asarray(a, dtype=complex).ravel()
    pb = b.all_points() if isinstance(b, RingCurve) else np.asarray(b, dtype=complex).ravel()
    if pa.size == 0 or pb.size == 0:
        raise ValueError("cannot measure distance to an empty curve")
    qa = np.c_[pa.real, pa.imag]
    qb = np.c_[pb.real, pb.imag]
    ta, tb = cKDTree(qa), cKDTree(qb)
    return float(max(tb.query(qa)[0].max(), ta.query(qb)[0].max()))


def write_curve_csv(curve: RingCurve, path: str) -> None:
    """Curve as CSV rows (component id, point index, Re E, Im E)."""
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("component", "point", "re_E", "im_E"))
        for ci, comp in enumerate(curve.components):
            for pi, z in enumerate(comp):
                writer.writerow((ci, pi, f"{z.real:.17g}", f"{z.imag:.17g}"))


def read_curve_csv(path: str) -> list:
    """Curve components from CSV, as a list of complex point arrays."""
    import csv

    groups: dict = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != ("component", "point", "re_E", "im_E"):
            raise ValueError(f"{path}: unexpected header {header!r}")
        for lineno, row in enumerate(reader, start=2):
            try:
                ci, pi, re, im = int(row[0]), int(row[1]), float(row[2]), float(row[3])
            except (ValueError, IndexError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed curve row {row!r}") from exc
            groups.setdefault(ci, []).append((pi, complex(re, im)))
    return [
        np.array([z for _, z in sorted(groups[ci])]) for ci in sorted(groups)
    ]
