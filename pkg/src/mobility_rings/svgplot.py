"""Deterministic standalone SVG rendering of sweep diagrams.

No imaging dependency: plots are written as plain SVG text with a fixed
layout, so identical inputs produce byte-identical files.  The fractal
dimension is mapped linearly from blue (0) to yellow (1); boundary curves
are overlaid as dashed lines.
"""

from __future__ import annotations

import math

import numpy as np

WIDTH, HEIGHT = 760, 560
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 110, 40, 55
BAR_W = 18

CURVE_STYLE = 'fill="none" stroke="#cc2222" stroke-width="1.5" stroke-dasharray="7,5"'


def color_of(value: float) -> str:
    """Linear blue-to-yellow map of a value in [0, 1]."""
    t = min(1.0, max(0.0, value))
    r = round(255 * t)
    b = round(255 * (1.0 - t))
    return f"#{r:02x}{r:02x}{b:02x}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list:
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


class Frame:
    """Data-to-pixel transform for the fixed plot box."""

    def __init__(self, x0, x1, y0, y1):
        if x1 <= x0:
            x0, x1 = x0 - 0.5, x0 + 0.5
        if y1 <= y0:
            y0, y1 = y0 - 0.5, y0 + 0.5
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1
        self.px0, self.px1 = MARGIN_L, WIDTH - MARGIN_R
        self.py0, self.py1 = HEIGHT - MARGIN_B, MARGIN_T

    def x(self, v) -> float:
        return self.px0 + (v - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def y(self, v) -> float:
        return self.py0 + (v - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)


def _axes(frame: Frame, xlabel: str, ylabel: str, title: str) -> list:
    parts = [
        f'<rect x="{frame.px0:.1f}" y="{frame.py1:.1f}" '
        f'width="{frame.px1 - frame.px0:.1f}" height="{frame.py0 - frame.py1:.1f}" '
        'fill="none" stroke="#000000" stroke-width="1"/>'
    ]
    for t in _nice_ticks(frame.x0, frame.x1):
        px = frame.x(t)
        parts.append(
            f'<line x1="{px:.1f}" y1="{frame.py0:.1f}" x2="{px:.1f}" y2="{frame.py0 + 5:.1f}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{frame.py0 + 18:.1f}" font-size="11" '
            f'text-anchor="middle">{t:g}</text>'
        )
    for t in _nice_ticks(frame.y0, frame.y1):
        py = frame.y(t)
        parts.append(
            f'<line x1="{frame.px0 - 5:.1f}" y1="{py:.1f}" x2="{frame.px0:.1f}" y2="{py:.1f}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{frame.px0 - 8:.1f}" y="{py + 4:.1f}" font-size="11" '
            f'text-anchor="end">{t:g}</text>'
        )
    parts.append(
        f'<text x="{(frame.px0 + frame.px1) / 2:.1f}" y="{HEIGHT - 12}" font-size="13" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{(frame.py0 + frame.py1) / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {(frame.py0 + frame.py1) / 2:.1f})">{ylabel}</text>'
    )
    if title:
        parts.append(
            f'<text x="{(frame.px0 + frame.px1) / 2:.1f}" y="24" font-size="14" '
            f'text-anchor="middle">{title}</text>'
        )
    return parts


def _colorbar(label: str = "fractal dimension") -> list:
    x = WIDTH - MARGIN_R + 40
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    steps = 64
    parts = []
    for i in range(steps):
        t0 = i / steps
        ya = y0 + (y1 - y0) * t0
        hh = (y0 - y1) / steps
        parts.append(
            f'<rect x="{x}" y="{ya + (y1 - y0) / steps:.2f}" width="{BAR_W}" '
            f'height="{hh + 0.5:.2f}" fill="{color_of((i + 0.5) / steps)}" stroke="none"/>'
        )
    parts.append(
        f'<rect x="{x}" y="{y1:.1f}" width="{BAR_W}" height="{y0 - y1:.1f}" '
        'fill="none" stroke="#000000" stroke-width="1"/>'
    )
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        py = y0 + (y1 - y0) * t
        parts.append(
            f'<text x="{x + BAR_W + 4}" y="{py + 4:.1f}" font-size="11">{t:g}</text>'
        )
    parts.append(
        f'<text x="{x + BAR_W / 2:.1f}" y="{y1 - 8}" font-size="11" '
        f'text-anchor="middle">{label}</text>'
    )
    return parts


def render_plot(
    frame: Frame,
    rects=(),
    scatter=None,
    curves=(),
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
) -> str:
    """Assemble a standalone SVG from colored cells/points plus dashed curves.

    ``rects``: iterable of (x0, x1, y0, y1, value) data-space cells.
    ``scatter``: optional (x, y, value) arrays.
    ``curves``: iterable of complex polylines drawn dashed on top.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    for x0, x1, y0, y1, val in rects:
        px, qx = frame.x(x0), frame.x(x1)
        py, qy = frame.y(y1), frame.y(y0)
        parts.append(
            f'<rect x="{px:.2f}" y="{py:.2f}" width="{qx - px:.2f}" height="{qy - py:.2f}" '
            f'fill="{color_of(val)}" stroke="none"/>'
        )
    if scatter is not None:
        xs, ys, vals = scatter
        for x, y, val in zip(xs, ys, vals):
            parts.append(
                f'<circle cx="{frame.x(x):.2f}" cy="{frame.y(y):.2f}" r="2.2" '
                f'fill="{color_of(val)}" stroke="none"/>'
            )
    for comp in curves:
        zs = np.asarray(comp, dtype=complex)
        coords = " ".join(f"{frame.x(z.real):.2f},{frame.y(z.imag):.2f}" for z in zs)
        parts.append(f'<polyline points="{coords}" {CURVE_STYLE}/>')
    parts.extend(_axes(frame, xlabel, ylabel, title))
    parts.extend(_colorbar())
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def sweep_heatmap(records, curves=(), bins: int = 256, xlabel: str = "", title: str = "") -> str:
    """Ratio-sweep diagram: swept parameter vs Re E, cells colored by mean gamma."""
    values = sorted({r.param_value for r in records})
    if records:
        e_lo = min(r.re_E for r in records)
        e_hi = max(r.re_E for r in records)
        pad = 0.02 * (e_hi - e_lo or 1.0)
        e_lo, e_hi = e_lo - pad, e_hi + pad
        x_lo, x_hi = min(values), max(values)
        if len(values) > 1:
            half = min(b - a for a, b in zip(values, values[1:])) / 2.0
        else:
            half = 0.5
        x_lo, x_hi = x_lo - half, x_hi + half
    else:
        e_lo, e_hi, x_lo, x_hi, half = -1.0, 1.0, 0.0, 1.0, 0.5
    frame = Frame(x_lo, x_hi, e_lo, e_hi)
    rects = []
    edges = np.linspace(e_lo, e_hi, bins + 1)
    by_value: dict = {}
    for r in records:
        by_value.setdefault(r.param_value, []).append(r)
    for v in values:
        rs = by_value[v]
        sums = np.zeros(bins)
        counts = np.zeros(bins, dtype=int)
        for r in rs:
            b = min(bins - 1, max(0, int((r.re_E - e_lo) / (e_hi - e_lo) * bins)))
            sums[b] += r.gamma_fractal
            counts[b] += 1
        for b in range(bins):
            if counts[b]:
                rects.append((v - half, v + half, edges[b], edges[b + 1], sums[b] / counts[b]))
    return render_plot(frame, rects=rects, curves=curves, xlabel=xlabel, ylabel="Re E", title=title)


def slice_scatter(points, curves=(), title: str = "") -> str:
    """Complex-plane diagram: one colored dot per eigenvalue, dashed boundaries on top."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    coords = [points[:, 0], points[:, 1]]
    for comp in curves:
        zs = np.asarray(comp, dtype=complex)
        coords[0] = np.concatenate([coords[0], zs.real])
        coords[1] = np.concatenate([coords[1], zs.imag])
    if coords[0].size:
        x_lo, x_hi = float(coords[0].min()), float(coords[0].max())
        y_lo, y_hi = float(coords[1].min()), float(coords[1].max())
        pad_x = 0.05 * (x_hi - x_lo or 1.0)
        pad_y = 0.05 * (y_hi - y_lo or 1.0)
        frame = Frame(x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y)
    else:
        frame = Frame(-1.0, 1.0, -1.0, 1.0)
    scatter = (points[:, 0], points[:, 1], points[:, 2]) if points.size else None
    return render_plot(
        frame, scatter=scatter, curves=curves, xlabel="Re E", ylabel="Im E", title=title
    )
