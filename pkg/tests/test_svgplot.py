import numpy as np

from mobility_rings.svgplot import Frame, _nice_ticks, color_of, slice_scatter, sweep_heatmap
from mobility_rings.sweep import SweepRecord


def test_color_endpoints():
    assert color_of(0.0) == "#0000ff"
    assert color_of(1.0) == "#ffff00"
    assert color_of(-5.0) == "#0000ff"
    assert color_of(2.0) == "#ffff00"


def test_ticks_cover_range():
    ticks = _nice_ticks(-2.0, 2.0)
    assert ticks[0] >= -2.0 and ticks[-1] <= 2.0
    assert 0.0 in ticks
    assert len(ticks) >= 3


def test_frame_transform_monotone():
    f = Frame(0.0, 1.0, -1.0, 1.0)
    assert f.x(1.0) > f.x(0.0)
    assert f.y(1.0) < f.y(0.0)  # svg y grows downward


def records_for(values):
    out = []
    for v in values:
        for k in range(4):
            out.append(SweepRecord(v, k, re_E=k - 1.5, im_E=0.1 * k, gamma_fractal=k / 3.0))
    return out


def test_heatmap_deterministic_and_wellformed():
    recs = records_for([0.5, 1.0])
    a = sweep_heatmap(recs, bins=16, xlabel="ratio")
    b = sweep_heatmap(recs, bins=16, xlabel="ratio")
    assert a == b
    assert a.startswith("<svg")
    assert a.rstrip().endswith("</svg>")
    assert "rect" in a


def test_scatter_with_curves():
    pts = np.array([[0.0, 0.0, 0.2], [1.0, 0.5, 0.9]])
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 33))
    svg = slice_scatter(pts, curves=[circle], title="demo")
    assert svg.count("<circle") == 2
    assert "polyline" in svg
    assert "demo" in svg


def test_empty_scatter_still_valid():
    svg = slice_scatter(np.empty((0, 3)))
    assert svg.startswith("<svg")
    assert "</svg>" in svg
