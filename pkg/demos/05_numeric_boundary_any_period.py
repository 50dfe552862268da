"""Numeric mobility boundaries for modulation periods without closed forms.

The boundary is the zero set of the slope-one branch of the exponent, and
that branch can always be measured from transfer products at large
non-Hermiticity.  Contouring the measured field reproduces the closed-form
circle (kappa = 1) and cubic loops (kappa = 2), and keeps working at
kappa = 3 where five loops appear (the underlying polynomial has five
zeros: 0, +-1, +-sqrt(3) for v = w = 1).

Writes demos/output/boundary_k3.csv and boundary_k3.svg.
"""

import os

import numpy as np

from mobility_rings import (
    ModelParams,
    count_components,
    hausdorff_distance,
    numeric_boundary,
    ring_k1,
    write_curve_csv,
)
from mobility_rings.svgplot import slice_scatter

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

# sanity: the numeric contour lands on the closed-form circle
p1 = ModelParams(v=1.0, w=1.0, lam=0.5, h=1.0, kappa=1, num_cells=8)
xs = np.arange(-0.85, 0.85 + 1e-12, 0.02)
grid = xs[:, None] + 1j * xs[None, :]
numeric = numeric_boundary(p1, grid, epsilon=1e-3)
print(f"kappa=1: numeric vs closed form Hausdorff distance "
      f"{hausdorff_distance(numeric, ring_k1(p1)):.4f}")

# kappa = 3: numeric only
p3 = ModelParams(v=1.0, w=1.0, lam=0.5, h=1.0, kappa=3, num_cells=9)
xs = np.arange(-2.0, 2.0 + 1e-12, 0.02)
ys = np.arange(-0.7, 0.7 + 1e-12, 0.02)
grid3 = xs[:, None] + 1j * ys[None, :]
curve3 = numeric_boundary(p3, grid3, epsilon=1e-3)
print(f"kappa=3: {count_components(curve3)} boundary loops")

csv_path = os.path.join(OUT, "boundary_k3.csv")
write_curve_csv(curve3, csv_path)
svg = slice_scatter(np.empty((0, 3)), curves=curve3.components,
                    title="numeric mobility boundary, kappa = 3")
with open(os.path.join(OUT, "boundary_k3.svg"), "w") as fh:
    fh.write(svg)
print(f"wrote {csv_path} and boundary_k3.svg")
