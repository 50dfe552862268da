"""Chain parameters and dense Hamiltonian assembly.

The model is a dimerized two-site-per-cell chain (intracell hopping ``v``,
intercell hopping ``w``) with a cosine on-site potential of incommensurate
spatial frequency applied to the B site of every ``kappa``-th cell.  A complex
phase shift ``theta + i*h`` inside the cosine and/or a complex constant
``delta`` on all remaining sites make the matrix complex symmetric
(H == H.T) rather than Hermitian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

#: Inverse golden ratio, the default incommensuration parameter.
GOLDEN_ALPHA = (math.sqrt(5.0) - 1.0) / 2.0

BOUNDARIES = ("open", "periodic")

SUBLATTICE_A = "A"
SUBLATTICE_B = "B"


def fibonacci(n: int) -> int:
    """n-th Fibonacci number, F(1) = F(2) = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = 1, 1
    for _ in range(n - 2):
        a, b = b, a + b
    return b


def rational_alpha(n: int = 15) -> float:
    """Rational approximant F(n-1)/F(n) to the golden alpha.

    With ``num_cells = fibonacci(n)`` this makes the potential exactly
    commensurate with a periodic ring.
    """
    return fibonacci(n - 1) / fibonacci(n)


@dataclass(frozen=True)
class ModelParams:
    """All physical and lattice parameters of the chain, validated.

    ``num_cells`` is the number of two-site cells; the site count is
    ``L = 2 * num_cells``.
    """

    v: float = 1.0
    w: float = 1.0
    lam: float = 0.5
    alpha: float = GOLDEN_ALPHA
    theta: float = 0.0
    h: float = 0.0
    delta: complex = 0.0 + 0.0j
    kappa: int = 1
    num_cells: int = 610
    boundary: str = "periodic"

    def __post_init__(self):
        if not (isinstance(self.kappa, int) and self.kappa >= 1):
            raise ValueError(f"kappa must be a positive integer, got {self.kappa!r}")
        if not (isinstance(self.num_cells, int) and self.num_cells >= 2):
            raise ValueError(f"num_cells must be an integer >= 2, got {self.num_cells!r}")
        if self.num_cells < self.kappa:
            raise ValueError(
                f"num_cells={self.num_cells} < kappa={self.kappa}: "
                "at least one modulated cell is required"
            )
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        for name in ("v", "w", "lam", "alpha", "theta", "h"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        d = complex(self.delta)
        if not (math.isfinite(d.real) and math.isfinite(d.imag)):
            raise ValueError("delta must be finite")
        object.__setattr__(self, "delta", d)

    @property
    def num_sites(self) -> int:
        return 2 * self.num_cells

    def scaled(self, s: float) -> "ModelParams":
        """Parameters with (v, w, lam, delta) multiplied by a real factor."""
        return replace(self, v=s * self.v, w=s * self.w, lam=s * self.lam, delta=s * self.delta)

    def with_theta(self, theta: float) -> "ModelParams":
        return replace(self, theta=theta)


def site_index(cell: int, sublattice: str) -> int:
    """Flat index of site (cell, A/B); cells are 1-based, flat indices 0-based."""
    if sublattice == SUBLATTICE_A:
        return 2 * (cell - 1)
    if sublattice == SUBLATTICE_B:
        return 2 * (cell - 1) + 1
    raise ValueError(f"sublattice must be 'A' or 'B', got {sublattice!r}")


def site_of_index(index: int) -> tuple[int, str]:
    """Inverse of :func:`site_index`."""
    cell, rem = divmod(index, 2)
    return cell + 1, SUBLATTICE_A if rem == 0 else SUBLATTICE_B


def complex_cos(x: float | np.ndarray, h: float):
    """cos(x + i*h) = cos(x)*cosh(h) - i*sin(x)*sinh(h)."""
    return np.cos(x) * np.cosh(h) - 1j * np.sin(x) * np.sinh(h)


def potential_at(params: ModelParams, cell: int, sublattice: str) -> complex:
    """On-site potential of site (cell, sublattice).

    A sites always carry the constant ``delta``.  B sites carry the
    modulated value ``2*lam*cos(2*pi*alpha*cell + theta + i*h)`` when the
    cell index is a multiple of ``kappa`` and ``delta`` otherwise.
    """
    if not 1 <= cell <= params.num_cells:
        raise IndexError(f"cell {cell} out of range [1, {params.num_cells}]")
    if sublattice == SUBLATTICE_A:
        return params.delta
    if sublattice != SUBLATTICE_B:
        raise ValueError(f"sublattice must be 'A' or 'B', got {sublattice!r}")
    if cell % params.kappa != 0:
        return params.delta
    x = 2.0 * math.pi * params.alpha * cell + params.theta
    return complex(2.0 * params.lam * complex_cos(x, params.h))


def modulated_cell_count(params: ModelParams) -> int:
    """Number of cells whose B site carries the modulated potential."""
    return params.num_cells // params.kappa


def diagonal_potential(params: ModelParams) -> np.ndarray:
    """The L on-site potentials in flat-index order (A then B per cell)."""
    n = params.num_cells
    cells = np.arange(1, n + 1)
    x = 2.0 * np.pi * params.alpha * cells + params.theta
    vb = np.where(
        cells % params.kappa == 0,
        2.0 * params.lam * complex_cos(x, params.h),
        params.delta,
    )
    diag = np.empty(2 * n, dtype=complex)
    diag[0::2] = params.delta
    diag[1::2] = vb
    return diag


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense complex symmetric L x L Hamiltonian of the chain.

    Hoppings: v within each cell (A_j <-> B_j), w between cells
    (B_j <-> A_{j+1}), plus the periodic wrap B_N <-> A_1 when
    ``boundary == "periodic"``.  Diagonal from :func:`potential_at`.
    """
    n = params.num_cells
    L = 2 * n
    H = np.zeros((L, L), dtype=complex)
    np.fill_diagonal(H, diagonal_potential(params))
    idx = np.arange(n)
    a, b = 2 * idx, 2 * idx + 1
    H[a, b] = params.v
    H[b, a] = params.v
    H[b[:-1], a[1:]] = params.w
    H[a[1:], b[:-1]] = params.w
    if params.boundary == "periodic":
        H[L - 1, 0] = params.w
        H[0, L - 1] = params.w
    return H
