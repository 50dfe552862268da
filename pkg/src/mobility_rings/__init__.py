"""Localization physics of a quasiperiodic dimerized chain with complex on-site potential.

Spectra of the dense complex symmetric Hamiltonian, per-state fractal
dimensions, transfer-matrix Lyapunov exponents, and mobility boundaries
(closed forms and numeric contours) in the complex-energy plane.
"""

__version__ = "0.1.0"

from .eigen import (
    EigensolverError,
    Spectrum,
    SpectrumReport,
    eigendecompose,
    match_multisets,
    validate_spectrum,
)
from .localization import (
    StateDiagnostics,
    classify_states,
    fractal_dimension,
    fractal_dimensions,
    inverse_participation_ratio,
    spatial_profile,
    state_diagnostics,
)
from .lyapunov import (
    LEResult,
    RescaleOverflowError,
    TransferSettings,
    analytic_le,
    asymptote_intercept,
    finite_le,
    finite_le_many,
    le_grid,
    quasicell_transfer,
)
from .model import (
    GOLDEN_ALPHA,
    ModelParams,
    build_hamiltonian,
    diagonal_potential,
    fibonacci,
    modulated_cell_count,
    potential_at,
    rational_alpha,
    site_index,
    site_of_index,
)
from .rings import (
    RingCurve,
    TracerError,
    count_components,
    count_populated_components,
    enclosed_counts,
    hausdorff_distance,
    numeric_boundary,
    read_curve_csv,
    ring_k1,
    ring_k2,
    ring_k2_residual,
    ring_k2_residual_alt,
    write_curve_csv,
)
from .sweep import (
    SweepGrid,
    SweepRecord,
    SweepResult,
    apply_parameter,
    read_records_csv,
    run_sweep,
    slice_complex_plane,
    write_records_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
