"""Per-eigenstate localization diagnostics.

The workhorse quantity is the finite-size fractal dimension
``-log(sum |phi|^4) / log(L)`` of a unit-norm state: close to one for states
spread over the whole chain, close to zero for exponentially localized ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import Spectrum

NORM_TOL = 1e-10

LOCALIZED = "localized"
EXTENDED = "extended"
CRITICAL = "critical"

DEFAULT_THRESHOLDS = (0.3, 0.7)


@dataclass
class StateDiagnostics:
    eigenvalue: complex
    gamma_fractal: float
    ipr: float
    profile: np.ndarray | None = None


def inverse_participation_ratio(amplitudes: np.ndarray) -> float:
    """sum |phi|^4 of a unit-norm amplitude vector."""
    return float(np.sum(np.abs(amplitudes) ** 4))


def fractal_dimension(amplitudes: np.ndarray, L: int | None = None) -> float:
    """Finite-size fractal dimension of a unit-norm state.

    ``L`` defaults to the vector length and must match it; no infinite-size
    extrapolation is performed.  Raises ``ValueError`` if the input is not
    normalized to within 1e-10 (normalization is the caller's contract).
    """
    amplitudes = np.asarray(amplitudes)
    if L is None:
        L = amplitudes.size
    elif L != amplitudes.size:
        raise ValueError(f"L={L} does not match vector length {amplitudes.size}")
    nrm = np.linalg.norm(amplitudes)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"amplitudes must have unit 2-norm, got {nrm!r}")
    return -np.log(inverse_participation_ratio(amplitudes)) / np.log(L)


def fractal_dimensions(spectrum: Spectrum) -> np.ndarray:
    """Fractal dimension of every eigenstate in a spectrum."""
    L = spectrum.eigenvectors.shape[0]
    ipr = np.sum(np.abs(spectrum.eigenvectors) ** 4, axis=0)
    return -np.log(ipr) / np.log(L)


def classify_states(
    spectrum: Spectrum, thresholds: tuple[float, float] = DEFAULT_THRESHOLDS
) -> list[str]:
    """Label each state localized / extended / critical by its fractal dimension."""
    loc, ext = thresholds
    if not (0.0 < loc < ext < 1.0):
        raise ValueError(f"thresholds must satisfy 0 < loc < ext < 1, got {thresholds}")
    gammas = fractal_dimensions(spectrum)
    labels = []
    for g in gammas:
        if g < loc:
            labels.append(LOCALIZED)
        elif g > ext:
            labels.append(EXTENDED)
        else:
            labels.append(CRITICAL)
    return labels


def spatial_profile(spectrum: Spectrum, index: int) -> np.ndarray:
    """Per-site probability weights |phi|^2 of eigenstate ``index``.

    Sites are in flat order (A then B within each cell); the weights sum to
    one for a unit-norm state.
    """
    n = spectrum.eigenvectors.shape[1]
    if not 0 <= index < n:
        raise IndexError(f"state index {index} out of range [0, {n})")
    return np.abs(spectrum.eigenvectors[:, index]) ** 2


def state_diagnostics(spectrum: Spectrum, index: int, with_profile: bool = False) -> StateDiagnostics:
    """Diagnostics bundle for one eigenstate."""
    profile = spatial_profile(spectrum, index)
    ipr = float(np.sum(profile**2))
    L = profile.size
    return StateDiagnostics(
        eigenvalue=complex(spectrum.eigenvalues[index]),
        gamma_fractal=float(-np.log(ipr) / np.log(L)),
        ipr=ipr,
        profile=profile if with_profile else None,
    )
