"""Full eigendecomposition of dense complex symmetric matrices, with residual checks.

The chain Hamiltonian is complex symmetric (H == H.T), not Hermitian, so the
general nonsymmetric LAPACK path (zgeev, via ``numpy.linalg.eig``) is used and
every eigenpair is certified against the residual contract
``||H psi - E psi|| <= tol * ||H||_F`` after the fact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams

DEFAULT_RESIDUAL_TOL = 1e-8


class EigensolverError(RuntimeError):
    """Raised when the decomposition does not meet its contract."""


@dataclass
class Spectrum:
    """All eigenpairs of one Hamiltonian.

    ``eigenvalues`` are sorted lexicographically by (Re, Im) for reproducible
    output; column k of ``eigenvectors`` is the unit-norm eigenvector paired
    with ``eigenvalues[k]``; ``residuals[k]`` is the 2-norm of
    ``H @ psi_k - E_k psi_k``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    params: ModelParams | None = None
    tol: float = DEFAULT_RESIDUAL_TOL
    matrix_frobenius: float = 0.0

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass
class SpectrumReport:
    """Independent re-validation of a Spectrum against its matrix."""

    max_residual: float
    max_norm_deviation: float
    pairing_defects: int
    eigenvector_condition: float
    near_defective: bool
    ok: bool


def _lex_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def residual_norms(H: np.ndarray, eigenvalues: np.ndarray, eigenvectors: np.ndarray) -> np.ndarray:
    """Column-wise 2-norms of H @ V - V * E."""
    R = H @ eigenvectors - eigenvectors * eigenvalues[np.newaxis, :]
    return np.linalg.norm(R, axis=0)


def eigendecompose(
    H: np.ndarray,
    params: ModelParams | None = None,
    tol: float = DEFAULT_RESIDUAL_TOL,
) -> Spectrum:
    """All L eigenpairs of a square complex matrix with certified residuals.

    Raises ``ValueError`` on non-finite input and :class:`EigensolverError`
    when LAPACK fails to converge or a residual exceeds ``tol * ||H||_F``.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"H must be square, got shape {H.shape}")
    if not np.all(np.isfinite(H.real)) or not np.all(np.isfinite(H.imag)):
        raise ValueError("H contains NaN or Inf entries")
    try:
        values, vectors = np.linalg.eig(H)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    order = _lex_order(values)
    values = values[order]
    vectors = vectors[:, order]
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    hnorm = float(np.linalg.norm(H))
    res = residual_norms(H, values, vectors)
    worst = int(np.argmax(res))
    if res[worst] > tol * hnorm:
        raise EigensolverError(
            f"residual contract violated at eigenpair {worst}: "
            f"{res[worst]:.3e} > {tol:.1e} * ||H||_F = {tol * hnorm:.3e}"
        )
    return Spectrum(
        eigenvalues=values,
        eigenvectors=vectors,
        residuals=res,
        params=params,
        tol=tol,
        matrix_frobenius=hnorm,
    )


def validate_spectrum(H: np.ndarray, spectrum: Spectrum, norm_tol: float = 1e-12) -> SpectrumReport:
    """Recompute residuals and norms independently of the solver path.

    Report-only: flags any eigenpair whose residual exceeds
    ``spectrum.tol * ||H||_F`` or whose vector norm deviates from one, and
    estimates near-defectiveness from the eigenvector matrix condition number.
    """
    H = np.asarray(H, dtype=complex)
    if H.shape != (len(spectrum), len(spectrum)) or spectrum.eigenvectors.shape != H.shape:
        raise ValueError("shape mismatch between matrix and spectrum")
    hnorm = float(np.linalg.norm(H))
    res = residual_norms(H, spectrum.eigenvalues, spectrum.eigenvectors)
    norms = np.linalg.norm(spectrum.eigenvectors, axis=0)
    norm_dev = np.abs(norms - 1.0)
    defects = int(np.sum(res > spectrum.tol * hnorm) + np.sum(norm_dev > norm_tol))
    cond = float(np.linalg.cond(spectrum.eigenvectors))
    return SpectrumReport(
        max_residual=float(res.max()),
        max_norm_deviation=float(norm_dev.max()),
        pairing_defects=defects,
        eigenvector_condition=cond,
        near_defective=cond > 1e12,
        ok=defects == 0,
    )


def match_multisets(a: np.ndarray, b: np.ndarray) -> float:
    """Largest pair distance in the optimal bipartite matching of two eigenvalue multisets."""
    from scipy.optimize import linear_sum_assignment

    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
