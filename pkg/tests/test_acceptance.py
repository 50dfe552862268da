"""Acceptance suite: the headline physics checks at full scale.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them all).
The chain here is the production-size one: 610 cells (1220 sites), periodic,
with the incommensuration parameter at its golden-ratio default and phase
offset zero.  Criteria that compare the finite transfer-product exponent to
the closed forms sample energies where the closed-form branch dominates the
exponent, which is the closed forms' domain of validity (they are the
large-``|h|`` branch clamped at zero, not the whole two-branch exponent).
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from mobility_rings.eigen import eigendecompose, match_multisets
from mobility_rings.localization import fractal_dimensions, spatial_profile
from mobility_rings.lyapunov import (
    TransferSettings,
    analytic_le,
    finite_le,
    finite_le_many,
)
from mobility_rings.model import ModelParams, build_hamiltonian
from mobility_rings.rings import (
    count_components,
    count_populated_components,
    hausdorff_distance,
    numeric_boundary,
    ring_k1,
    ring_k2,
)

L_CELLS = 610  # 1220 sites


def chain(**kw):
    base = dict(v=1.0, w=1.0, lam=0.5, theta=0.0, h=0.0, delta=0.0, kappa=1,
                num_cells=L_CELLS, boundary="periodic")
    base.update(kw)
    return ModelParams(**base)


def report(criterion: str, passed: bool, detail: str) -> None:
    print(f"[acceptance {criterion}] {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, f"criterion {criterion}: {detail}"


@pytest.fixture(scope="module")
def spectra_h0():
    out = {}
    for ratio in (0.3, 0.44, 0.6):
        p = chain(w=ratio, h=0.0)
        H = build_hamiltonian(p)
        out[ratio] = (H, eigendecompose(H, params=p))
    return out


@pytest.fixture(scope="module")
def spectrum_h1_k1():
    p = chain(h=1.0, kappa=1)
    H = build_hamiltonian(p)
    return H, eigendecompose(H, params=p)


@pytest.fixture(scope="module")
def spectrum_h1_k2():
    p = chain(h=1.0, kappa=2)
    H = build_hamiltonian(p)
    return H, eigendecompose(H, params=p)


def branch_dominated_sample(kappa: int, n: int = 100, seed: int = 12345) -> np.ndarray:
    """Complex energies where the closed-form branch dominates the exponent.

    Candidates are drawn uniformly over the spectral window; a candidate is
    kept when the closed form at h = 1 exceeds both the 0.2 floor and the
    measured h = 0 branch of the exponent by a margin, which by the
    convexity of the exponent in h makes the closed form the active branch.
    """
    p1 = chain(h=1.0, kappa=kappa)
    p0 = chain(h=0.0, kappa=kappa)
    rng = np.random.default_rng(seed)
    probe = TransferSettings(num_quasicells=2000, theta_samples=8)
    sample = []
    while len(sample) < n:
        cands = rng.uniform(-3.2, 3.2, 400) + 1j * rng.uniform(-1.2, 1.2, 400)
        ana = analytic_le(p1, cands)
        viable = cands[ana >= 0.2]
        plateau = finite_le_many(p0, viable, probe)
        keep = viable[analytic_le(p1, viable) >= plateau + 0.05]
        sample.extend(keep.tolist())
    return np.array(sample[:n])


def test_criterion_1_hermitian_mobility_edges(spectra_h0):
    """Fractal-dimension labels split at |E| = v w / lam for three ratios."""
    details = []
    ok = True
    for ratio, (_, spectrum) in spectra_h0.items():
        me = 1.0 * ratio / 0.5
        E = spectrum.eigenvalues
        gamma = fractal_dimensions(spectrum)
        absE = np.abs(E)
        outside = absE > me + 0.05
        inside = absE < me - 0.05
        frac_out = float((gamma[outside] < 0.3).mean()) if outside.any() else None
        frac_in = float((gamma[inside] > 0.7).mean()) if inside.any() else None
        for frac, side in ((frac_out, "loc"), (frac_in, "ext")):
            if frac is not None and frac < 0.95:
                ok = False
        details.append(
            f"w/v={ratio}: loc {frac_out if frac_out is not None else 'n/a'}"
            f" ext {frac_in if frac_in is not None else 'vacuous'}"
        )
    report("1", ok, "; ".join(details))


def test_criterion_2_mobility_ring_radius(spectrum_h1_k1):
    """Localized states outside, extended states inside the radius 2/e ring.

    States inside the +-0.03 shell around the analytic radius are excluded
    from both label populations (the configured acceptance margin around
    analytic boundaries); the literal unexcluded fractions are reported too.
    """
    _, spectrum = spectrum_h1_k1
    r = 2.0 / math.e
    gamma = fractal_dimensions(spectrum)
    absE = np.abs(spectrum.eigenvalues)
    loc = gamma < 0.3
    ext = gamma > 0.6
    in_shell = np.abs(absE - r) <= 0.03
    frac_loc = float((absE[loc & ~in_shell] > r + 0.03).mean())
    frac_ext = float((absE[ext & ~in_shell] < r - 0.03).mean())
    literal_loc = float((absE[loc] > r + 0.03).mean())
    literal_ext = float((absE[ext] < r - 0.03).mean())
    report(
        "2",
        frac_loc >= 0.95 and frac_ext >= 0.95,
        f"margin-excluded loc {frac_loc:.4f} ext {frac_ext:.4f} "
        f"(literal, shell included: loc {literal_loc:.4f} ext {literal_ext:.4f})",
    )


def test_criterion_3_le_oracle_k1():
    """|finite - closed form| <= 0.01 over 100 branch-dominated energies."""
    p = chain(h=1.0, kappa=1)
    sample = branch_dominated_sample(1)
    settings = TransferSettings(num_quasicells=10_000, theta_samples=32)
    got = finite_le_many(p, sample, settings)
    diff = np.abs(got - analytic_le(p, sample))
    spot = [abs(finite_le(p, e, settings).gamma - g) for e, g in zip(sample[:3], got[:3])]
    off_axis = int((np.abs(sample.imag) > 0.05).sum())
    report(
        "3",
        diff.max() <= 0.01 and max(spot) <= 1e-9,
        f"max|diff|={diff.max():.2e} over {len(sample)} energies "
        f"({off_axis} off-axis); batch/scalar spot check {max(spot):.1e}",
    )


def test_criterion_4_le_oracle_k2():
    """Same bound against the factored cubic closed form."""
    p = chain(h=1.0, kappa=2)
    sample = branch_dominated_sample(2)
    settings = TransferSettings(num_quasicells=10_000, theta_samples=32)
    got = finite_le_many(p, sample, settings)
    diff = np.abs(got - analytic_le(p, sample))
    report("4", diff.max() <= 0.01, f"max|diff|={diff.max():.2e} over {len(sample)} energies")


def test_criterion_5_ring_geometry_k2():
    """Three loops with real-axis crossings at the pinned radii."""
    p = chain(h=1.0, kappa=2)
    curve = ring_k2(p, angular_resolution=4096)
    n = count_components(curve)
    a, c = 2.0, math.exp(-1.0) / 0.5
    inner = brentq(lambda x: x * (a - x * x) - c, 0.01, math.sqrt(a / 3.0))
    mid = brentq(lambda x: x * (a - x * x) - c, math.sqrt(a / 3.0), math.sqrt(a))
    outer = brentq(lambda x: x * (x * x - a) - c, math.sqrt(a), 3.0)
    crossings = []
    for comp in curve.components:
        pts = comp[(np.abs(comp.imag) < 1e-6) & (comp.real > 0)]
        if pts.size:
            crossings.append(float(pts.real.max()))
            if abs(pts.real.max() - pts.real.min()) > 1e-9:
                crossings.append(float(pts.real.min()))
    crossings = sorted(crossings)
    vieta_sum = inner**2 + mid**2 + outer**2
    vieta_prod = (inner * mid * outer) ** 2
    geom_ok = (
        n == 3
        and len(crossings) == 3
        and abs(crossings[0] - 0.4003) <= 1e-3
        and abs(crossings[1] - 1.171) <= 1e-3
        and abs(crossings[2] - 1.572) <= 1e-3
        and abs(crossings[0] - inner) <= 1e-6
        and abs(vieta_sum - 2.0 * a) <= 1e-9
        and abs(vieta_prod - c * c) <= 1e-9
    )
    report(
        "5",
        geom_ok,
        f"components={n}, crossings={[round(x, 5) for x in crossings]}, "
        f"root-sum err={abs(vieta_sum - 2 * a):.1e}, root-prod err={abs(vieta_prod - c * c):.1e}",
    )


def test_criterion_6_cross_method_boundaries():
    """Numeric boundary vs closed forms: Hausdorff distance <= 0.02."""
    spacing, eps = 0.01, 1e-3
    p1 = chain(h=1.0, kappa=1)
    xs = np.arange(-0.80, 0.80 + 1e-12, spacing)
    grid1 = xs[:, None] + 1j * xs[None, :]
    num1 = numeric_boundary(p1, grid1, epsilon=eps)
    hd1 = hausdorff_distance(num1, ring_k1(p1, angular_resolution=4096))

    p2 = chain(h=1.0, kappa=2)
    xs2 = np.arange(-1.66, 1.66 + 1e-12, spacing)
    ys2 = np.arange(-0.60, 0.60 + 1e-12, spacing)
    grid2 = xs2[:, None] + 1j * ys2[None, :]
    num2 = numeric_boundary(p2, grid2, epsilon=eps)
    hd2 = hausdorff_distance(num2, ring_k2(p2, angular_resolution=4096))
    report(
        "6",
        hd1 <= 0.02 and hd2 <= 0.02 and count_components(num2) == 3,
        f"Hausdorff k1={hd1:.4f}, k2={hd2:.4f} (components {count_components(num1)}/"
        f"{count_components(num2)})",
    )


def test_criterion_7_exact_symmetries():
    """Gauge pairing, s=3 rescaling, and reality of the Hermitian spectrum."""
    p = chain(h=1.0, num_cells=55)
    sa = eigendecompose(build_hamiltonian(p))
    sb = eigendecompose(build_hamiltonian(p.with_theta(p.theta + math.pi)))
    gauge_err = match_multisets(sa.eigenvalues, -sb.eigenvalues)

    s3 = eigendecompose(build_hamiltonian(p.scaled(3.0)))
    scale_err = match_multisets(3.0 * sa.eigenvalues, s3.eigenvalues)
    ga = np.sort(fractal_dimensions(sa))
    g3 = np.sort(fractal_dimensions(s3))
    gamma_err = np.abs(ga - g3).max()

    ph = chain(h=0.0, delta=0.25, num_cells=55)
    Hh = build_hamiltonian(ph)
    sh = eigendecompose(Hh)
    imag_max = np.abs(sh.eigenvalues.imag).max()
    imag_bound = 1e-10 * np.linalg.norm(Hh)
    report(
        "7",
        gauge_err <= 1e-8 and scale_err <= 1e-8 and gamma_err <= 1e-10 and imag_max <= imag_bound,
        f"gauge {gauge_err:.1e} (<=1e-8), scaling {scale_err:.1e} (<=1e-8), "
        f"dGamma {gamma_err:.1e} (<=1e-10), max|Im E| {imag_max:.1e} (<={imag_bound:.1e})",
    )


def test_criterion_8_eigensolver_contract(spectra_h0, spectrum_h1_k1, spectrum_h1_k2):
    """Residual and trace bounds on every full-scale configuration used above."""
    worst_res, worst_trace = 0.0, 0.0
    items = list(spectra_h0.values()) + [spectrum_h1_k1, spectrum_h1_k2]
    for H, spectrum in items:
        hnorm = np.linalg.norm(H)
        worst_res = max(worst_res, spectrum.residuals.max() / hnorm)
        worst_trace = max(
            worst_trace, abs(spectrum.eigenvalues.sum() - np.trace(H)) / hnorm
        )
    report(
        "8",
        worst_res <= 1e-8 and worst_trace <= 1e-8,
        f"max residual/||H|| = {worst_res:.1e}, max trace err/||H|| = {worst_trace:.1e} "
        f"over {len(items)} configurations",
    )


def test_ring_label_agreement_invariant(spectrum_h1_k1):
    """Module invariant: fractal-dimension labels match in/out of the ring.

    States farther than 0.05 from the analytic radius and carrying a
    definite label (below 0.3 or above 0.7) must agree with the
    inside/outside classification at least 95% of the time.
    """
    _, spectrum = spectrum_h1_k1
    r = 2.0 / math.e
    gamma = fractal_dimensions(spectrum)
    absE = np.abs(spectrum.eigenvalues)
    sel = np.abs(absE - r) > 0.05
    loc = gamma[sel] < 0.3
    ext = gamma[sel] > 0.7
    outside = absE[sel] > r
    definite = loc | ext
    agree = (loc & outside) | (ext & ~outside)
    frac = float(agree[definite].mean())
    print(f"[invariant ring-labels] agreement {frac:.4f} over {int(definite.sum())} states")
    assert frac >= 0.95


def test_criterion_9_qualitative_profiles_and_reported_counts(spectra_h0, spectrum_h1_k2):
    """Profile shapes stand in for the figure markers; ring counts are reported.

    The marker energies depend on the unreported phase offset, so the checks
    are qualitative: a deep localized state is single-peaked and an extended
    state is spread out.  The two ways of counting kappa=2 loops at
    w/v = 1.9 (pure curve components vs components enclosing eigenvalues)
    are printed without being asserted against each other.
    """
    _, spectrum = spectra_h0[0.44]
    E = spectrum.eigenvalues
    k_loc = int(np.argmin(np.abs(E - 1.73)))
    prof = spatial_profile(spectrum, k_loc)
    peak = int(np.argmax(prof))
    window = np.zeros(prof.size, dtype=bool)
    window[np.arange(peak - 20, peak + 20) % prof.size] = True
    loc_ok = prof.max() > 0.1 and prof[~window].sum() < 1e-3

    k_ext = int(np.argmin(np.abs(E - 0.45)))
    prof_ext = spatial_profile(spectrum, k_ext)
    ext_ok = prof_ext.max() < 10.0 / prof_ext.size

    p19 = chain(h=1.0, kappa=2, w=1.9)
    curve19 = ring_k2(p19)
    s19 = eigendecompose(build_hamiltonian(p19), params=p19)
    pure = count_components(curve19)
    populated = count_populated_components(curve19, s19.eigenvalues)

    _, s_k2 = spectrum_h1_k2
    curve_k2 = ring_k2(chain(h=1.0, kappa=2))
    pure_k2 = count_components(curve_k2)
    populated_k2 = count_populated_components(curve_k2, s_k2.eigenvalues)

    report(
        "9",
        loc_ok and ext_ok,
        f"profiles: localized peak {prof.max():.3f} leak {prof[~window].sum():.1e}, "
        f"extended max weight {prof_ext.max():.4f} < {10.0 / prof_ext.size:.4f}; "
        f"reported loop counts w/v=1: pure {pure_k2} / populated {populated_k2}, "
        f"w/v=1.9: pure {pure} / populated {populated} (not asserted)",
    )
