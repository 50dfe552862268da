import math

import numpy as np
import pytest

from mobility_rings import sweep as sweep_mod
from mobility_rings.eigen import EigensolverError, eigendecompose, match_multisets
from mobility_rings.localization import fractal_dimensions
from mobility_rings.model import ModelParams, build_hamiltonian
from mobility_rings.sweep import (
    SweepGrid,
    apply_parameter,
    checkpoint_name,
    read_records_csv,
    run_sweep,
    slice_complex_plane,
    sweep_metadata,
    write_records_csv,
)


def base_params(**kw):
    kw.setdefault("num_cells", 20)
    kw.setdefault("h", 1.0)
    kw.setdefault("lam", 0.5)
    return ModelParams(**kw)


def small_grid(values=(0.4, 0.8, 1.2), **kw):
    return SweepGrid(parameter="w_over_v", values=values, base=base_params(**kw))


class TestGridAndParameters:
    def test_w_over_v_holds_v_fixed(self):
        p = apply_parameter(base_params(v=2.0), "w_over_v", 0.7)
        assert p.v == 2.0
        assert p.w == pytest.approx(1.4)

    @pytest.mark.parametrize(
        "name,field,value",
        [
            ("h", "h", 0.3),
            ("lambda", "lam", 1.7),
            ("theta", "theta", 0.9),
            ("delta_re", "delta", 0.5),
            ("delta_im", "delta", 0.5),
        ],
    )
    def test_parameter_application(self, name, field, value):
        p = apply_parameter(base_params(), name, value)
        got = getattr(p, field)
        if name == "delta_re":
            assert got == complex(value, 0.0)
        elif name == "delta_im":
            assert got == complex(0.0, value)
        else:
            assert got == value

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            SweepGrid(parameter="mystery", values=(1.0,), base=base_params())
        with pytest.raises(ValueError):
            SweepGrid(parameter="h", values=(), base=base_params())
        with pytest.raises(ValueError):
            SweepGrid(parameter="h", values=(0.5, 0.5), base=base_params())
        with pytest.raises(ValueError):
            SweepGrid(parameter="h", values=(1.0, 0.2), base=base_params())


class TestRunSweep:
    def test_single_value_matches_direct_computation(self):
        grid = small_grid(values=(0.8,))
        result = run_sweep(grid)
        assert not result.failures
        p = apply_parameter(grid.base, "w_over_v", 0.8)
        spectrum = eigendecompose(build_hamiltonian(p))
        gammas = fractal_dimensions(spectrum)
        assert len(result.records) == p.num_sites
        for k, rec in enumerate(result.records):
            assert rec.eigen_index == k
            assert rec.re_E == spectrum.eigenvalues[k].real
            assert rec.im_E == spectrum.eigenvalues[k].imag
            assert rec.gamma_fractal == gammas[k]
            assert 0.0 <= rec.gamma_fractal <= 1.0

    def test_record_count_and_reproducibility(self):
        grid = small_grid()
        a = run_sweep(grid)
        b = run_sweep(grid)
        assert len(a.records) == 3 * grid.base.num_sites
        assert a.records == b.records

    def test_parallel_matches_sequential(self):
        grid = small_grid(values=(0.5, 1.0), num_cells=12)
        seq = run_sweep(grid, workers=1)
        par = run_sweep(grid, workers=2)
        assert seq.records == par.records

    def test_failure_recorded_and_sweep_continues(self, monkeypatch):
        grid = small_grid()
        real = sweep_mod.eigendecompose

        def flaky(H, params=None):
            if params is not None and abs(params.w - 0.8) < 1e-12:
                raise EigensolverError("synthetic failure")
            return real(H, params=params)

        monkeypatch.setattr(sweep_mod, "eigendecompose", flaky)
        result = run_sweep(grid)
        assert len(result.failures) == 1
        assert result.failures[0][0] == 0.8
        assert len(result.records) == 2 * grid.base.num_sites
        values = {r.param_value for r in result.records}
        assert values == {0.4, 1.2}


class TestCheckpointing:
    def test_resume_skips_recomputation(self, tmp_path, monkeypatch):
        grid = small_grid()
        fresh = run_sweep(grid, checkpoint_dir=str(tmp_path))
        assert len(list(tmp_path.glob("sweep_*.npz"))) == 3

        def boom(*a, **kw):
            raise AssertionError("eigendecompose called despite checkpoints")

        monkeypatch.setattr(sweep_mod, "eigendecompose", boom)
        resumed = run_sweep(grid, checkpoint_dir=str(tmp_path))
        assert resumed.records == fresh.records

    def test_partial_checkpoints_complete_to_identical_records(self, tmp_path):
        grid = small_grid()
        partial = SweepGrid(parameter="w_over_v", values=grid.values[:2], base=grid.base)
        run_sweep(partial, checkpoint_dir=str(tmp_path))
        assert len(list(tmp_path.glob("sweep_*.npz"))) == 2
        resumed = run_sweep(grid, checkpoint_dir=str(tmp_path))
        fresh = run_sweep(grid)
        assert resumed.records == fresh.records

    def test_checkpoint_names_distinguish_parameters(self):
        p = base_params()
        pa = apply_parameter(p, "h", 0.5)
        pb = apply_parameter(p, "theta", 0.5)
        assert checkpoint_name(pa, 0.5) != checkpoint_name(pb, 0.5)


class TestSliceAndSymmetry:
    def test_slice_shape_and_lookup_error(self):
        grid = small_grid()
        result = run_sweep(grid)
        sl = slice_complex_plane(result.records, 0.8)
        assert sl.shape == (grid.base.num_sites, 3)
        with pytest.raises(KeyError):
            slice_complex_plane(result.records, 0.9)

    def test_theta_pair_union_is_inversion_symmetric(self):
        # delta = 0: records at theta and theta + pi map onto each other
        # under E -> -E with identical fractal dimensions
        base = base_params(num_cells=55, w=0.7, theta=0.3, delta=0.0)
        ra = run_sweep(SweepGrid(parameter="w_over_v", values=(0.7,), base=base)).records
        base_pi = base.with_theta(base.theta + math.pi)
        rb = run_sweep(SweepGrid(parameter="w_over_v", values=(0.7,), base=base_pi)).records
        ea = np.array([complex(r.re_E, r.im_E) for r in ra])
        eb = np.array([complex(r.re_E, r.im_E) for r in rb])
        assert match_multisets(ea, -eb) < 1e-8
        ga = np.array([r.gamma_fractal for r in ra])
        gb = np.array([r.gamma_fractal for r in rb])
        oa = np.lexsort((ea.imag, ea.real))
        ob = np.lexsort(((-eb).imag, (-eb).real))
        assert np.abs(ga[oa] - gb[ob]).max() < 1e-10


class TestCSV:
    def test_round_trip_exact(self, tmp_path):
        grid = small_grid(values=(0.4, 1.2), num_cells=6)
        records = run_sweep(grid).records
        path = tmp_path / "records.csv"
        write_records_csv(records, str(path))
        assert read_records_csv(str(path)) == records
        header = path.read_text().splitlines()[0]
        assert header == "param,eigen_index,re_E,im_E,gamma"

    def test_header_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n")
        with pytest.raises(ValueError):
            read_records_csv(str(path))

    def test_metadata_contents(self):
        grid = small_grid()
        meta = sweep_metadata(grid, norm="frobenius")
        assert meta["parameter"] == "w_over_v"
        assert meta["values"] == [0.4, 0.8, 1.2]
        assert meta["base_params"]["num_cells"] == grid.base.num_cells
        assert meta["norm"] == "frobenius"
        assert "version" in meta
