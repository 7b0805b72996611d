import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimwalk.gegenbauer import GegenbauerBasis
from dimwalk.pdcheck import (
    certify,
    default_dimension,
    gram_matrix,
    gram_min_eig,
    sample_sphere,
    series_kernel,
)
from dimwalk.series import PowerSeries, SpatialSeries, SpatioTemporalSeries
from dimwalk.temporal import TemporalPD

from helpers import random_spatial, random_spatiotemporal

LEG = GegenbauerBasis.for_sphere(2)


class TestSampling:
    def test_unit_norms(self):
        cfg = sample_sphere(1, 4, seed=7)
        assert cfg.points.shape == (4, 2)
        assert np.allclose(np.linalg.norm(cfg.points, axis=1), 1.0, atol=1e-12)

    def test_mean_concentrates(self):
        cfg = sample_sphere(2, 100, seed=1)
        assert np.linalg.norm(cfg.points.mean(axis=0)) <= 0.35

    def test_deterministic(self):
        a, b = sample_sphere(3, 50, 5, times=True), sample_sphere(3, 50, 5, times=True)
        assert np.array_equal(a.points, b.points) and np.array_equal(a.times, b.times)

    def test_times_window(self):
        cfg = sample_sphere(2, 200, 0, times=True, tmax=2.0)
        assert np.all(np.abs(cfg.times) <= 2.0)

    @pytest.mark.parametrize("d,count", [(0, 5), (2, 1)])
    def test_invalid(self, d, count):
        with pytest.raises(ValueError):
            sample_sphere(d, count, 0)


class TestGram:
    def test_constant(self):
        cfg = sample_sphere(2, 30, 0)
        M = gram_matrix(np.ones_like, cfg)
        assert np.all(M == 1.0)
        rep = gram_min_eig(np.ones_like, cfg)
        assert rep.passed and abs(rep.min_eigenvalue) < 1e-12

    @pytest.mark.parametrize("seed", range(5))
    def test_identity_embedding(self, seed):
        cfg = sample_sphere(2, 40, seed)
        rep = gram_min_eig(lambda x: x, cfg)
        assert rep.passed
        # oracle: full eigendecomposition
        assert rep.min_eigenvalue == pytest.approx(np.linalg.eigvalsh(cfg.inner_products()).min(), abs=1e-12)

    def test_symmetry(self):
        s = random_spatiotemporal(np.random.default_rng(0), LEG)
        M = gram_matrix(series_kernel(s), sample_sphere(2, 40, 3, times=True))
        assert np.max(np.abs(M - M.T)) == 0.0

    def test_time_shift_invariance(self):
        s = random_spatiotemporal(np.random.default_rng(1), LEG)
        cfg = sample_sphere(2, 40, 2, times=True)
        # dyadic times and shift keep every difference exact
        t = np.round(cfg.times * 64) / 64
        base = type(cfg)(cfg.dimension, cfg.points, t, cfg.seed)
        moved = type(cfg)(cfg.dimension, cfg.points, t + 3.5, cfg.seed)
        f = series_kernel(s)
        assert np.array_equal(gram_matrix(f, base), gram_matrix(f, moved))
        assert gram_min_eig(f, base) == gram_min_eig(f, moved)

    def test_evaluation_failure_reported(self):
        def bad(x):
            raise ZeroDivisionError("boom")

        with pytest.raises(RuntimeError, match="boom"):
            gram_matrix(bad, sample_sphere(2, 5, 0))


class TestCertify:
    def test_negative_control(self):
        s = SpatialSeries(LEG, [0.0, 0.0, 1.0, -0.05])
        rep = certify(s, seeds=range(1, 21))
        assert not rep.passed and rep.failures >= 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from([1, 2, 3, 4]))
    def test_soundness(self, seed, d):
        s = random_spatial(np.random.default_rng(seed), GegenbauerBasis.for_sphere(d))
        assert certify(s, trials=5).passed

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10**6))
    def test_soundness_temporal(self, seed):
        s = random_spatiotemporal(np.random.default_rng(seed), GegenbauerBasis.for_sphere(3))
        assert certify(s, trials=5).passed

    @pytest.mark.parametrize("c", [1e-6, 1.0, 1e6])
    def test_scale_invariant_verdict(self, c):
        good = SpatialSeries(LEG, [0.3, 0.3, 0.4])
        bad = SpatialSeries(LEG, [0.0, 0.0, 1.0, -0.05])
        assert certify(good.with_coeffs(c * good.coeffs), trials=5).passed
        assert not certify(bad.with_coeffs(c * bad.coeffs), seeds=range(1, 21)).passed

    def test_deterministic(self):
        s = random_spatial(np.random.default_rng(2), LEG)
        assert certify(s, trials=4, seed=3) == certify(s, trials=4, seed=3)

    def test_worst_seed_reported(self):
        s = SpatialSeries(LEG, [0.0, 0.0, 1.0, -0.05])
        rep = certify(s, seeds=range(1, 21))
        single = gram_min_eig(series_kernel(s), sample_sphere(2, 60, rep.seed))
        assert single.min_eigenvalue == rep.min_eigenvalue

    def test_power_series_defaults(self):
        assert default_dimension(PowerSeries([1.0])) == 3
        assert certify(PowerSeries([0.2, 0.5, 0.3]), trials=3).passed

    def test_half_integer_order_needs_dimension(self):
        s = SpatialSeries(GegenbauerBasis(0.75), [1.0])
        with pytest.raises(ValueError):
            certify(s, trials=1)
        assert certify(s, trials=1, dimension=2).passed

    def test_to_dict(self):
        rep = certify(SpatioTemporalSeries(LEG, [TemporalPD.of("exponential", 1.0)]), trials=2)
        d = rep.to_dict()
        assert d["verdict"] == "pass" and d["trials"] == 2 and d["matrix_size"] == 60
