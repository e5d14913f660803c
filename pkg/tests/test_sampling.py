import math

import numpy as np
import pytest

from sparselegendre.orthopoly import SparseExpansion
from sparselegendre.sampling import (
    SamplePlan,
    coefficient_scale,
    default_sample_count,
    sample_chebyshev_points,
    sampling_matrix,
    sampling_row,
    submatrix_condition,
    weighted_samples,
)


class TestSampleChebyshevPoints:
    def test_single_point_inside_interval(self):
        plan = sample_chebyshev_points(0, seed=1)
        assert plan.points.shape == (1,)
        assert -1.0 < plan.points[0] < 1.0

    def test_deterministic(self):
        a = sample_chebyshev_points(100, seed=7, n_max=64)
        b = sample_chebyshev_points(100, seed=7, n_max=64)
        np.testing.assert_array_equal(a.points, b.points)

    def test_arcsine_distribution(self):
        # Kolmogorov-Smirnov against F(x) = 1 - arccos(x)/π
        plan = sample_chebyshev_points(10**5 - 1, seed=3)
        xs = np.sort(plan.points)
        cdf = 1.0 - np.arccos(xs) / np.pi
        empirical_hi = np.arange(1, xs.size + 1) / xs.size
        empirical_lo = np.arange(0, xs.size) / xs.size
        dev = max(np.max(np.abs(empirical_hi - cdf)), np.max(np.abs(cdf - empirical_lo)))
        assert dev < 0.01

    def test_serialization_roundtrip_exact(self):
        plan = sample_chebyshev_points(17, seed=99, n_max=32)
        back = SamplePlan.from_text(plan.to_text())
        np.testing.assert_array_equal(back.points, plan.points)
        assert (back.m, back.n_max, back.seed) == (plan.m, plan.n_max, plan.seed)


class TestSamplingRow:
    def test_constant_column_at_origin(self):
        plan = SamplePlan(np.array([0.0]), 0, 4, seed=0)
        # weight sqrt(π/2) * (1)^{1/4} * sqrt(2*0+1) * L_0(0) / sqrt(1)
        row = sampling_row(plan, 0, {0})
        assert row[0] == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-14)

    def test_odd_degree_vanishes_at_origin(self):
        plan = SamplePlan(np.array([0.0]), 0, 4, seed=0)
        assert sampling_row(plan, 0, {1})[0] == 0.0

    def test_row_index_validated(self):
        plan = sample_chebyshev_points(3, seed=0, n_max=8)
        with pytest.raises(IndexError):
            sampling_row(plan, 4, {0})

    def test_matrix_matches_rows(self):
        plan = sample_chebyshev_points(20, seed=5, n_max=32)
        degrees = [0, 3, 17]
        mat = sampling_matrix(plan, degrees)
        for j in range(plan.m + 1):
            np.testing.assert_allclose(mat[j], sampling_row(plan, j, degrees),
                                       rtol=1e-12, atol=1e-15)

    def test_columns_near_unit_norm(self):
        # Monte-Carlo orthonormality: column norms concentrate around 1
        hits = 0
        for seed in range(100):
            plan = sample_chebyshev_points(4095, seed=seed, n_max=64)
            mat = sampling_matrix(plan, range(65))
            norms = np.linalg.norm(mat, axis=0)
            hits += bool(np.all((norms > 0.9) & (norms < 1.1)))
        assert hits >= 99


class TestWeightedSamples:
    def test_zero_function(self):
        plan = sample_chebyshev_points(10, seed=2, n_max=4)
        f = SparseExpansion.legendre({}, 4)
        np.testing.assert_array_equal(weighted_samples(f, plan), np.zeros(11))

    def test_constant_at_origin(self):
        plan = SamplePlan(np.array([0.0]), 0, 4, seed=0)
        f = SparseExpansion.legendre({0: 1.0}, 4)
        assert weighted_samples(f, plan)[0] == pytest.approx(
            math.sqrt(math.pi) / math.sqrt(2.0), rel=1e-14)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_consistency_with_matrix_product(self, seed):
        # y equals the sampled rows applied to the solver-convention vector
        rng = np.random.default_rng(seed)
        degrees = np.sort(rng.choice(257, size=20, replace=False))
        coefs = rng.standard_normal(20)
        f = SparseExpansion.legendre(dict(zip(degrees, coefs)), 256)
        plan = sample_chebyshev_points(300, seed=seed + 10, n_max=256)
        y = weighted_samples(f, plan)
        mat = sampling_matrix(plan, degrees)
        np.testing.assert_allclose(y, mat @ (coefs / coefficient_scale(degrees)),
                                   rtol=1e-12, atol=1e-13)


class TestSubmatrixCondition:
    def test_empty_set_rejected(self):
        plan = sample_chebyshev_points(10, seed=0, n_max=4)
        with pytest.raises(ValueError):
            submatrix_condition(plan, [])

    def test_single_column_well_conditioned(self):
        hits = 0
        for seed in range(100):
            plan = sample_chebyshev_points(8191, seed=seed, n_max=16)
            if submatrix_condition(plan, [0]) < 1.2:
                hits += 1
        assert hits >= 95

    def test_matches_dense_eigenvalues(self):
        plan = sample_chebyshev_points(511, seed=4, n_max=128)
        degrees = [1, 17, 40, 77, 128]
        mat = sampling_matrix(plan, degrees)
        eig = np.linalg.eigvalsh(mat.T @ mat)
        expected = eig[-1] / eig[0]
        assert submatrix_condition(plan, degrees) == pytest.approx(expected, rel=1e-6)

    def test_default_sample_count(self):
        assert default_sample_count(1, 0) == 64
        assert default_sample_count(20, 2**17) == math.ceil(8 * 20 * math.log2(2**17 + 2))


class TestPlanValidation:
    def test_rejects_endpoint(self):
        with pytest.raises(ValueError):
            SamplePlan(np.array([1.0]), 0, 4, seed=0)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            SamplePlan(np.array([0.0, 0.5]), 0, 4, seed=0)
