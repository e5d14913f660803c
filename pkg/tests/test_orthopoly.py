import math

import numpy as np
import pytest

from sparselegendre.orthopoly import (
    Basis,
    SparseExpansion,
    chebyshev_eval,
    eval_expansion,
    fourier_to_legendre_weight,
    legendre_eval,
    legendre_row,
    log_fourier_to_legendre_weight,
)


class TestLegendreEval:
    def test_degree_zero(self):
        assert legendre_eval(0, 0.7) == 1.0

    def test_value_one_at_one(self):
        assert legendre_eval(5, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_degree_two(self):
        # one hand-unrolled recurrence step: L_2(x) = (3x^2 - 1)/2
        assert legendre_eval(2, 0.5) == pytest.approx(-0.125, abs=1e-16)

    def test_complex_argument(self):
        z = 0.3 + 0.2j
        assert legendre_eval(2, z) == pytest.approx((3 * z * z - 1) / 2)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            legendre_eval(-1, 0.0)

    def test_parity(self):
        # L_n(-x) = (-1)^n L_n(x)
        for x in np.linspace(0.0, 1.0, 23):
            pos = legendre_row(x, 200)
            neg = legendre_row(-x, 200)
            signs = np.where(np.arange(201) % 2 == 0, 1.0, -1.0)
            np.testing.assert_allclose(neg, signs * pos, rtol=1e-13, atol=1e-300)


class TestLegendreRow:
    def test_all_ones_at_one(self):
        np.testing.assert_array_equal(legendre_row(1.0, 3), np.ones(4))

    def test_at_zero(self):
        # odd entries vanish by parity; evens from the recurrence
        np.testing.assert_allclose(legendre_row(0.0, 4), [1, 0, -0.5, 0, 0.375],
                                   atol=1e-16)

    def test_at_half(self):
        np.testing.assert_allclose(legendre_row(0.5, 2), [1, 0.5, -0.125], atol=1e-16)

    @pytest.mark.parametrize("x", [-0.97, -0.25, 0.0, 0.33, 0.99])
    def test_matches_eval_bit_for_bit(self, x):
        row = legendre_row(x, 60)
        for n in (0, 1, 2, 7, 31, 60):
            assert row[n] == legendre_eval(n, x)


class TestChebyshevEval:
    def test_value_one_at_one(self):
        assert chebyshev_eval(7, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_degree_two(self):
        assert chebyshev_eval(2, 0.5) == pytest.approx(-0.5, abs=1e-15)

    def test_cosine_identity(self):
        assert chebyshev_eval(3, math.cos(0.4)) == pytest.approx(math.cos(1.2), abs=1e-14)


class TestSparseExpansion:
    def test_zero_coefficients_dropped(self):
        e = SparseExpansion.legendre({2: 0.0, 5: 1.0}, 8)
        assert e.degrees() == (5,)

    def test_degree_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            SparseExpansion(Basis.LEGENDRE, 4, {5: 1.0})

    def test_empty_evaluates_to_zero(self):
        e = SparseExpansion.legendre({}, 4)
        assert eval_expansion(e, 0.37) == 0.0

    def test_constant(self):
        e = SparseExpansion.legendre({0: 2.0}, 4)
        assert eval_expansion(e, 0.3) == pytest.approx(2.0)

    def test_value_at_one_sums_coefficients(self):
        e = SparseExpansion.legendre({1: 1.0, 3: -1.0}, 4)
        assert eval_expansion(e, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_matches_termwise_oracle(self):
        rng = np.random.default_rng(42)
        degrees = [0, 3, 17, 40]
        coefs = rng.standard_normal(4)
        e = SparseExpansion.legendre(dict(zip(degrees, coefs)), 64)
        pts = rng.uniform(-1, 1, size=37)
        expected = sum(c * np.array([legendre_eval(n, x) for x in pts])
                       for n, c in zip(degrees, coefs))
        np.testing.assert_allclose(e(pts), expected, rtol=1e-12)

    def test_chebyshev_matches_termwise_oracle(self):
        rng = np.random.default_rng(43)
        degrees = [1, 8, 21]
        coefs = rng.standard_normal(3)
        e = SparseExpansion.chebyshev(dict(zip(degrees, coefs)), 32)
        pts = rng.uniform(-1, 1, size=19)
        expected = sum(c * np.array([chebyshev_eval(n, x) for x in pts])
                       for n, c in zip(degrees, coefs))
        np.testing.assert_allclose(e(pts), expected, rtol=1e-12)

    def test_complex_evaluation(self):
        e = SparseExpansion.legendre({2: 1.0}, 4)
        z = np.array([0.5 + 0.1j])
        np.testing.assert_allclose(e(z), (3 * z**2 - 1) / 2, rtol=1e-14)


class TestFourierToLegendreWeight:
    def test_unit_at_origin(self):
        assert fourier_to_legendre_weight(0, 0, 1.0) == pytest.approx(1.0, rel=1e-14)

    def test_first_row_is_two_r(self):
        # i=1, j=0 collapses to 4 (1!)^2 / 2! * r = 2r
        assert fourier_to_legendre_weight(1, 0, 0.5) == pytest.approx(1.0, rel=1e-13)

    def test_one_term_tail(self):
        # i=0, j=1: (1)_1 (1/2)_1 / (1! (3/2)_1) = (1/2) / (3/2)
        assert fourier_to_legendre_weight(0, 1, 1.0) == pytest.approx(1 / 3, rel=1e-13)

    def test_i1_j1(self):
        # from the ratio identity below: w(1,1) = w(1,0) * (2)(1/2)/((1)(5/2)) = 2 * 2/5
        assert fourier_to_legendre_weight(1, 1, 1.0) == pytest.approx(0.8, rel=1e-13)

    @pytest.mark.parametrize("r", [1.0, 0.9])
    def test_ratio_identity(self, r):
        # w(i,j+1)/w(i,j) = r^2 (i+1+j)(1/2+j) / ((j+1)(i+3/2+j))
        i, j = np.meshgrid(np.arange(101), np.arange(101), indexing="ij")
        w0 = np.exp(log_fourier_to_legendre_weight(i, j, r))
        w1 = np.exp(log_fourier_to_legendre_weight(i, j + 1, r))
        expected = r * r * (i + 1 + j) * (0.5 + j) / ((j + 1) * (i + 1.5 + j))
        np.testing.assert_allclose(w1 / w0, expected, rtol=1e-12)

    @pytest.mark.parametrize("i", [0, 3, 10])
    def test_tail_monotone_for_r_below_one(self, i):
        js = np.arange(i + 1, 61)
        w = np.exp(log_fourier_to_legendre_weight(float(i), js.astype(float), 0.9))
        assert np.all(np.diff(w) < 0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            fourier_to_legendre_weight(1, 1, 0.0)
        with pytest.raises(ValueError):
            fourier_to_legendre_weight(1, 1, 1.2)

    def test_huge_indices_stay_finite(self):
        # log-space evaluation must survive indices far past factorial overflow
        lg = log_fourier_to_legendre_weight(10**6, 10**6, 1.0)
        assert np.isfinite(lg)
