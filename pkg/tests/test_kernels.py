# tests/test_kernels.py
# Kernels de produto interno e radiais, gradientes e derivadas nos pesos.

import math

import numpy as np
import pytest

from src.errors import ConfigError, DimensionMismatchError, IndexOutOfRangeError, NonnegViolationError
from src.models.kernel_spec import KernelSpec, WeightMatrix, WeightVector
from src.services import kernels
from src.services.data_io import random_rotation

SMOOTH = ("gaussian_radial", "exponential_inner", "polynomial_inner")
ALL = ("laplacian_radial",) + SMOOTH + ("linear_inner",)


def _fd(fn, x, h=1e-5):
    out = np.zeros_like(x)
    for j in range(x.shape[0]):
        e = np.zeros_like(x)
        e[j] = h
        out[j] = (fn(x + e) - fn(x - e)) / (2 * h)
    return out


class TestKernelSpec:
    def test_rejects_unknown_family(self):
        with pytest.raises(ConfigError) as info:
            KernelSpec("cosine", 3)
        assert info.value.key == "kernel.family"

    @pytest.mark.parametrize("kwargs", [{"bandwidth": 0.0}, {"degree": 0}, {"scale": -1.0}, {"offset": -0.5}])
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ConfigError):
            KernelSpec("polynomial_inner", 3, **kwargs)

    def test_auto_bandwidth(self):
        spec = KernelSpec("laplacian_radial", 4)
        assert spec.needs_bandwidth
        assert not spec.with_bandwidth(2.0).needs_bandwidth
        assert not KernelSpec("exponential_inner", 4).needs_bandwidth

    def test_negative_weights_rejected(self):
        with pytest.raises(NonnegViolationError):
            WeightVector([1.0, -0.1])


class TestKernelValue:
    def test_laplacian_self_similarity(self):
        spec = KernelSpec("laplacian_radial", 3, bandwidth=0.3)
        x = np.array([1.0, -2.0, 0.5])
        assert kernels.kernel_value(spec, x, x, WeightVector([0.1, 3.0, 0.0])) == 1.0

    @pytest.mark.parametrize("family", ALL)
    def test_uniform_weights_reduce_to_unweighted(self, family, rng):
        spec = KernelSpec(family, 4, bandwidth=1.3)
        x, z = rng.standard_normal(4), rng.standard_normal(4)
        assert kernels.kernel_value(spec, x, z, WeightVector.uniform(4)) == kernels.kernel_value(spec, x, z)

    def test_linear_orthogonal_points(self):
        spec = KernelSpec("linear_inner", 2)
        assert kernels.kernel_value(spec, [1.0, 1.0], [1.0, -1.0], WeightVector([1.0, 1.0])) == 0.0

    def test_gaussian_plugged_in(self):
        spec = KernelSpec("gaussian_radial", 2, bandwidth=1.0)
        assert kernels.kernel_value(spec, [1.0, 1.0], [0.0, 0.0]) == pytest.approx(math.exp(-1.0))

    def test_polynomial_and_exponential_profiles(self):
        x, z = np.array([1.0, 2.0]), np.array([3.0, -1.0])
        t = float(x @ z) / 2
        poly = KernelSpec("polynomial_inner", 2, degree=3, offset=0.5)
        expo = KernelSpec("exponential_inner", 2, scale=2.0)
        assert kernels.kernel_value(poly, x, z) == pytest.approx((0.5 + t) ** 3)
        assert kernels.kernel_value(expo, x, z) == pytest.approx(math.exp(2.0 * t))

    def test_weighting_rescales_inputs(self, rng):
        spec = KernelSpec("laplacian_radial", 3, bandwidth=2.0)
        w = np.array([0.5, 2.0, 1.5])
        x, z = rng.standard_normal(3), rng.standard_normal(3)
        expected = math.exp(-np.linalg.norm(np.sqrt(w) * (x - z)) / 2.0)
        assert kernels.kernel_value(spec, x, z, WeightVector(w)) == pytest.approx(expected)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            kernels.kernel_value(KernelSpec("linear_inner", 3), [1.0, 2.0], [1.0, 2.0, 3.0])

    def test_uncalibrated_bandwidth(self):
        with pytest.raises(ValueError):
            kernels.kernel_value(KernelSpec("gaussian_radial", 2), [1.0, 0.0], [0.0, 0.0])


class TestGram:
    def test_single_point_radial(self):
        for family in ("laplacian_radial", "gaussian_radial"):
            spec = KernelSpec(family, 3, bandwidth=1.0)
            X = np.array([[0.2, -0.4, 1.0]])
            np.testing.assert_array_equal(kernels.gram(spec, X, X), [[1.0]])

    def test_linear_identity_rows(self):
        np.testing.assert_allclose(kernels.gram(KernelSpec("linear_inner", 2), np.eye(2)), [[0.5, 0.0], [0.0, 0.5]])

    @pytest.mark.parametrize("family", ("laplacian_radial", "gaussian_radial", "exponential_inner", "polynomial_inner"))
    def test_symmetric_and_psd(self, family, rng):
        X = rng.standard_normal((50, 8))
        K = kernels.gram(KernelSpec(family, 8, bandwidth=2.5), X, None, WeightVector(rng.uniform(0.1, 2.0, 8)))
        np.testing.assert_array_equal(K, K.T)
        assert np.linalg.eigvalsh(K).min() >= -1e-8 * 50

    def test_entries_match_kernel_value(self, rng):
        spec = KernelSpec("exponential_inner", 3)
        w = WeightVector([1.0, 0.5, 2.0])
        X, Z = rng.standard_normal((3, 3)), rng.standard_normal((2, 3))
        K = kernels.gram(spec, X, Z, w)
        for i in range(3):
            for j in range(2):
                assert K[i, j] == pytest.approx(kernels.kernel_value(spec, X[i], Z[j], w))

    def test_column_mismatch(self, rng):
        with pytest.raises(DimensionMismatchError):
            kernels.gram(KernelSpec("linear_inner", 3), rng.standard_normal((2, 3)), rng.standard_normal((2, 4)))


class TestMedianBandwidth:
    def test_matches_median_distance(self, rng):
        X = rng.standard_normal((20, 3))
        dists = [np.linalg.norm(X[i] - X[j]) for i in range(20) for j in range(i + 1, 20)]
        assert kernels.median_bandwidth(X, WeightVector.uniform(3)) == pytest.approx(np.median(dists))

    def test_uses_calibration_prefix(self, rng):
        X = rng.standard_normal((300, 2))
        w = WeightVector.uniform(2)
        assert kernels.median_bandwidth(X, w) == kernels.median_bandwidth(X[:256], w)

    def test_degenerate_sample_falls_back(self):
        assert kernels.median_bandwidth(np.ones((5, 2)), WeightVector.uniform(2)) == 1.0
        assert kernels.median_bandwidth(np.ones((1, 2)), WeightVector.uniform(2)) == 1.0

    def test_inner_spec_untouched(self, rng):
        spec = KernelSpec("exponential_inner", 2)
        assert kernels.with_median_bandwidth(spec, rng.standard_normal((5, 2)), WeightVector.uniform(2)) is spec


class TestInputGradient:
    def test_zero_at_coincident_points(self):
        for family in ("laplacian_radial", "gaussian_radial"):
            spec = KernelSpec(family, 3, bandwidth=1.0)
            np.testing.assert_array_equal(kernels.kernel_input_gradient(spec, np.ones(3), np.ones(3)), np.zeros(3))

    def test_linear_gradient(self, rng):
        z = rng.standard_normal(4)
        grad = kernels.kernel_input_gradient(KernelSpec("linear_inner", 4), rng.standard_normal(4), z)
        np.testing.assert_allclose(grad, z / 4)

    def test_gaussian_example(self):
        spec = KernelSpec("gaussian_radial", 2, bandwidth=1.0)
        np.testing.assert_allclose(kernels.kernel_input_gradient(spec, [1.0, 0.0], [0.0, 0.0]), [-math.exp(-0.5), 0.0])

    @pytest.mark.parametrize("family", ("laplacian_radial",) + SMOOTH)
    def test_finite_differences(self, family, rng):
        spec = KernelSpec(family, 5, bandwidth=1.7)
        w = WeightVector(rng.uniform(0.3, 2.0, 5))
        for _ in range(5):
            x, z = rng.standard_normal(5), rng.standard_normal(5)
            numeric = _fd(lambda p: kernels.kernel_value(spec, p, z, w), x)
            analytic = kernels.kernel_input_gradient(spec, x, z, w)
            assert np.linalg.norm(analytic - numeric) <= 1e-5 * np.linalg.norm(numeric)

    def test_matrix_weight_gradient(self, rng):
        spec = KernelSpec("gaussian_radial", 3, bandwidth=1.2)
        G = rng.standard_normal((3, 3))
        M = WeightMatrix(G @ G.T + 0.1 * np.eye(3))
        x, z = rng.standard_normal(3), rng.standard_normal(3)
        numeric = _fd(lambda p: kernels.matrix_kernel_value(spec, p, z, M), x)
        np.testing.assert_allclose(kernels.kernel_input_gradient(spec, x, z, M), numeric, rtol=1e-6, atol=1e-9)


class TestWeightDerivative:
    @pytest.mark.parametrize("family", ("laplacian_radial",) + SMOOTH)
    def test_finite_differences(self, family, rng):
        X = rng.standard_normal((10, 4))
        w = rng.uniform(0.5, 2.0, 4)
        spec = KernelSpec(family, 4, bandwidth=1.9)
        h = 1e-6
        for j in range(4):
            up, down = w.copy(), w.copy()
            up[j] += h
            down[j] -= h
            numeric = (kernels.gram(spec, X, None, WeightVector(up)) - kernels.gram(spec, X, None, WeightVector(down))) / (2 * h)
            analytic = kernels.weight_derivative_gram(spec, X, WeightVector(w), j)
            assert np.linalg.norm(analytic - numeric) <= 1e-4 * np.linalg.norm(numeric)

    def test_laplacian_identical_rows_give_zero(self):
        spec = KernelSpec("laplacian_radial", 3, bandwidth=1.0)
        X = np.tile([1.0, -1.0, 1.0], (4, 1))
        np.testing.assert_array_equal(kernels.weight_derivative_gram(spec, X, WeightVector.uniform(3), 1), np.zeros((4, 4)))

    def test_linear_closed_form(self, rng):
        X = rng.standard_normal((6, 3))
        D = kernels.weight_derivative_gram(KernelSpec("linear_inner", 3), X, WeightVector.uniform(3), 2)
        np.testing.assert_allclose(D, np.outer(X[:, 2], X[:, 2]) / 3)
        assert np.linalg.matrix_rank(D) <= 1

    def test_exponential_single_point(self):
        x = np.array([[0.5, -1.0, 2.0]])
        w = WeightVector([1.0, 2.0, 0.5])
        t = float(np.sum(w.w * x[0] ** 2)) / 3
        D = kernels.weight_derivative_gram(KernelSpec("exponential_inner", 3), x, w, 1)
        np.testing.assert_allclose(D, [[x[0, 1] ** 2 * math.exp(t) / 3]])

    @pytest.mark.parametrize("family", ("exponential_inner", "polynomial_inner"))
    def test_inner_products_are_psd(self, family, rng):
        X = np.where(rng.standard_normal((25, 6)) > 0, 1.0, -1.0)
        for j in range(6):
            D = kernels.weight_derivative_gram(KernelSpec(family, 6), X, WeightVector.uniform(6), j)
            assert np.linalg.eigvalsh(D).min() >= -1e-8 * 25

    def test_index_out_of_range(self, rng):
        with pytest.raises(IndexOutOfRangeError):
            kernels.weight_derivative_gram(KernelSpec("linear_inner", 2), rng.standard_normal((3, 2)), WeightVector.uniform(2), 2)


class TestMatrixWeights:
    @pytest.mark.parametrize("family", ALL)
    def test_identity_reduces_to_unweighted(self, family, rng):
        spec = KernelSpec(family, 4, bandwidth=1.1)
        X, Z = rng.standard_normal((5, 4)), rng.standard_normal((3, 4))
        np.testing.assert_allclose(kernels.matrix_gram(spec, X, Z, WeightMatrix.identity(4)), kernels.gram(spec, X, Z), atol=1e-12)

    @pytest.mark.parametrize("family", ALL)
    def test_diagonal_matches_vector(self, family, rng):
        spec = KernelSpec(family, 4, bandwidth=1.1)
        w = rng.uniform(0.0, 3.0, 4)
        X, Z = rng.standard_normal((5, 4)), rng.standard_normal((3, 4))
        np.testing.assert_allclose(kernels.matrix_gram(spec, X, Z, WeightMatrix(np.diag(w))),
                                   kernels.gram(spec, X, Z, WeightVector(w)), atol=1e-10)

    @pytest.mark.parametrize("family", ALL)
    def test_rotation_identity(self, family, rng):
        spec = KernelSpec(family, 5, bandwidth=2.0)
        U = random_rotation(5, rng)
        w = rng.uniform(0.1, 2.0, 5)
        x, z = rng.standard_normal(5), rng.standard_normal(5)
        lhs = kernels.matrix_kernel_value(spec, x, z, WeightMatrix(U.T @ np.diag(w) @ U))
        rhs = kernels.kernel_value(spec, U @ x, U @ z, WeightVector(w))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize("family", ALL)
    def test_derivative_diagonal_matches_vector_form(self, family, rng):
        spec = KernelSpec(family, 4, bandwidth=1.5)
        X = rng.standard_normal((6, 4))
        w = rng.uniform(0.5, 2.0, 4)
        for j in range(4):
            np.testing.assert_allclose(kernels.matrix_weight_derivative(spec, X, WeightMatrix(np.diag(w)), j, j),
                                       kernels.weight_derivative_gram(spec, X, WeightVector(w), j), atol=1e-10)

    def test_linear_closed_form_and_symmetry(self, rng):
        X = rng.standard_normal((4, 3))
        spec = KernelSpec("linear_inner", 3)
        D01 = kernels.matrix_weight_derivative(spec, X, WeightMatrix.identity(3), 0, 1)
        expected = (np.outer(X[:, 0], X[:, 1]) + np.outer(X[:, 1], X[:, 0])) / 6
        np.testing.assert_allclose(D01, expected)
        np.testing.assert_allclose(D01, kernels.matrix_weight_derivative(spec, X, WeightMatrix.identity(3), 1, 0))

    def test_off_diagonal_finite_differences(self, rng):
        spec = KernelSpec("gaussian_radial", 3, bandwidth=1.4)
        X = rng.standard_normal((6, 3))
        G = rng.standard_normal((3, 3))
        M = G @ G.T + np.eye(3)
        E = np.zeros((3, 3))
        E[0, 2] = E[2, 0] = 0.5
        h = 1e-6
        numeric = (kernels.matrix_gram(spec, X, None, WeightMatrix(M + h * E))
                   - kernels.matrix_gram(spec, X, None, WeightMatrix(M - h * E))) / (2 * h)
        analytic = kernels.matrix_weight_derivative(spec, X, WeightMatrix(M), 0, 2)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-8)
