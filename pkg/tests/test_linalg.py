import math
import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from dra_py.errors import (
    DegenerateDataWarning,
    DimensionMismatch,
    InvalidInput,
    NonFinite,
    NotPositiveDefinite,
)
from dra_py.linalg import (
    RidgeProblem,
    cholesky,
    pca_fit,
    ridge_solve,
    spectral_norm,
    sym_eig,
    sym_expm,
    sym_gevd,
    sym_matrix,
)


def _taylor_expm(a, terms=30):
    result = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, terms + 1):
        term = term @ a / k
        result = result + term
    return result


class TestSymMatrix:
    def test_symmetrizes_rounding(self):
        a = np.array([[1.0, 2.0], [2.0 + 1e-15, 3.0]])
        s = sym_matrix(a)
        assert_array_equal(s, s.T)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            sym_matrix(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(NonFinite):
            sym_matrix([[1.0, np.nan], [np.nan, 1.0]])


class TestCholesky:
    def test_identity(self):
        assert_allclose(cholesky(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert_allclose(cholesky(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    @pytest.mark.parametrize("n", [1, 5, 17, 64])
    def test_reconstructs_random_spd(self, rng, make_spd, n):
        a = make_spd(rng, n)
        lower = cholesky(a)
        assert_array_equal(lower, np.tril(lower))
        assert np.all(np.diag(lower) > 0)
        assert np.linalg.norm(lower @ lower.T - a) <= 1e-10 * np.linalg.norm(a)

    def test_indefinite_raises(self):
        with pytest.raises(NotPositiveDefinite):
            cholesky([[1.0, 2.0], [2.0, 1.0]])

    def test_zero_matrix_raises(self):
        with pytest.raises(NotPositiveDefinite):
            cholesky(np.zeros((3, 3)))

    def test_pivot_below_threshold_raises(self):
        with pytest.raises(NotPositiveDefinite, match="index 1"):
            cholesky(np.diag([1.0, 1e-17]))

    def test_singular_semidefinite_raises(self):
        with pytest.raises(NotPositiveDefinite):
            cholesky([[1.0, 1.0], [1.0, 1.0]])

    def test_pivot_just_above_threshold(self):
        lower = cholesky(np.diag([1.0, 1e-14]))
        assert_allclose(np.diag(lower), [1.0, 1e-7])


class TestSymEig:
    def test_diagonal(self):
        pair = sym_eig(np.diag([3.0, 1.0]))
        assert_allclose(pair.values, [3.0, 1.0])
        assert_allclose(pair.vectors, np.eye(2))

    def test_two_by_two_characteristic_roots(self):
        pair = sym_eig([[2.0, 1.0], [1.0, 2.0]])
        assert_allclose(pair.values, [3.0, 1.0], atol=1e-12)

    def test_zero_matrix(self):
        pair = sym_eig(np.zeros((4, 4)))
        assert_allclose(pair.values, np.zeros(4))
        assert_allclose(pair.vectors.T @ pair.vectors, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("backend", ["jacobi", "lapack"])
    @pytest.mark.parametrize("n", [2, 7, 20])
    def test_random_residual_trace_orthonormality(self, rng, make_sym, backend, n):
        a = make_sym(rng, n)
        pair = sym_eig(a, backend)
        scale = max(1.0, np.linalg.norm(a))
        for i in range(n):
            v = pair.vectors[:, i]
            assert np.linalg.norm(a @ v - pair.values[i] * v) <= 1e-8 * scale
        assert_allclose(pair.vectors.T @ pair.vectors, np.eye(n), atol=1e-10)
        assert abs(np.trace(a) - pair.values.sum()) <= 1e-8 * max(1.0, abs(np.trace(a)))
        assert np.all(np.diff(pair.values) <= 0)

    @pytest.mark.parametrize(
        "a",
        [
            [[1.0, 1e-310, 0.0], [1e-310, 0.0, 0.5], [0.0, 0.5, 3.0]],
            [[1.0, 5e-324, 0.0], [5e-324, 2.0, 1.0], [0.0, 1.0, 2.0]],
        ],
    )
    def test_subnormal_off_diagonal(self, a):
        with warnings.catch_warnings():
            warnings.simplefilter("error", RuntimeWarning)
            pair = sym_eig(a, "jacobi")
        assert_allclose(pair.values, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-12)
        assert_allclose(pair.vectors.T @ pair.vectors, np.eye(3), atol=1e-12)

    def test_sign_convention(self, rng, make_sym):
        pair = sym_eig(make_sym(rng, 6))
        for col in pair.vectors.T:
            assert col[np.argmax(np.abs(col))] >= 0

    def test_backends_agree(self, rng, make_sym):
        a = make_sym(rng, 9)
        jacobi = sym_eig(a, "jacobi")
        lapack = sym_eig(a, "lapack")
        assert_allclose(jacobi.values, lapack.values, atol=1e-10)
        assert_allclose(jacobi.vectors, lapack.vectors, atol=1e-8)

    def test_unknown_backend(self):
        with pytest.raises(InvalidInput):
            sym_eig(np.eye(2), backend="power")

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            sym_eig([[1.0, np.inf], [np.inf, 1.0]])

    def test_leading(self, rng, make_sym):
        pair = sym_eig(make_sym(rng, 5))
        top = pair.leading(2)
        assert top.order == 2
        assert top.vectors.shape == (5, 2)

    def test_spectral_norm(self):
        assert spectral_norm(np.diag([1.0, -5.0, 2.0])) == pytest.approx(5.0)


class TestSymGevd:
    def test_identity_metric_reduces_to_eig(self):
        pair = sym_gevd(np.diag([4.0, 1.0]), np.eye(2))
        assert_allclose(pair.values, [4.0, 1.0])
        assert_allclose(pair.vectors, np.eye(2), atol=1e-12)

    def test_diagonal_ratio(self):
        pair = sym_gevd(np.diag([4.0, 1.0]), np.diag([2.0, 1.0]))
        assert_allclose(pair.values, [2.0, 1.0])

    def test_two_by_two_characteristic_polynomial(self, rng, make_sym, make_spd):
        for _ in range(100):
            a = make_sym(rng, 2)
            b = make_spd(rng, 2)
            coeffs = [
                b[0, 0] * b[1, 1] - b[0, 1] ** 2,
                -(a[0, 0] * b[1, 1] + a[1, 1] * b[0, 0] - 2 * a[0, 1] * b[0, 1]),
                a[0, 0] * a[1, 1] - a[0, 1] ** 2,
            ]
            roots = np.sort(np.real(np.roots(coeffs)))[::-1]
            values = sym_gevd(a, b).values
            assert_allclose(values, roots, rtol=1e-8, atol=1e-8)

    def test_residual_up_to_order_32(self, rng, make_sym, make_spd):
        for n in np.concatenate([[2, 32], rng.integers(2, 33, size=48)]):
            a = make_sym(rng, n)
            b = make_spd(rng, n)
            pair = sym_gevd(a, b)
            bound = 1e-8 * max(1.0, np.linalg.norm(a), np.linalg.norm(b))
            for i in range(n):
                p = pair.vectors[:, i]
                assert np.linalg.norm(a @ p - pair.values[i] * (b @ p)) <= bound
            assert_allclose(np.linalg.norm(pair.vectors, axis=0), np.ones(n))

    def test_congruence_invariance(self, rng, make_sym, make_spd):
        a = make_sym(rng, 5)
        b = make_spd(rng, 5)
        m = np.eye(5) + 0.3 * rng.standard_normal((5, 5))
        original = sym_gevd(a, b).values
        congruent = sym_gevd(m.T @ a @ m, m.T @ b @ m).values
        assert_allclose(congruent, original, atol=1e-8, rtol=1e-8)

    def test_order_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sym_gevd(np.eye(2), np.eye(3))

    def test_singular_metric(self):
        with pytest.raises(NotPositiveDefinite):
            sym_gevd(np.eye(2), np.diag([1.0, 0.0]))


class TestSymExpm:
    def test_zero_is_identity(self):
        assert_allclose(sym_expm(np.zeros((2, 2))), np.eye(2))

    def test_diagonal(self):
        assert_allclose(sym_expm(np.diag([1.0, -1.0])), np.diag([math.e, 1 / math.e]))

    def test_matches_taylor_series(self, rng, make_sym):
        for _ in range(10):
            a = make_sym(rng, 4)
            a *= 2.0 / np.linalg.norm(a)
            expected = _taylor_expm(a)
            assert np.linalg.norm(sym_expm(a) - expected) <= 1e-8 * np.linalg.norm(expected)

    def test_spectrum_and_definiteness(self, rng, make_sym):
        a = make_sym(rng, 6)
        result = sym_expm(a)
        assert_allclose(sym_eig(result).values, np.exp(sym_eig(a).values), rtol=1e-8)
        cholesky(result)

    def test_overflow(self):
        with pytest.raises(NonFinite):
            sym_expm(np.diag([1000.0, 0.0]))


class TestRidge:
    def test_identity(self):
        w = ridge_solve(RidgeProblem(design=np.eye(2), rhs=[2.0, 0.0], rho=1.0))
        assert_allclose(w, [1.0, 0.0])

    def test_normal_equation_oracle(self, rng):
        d = rng.standard_normal((3, 2))
        b = rng.standard_normal(3)
        expected = np.linalg.solve(d.T @ d + 0.01 * np.eye(2), d.T @ b)
        assert_allclose(ridge_solve(RidgeProblem(d, b, 0.01)), expected, rtol=1e-10, atol=1e-12)

    def test_wide_primal_dual_agree(self, rng):
        d = rng.standard_normal((2, 5))
        b = rng.standard_normal(2)
        problem = RidgeProblem(d, b, 0.01)
        primal = ridge_solve(problem, path="primal")
        dual = ridge_solve(problem, path="dual")
        assert np.linalg.norm(primal - dual) <= 1e-8 * np.linalg.norm(primal)

    def test_random_problems_match_oracle(self, rng):
        for _ in range(200):
            rows, cols = rng.integers(1, 51, size=2)
            d = rng.standard_normal((rows, cols))
            b = rng.standard_normal(rows)
            rho = 10.0 ** rng.uniform(-3, 1)
            problem = RidgeProblem(d, b, rho)
            expected = np.linalg.solve(d.T @ d + rho * np.eye(cols), d.T @ b)
            scale = max(np.linalg.norm(expected), 1e-12)
            for path in ("auto", "primal", "dual"):
                w = ridge_solve(problem, path=path)
                assert np.linalg.norm(w - expected) <= 1e-8 * scale
            stationarity = d.T @ (d @ w - b) + rho * w
            assert np.linalg.norm(stationarity) <= 1e-8 * max(1.0, np.linalg.norm(b))

    def test_norm_shrinks_with_rho(self, rng):
        d = rng.standard_normal((8, 4))
        b = rng.standard_normal(8)
        norms = [np.linalg.norm(ridge_solve(RidgeProblem(d, b, rho))) for rho in (1, 10, 100, 1000)]
        assert all(x > y for x, y in zip(norms, norms[1:]))

    def test_invalid_problems(self):
        with pytest.raises(InvalidInput):
            RidgeProblem(np.eye(2), [1.0, 1.0], 0.0)
        with pytest.raises(DimensionMismatch):
            RidgeProblem(np.eye(2), [1.0, 1.0, 1.0], 1.0)
        with pytest.raises(NonFinite):
            RidgeProblem(np.eye(2), [np.nan, 1.0], 1.0)
        with pytest.raises(InvalidInput):
            ridge_solve(RidgeProblem(np.eye(2), [1.0, 1.0], 1.0), path="qr")


class TestPca:
    def test_line_through_origin(self):
        direction = np.array([1.0, 2.0, -2.0]) / 3.0
        x = np.outer(direction, [-2.0, -1.0, 0.5, 1.0, 3.0])
        pca = pca_fit(x, 1)
        assert abs(pca.basis[:, 0] @ direction) == pytest.approx(1.0, abs=1e-10)

    def test_matches_covariance_eigenvectors(self, rng):
        x = np.diag([5.0, 2.0, 0.5]) @ rng.standard_normal((3, 200))
        pca = pca_fit(x, 2)
        oracle = sym_eig(np.cov(x))
        for i in range(2):
            assert abs(pca.basis[:, i] @ oracle.vectors[:, i]) == pytest.approx(1.0, abs=1e-10)
        assert_allclose(pca.variances, oracle.values[:2], rtol=1e-10)

    def test_full_rank_reconstruction(self, rng):
        x = rng.standard_normal((4, 10))
        pca = pca_fit(x, 4)
        assert_allclose(pca.reconstruct(pca.transform(x)), x, atol=1e-10)
        assert_allclose(pca.basis.T @ pca.basis, np.eye(4), atol=1e-10)

    def test_gram_route_matches_covariance(self, rng):
        x = rng.standard_normal((10, 6))
        pca = pca_fit(x, 3)
        centered = x - x.mean(axis=1, keepdims=True)
        oracle = sym_eig(centered @ centered.T / 5, backend="lapack")
        for i in range(3):
            assert abs(pca.basis[:, i] @ oracle.vectors[:, i]) == pytest.approx(1.0, abs=1e-8)
        assert_allclose(pca.basis.T @ pca.basis, np.eye(3), atol=1e-10)

    def test_basis_completed_beyond_data_rank(self, rng):
        x = rng.standard_normal((10, 4))
        pca = pca_fit(x, 4)
        assert pca.basis.shape == (10, 4)
        assert_allclose(pca.basis.T @ pca.basis, np.eye(4), atol=1e-10)
        assert pca.variances[-1] == 0.0

    def test_energy_non_decreasing(self, rng):
        x = rng.standard_normal((6, 30))
        energies = [pca_fit(x, q).variances.sum() for q in range(1, 7)]
        assert all(a <= b + 1e-12 for a, b in zip(energies, energies[1:]))

    def test_identical_samples_warn(self):
        x = np.tile(np.array([[1.0], [2.0], [3.0]]), (1, 5))
        with pytest.warns(DegenerateDataWarning):
            pca = pca_fit(x, 2)
        assert_allclose(pca.basis.T @ pca.basis, np.eye(2), atol=1e-12)

    @pytest.mark.parametrize("q", [0, 4])
    def test_q_out_of_range(self, rng, q):
        with pytest.raises(DimensionMismatch):
            pca_fit(rng.standard_normal((3, 5)), q)

    def test_single_sample(self):
        with pytest.raises(DimensionMismatch):
            pca_fit(np.ones((3, 1)), 1)
