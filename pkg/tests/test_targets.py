import numpy as np
import pytest

from suburban.targets import (
    GaussianMixture,
    direct_sample,
    make_banana,
    make_barrier_gmm,
    make_random_landscape,
    make_symmetric_mixture,
    make_target,
    moment_oracle,
    true_moments,
)

# Banana moments worked out from the conditional construction
# x ~ N(1, 1/2), y | x ~ N(x^2, 1/200):
#   Var(x) = 1/2,  Cov(x, y) = E[x^3] - E[x] E[x^2] = 2.5 - 1.5 = 1,
#   Var(y) = Var(x^2) + 1/200 = (E[x^4] - E[x^2]^2) + 0.005 = 2.505.
BANANA_COV = np.array([[0.5, 1.0], [1.0, 2.505]])


class TestSymmetricMixture:
    def test_component_layout_d2(self):
        t = make_symmetric_mixture(2, 1.5, 0.25)
        got = {tuple(m) for m in t.mixture.means}
        assert got == {(1.5, 0.0), (-1.5, 0.0), (0.0, 1.5), (0.0, -1.5)}
        assert np.all(t.mixture.weights == 0.25)

    def test_true_cov_is_sigma2_plus_mu2_over_d(self):
        t = make_symmetric_mixture(2, 1.5, 0.25)
        _, cov = true_moments(t)
        assert np.allclose(cov, 1.375 * np.eye(2), atol=1e-14)

    def test_true_mean_zero(self):
        mean, _ = true_moments(make_symmetric_mixture(2, 1.5, 0.25))
        assert np.allclose(mean, 0.0, atol=1e-15)

    def test_degenerate_mu_zero_is_plain_gaussian(self):
        t = make_symmetric_mixture(1, 0.0, 0.7)
        _, cov = true_moments(t)
        assert np.allclose(cov, [[0.7]], atol=1e-15)

    def test_rejects_bad_sigma2(self):
        with pytest.raises(ValueError):
            make_symmetric_mixture(2, 1.5, 0.0)

    def test_sign_and_axis_symmetry_of_log_density(self):
        # |log pi(x) - log pi(Px)| < 1e-12 for signed axis permutations P
        t = make_symmetric_mixture(3, 1.5, 0.25)
        rng = np.random.default_rng(0)
        for _ in range(50):
            x = rng.normal(scale=3.0, size=3)
            perm = rng.permutation(3)
            signs = rng.choice([-1.0, 1.0], size=3)
            px = signs * x[perm]
            assert abs(t.log_density(x) - t.log_density(px)) < 1e-12


class TestBarrierGmm:
    def test_true_mean(self):
        mean, _ = true_moments(make_barrier_gmm(2, 3.0, 0.25))
        assert np.allclose(mean, [1.5, 0.0], atol=1e-15)

    def test_variance_along_barrier_axis(self):
        _, cov = true_moments(make_barrier_gmm(2, 3.0, 0.25))
        assert np.isclose(cov[0, 0], 0.0625 + 6.75)
        assert np.isclose(cov[1, 1], 0.0625)
        assert abs(cov[0, 1]) < 1e-14

    def test_vanishing_barrier_merges_components(self):
        mean, cov = true_moments(make_barrier_gmm(2, 1e-12, 0.25))
        assert np.allclose(mean, 0.0, atol=1e-12)
        assert np.allclose(cov, 0.0625 * np.eye(2), atol=1e-12)

    def test_rejects_nonpositive_parameters(self):
        with pytest.raises(ValueError):
            make_barrier_gmm(2, 0.0, 0.25)
        with pytest.raises(ValueError):
            make_barrier_gmm(2, 3.0, -1.0)

    def test_mode_occupancy_from_direct_sampler(self):
        # fraction of draws in the + mode = 3/4 within 5 binomial std devs
        t = make_barrier_gmm(2, 3.0, 0.25)
        rng = np.random.default_rng(1)
        n = 10 ** 5
        pts = direct_sample(t, rng, n)
        frac = np.mean(pts[:, 0] > 0)
        se = np.sqrt(0.75 * 0.25 / n)
        assert abs(frac - 0.75) < 5 * se


class TestBanana:
    def test_log_density_difference(self):
        t = make_banana()
        assert np.isclose(
            t.log_density(np.array([1.0, 1.0])) - t.log_density(np.array([0.0, 0.0])),
            1.0,
            atol=1e-12,
        )

    def test_sampler_marginal_moments(self):
        t = make_banana()
        rng = np.random.default_rng(2)
        n = 10 ** 5
        pts = direct_sample(t, rng, n)
        x = pts[:, 0]
        assert abs(x.mean() - 1.0) < 5 * x.std(ddof=1) / np.sqrt(n)
        var_se = x.var(ddof=1) * np.sqrt(2.0 / (n - 1))
        assert abs(x.var(ddof=1) - 0.5) < 5 * var_se

    def test_conditional_residual_centers_on_zero(self):
        t = make_banana()
        rng = np.random.default_rng(3)
        n = 10 ** 5
        pts = direct_sample(t, rng, n)
        resid = pts[:, 1] - pts[:, 0] ** 2
        assert abs(resid.mean()) < 3 * resid.std(ddof=1) / np.sqrt(n)

    def test_true_moments_from_oracle(self):
        t = make_banana()
        mean, cov = true_moments(t)
        assert np.allclose(mean, [1.0, 1.5], atol=1e-15)  # exact, not oracle
        se = t.oracle_mean_se
        assert se is not None
        # oracle covariance should sit near the hand-derived moments
        assert np.allclose(cov, BANANA_COV, atol=0.02)

    def test_oracle_mean_consistent_with_exact(self):
        t = make_banana()
        mean, cov, se = moment_oracle(t)
        assert np.all(np.abs(mean - [1.0, 1.5]) < 3 * se)


class TestRandomLandscape:
    def test_deterministic_in_seed(self):
        a = make_random_landscape(40, 20, 0.4, 10.0, 2)
        b = make_random_landscape(40, 20, 0.4, 10.0, 2)
        assert np.array_equal(a.mixture.weights, b.mixture.weights)
        assert np.array_equal(a.mixture.means, b.mixture.means)
        assert np.array_equal(a.mixture.covs, b.mixture.covs)
        c = make_random_landscape(41, 20, 0.4, 10.0, 2)
        assert not np.array_equal(a.mixture.means, c.mixture.means)

    def test_single_component_weight(self):
        t = make_random_landscape(0, 1, 0.4, 10.0, 2)
        assert np.allclose(t.mixture.weights, [1.0])

    def test_seed_40_scales(self):
        # narrow modes spread over a box of order +-7.5 per coordinate
        t = make_random_landscape(40, 20, 0.4, 10.0, 2)
        stds = np.sqrt(np.array([np.linalg.eigvalsh(c) for c in t.mixture.covs]))
        assert np.all(stds > 0.0) and np.all(stds < 1.0)
        assert np.max(np.abs(t.mixture.means)) < 7.5

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            make_random_landscape(0, 0, 0.4, 10.0, 2)
        with pytest.raises(ValueError):
            make_random_landscape(0, 20, -0.4, 10.0, 2)
        with pytest.raises(ValueError):
            make_random_landscape(0, 20, 0.4, 0.0, 2)


class TestTrueMoments:
    def test_single_gaussian_returns_own_moments(self):
        gm = GaussianMixture([1.0], [[0.3, -0.7]], [[[2.0, 0.4], [0.4, 1.0]]])
        assert np.allclose(gm.mean(), [0.3, -0.7])
        assert np.allclose(gm.cov(), [[2.0, 0.4], [0.4, 1.0]])

    def test_mixture_moments_match_sampling_oracle(self):
        # exact formulas vs 1e6 direct draws, within 4 standard errors
        t = make_random_landscape(40, 20, 0.4, 10.0, 2)
        mean, cov = true_moments(t)
        rng = np.random.default_rng(4)
        n = 10 ** 6
        pts = direct_sample(t, rng, n)
        se_mean = pts.std(axis=0, ddof=1) / np.sqrt(n)
        assert np.all(np.abs(pts.mean(axis=0) - mean) < 4 * se_mean)
        se_var = pts.var(axis=0, ddof=1) * np.sqrt(2.0 / (n - 1))
        assert np.all(np.abs(pts.var(axis=0, ddof=1) - cov.diagonal()) < 4 * se_var)

    def test_error_without_sampler_or_moments(self):
        from suburban.targets import Target

        bare = Target("bare", 1, lambda x: 0.0)
        with pytest.raises(ValueError):
            true_moments(bare)


class TestNormalization:
    @pytest.mark.parametrize(
        "spec,half,n",
        [
            ("symmetric(2,1.5,0.25)", 6.0, 601),
            ("barrier(2,3,0.25)", 6.0, 601),
            ("landscape(40,20,0.4,10.0,2)", 9.5, 951),
        ],
    )
    def test_quadrature_recovers_unit_mass(self, spec, half, n):
        # the mixture log density is normalized: integrating exp(logpdf)
        # over a wide box recovers 1 to 1e-3 relative error
        t = make_target(spec)
        grid = np.linspace(-half, half, n)
        X, Y = np.meshgrid(grid, grid, indexing="ij")
        pts = np.stack([X.ravel(), Y.ravel()], axis=1)
        vals = np.exp(t.mixture.logpdf(pts)).reshape(n, n)
        Z = np.trapezoid(np.trapezoid(vals, grid, axis=1), grid)
        assert abs(Z - 1.0) < 1e-3

    def test_scalar_and_vectorized_log_density_agree(self):
        t = make_target("landscape(40,20,0.4,10.0,2)")
        rng = np.random.default_rng(5)
        pts = rng.normal(scale=5.0, size=(200, 2))
        batch = t.mixture.logpdf(pts)
        scalar = np.array([t.log_density(p) for p in pts])
        assert np.allclose(scalar, batch, rtol=0, atol=1e-10)

    def test_log_density_finite_far_out(self):
        for spec in ("symmetric(2,1.5,0.25)", "barrier(2,3,0.25)", "banana",
                     "landscape(40,20,0.4,10.0,2)"):
            t = make_target(spec)
            assert np.isfinite(t.log_density(np.full(t.dim, 100.0)))
            assert np.isfinite(t.log_density(np.full(t.dim, -100.0)))


class TestEvalCounter:
    def test_counts_each_call_exactly_once(self):
        t = make_symmetric_mixture(2, 1.5, 0.25)
        assert t.eval_count == 0
        for i in range(17):
            t.log_density(np.zeros(2))
        assert t.eval_count == 17

    def test_direct_sampling_does_not_count(self):
        t = make_symmetric_mixture(2, 1.5, 0.25)
        direct_sample(t, np.random.default_rng(0), 100)
        true_moments(t)
        assert t.eval_count == 0


class TestMakeTarget:
    def test_round_trips(self):
        for spec, dim in [
            ("symmetric(2,1.5,0.25)", 2),
            ("barrier(10,3,0.25)", 10),
            ("banana", 2),
            ("landscape(40,20,0.4,10.0,2)", 2),
        ]:
            t = make_target(spec)
            assert t.dim == dim

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            make_target("cauchy(1)")
        with pytest.raises(ValueError):
            make_target("symmetric(2,1.5)")


class TestGaussianMixtureValidation:
    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            GaussianMixture([0.5, 0.6], np.zeros((2, 1)), np.ones((2, 1, 1)))

    def test_rejects_non_pd_cov(self):
        with pytest.raises(np.linalg.LinAlgError):
            GaussianMixture([1.0], np.zeros((1, 2)), [np.array([[1.0, 2.0], [2.0, 1.0]])])
