"""Benchmark target distributions and their ground-truth oracles.

Every shipped target exposes an everywhere-finite unnormalized log density,
exact or oracle moments, and an exact i.i.d. sampler used for moment and
tail-statistics ground truth.  All mixture densities go through log-sum-exp
with max subtraction; naive exponentials underflow far from the means
(chains are initialized out to +-100 per coordinate).
"""
from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.special import logsumexp

# Fast-path type tags consumed by the compiled engine.
KIND_MIXTURE = 0
KIND_BANANA = 1

# Seed for the 1e6-draw moment oracle of targets without closed-form
# covariance; fixed so oracle values are re-runnable.
_MOMENT_ORACLE_SEED = 741853
_MOMENT_ORACLE_DRAWS = 10 ** 6


class GaussianMixture:
    """Weighted mixture of multivariate normals with exact moments.

    Weights must sum to 1 within 1e-12 and every covariance must be
    symmetric positive definite (checked via Cholesky at construction).
    """

    def __init__(self, weights, means, covs):
        self.weights = np.asarray(weights, dtype=float)
        self.means = np.asarray(means, dtype=float)
        self.covs = np.asarray(covs, dtype=float)
        K = self.weights.shape[0]
        if self.means.shape[0] != K or self.covs.shape[0] != K:
            raise ValueError("weights, means and covs must agree on component count")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {self.weights.sum()}, expected 1")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        D = self.means.shape[1]
        self.dim = D
        self.chols = np.empty_like(self.covs)
        self.precisions = np.empty_like(self.covs)
        self.log_norms = np.empty(K)
        for c in range(K):
            cov = self.covs[c]
            if not np.allclose(cov, cov.T):
                raise ValueError(f"component {c} covariance is not symmetric")
            L = np.linalg.cholesky(cov)  # raises LinAlgError if not PD
            self.chols[c] = L
            self.precisions[c] = np.linalg.inv(cov)
            logdet = 2.0 * np.sum(np.log(np.diag(L)))
            self.log_norms[c] = -0.5 * (D * np.log(2.0 * np.pi) + logdet)
        with np.errstate(divide="ignore"):
            self.log_weights = np.log(self.weights)

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]

    def logpdf(self, x: np.ndarray) -> np.ndarray:
        """Normalized mixture log density; x is (D,) or (n, D)."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 1
        pts = x[None, :] if scalar else x
        diff = pts[:, None, :] - self.means[None, :, :]  # (n, K, D)
        quad = np.einsum("nkd,kde,nke->nk", diff, self.precisions, diff)
        comp = self.log_weights + self.log_norms - 0.5 * quad
        out = logsumexp(comp, axis=1)
        return float(out[0]) if scalar else out

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        comps = rng.choice(self.n_components, size=size, p=self.weights)
        z = rng.standard_normal((size, self.dim))
        out = np.empty((size, self.dim))
        for c in range(self.n_components):
            mask = comps == c
            if mask.any():
                out[mask] = self.means[c] + z[mask] @ self.chols[c].T
        return out

    def mean(self) -> np.ndarray:
        return self.weights @ self.means

    def cov(self) -> np.ndarray:
        mu = self.mean()
        second = np.einsum("k,kde->de", self.weights, self.covs)
        second += np.einsum("k,kd,ke->de", self.weights, self.means, self.means)
        return second - np.outer(mu, mu)


class Target:
    """A D-dimensional target: log density, true moments, direct sampler.

    ``log_density`` takes one point and increments ``eval_count`` by exactly
    one per call; chains own their counter window by snapshotting.  The
    direct sampler draws exact i.i.d. points and touches no counter.
    """

    def __init__(
        self,
        name: str,
        dim: int,
        logpdf: Callable[[np.ndarray], float],
        sampler: Callable[[np.random.Generator, int], np.ndarray] | None = None,
        mixture: GaussianMixture | None = None,
        true_mean: np.ndarray | None = None,
        true_cov: np.ndarray | None = None,
        fast_spec: tuple | None = None,
    ):
        self.name = name
        self.dim = dim
        self._logpdf = logpdf
        self._sampler = sampler
        self.mixture = mixture
        self._true_mean = None if true_mean is None else np.asarray(true_mean, float)
        self._true_cov = None if true_cov is None else np.asarray(true_cov, float)
        self.fast_spec = fast_spec
        self.eval_count = 0
        self.oracle_mean_se = None  # set when moments come from the sampling oracle

    def log_density(self, x: np.ndarray) -> float:
        """Unnormalized log density at one point; counts one evaluation."""
        self.eval_count += 1
        return float(self._logpdf(np.asarray(x, dtype=float)))

    @property
    def has_direct_sampler(self) -> bool:
        return self._sampler is not None

    def __repr__(self):
        return f"Target({self.name!r}, dim={self.dim})"


def direct_sample(target: Target, rng: np.random.Generator, size: int | None = None):
    """Exact i.i.d. draw(s) from the normalized target; no counters touched.

    Returns a (D,) point when ``size`` is None, else an (size, D) array.
    """
    if not target.has_direct_sampler:
        raise ValueError(f"target {target.name!r} has no direct sampler")
    if size is None:
        return target._sampler(rng, 1)[0]
    return target._sampler(rng, size)


def moment_oracle(target: Target, n: int = _MOMENT_ORACLE_DRAWS, seed: int = _MOMENT_ORACLE_SEED):
    """Monte Carlo moments from n direct draws: (mean, cov, se_of_mean)."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    pts = direct_sample(target, rng, n)
    mean = pts.mean(axis=0)
    cov = np.cov(pts, rowvar=False, bias=True)
    se = pts.std(axis=0, ddof=1) / np.sqrt(n)
    return mean, np.atleast_2d(cov), se


def true_moments(target: Target):
    """Ground-truth (mean, cov) of a target.

    Exact mixture formulas where available; otherwise a seeded direct
    sampling oracle (1e6 draws), whose mean standard error is stored on
    ``target.oracle_mean_se``.  Results are cached on the target.
    """
    if target._true_mean is None or target._true_cov is None:
        if not target.has_direct_sampler:
            raise ValueError(
                f"target {target.name!r} has neither analytic moments nor a direct sampler"
            )
        mean, cov, se = moment_oracle(target)
        if target._true_mean is None:
            target._true_mean = mean
        target._true_cov = cov
        target.oracle_mean_se = se
    return target._true_mean.copy(), target._true_cov.copy()


def _mixture_target(name: str, gm: GaussianMixture) -> Target:
    fast_spec = (KIND_MIXTURE, gm.log_weights, gm.means, gm.precisions, gm.log_norms)
    # One compiled scalar density shared by the generic and fast chain paths;
    # gm.logpdf stays as an independently coded vectorized cross-check.
    from . import fastpath

    scalar = fastpath.make_scalar_logpdf(*fast_spec) if fastpath.AVAILABLE else gm.logpdf
    return Target(
        name,
        gm.dim,
        scalar,
        sampler=gm.sample,
        mixture=gm,
        true_mean=gm.mean(),
        true_cov=gm.cov(),
        fast_spec=fast_spec,
    )


def make_symmetric_mixture(D: int, mu: float, sigma2: float) -> Target:
    """Equal-weight mixture of 2D normals at +-mu along each axis, cov sigma2*I.

    True mean is 0 and true covariance (sigma2 + mu**2 / D) * I: each axis
    picks up mu**2 mass from exactly 2 of the 2D components.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    K = 2 * D
    means = np.zeros((K, D))
    for j in range(D):
        means[2 * j, j] = mu
        means[2 * j + 1, j] = -mu
    covs = np.broadcast_to(sigma2 * np.eye(D), (K, D, D)).copy()
    gm = GaussianMixture(np.full(K, 1.0 / K), means, covs)
    return _mixture_target(f"symmetric({D},{mu},{sigma2})", gm)


def make_barrier_gmm(D: int, L_barrier: float, sigma: float) -> Target:
    """Two-component mixture, weights 3/4 and 1/4, centers at (+-L, 0, ..., 0).

    True mean is (L/2, 0, ..., 0); the first axis carries extra variance
    3 L**2 / 4 on top of sigma**2.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if L_barrier <= 0:
        raise ValueError(f"L_barrier must be positive, got {L_barrier}")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    means = np.zeros((2, D))
    means[0, 0] = L_barrier
    means[1, 0] = -L_barrier
    covs = np.broadcast_to(sigma ** 2 * np.eye(D), (2, D, D)).copy()
    gm = GaussianMixture(np.array([0.75, 0.25]), means, covs)
    return _mixture_target(f"barrier({D},{L_barrier},{sigma})", gm)


def _banana_logpdf(x: np.ndarray) -> float:
    return -((x[0] - 1.0) ** 2) - 100.0 * (x[1] - x[0] ** 2) ** 2


def _banana_sampler(rng: np.random.Generator, size: int) -> np.ndarray:
    x = 1.0 + np.sqrt(0.5) * rng.standard_normal(size)
    y = x ** 2 + np.sqrt(1.0 / 200.0) * rng.standard_normal(size)
    return np.stack([x, y], axis=1)


def make_banana() -> Target:
    """The 2-D banana: log density -(x-1)^2 - 100 (y - x^2)^2, up to a constant.

    The conditional structure gives an exact sampler (x normal, then y
    normal around x^2), mean (1, 1.5) exactly, covariance via the seeded
    moment oracle rather than fourth-moment algebra.
    """
    fast_spec = (
        KIND_BANANA,
        np.zeros(0),
        np.zeros((0, 2)),
        np.zeros((0, 2, 2)),
        np.zeros(0),
    )
    from . import fastpath

    scalar = fastpath.make_scalar_logpdf(*fast_spec) if fastpath.AVAILABLE else _banana_logpdf
    return Target(
        "banana",
        2,
        scalar,
        sampler=_banana_sampler,
        true_mean=np.array([1.0, 1.5]),
        true_cov=None,
        fast_spec=fast_spec,
    )


def make_random_landscape(seed: int, K: int, stdmu: float, stdsig: float, D: int) -> Target:
    """Seeded K-component mixture landscape of local maxima and minima.

    Deterministic in ``seed``: component weights are normalized Uniform[0,1]
    draws, means are i.i.d. normal with per-coordinate scale 1/stdmu, and
    covariances are (W W^T + D I) / stdsig**2 with W a D x D standard normal
    matrix.  stdmu = 0.4, stdsig = 10 puts about twenty O(0.2)-wide modes
    across roughly [-7.5, 7.5] per coordinate.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if stdmu <= 0 or stdsig <= 0:
        raise ValueError("stdmu and stdsig must be positive")
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    gen = np.random.default_rng(seed)
    raw_w = gen.uniform(0.0, 1.0, K)
    weights = raw_w / raw_w.sum()
    means = (1.0 / stdmu) * gen.standard_normal((K, D))
    covs = np.empty((K, D, D))
    for c in range(K):
        W = gen.standard_normal((D, D))
        covs[c] = (W @ W.T + D * np.eye(D)) / stdsig ** 2
    gm = GaussianMixture(weights, means, covs)
    return _mixture_target(f"landscape({seed},{K},{stdmu},{stdsig},{D})", gm)


def make_target(spec: str) -> Target:
    """Build a target from its config-file name.

    Accepted forms: ``symmetric(D,mu,sigma2)``, ``barrier(D,L,sigma)``,
    ``banana``, ``landscape(seed,K,stdmu,stdsig,D)``.
    """
    s = spec.strip()
    if s == "banana":
        return make_banana()
    if "(" not in s or not s.endswith(")"):
        raise ValueError(f"unrecognized target spec: {spec!r}")
    head, _, inner = s.partition("(")
    args = [a.strip() for a in inner[:-1].split(",")]
    try:
        if head == "symmetric":
            D, mu, sigma2 = args
            return make_symmetric_mixture(int(D), float(mu), float(sigma2))
        if head == "barrier":
            D, L, sigma = args
            return make_barrier_gmm(int(D), float(L), float(sigma))
        if head == "landscape":
            seed, K, stdmu, stdsig, D = args
            return make_random_landscape(int(seed), int(K), float(stdmu), float(stdsig), int(D))
    except ValueError as exc:
        raise ValueError(f"bad arguments in target spec {spec!r}: {exc}") from exc
    raise ValueError(f"unrecognized target spec: {spec!r}")
