"""Run metrics: moment distances, rejection rate, energy autocovariance and
decay time, and tail-shell statistics.

The autocovariance keeps the 1/N normalization of the estimator it
reproduces (not the more common 1/(N-k)), and the decay time is computed
over the full energy series with no burn-in cut.  Tail shells are defined
through the Mahalanobis radius with respect to the target's true moments,
with true shell masses taken from a seeded direct-sampling oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .engine import ChainRecord
from .targets import Target, direct_sample, true_moments

TAIL_ORACLE_SEED = 524287
TAIL_ORACLE_DRAWS = 10 ** 6

# region masses cache, keyed by (target name, draw count, seed)
_REGION_MASS_CACHE: dict[tuple, np.ndarray] = {}

# series length above which the autocovariance switches to FFT; both
# branches are cross-checked in tests
_FFT_THRESHOLD = 512


@dataclass
class MetricReport:
    d_mean: float
    d_cov: float
    rejection_rate: float
    tau_dec: float
    tail_fractions: np.ndarray  # shells 0-1, 1-2, 2-3, >3 sigma
    eval_count: int


def estimate_moments(record, burn_in_fraction: float | None = None):
    """Pooled mean and (biased, 1/n) covariance of post-burn-in samples.

    All (t, sigma) positions after the burn-in cut count as individual
    draws; for a record of N timesteps that is (N - floor(b*N)) * M pooled
    vectors.  Accepts a ChainRecord or a raw (N, M, D) array.
    """
    if isinstance(record, ChainRecord):
        samples = record.samples
        if burn_in_fraction is None:
            burn_in_fraction = record.burn_in_fraction
    else:
        samples = np.asarray(record, dtype=float)
        if burn_in_fraction is None:
            burn_in_fraction = 0.0
    N = samples.shape[0]
    n_burn = int(burn_in_fraction * N)
    pooled = samples[n_burn:].reshape(-1, samples.shape[-1])
    if pooled.shape[0] < 2:
        raise ValueError("need at least 2 post-burn-in samples")
    mu = pooled.mean(axis=0)
    centered = pooled - mu
    cov = centered.T @ centered / pooled.shape[0]
    return mu, cov


def distance_metrics(mu_inf, cov_inf, mu_true, cov_true):
    """(d_mean, d_cov): Euclidean distance of means, Frobenius of covariances."""
    mu_inf = np.asarray(mu_inf, float)
    mu_true = np.asarray(mu_true, float)
    cov_inf = np.atleast_2d(np.asarray(cov_inf, float))
    cov_true = np.atleast_2d(np.asarray(cov_true, float))
    if mu_inf.shape != mu_true.shape or cov_inf.shape != cov_true.shape:
        raise ValueError("moment dimensions do not match")
    d_mean = float(np.linalg.norm(mu_inf - mu_true))
    d_cov = float(np.linalg.norm(cov_inf - cov_true, ord="fro"))
    return d_mean, d_cov


def autocovariance(V: np.ndarray, k: int) -> float:
    """c(k) = (1/N) sum_{t=1}^{N-|k|} (V_t - Vbar)(V_{t+|k|} - Vbar).

    1/N normalization, mirrored for negative k, so c(k) = c(-k).
    """
    V = np.asarray(V, dtype=float)
    N = V.size
    if N < 2:
        raise ValueError("series must have at least 2 entries")
    if abs(k) >= N:
        raise ValueError(f"|k| = {abs(k)} out of range for N = {N}")
    x = V - V.mean()
    k = abs(k)
    return float(np.dot(x[: N - k], x[k:]) / N)


def autocovariance_all(V: np.ndarray) -> np.ndarray:
    """c(k) for k = 0..N-1 in one pass; FFT-based for long series."""
    V = np.asarray(V, dtype=float)
    N = V.size
    if N < 2:
        raise ValueError("series must have at least 2 entries")
    x = V - V.mean()
    if N <= _FFT_THRESHOLD:
        return np.array([np.dot(x[: N - k], x[k:]) for k in range(N)]) / N
    nfft = 1
    while nfft < 2 * N:
        nfft *= 2
    f = np.fft.rfft(x, nfft)
    s = np.fft.irfft(f * np.conj(f), nfft)[:N]
    return s / N


def decay_time(V: np.ndarray) -> float:
    """Triangular-weighted sum of |c(k)/c(0)| over -N < k < N, full series.

    Undefined for a constant series (c(0) = 0); raises rather than
    reporting a number.
    """
    c = autocovariance_all(V)
    if c[0] <= 0.0:
        raise ValueError("decay time undefined for a constant series")
    N = c.size
    weights = 1.0 - np.arange(1, N) / N
    return float(1.0 + 2.0 * np.sum(weights * np.abs(c[1:]) / c[0]))


def mahalanobis_radii(points: np.ndarray, mu: np.ndarray, cov: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, float))
    cov = np.atleast_2d(np.asarray(cov, float))
    try:
        L = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise ValueError("true covariance is singular") from exc
    w = solve_triangular(L, (points - mu).T, lower=True)
    return np.sqrt(np.sum(w * w, axis=0))


def _shell_fractions(radii: np.ndarray) -> np.ndarray:
    counts, _ = np.histogram(radii, bins=[0.0, 1.0, 2.0, 3.0, np.inf])
    return counts / radii.size


def region_masses(
    target: Target,
    oracle_sample_count: int = TAIL_ORACLE_DRAWS,
    oracle_seed: int = TAIL_ORACLE_SEED,
) -> np.ndarray:
    """True masses of the four Mahalanobis shells, from seeded direct draws."""
    key = (target.name, oracle_sample_count, oracle_seed)
    if key not in _REGION_MASS_CACHE:
        mu, cov = true_moments(target)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(oracle_seed)))
        pts = direct_sample(target, rng, oracle_sample_count)
        _REGION_MASS_CACHE[key] = _shell_fractions(mahalanobis_radii(pts, mu, cov))
    return _REGION_MASS_CACHE[key].copy()


def tail_fractions(
    samples: np.ndarray,
    target: Target,
    oracle_sample_count: int = TAIL_ORACLE_DRAWS,
    oracle_seed: int = TAIL_ORACLE_SEED,
) -> np.ndarray:
    """Signed count discrepancies (inferred - true) / total per shell.

    Shells are Mahalanobis-radius bins [0,1), [1,2), [2,3), [3,inf) with
    respect to the target's true moments.  The four values sum to zero by
    construction.
    """
    mu, cov = true_moments(target)
    pts = np.asarray(samples, float).reshape(-1, target.dim)
    inferred = _shell_fractions(mahalanobis_radii(pts, mu, cov))
    return inferred - region_masses(target, oracle_sample_count, oracle_seed)


def rejection_rate(record: ChainRecord) -> float:
    """Rejected sub-updates over total sub-updates."""
    total = record.accept_count + record.reject_count
    if total == 0:
        raise ValueError("no sub-updates recorded")
    return record.reject_count / total


def compute_metric_report(
    record: ChainRecord,
    target: Target,
    burn_in_fraction: float | None = None,
    oracle_sample_count: int = TAIL_ORACLE_DRAWS,
) -> MetricReport:
    """All per-trial metrics from one chain record.

    Moments and tail shells use post-burn-in samples; the decay time uses
    the full energy series.
    """
    if burn_in_fraction is None:
        burn_in_fraction = record.burn_in_fraction
    mu_true, cov_true = true_moments(target)
    mu_inf, cov_inf = estimate_moments(record, burn_in_fraction)
    d_mean, d_cov = distance_metrics(mu_inf, cov_inf, mu_true, cov_true)
    n_burn = int(burn_in_fraction * record.N)
    tails = tail_fractions(
        record.samples[n_burn:], target, oracle_sample_count=oracle_sample_count
    )
    return MetricReport(
        d_mean=d_mean,
        d_cov=d_cov,
        rejection_rate=rejection_rate(record),
        tau_dec=decay_time(record.energy_series),
        tail_fractions=tails,
        eval_count=record.eval_count,
    )
