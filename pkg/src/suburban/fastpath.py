"""Compiled inner loops for the shipped target families.

The sweep below is the numba twin of ``engine.suburban_sweep``: identical
update order, identical arithmetic, identical random-stream consumption
(numba's Generator methods are bit-compatible with numpy's), so the two
paths produce the same chain from the same seed.  Targets advertise
themselves here through ``Target.fast_spec`` = (kind, log_w, means,
precisions, log_norms); kind 0 is a Gaussian mixture, kind 1 the banana.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap(args[0]) if args and callable(args[0]) else wrap


@njit(cache=True)
def _logpdf(kind, x, log_w, means, precs, lognorms):
    if kind == 1:
        return -((x[0] - 1.0) ** 2) - 100.0 * (x[1] - x[0] ** 2) ** 2
    K = log_w.shape[0]
    D = x.shape[0]
    vals = np.empty(K)
    best = -np.inf
    for c in range(K):
        q = 0.0
        for i in range(D):
            acc = 0.0
            for j in range(D):
                acc += precs[c, i, j] * (x[j] - means[c, j])
            q += (x[i] - means[c, i]) * acc
        v = log_w[c] + lognorms[c] - 0.5 * q
        vals[c] = v
        if v > best:
            best = v
    s = 0.0
    for c in range(K):
        s += np.exp(vals[c] - best)
    return best + np.log(s)


def make_scalar_logpdf(kind, log_w, means, precs, lognorms):
    """Scalar log density closure backed by the compiled kernel.

    Shipped targets route their per-point density here so that the generic
    and compiled chain paths see bit-identical values.
    """

    def logpdf(x):
        xx = np.ascontiguousarray(x, dtype=np.float64)
        return float(_logpdf(kind, xx, log_w, means, precs, lognorms))

    return logpdf


@njit(cache=True)
def _eval_logpi_all(values, kind, log_w, means, precs, lognorms):
    M = values.shape[0]
    out = np.empty(M)
    for sigma in range(M):
        out[sigma] = _logpdf(kind, values[sigma], log_w, means, precs, lognorms)
    return out


def eval_logpi_all(values, kind, log_w, means, precs, lognorms):
    return _eval_logpi_all(values, kind, log_w, means, precs, lognorms)


@njit(cache=True)
def _sweep(values, agent_logpi, indptr, indices, beta, joint,
           kind, log_w, means, precs, lognorms, rng):
    M, D = values.shape
    accepts = 0
    rejects = 0
    evals = 0
    var = 1.0 / (4.0 * beta)
    sd = np.sqrt(var)
    log_norm = -0.5 * np.log(2.0 * np.pi * var)
    proposal = np.empty(D)
    backup = np.empty(D)
    for sigma in range(M):
        lo, hi = indptr[sigma], indptr[sigma + 1]
        if joint:
            log_h = 0.0
            for k in range(D):
                x_old = values[sigma, k]
                S = 0.0
                for ii in range(lo, hi):
                    S += values[indices[ii], k] - x_old
                mean_f = x_old + 0.5 * S
                x_new = mean_f + sd * rng.standard_normal()
                Sr = 0.0
                for ii in range(lo, hi):
                    Sr += values[indices[ii], k] - x_new
                mean_r = x_new + 0.5 * Sr
                lq_fwd = log_norm - (x_new - mean_f) ** 2 / (2.0 * var)
                lq_rev = log_norm - (x_old - mean_r) ** 2 / (2.0 * var)
                log_h += lq_rev - lq_fwd
                proposal[k] = x_new
                backup[k] = x_old
            for k in range(D):
                values[sigma, k] = proposal[k]
            lp_new = _logpdf(kind, values[sigma], log_w, means, precs, lognorms)
            evals += 1
            log_ratio = log_h + lp_new - agent_logpi[sigma]
            if np.log(rng.random()) < log_ratio:
                agent_logpi[sigma] = lp_new
                accepts += 1
            else:
                for k in range(D):
                    values[sigma, k] = backup[k]
                rejects += 1
        else:
            for k in range(D):
                x_old = values[sigma, k]
                S = 0.0
                for ii in range(lo, hi):
                    S += values[indices[ii], k] - x_old
                mean_f = x_old + 0.5 * S
                x_new = mean_f + sd * rng.standard_normal()
                Sr = 0.0
                for ii in range(lo, hi):
                    Sr += values[indices[ii], k] - x_new
                mean_r = x_new + 0.5 * Sr
                lq_fwd = log_norm - (x_new - mean_f) ** 2 / (2.0 * var)
                lq_rev = log_norm - (x_old - mean_r) ** 2 / (2.0 * var)
                log_h = lq_rev - lq_fwd
                values[sigma, k] = x_new
                lp_new = _logpdf(kind, values[sigma], log_w, means, precs, lognorms)
                evals += 1
                log_ratio = log_h + lp_new - agent_logpi[sigma]
                if np.log(rng.random()) < log_ratio:
                    agent_logpi[sigma] = lp_new
                    accepts += 1
                else:
                    values[sigma, k] = x_old
                    rejects += 1
    return accepts, rejects, evals


def sweep(values, agent_logpi, indptr, indices, beta, joint,
          kind, log_w, means, precs, lognorms, rng):
    return _sweep(values, agent_logpi, indptr, indices, beta, joint,
                  kind, log_w, means, precs, lognorms, rng)


_MAX_SHRINK = 10 ** 6


@njit(cache=True)
def _slice_sweep(values, agent_logpi, w, max_doublings,
                 kind, log_w, means, precs, lognorms, rng):
    # Twin of slice_baseline's generic update: same branch order, same
    # stream consumption, same short-circuits in the interval check.
    M, D = values.shape
    evals = 0
    for sigma in range(M):
        row = values[sigma]
        for k in range(D):
            x0 = row[k]
            f0 = agent_logpi[sigma]
            y = f0 + np.log(rng.random())
            u = rng.random()
            L = x0 - w * u
            R = L + w
            row[k] = L
            fL = _logpdf(kind, row, log_w, means, precs, lognorms)
            row[k] = R
            fR = _logpdf(kind, row, log_w, means, precs, lognorms)
            row[k] = x0
            evals += 2
            remaining = max_doublings
            while remaining > 0 and (fL > y or fR > y):
                if rng.random() < 0.5:
                    L -= R - L
                    row[k] = L
                    fL = _logpdf(kind, row, log_w, means, precs, lognorms)
                else:
                    R += R - L
                    row[k] = R
                    fR = _logpdf(kind, row, log_w, means, precs, lognorms)
                row[k] = x0
                evals += 1
                remaining -= 1
            lo, hi = L, R
            accepted = False
            for _ in range(_MAX_SHRINK):
                x1 = lo + rng.random() * (hi - lo)
                row[k] = x1
                f1 = _logpdf(kind, row, log_w, means, precs, lognorms)
                evals += 1
                ok = f1 > y
                if ok:
                    Lh, Rh = L, R
                    while Rh - Lh > 1.1 * w:
                        mid = 0.5 * (Lh + Rh)
                        crossed = (x0 < mid) != (x1 < mid)
                        if x1 < mid:
                            Rh = mid
                        else:
                            Lh = mid
                        if crossed:
                            row[k] = Lh
                            fl = _logpdf(kind, row, log_w, means, precs, lognorms)
                            evals += 1
                            if fl <= y:
                                row[k] = Rh
                                fr = _logpdf(kind, row, log_w, means, precs, lognorms)
                                evals += 1
                                if fr <= y:
                                    ok = False
                                    break
                if ok:
                    row[k] = x1
                    agent_logpi[sigma] = f1
                    accepted = True
                    break
                if x1 < x0:
                    lo = x1
                else:
                    hi = x1
                row[k] = x0
            if not accepted:
                raise RuntimeError("slice interval shrank without acceptance")
    return evals


def slice_sweep(values, agent_logpi, w, max_doublings,
                kind, log_w, means, precs, lognorms, rng):
    return _slice_sweep(values, agent_logpi, w, max_doublings,
                        kind, log_w, means, precs, lognorms, rng)
