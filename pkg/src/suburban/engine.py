"""The ensemble chain: Gibbs sweeps over agents with a fresh random graph
each timestep.

A chain is strictly sequential inside a sweep (later sub-updates see the
freshest neighbor values); independent trials parallelize across chains.
Two streams are split off the chain seed, one for graph draws and one for
moves, so the adjacency sequence is a function of the seed alone and in
particular identical across runs that differ only in the target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fastpath
from .graphs import GraphEnsembleSpec, GraphKind, draw_edge_list
from .kernel import (
    KernelParams,
    ScalarProposalContext,
    UpdateMode,
    conditional_form,
    log_kernel_density,
    propose_agent,
)
from .targets import Target


@dataclass
class EnsembleState:
    """Positions of all M agents at one timestep: an (M, D) float matrix."""

    values: np.ndarray
    t: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ValueError(f"state must be (M, D), got shape {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("state contains non-finite entries")


@dataclass
class ChainConfig:
    target: Target
    graph: GraphEnsembleSpec
    kernel: KernelParams
    N: int
    M: int
    init_box_halfwidth: float = 100.0
    burn_in_fraction: float = 0.10
    seed: int = 0

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise ValueError("N and M must be >= 1")
        if self.graph.M != self.M:
            raise ValueError(f"graph spec M = {self.graph.M} != chain M = {self.M}")
        if self.init_box_halfwidth < 0:
            raise ValueError("init_box_halfwidth must be nonnegative")
        if not 0.0 <= self.burn_in_fraction < 1.0:
            raise ValueError("burn_in_fraction must lie in [0, 1)")


@dataclass
class SweepStats:
    accepts: int = 0
    rejects: int = 0
    evals: int = 0


@dataclass
class ChainRecord:
    """Everything a run produces: one recorded state per timestep, the
    energy series, accept/reject totals and the target-evaluation count."""

    samples: np.ndarray  # (N, M, D)
    accept_count: int
    reject_count: int
    energy_series: np.ndarray  # (N,)
    eval_count: int
    adjacency_edge_counts: np.ndarray  # (N,) edges of the graph used at step t
    burn_in_fraction: float = 0.10

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def M(self) -> int:
        return self.samples.shape[1]

    @property
    def D(self) -> int:
        return self.samples.shape[2]

    def mean_realized_deff(self) -> float:
        return float(self.adjacency_edge_counts.mean() / self.M)


def chain_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(graph stream, move stream) split deterministically from one seed."""
    graph_ss, move_ss = np.random.SeedSequence(seed).spawn(2)
    return (
        np.random.Generator(np.random.PCG64(graph_ss)),
        np.random.Generator(np.random.PCG64(move_ss)),
    )


def initialize(config: ChainConfig, rng: np.random.Generator) -> EnsembleState:
    """All M*D coordinates i.i.d. Uniform[-h, +h]."""
    h = config.init_box_halfwidth
    D = config.target.dim
    return EnsembleState(rng.uniform(-h, h, size=(config.M, D)), t=0)


def _csr_neighbors(M: int, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-agent sorted neighbor lists in compressed form."""
    if edges.size == 0:
        return np.zeros(M + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((dst, src))
    indptr = np.zeros(M + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=M), out=indptr[1:])
    return indptr, dst[order].astype(np.int64)


def _sorted_neighbor_sum(values_k: np.ndarray, nbr: np.ndarray, x_old: float) -> float:
    # sequential sum in sorted-neighbor order, matching the compiled path
    S = 0.0
    for j in nbr:
        S += values_k[j] - x_old
    return S


def suburban_sweep(
    state: EnsembleState,
    A: np.ndarray,
    target: Target,
    params: KernelParams,
    rng: np.random.Generator,
    agent_logpi: np.ndarray | None = None,
) -> tuple[EnsembleState, SweepStats]:
    """One full Gibbs pass over agents 0..M-1 under a fixed graph.

    Gibbs mode runs one scalar MH sub-update per agent per dimension; joint
    mode one D-dimensional sub-update per agent.  Only the visited agent's
    target factor enters the acceptance ratio (the joint target factorizes
    across agents).  A cached per-agent log density may be passed in and is
    updated in place; otherwise it is computed here, at M evaluations.

    A non-finite log density at a proposal counts as a rejection.
    """
    values = state.values.copy()
    M, D = values.shape
    stats = SweepStats()
    if agent_logpi is None:
        agent_logpi = np.array([target.log_density(values[s]) for s in range(M)])
        stats.evals += M
    beta = params.beta
    var = 1.0 / (4.0 * beta)
    sd = math.sqrt(var)
    joint = params.update_mode == UpdateMode.JOINT_PER_AGENT

    for sigma in range(M):
        nbr = np.flatnonzero(A[sigma])
        if joint:
            proposal = np.empty(D)
            log_h = 0.0
            for k in range(D):
                x_old = values[sigma, k]
                S = _sorted_neighbor_sum(values[:, k], nbr, x_old)
                mean_f = x_old + 0.5 * S
                x_new = mean_f + sd * rng.standard_normal()
                fwd = ScalarProposalContext(x_old, values[nbr, k], beta)
                rev = ScalarProposalContext(x_new, values[nbr, k], beta)
                log_h += log_kernel_density(x_old, rev) - log_kernel_density(x_new, fwd)
                proposal[k] = x_new
            lp_new = target.log_density(proposal)
            stats.evals += 1
            log_ratio = log_h + lp_new - agent_logpi[sigma]
            if math.log(rng.random()) < log_ratio:
                values[sigma] = proposal
                agent_logpi[sigma] = lp_new
                stats.accepts += 1
            else:
                stats.rejects += 1
        else:
            for k in range(D):
                x_old = values[sigma, k]
                S = _sorted_neighbor_sum(values[:, k], nbr, x_old)
                mean_f = x_old + 0.5 * S
                x_new = mean_f + sd * rng.standard_normal()
                fwd = ScalarProposalContext(x_old, values[nbr, k], beta)
                rev = ScalarProposalContext(x_new, values[nbr, k], beta)
                log_h = log_kernel_density(x_old, rev) - log_kernel_density(x_new, fwd)
                values[sigma, k] = x_new
                lp_new = target.log_density(values[sigma])
                stats.evals += 1
                log_ratio = log_h + lp_new - agent_logpi[sigma]
                if math.log(rng.random()) < log_ratio:
                    agent_logpi[sigma] = lp_new
                    stats.accepts += 1
                else:
                    values[sigma, k] = x_old
                    stats.rejects += 1
    return EnsembleState(values, t=state.t + 1), stats


def run_chain(config: ChainConfig, force_generic: bool = False) -> ChainRecord:
    """Run the full chain per the sampling loop: sweep under the current
    graph, record the state and its energy, then redraw the graph.

    Fully deterministic given ``config.seed``.  Targets carrying a compiled
    density spec run through the numba fast path, which consumes the random
    stream identically to the generic path; ``force_generic`` disables it.
    """
    target = config.target
    graph_rng, move_rng = chain_streams(config.seed)
    state = initialize(config, move_rng)
    N, M, D = config.N, config.M, target.dim

    use_fast = (
        not force_generic
        and target.fast_spec is not None
        and fastpath.AVAILABLE
    )

    samples = np.empty((N, M, D))
    energy = np.empty(N)
    edge_counts = np.empty(N, dtype=np.int64)
    accepts = rejects = 0

    if use_fast:
        kind, log_w, means, precs, lognorms = target.fast_spec
        values = state.values
        agent_logpi = fastpath.eval_logpi_all(values, kind, log_w, means, precs, lognorms)
        evals = M
        joint = config.kernel.update_mode == UpdateMode.JOINT_PER_AGENT
        for t in range(N):
            edges = draw_edge_list(config.graph, graph_rng)
            edge_counts[t] = edges.shape[0]
            indptr, indices = _csr_neighbors(M, edges)
            acc, rej, ev = fastpath.sweep(
                values, agent_logpi, indptr, indices,
                config.kernel.beta, joint,
                kind, log_w, means, precs, lognorms, move_rng,
            )
            accepts += acc
            rejects += rej
            evals += ev
            samples[t] = values
            energy[t] = -agent_logpi.sum()
        target.eval_count += evals
    else:
        agent_logpi = np.array([target.log_density(state.values[s]) for s in range(M)])
        evals = M
        for t in range(N):
            edges = draw_edge_list(config.graph, graph_rng)
            edge_counts[t] = edges.shape[0]
            A = np.zeros((M, M), dtype=bool)
            if edges.size:
                A[edges[:, 0], edges[:, 1]] = True
                A[edges[:, 1], edges[:, 0]] = True
            state, stats = suburban_sweep(
                state, A, target, config.kernel, move_rng, agent_logpi
            )
            accepts += stats.accepts
            rejects += stats.rejects
            evals += stats.evals
            samples[t] = state.values
            energy[t] = -agent_logpi.sum()

    return ChainRecord(
        samples=samples,
        accept_count=accepts,
        reject_count=rejects,
        energy_series=energy,
        eval_count=evals,
        adjacency_edge_counts=edge_counts,
        burn_in_fraction=config.burn_in_fraction,
    )


def dump_samples(record: ChainRecord, path: str) -> None:
    """Raw sample dump, one row per (t, sigma, x_1..x_D).

    ``.csv`` paths get text output; anything else is written as an ``.npy``
    binary of the same matrix.
    """
    N, M, D = record.samples.shape
    t_col = np.repeat(np.arange(N), M)
    s_col = np.tile(np.arange(M), N)
    flat = record.samples.reshape(N * M, D)
    table = np.column_stack([t_col, s_col, flat])
    if str(path).endswith(".csv"):
        header = "t,sigma," + ",".join(f"x_{k + 1}" for k in range(D))
        np.savetxt(path, table, delimiter=",", header=header, comments="")
    else:
        np.save(path, table)
