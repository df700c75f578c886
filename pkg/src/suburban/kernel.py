"""The coupled Gaussian proposal kernel and its MH acceptance ratio.

Each scalar coordinate of an agent is proposed from a Gaussian whose
exponent penalizes both the move itself and its mismatch with the offsets
to joined neighbors, with the self-coupling set adaptively to
``alpha = 2*beta - n*beta`` for ``n`` joined neighbors.  Completing the
square collapses this to

    mean     = x_old + sum(neighbor - x_old) / 2
    variance = 1 / (4 * beta)

independent of ``n``.  Note ``alpha`` goes negative for n > 2; the total
quadratic coefficient stays 2*beta > 0, so the kernel remains a proper
Gaussian and implementations must not reject negative alpha.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .graphs import neighbors


class UpdateMode(str, Enum):
    GIBBS_PER_DIMENSION = "gibbs"
    JOINT_PER_AGENT = "joint"


@dataclass(frozen=True)
class KernelParams:
    beta: float
    update_mode: UpdateMode = UpdateMode.GIBBS_PER_DIMENSION

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class ScalarProposalContext:
    """One coordinate of one agent plus the same coordinate of its joined
    neighbors, at their current values."""

    x_old: float
    neighbor_values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(
            self, "neighbor_values", np.asarray(self.neighbor_values, dtype=float)
        )
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


def conditional_form(ctx: ScalarProposalContext) -> tuple[float, float]:
    """Exact conditional Gaussian (mean, variance) of the kernel.

    mean = x_old + S/2 with S the summed neighbor offsets; variance is
    1/(4*beta) for every neighbor count.
    """
    # sequential accumulation, same order as the compiled sweep
    S = 0.0
    for v in ctx.neighbor_values:
        S += v - ctx.x_old
    return ctx.x_old + 0.5 * S, 1.0 / (4.0 * ctx.beta)


def log_kernel_density(x_new: float, ctx: ScalarProposalContext) -> float:
    """Normalized Gaussian log density of ``x_new`` under the conditional."""
    mean, var = conditional_form(ctx)
    return -0.5 * math.log(2.0 * math.pi * var) - (x_new - mean) ** 2 / (2.0 * var)


def acceptance_log_ratio(
    x_old: float,
    x_new: float,
    neighbor_values: np.ndarray,
    beta: float,
    target_logpi_old: float,
    target_logpi_new: float,
) -> float:
    """Log of the MH ratio: reverse-over-forward kernel times target ratio.

    Neighbor values are held fixed across the forward and reverse kernels
    (Gibbs semantics).  With no neighbors the kernel is a symmetric random
    walk and the Hastings term vanishes exactly.
    """
    fwd = ScalarProposalContext(x_old, neighbor_values, beta)
    rev = ScalarProposalContext(x_new, neighbor_values, beta)
    hastings = log_kernel_density(x_old, rev) - log_kernel_density(x_new, fwd)
    return hastings + (target_logpi_new - target_logpi_old)


def propose_agent(
    values: np.ndarray,
    sigma: int,
    A: np.ndarray,
    params: KernelParams,
    rng: np.random.Generator,
) -> tuple[np.ndarray, list[ScalarProposalContext]]:
    """Draw a full-coordinate proposal for agent ``sigma``.

    Dimension k couples only to dimension k of the joined neighbors; the D
    coordinates are independent conditionals, so the joint proposal is
    their product.  Consumes one standard normal per coordinate.
    """
    M, D = values.shape
    if not 0 <= sigma < M:
        raise IndexError(f"agent index {sigma} out of range for M = {M}")
    nbr = neighbors(A, sigma)
    proposal = np.empty(D)
    contexts = []
    for k in range(D):
        ctx = ScalarProposalContext(values[sigma, k], values[nbr, k], params.beta)
        mean, var = conditional_form(ctx)
        proposal[k] = mean + math.sqrt(var) * rng.standard_normal()
        contexts.append(ctx)
    return proposal, contexts
