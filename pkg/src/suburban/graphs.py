"""Random-graph ensembles that set the agent connectivity at each timestep.

Two ensembles are provided: a percolated toroidal hypercubic lattice with a
fresh random agent relabeling per draw, and the Erdos-Renyi ensemble.  Both
are parameterized by the link retention probability ``p_join``.  Adjacency
matrices are plain symmetric boolean numpy arrays with an empty diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class GraphKind(str, Enum):
    HYPERCUBIC = "hypercubic"
    ERDOS_RENYI = "erdos-renyi"


@dataclass(frozen=True)
class GraphEnsembleSpec:
    """Recipe for drawing one adjacency matrix per timestep.

    Parameters
    ----------
    kind:
        ``GraphKind.HYPERCUBIC`` (percolated torus) or ``GraphKind.ERDOS_RENYI``.
    M:
        Number of agents.
    p_join:
        Probability that a candidate link is active, in [0, 1].
    d, m:
        Lattice dimension and sites per axis; required for the hypercubic
        kind (``m ** d`` must equal ``M``), ignored for Erdos-Renyi.
    shuffle:
        Hypercubic only: relabel agents to lattice sites with a fresh uniform
        permutation on every draw.  Ignored for Erdos-Renyi, whose law is
        permutation invariant anyway.
    """

    kind: GraphKind
    M: int
    p_join: float
    d: int | None = None
    m: int | None = None
    shuffle: bool = True

    def __post_init__(self):
        if self.M < 1:
            raise ValueError(f"M must be positive, got {self.M}")
        if not 0.0 <= self.p_join <= 1.0:
            raise ValueError(f"p_join must lie in [0, 1], got {self.p_join}")
        if self.kind == GraphKind.HYPERCUBIC:
            if self.d is None or self.m is None:
                raise ValueError("hypercubic spec requires d and m")
            if self.d < 1:
                raise ValueError(f"lattice dimension d must be >= 1, got {self.d}")
            if self.m < 3:
                # m = 2 would double every link on the torus
                raise ValueError(f"sites per axis m must be >= 3, got {self.m}")
            if self.m ** self.d != self.M:
                raise ValueError(
                    f"m**d = {self.m ** self.d} does not match M = {self.M}"
                )

    @property
    def d_eff_configured(self) -> float:
        """Expected effective dimension of a draw: d * p_join for the torus,
        p_join * (M - 1) / 2 for Erdos-Renyi."""
        if self.kind == GraphKind.HYPERCUBIC:
            return self.d * self.p_join
        return self.p_join * (self.M - 1) / 2.0


def lattice_edge_set(d: int, m: int) -> np.ndarray:
    """Nearest-neighbor edges of the d-dimensional torus with m sites per axis.

    Returns an (E, 2) int array of site pairs with E = d * m**d; every site
    has exactly 2*d distinct neighbors (periodic wraparound).

    Raises
    ------
    ValueError
        If ``d < 1`` or ``m < 3`` (degenerate lattice).
    """
    if d < 1:
        raise ValueError(f"lattice dimension d must be >= 1, got {d}")
    if m < 3:
        raise ValueError(f"sites per axis m must be >= 3, got {m}")
    sites = np.arange(m ** d).reshape((m,) * d)
    us, vs = [], []
    for axis in range(d):
        us.append(sites.ravel())
        vs.append(np.roll(sites, -1, axis=axis).ravel())
    u = np.concatenate(us)
    v = np.concatenate(vs)
    return np.stack([np.minimum(u, v), np.maximum(u, v)], axis=1)


def draw_edge_list(spec: GraphEnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one graph from the ensemble as an (E, 2) array of agent pairs.

    Hypercubic: draw a uniform agent-to-site permutation (if ``shuffle``),
    then keep each lattice edge independently with probability ``p_join``.
    Erdos-Renyi: each of the M(M-1)/2 unordered pairs is an edge
    independently with probability ``p_join``.

    The rng consumption order is fixed (permutation first, then one uniform
    per candidate edge) so draws are reproducible from the seed alone.
    """
    if spec.kind == GraphKind.HYPERCUBIC:
        base = lattice_edge_set(spec.d, spec.m)
        if spec.shuffle:
            perm = rng.permutation(spec.M)
        else:
            perm = np.arange(spec.M)
        keep = rng.random(base.shape[0]) < spec.p_join
        return perm[base[keep]]
    iu, ju = np.triu_indices(spec.M, k=1)
    keep = rng.random(iu.size) < spec.p_join
    return np.stack([iu[keep], ju[keep]], axis=1)


def edges_to_adjacency(M: int, edges: np.ndarray) -> np.ndarray:
    A = np.zeros((M, M), dtype=bool)
    if edges.size:
        A[edges[:, 0], edges[:, 1]] = True
        A[edges[:, 1], edges[:, 0]] = True
    return A


def draw_adjacency(spec: GraphEnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one symmetric, loop-free M x M boolean adjacency matrix."""
    return edges_to_adjacency(spec.M, draw_edge_list(spec, rng))


def validate_adjacency(A: np.ndarray) -> None:
    """Raise ValueError unless A is a square, symmetric, loop-free bool matrix."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {A.shape}")
    if A.dtype != np.bool_:
        raise ValueError(f"adjacency must be boolean, got dtype {A.dtype}")
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency must be symmetric")
    if A.diagonal().any():
        raise ValueError("adjacency must have no self-loops")


def edge_count(A: np.ndarray) -> int:
    return int(np.count_nonzero(A)) // 2


def effective_dimension(A: np.ndarray) -> float:
    """Half the average degree, n_avg / 2; equals |edges| / M.

    Need not be an integer.  The full (p_join = 1) hypercubic draw gives
    exactly the lattice dimension d.
    """
    M = A.shape[0]
    return edge_count(A) / M


def neighbors(A: np.ndarray, sigma: int) -> np.ndarray:
    """Sorted indices of agents joined to agent ``sigma``."""
    M = A.shape[0]
    if not 0 <= sigma < M:
        raise IndexError(f"agent index {sigma} out of range for M = {M}")
    return np.flatnonzero(A[sigma])
