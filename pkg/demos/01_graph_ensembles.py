# Random-graph ensembles: percolated tori and Erdos-Renyi draws.
#
# Each timestep of a chain uses a fresh graph from one of these ensembles.
# The knob that matters is the effective dimension d_eff = |edges| / M,
# i.e. half the average degree: d * p_join for a percolated torus.

import numpy as np

from suburban import GraphEnsembleSpec, GraphKind, draw_adjacency, effective_dimension, neighbors

rng = np.random.default_rng(0)

# A full 2d 9x9 torus: every agent has exactly 4 neighbors.
spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=2, m=9)
A = draw_adjacency(spec, rng)
print("full 2d torus:      d_eff =", effective_dimension(A), " degree of agent 0:", len(neighbors(A, 0)))

# Percolation throws away each link with probability 1 - p_join.
for p in (0.0, 0.25, 0.5, 0.75, 1.0):
    spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=p, d=2, m=9)
    deffs = [effective_dimension(draw_adjacency(spec, rng)) for _ in range(200)]
    print(f"p_join = {p:4.2f}: mean d_eff over 200 draws = {np.mean(deffs):.3f}  (expect {2 * p})")

# Same mean degree, three different topologies: the matched-d_eff triple.
print()
for d, m, p in ((1, 81, 1.0), (2, 9, 0.5), (4, 3, 0.25)):
    spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=p, d=d, m=m)
    draws = [draw_adjacency(spec, rng) for _ in range(200)]
    deg = np.concatenate([a.sum(axis=0) for a in draws])
    print(f"{d}d m={m:2d} p={p:5.2f}: mean degree {deg.mean():.2f}, "
          f"degree-0 fraction {np.mean(deg == 0):.3f}")

# Erdos-Renyi reaches the same d_eff with p_join = n_avg / (M - 1).
er = GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=81, p_join=2.0 / 80.0)
deffs = [effective_dimension(draw_adjacency(er, rng)) for _ in range(200)]
print(f"\nER p=2/80: mean d_eff = {np.mean(deffs):.3f} (expect 1.0)")
