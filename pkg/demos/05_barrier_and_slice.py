# Two baseline comparisons.
#
# First the free-energy-barrier mixture: a 3:1 two-mode target whose mode
# weights the ensemble has to get right.  Then the parallel slice-within-
# Gibbs baseline, which needs several target queries per coordinate where
# the coupled kernel spends exactly one.

import numpy as np

from suburban import (
    ChainConfig,
    GraphEnsembleSpec,
    GraphKind,
    KernelParams,
    SliceParams,
    estimate_moments,
    make_target,
    run_chain,
    slice_gibbs_chain,
)

N, M = 1000, 81
graph = lambda p: GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=M, p_join=p, d=2, m=9)

print("barrier(2,3,0.25): inferred first mean coordinate (true 1.5), 5 trials")
for p, label in ((0.0, "parallel"), (0.5, "string  ")):
    firsts = []
    for trial in range(5):
        cfg = ChainConfig(
            target=make_target("barrier(2,3,0.25)"), graph=graph(p),
            kernel=KernelParams(0.01), N=N, M=M, seed=7000 + trial,
        )
        mu, _ = estimate_moments(run_chain(cfg), 0.1)
        firsts.append(mu[0])
    print(f"  {label} (d_eff={2 * p:.0f}): {np.round(firsts, 3)}")

print("\nslice vs coupled on the seed-40 landscape (target queries per coordinate)")
spec = "landscape(40,20,0.4,10.0,2)"
cfg = ChainConfig(
    target=make_target(spec), graph=graph(0.5),
    kernel=KernelParams(0.01), N=500, M=M, seed=11,
)
coupled = run_chain(cfg)
cfg_slice = ChainConfig(
    target=make_target(spec), graph=graph(0.5),
    kernel=KernelParams(0.01), N=500, M=M, seed=11,
)
sliced = slice_gibbs_chain(cfg_slice, SliceParams(initial_width=1.0))
coords = 500 * M * 2
print(f"  coupled: {coupled.eval_count / coords:.2f}   slice: {sliced.eval_count / coords:.2f}"
      f"   ratio: {sliced.eval_count / coupled.eval_count:.1f}x")
