# Geometry of the coupled proposal kernel.
#
# One scalar coordinate is proposed from a Gaussian whose mean is pulled
# halfway toward the summed neighbor offsets while the variance stays at
# 1/(4*beta) no matter how many neighbors are joined - the effect of the
# adaptive self-coupling alpha = 2*beta - n*beta (negative for n > 2, and
# still a perfectly proper Gaussian).

import numpy as np

from suburban import ScalarProposalContext, conditional_form, acceptance_log_ratio

beta = 0.01
print(f"beta = {beta}: step scale 1/sqrt(4 beta) = {np.sqrt(1 / (4 * beta)):.2f}\n")

print(" n  neighbors               mean   variance   alpha")
rng = np.random.default_rng(2)
for n in range(7):
    nbrs = np.round(rng.uniform(-3, 3, n), 2)
    ctx = ScalarProposalContext(0.0, nbrs, beta)
    mean, var = conditional_form(ctx)
    alpha = 2 * beta - n * beta
    print(f" {n}  {str(nbrs.tolist()):22s}  {mean:+6.2f}  {var:8.2f}  {alpha:+.3f}")

# With no neighbors the kernel is a symmetric random walk: the Hastings
# correction vanishes and acceptance reduces to the target ratio.
print()
lr = acceptance_log_ratio(1.0, 2.0, np.zeros(0), beta, -4.0, -1.0)
print("n=0 log acceptance ratio (targets -4 -> -1):", lr)

# With neighbors the kernel is asymmetric and the correction matters.
nbrs = np.array([5.0, 6.0])
lr = acceptance_log_ratio(1.0, 2.0, nbrs, beta, -4.0, -1.0)
print("2 neighbors at 5, 6: same move now gives   ", round(lr, 4))
