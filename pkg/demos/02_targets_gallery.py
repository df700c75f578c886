# The benchmark targets: symmetric mixtures, the free-energy-barrier GMM,
# the banana, and seeded random landscapes.  Every target ships an exact
# i.i.d. sampler used as ground truth for moments and tail statistics.

import numpy as np

from suburban import direct_sample, make_target, true_moments

rng = np.random.default_rng(1)

for spec in (
    "symmetric(2,1.5,0.25)",
    "barrier(2,3,0.25)",
    "banana",
    "landscape(40,20,0.4,10.0,2)",
):
    t = make_target(spec)
    mean, cov = true_moments(t)
    pts = direct_sample(t, rng, 200000)
    print(f"{spec}")
    print(f"  true mean {np.round(mean, 4)}   sample mean {np.round(pts.mean(axis=0), 4)}")
    print(f"  true cov diag {np.round(cov.diagonal(), 4)}   sample {np.round(pts.var(axis=0), 4)}")
    if t.oracle_mean_se is not None:
        print(f"  (covariance from the seeded 1e6-draw oracle)")
    print()

# Contour maps, if matplotlib is around.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, axes = plt.subplots(1, 4, figsize=(16, 4))
boxes = {"symmetric(2,1.5,0.25)": 3, "barrier(2,3,0.25)": 4.5, "banana": 3,
         "landscape(40,20,0.4,10.0,2)": 8}
for ax, (spec, half) in zip(axes, boxes.items()):
    t = make_target(spec)
    g = np.linspace(-half, half, 300)
    X, Y = np.meshgrid(g, g)
    pts = np.stack([X.ravel(), Y.ravel()], axis=1)
    if t.mixture is not None:
        Z = t.mixture.logpdf(pts).reshape(300, 300)
    else:
        Z = np.array([t.log_density(p) for p in pts]).reshape(300, 300)
    ax.contour(X, Y, Z, levels=np.linspace(Z.max() - 12, Z.max(), 14))
    ax.set_title(spec, fontsize=9)
fig.tight_layout()
fig.savefig("targets_gallery.png", dpi=110)
print("wrote targets_gallery.png")
