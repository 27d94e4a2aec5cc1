"""Compare the sampled v-distortion of radial maps with the bound 2 * 4**(1 - 1/K).

The radial map z |z|^(1/K - 1) is K-quasiconformal.  Near the origin its
v-distortion blows up relative to v itself, but the bound is stated in terms
of v**(1/K), so the ratio printed last stays bounded.

    python demos/schwarz_constant.py
"""

import numpy as np

from visangle import Radial, UnitBall, vam_values

G = UnitBall(2)
rng = np.random.default_rng(1)
X = rng.uniform(-0.7, 0.7, (4000, 2))
Y = rng.uniform(-0.7, 0.7, (4000, 2))
keep = (np.sum(X * X, 1) < 0.49) & (np.sum(Y * Y, 1) < 0.49)
X, Y = X[keep], Y[keep]
v = vam_values(G, X, Y)

for K in (1.25, 2.0, 4.0):
    f = Radial(1 / K)
    vf = vam_values(G, f(X), f(Y))
    bound = 2 * 4 ** (1 - 1 / K)
    ratio = vf / np.maximum(v, v ** (1 / K))
    print(f"K={K:<5} bound {bound:.4f}  worst sampled ratio {ratio.max():.4f}  max vf/v {np.max(vf / v):.3f}")

