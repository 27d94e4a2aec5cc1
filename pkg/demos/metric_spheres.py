"""Trace v, rho and j spheres about an off-center point of the disk and report their sizes.

    python demos/metric_spheres.py
"""

import numpy as np

from visangle import UnitBall, metric_ball_boundary

G = UnitBall(2)
center = np.array([0.4, 0.2])

for metric, radius in [("v", 0.5), ("rho", 1.0), ("j", 0.7)]:
    s = metric_ball_boundary(G, center, radius, metric, resolution=90)
    r = np.linalg.norm(s.points - center, axis=1)
    print(f"{metric:>4}  radius {radius:<4}  euclidean reach {r.min():.4f} .. {r.max():.4f}")
