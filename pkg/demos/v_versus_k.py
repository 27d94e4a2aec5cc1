"""Estimate how close v comes to (pi/log 4) k on a triangle.

k is replaced by the length of an optimised polyline, an upper bound, so the
printed ratios are lower estimates of v/k.

    python demos/v_versus_k.py
"""

import math

import numpy as np

from visangle import ConvexPolygon, QhSolverParams, qh_distance, vam

G = ConvexPolygon([[0, 0], [4, 0], [1, 3]])
rng = np.random.default_rng(3)
params = QhSolverParams(node_count=48, step_tolerance=1e-8)

best = 0.0
for _ in range(40):
    x, y = rng.uniform([0, 0], [4, 3], (2, 2))
    if not (G.contains(x) and G.contains(y)):
        continue
    ratio = vam(G, x, y).value / qh_distance(G, x, y, params).value
    best = max(best, ratio)
print(f"largest v/k_upper seen {best:.4f}; the constant is {math.pi / math.log(4):.5f}")
