"""
How far the nonzero-MIN region reaches
======================================

N1 never vanishes exactly at finite temperature, so a small threshold
epsilon marks the edge.  Tracing that edge in the (h, T) plane for growing
DM coupling shows the region widening.
"""

import numpy as np

from diamond_min import Axis, ModelParams, threshold_boundary
from diamond_min.analysis import nonzero_mask

scan, line = Axis("h", 0.0, 6.0, 61), Axis("T", 0.01, 2.0, 400)
for D in (0.0, 0.5, 0.8, 1.0):
    fixed = ModelParams(J=1, J1=1, delta=1, D=D)
    curve = threshold_boundary(scan, line, fixed)
    area = nonzero_mask(fixed, scan, line).mean() * (scan.hi - scan.lo) * (line.hi - line.lo)
    print(f"D = {D:g}: {len(curve.points)} crossings, verified {curve.verify()}, "
          f"area with N1 >= 1e-4 ~ {area:.3f}")

# %% a smaller epsilon pushes the edge outward
fixed = ModelParams(J=1, J1=1, delta=1, D=0.5)
for eps in (1e-3, 1e-4, 1e-5):
    print(f"epsilon = {eps:g}: {nonzero_mask(fixed, scan, line, eps).sum()} grid points inside")

# %% the crossing temperature along one scan line, h = 2.5
one = threshold_boundary(Axis("h", 2.4, 2.6, 3), line, fixed)
print(np.column_stack([one.points, np.diff(one.brackets, axis=1)]))
