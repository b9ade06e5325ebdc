"""
Flat grid: the step-radius walk bound
=====================================

On a square grid with small spacing, the radius-r ball walk mimics the
uniform ball average on the plane.  The comparison-model bound says the
coarse curvature of any pair can't drop below 1 - 2N for a flat
N-dimensional space, here 1 - 2*2 = -3.  The demo measures curvature
across the grid and checks how much room the bound leaves, then runs
the ball-volume growth check the bound rests on.
"""

import numpy as np

from coarsecurv import (
    check_bishop_gromov,
    euclidean_grid,
    kappa_sampled,
    r_step_walk,
    walk_curvature_bound,
)

side = 20
spacing = 0.1
r = 0.35

sp = euclidean_grid(side, spacing)
walk = r_step_walk(sp, r)
print(f"grid {side}x{side}, spacing {spacing}, walk radius {r}")

# --- curvature across sampled pairs -----------------------------------

rep = kappa_sampled(sp, walk, pair_budget=120, seed=3, near_pair_cap=120)
bound = walk_curvature_bound(0.0, 2.0, r)
x, y = rep.witness
print(f"sampled pairs: {len(rep.pairs)}")
print(f"kappa_inf = {rep.kappa_inf:+.4f} at pair ({x}, {y})")
print(f"model bound 1 - 2N = {bound:+.4f}")
print(f"margin above bound = {rep.kappa_inf - bound:.4f}")
assert rep.kappa_inf >= bound

# --- the volume growth behind the bound -------------------------------
#
# The bound is honest only if ball masses grow no faster than the flat
# model r^2; the checker samples centers and radius pairs and reports
# the worst ratio.

growth = check_bishop_gromov(sp, 0.0, 2.0, budget=30, seed=3)
wx, wr, wR, lhs, rhs, margin = growth.worst
print(f"volume growth: {len(growth.evaluations)} checks, "
      f"{len(growth.violations)} violations")
print(f"worst ratio {lhs:.3f} vs model {rhs:.3f} "
      f"(margin {margin:+.3f}, negative is good)")
assert growth.ok

# near-pair curvature is what the bound actually constrains: pairs
# closer than the walk radius see overlapping balls
near = [(xx, yy, k) for (xx, yy, d, _, k) in rep.pairs if d < r]
if near:
    worst = min(near, key=lambda t: t[2])
    print(f"worst near pair ({worst[0]}, {worst[1]}) "
          f"kappa = {worst[2]:+.4f}")
print("done")
