"""
Coarse curvature of classic graphs
==================================

Every graph here carries the lazy-free nearest-neighbor walk: from a
vertex, jump to a uniformly random neighbor.  The coarse curvature of a
pair compares how far the two neighbor clouds are (in transport
distance) against how far the base points are.  Positive curvature
means the clouds are closer than the points.
"""

import numpy as np

from coarsecurv import (
    complete_graph,
    cycle_graph,
    hypercube_graph,
    kappa,
    kappa_all_pairs,
    neighbor_uniform_walk,
    path_graph,
)

# --- complete graphs: the most positively curved finite examples ------
#
# On K_n every pair of neighbor clouds overlaps in n-2 vertices, so the
# curvature of every edge is (n-2)/(n-1) and tends to 1 with n.

print("complete graphs")
for n in (3, 4, 5, 8, 12):
    sp = complete_graph(n)
    rep = kappa_all_pairs(sp, neighbor_uniform_walk(sp))
    expected = (n - 2) / (n - 1)
    print(f"  K_{n:<2d}  kappa_inf = {rep.kappa_inf:+.6f}"
          f"   closed form {expected:+.6f}")

# --- cycles: the flat case --------------------------------------------
#
# Long cycles behave like a discrete line; neighbor clouds translate
# rigidly, so every adjacent pair has curvature exactly zero.

print("cycles")
for n in (6, 9, 16):
    sp = cycle_graph(n)
    rep = kappa_all_pairs(sp, neighbor_uniform_walk(sp))
    x, y = rep.witness
    print(f"  C_{n:<2d}  kappa_inf = {rep.kappa_inf:+.6f}"
          f"   worst pair ({x}, {y})")

# --- hypercubes: bipartite walks are exactly flat on edges ------------
#
# The non-lazy walk on a bipartite graph swaps the two sides; across an
# edge the neighbor clouds are translates of each other, so every edge
# sits at exactly zero, no matter the dimension.

print("hypercube edges")
for dim in (2, 3, 4, 5):
    sp = hypercube_graph(dim)
    walk = neighbor_uniform_walk(sp)
    edge = kappa(sp, walk, 0, 1)     # 00..0 vs 00..1
    print(f"  dim {dim}  kappa(edge) = {edge:+.6f}")

# --- paths: reflecting ends push curvature up -------------------------
#
# The interior of a path is translation-flat (kappa = 0 pair by pair),
# but the endpoint's walk reflects back inward, compressing the clouds
# of near-end pairs: (0, 2) comes out strictly positive.

sp = path_graph(8)
rep = kappa_all_pairs(sp, neighbor_uniform_walk(sp))
pairs = {(x, y): k for (x, y, _, _, k) in rep.pairs}
print("path on 8 vertices")
print(f"  interior edge (3,4)  kappa = {pairs[(3, 4)]:+.6f}")
print(f"  end edge      (0,1)  kappa = {pairs[(0, 1)]:+.6f}")
print(f"  reflected     (0,2)  kappa = {pairs[(0, 2)]:+.6f}")
print(f"  worst pair {rep.witness}  kappa_inf = {rep.kappa_inf:+.6f}")

# sanity: the closed forms above are exact
for n in (3, 5, 8):
    sp = complete_graph(n)
    rep = kappa_all_pairs(sp, neighbor_uniform_walk(sp))
    assert abs(rep.kappa_inf - (n - 2) / (n - 1)) < 1e-12
print("done")
