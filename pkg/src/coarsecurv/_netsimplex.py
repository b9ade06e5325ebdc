"""Dense transportation simplex, JIT-compiled.

Solves min <plan, cost> over nonnegative plans with prescribed row sums
mu and column sums nu (equal totals, all strictly positive).  The basis
is a spanning tree on the bipartite source/sink graph; pivots follow a
rotating-window Dantzig rule (lowest flat index on ties) and switch to
Bland's rule permanently after a run of degenerate steps, which bars
cycling.  Node potentials come from a breadth-first pass over the tree
after every pivot; the caller certifies optimality independently via
the dual gap, so this module only has to terminate and report.

Status codes: 0 solved, 1 iteration cap hit, 2 basis lost tree
structure (should not happen; defensive).
"""

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_ITER_CAP = 1
STATUS_BAD_BASIS = 2


@njit(cache=True)
def _rebuild_tree(m, n, bi, bj, cost, deg, ptr, inc,
                  parent_node, parent_arc, depth, order, u, v):
    """BFS over the basic arcs: parents, depths and dual potentials.

    Returns 1 when the basic cells form a spanning tree, 0 otherwise.
    """
    nn = m + n
    nb = nn - 1
    for t in range(nn):
        deg[t] = 0
    for k in range(nb):
        deg[bi[k]] += 1
        deg[m + bj[k]] += 1
    ptr[0] = 0
    for t in range(nn):
        ptr[t + 1] = ptr[t] + deg[t]
        deg[t] = 0
    for k in range(nb):
        p = bi[k]
        q = m + bj[k]
        inc[ptr[p] + deg[p]] = k
        deg[p] += 1
        inc[ptr[q] + deg[q]] = k
        deg[q] += 1

    for t in range(nn):
        parent_node[t] = -2
    parent_node[0] = -1
    parent_arc[0] = -1
    depth[0] = 0
    order[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = order[head]
        head += 1
        for s in range(ptr[x], ptr[x + 1]):
            k = inc[s]
            y = m + bj[k] if x < m else bi[k]
            if parent_node[y] == -2:
                parent_node[y] = x
                parent_arc[y] = k
                depth[y] = depth[x] + 1
                order[tail] = y
                tail += 1
    if tail != nn:
        return 0

    # duals along the tree: u[i] + v[j] = cost[i, j] on basic cells
    u[0] = 0.0
    for s in range(1, nn):
        x = order[s]
        k = parent_arc[x]
        if x < m:
            u[x] = cost[bi[k], bj[k]] - v[bj[k]]
        else:
            v[x - m] = cost[bi[k], bj[k]] - u[bi[k]]
    return 1


@njit(cache=True)
def solve_transport(cost, mu, nu, max_iter):
    """Network simplex on a dense transportation instance.

    Parameters are the cost matrix and strictly positive marginals with
    equal totals.  Returns (plan, u, v, iterations, status).
    """
    m = mu.shape[0]
    n = nu.shape[0]
    nn = m + n
    nb = nn - 1

    bi = np.empty(nb, np.int64)
    bj = np.empty(nb, np.int64)
    bf = np.empty(nb, np.float64)

    # northwest-corner start: advance one index per cell, ties leave a
    # degenerate zero-flow cell, giving exactly m + n - 1 basic cells
    a = mu.copy()
    b = nu.copy()
    i = 0
    j = 0
    for k in range(nb):
        bi[k] = i
        bj[k] = j
        t = a[i] if a[i] < b[j] else b[j]
        bf[k] = t
        a[i] -= t
        b[j] -= t
        if i < m - 1 and (a[i] <= 0.0 or j == n - 1):
            i += 1
        else:
            j += 1

    deg = np.empty(nn, np.int64)
    ptr = np.empty(nn + 1, np.int64)
    inc = np.empty(2 * nb, np.int64)
    parent_node = np.empty(nn, np.int64)
    parent_arc = np.empty(nn, np.int64)
    depth = np.empty(nn, np.int64)
    order = np.empty(nn, np.int64)
    u = np.empty(m, np.float64)
    v = np.empty(n, np.float64)
    path_a = np.empty(nn, np.int64)
    path_b = np.empty(nn, np.int64)

    cmax = 0.0
    for p in range(m):
        for q in range(n):
            x = abs(cost[p, q])
            if x > cmax:
                cmax = x
    tol = 1e-11 * cmax if cmax > 0.0 else 1e-300

    ok = _rebuild_tree(m, n, bi, bj, cost, deg, ptr, inc,
                       parent_node, parent_arc, depth, order, u, v)
    if ok == 0:
        plan = np.zeros((m, n))
        return plan, u, v, 0, STATUS_BAD_BASIS

    ncells = m * n
    window = 4 * nn
    if window > ncells:
        window = ncells
    cursor = 0
    bland = False
    stall = 0
    stall_limit = nn
    it = 0
    solved = False

    while it < max_iter:
        it += 1

        # ---- pricing
        ei = -1
        ej = -1
        if bland:
            # first negative reduced cost from a fixed origin
            for fl in range(ncells):
                p = fl // n
                q = fl - p * n
                if cost[p, q] - u[p] - v[q] < -tol:
                    ei = p
                    ej = q
                    break
        else:
            best = -tol
            scanned = 0
            pos = cursor
            while scanned < ncells:
                end = pos + window
                if end > ncells:
                    end = ncells
                for fl in range(pos, end):
                    p = fl // n
                    q = fl - p * n
                    red = cost[p, q] - u[p] - v[q]
                    if red < best:
                        best = red
                        ei = p
                        ej = q
                scanned += end - pos
                pos = end
                if pos == ncells:
                    pos = 0
                if ei >= 0:
                    cursor = pos
                    break
        if ei < 0:
            solved = True  # optimal: no improving cell in a full sweep
            break

        # ---- cycle between source ei and sink m + ej through the tree
        x = ei
        y = m + ej
        na = 0
        nbp = 0
        while depth[x] > depth[y]:
            path_a[na] = parent_arc[x]
            na += 1
            x = parent_node[x]
        while depth[y] > depth[x]:
            path_b[nbp] = parent_arc[y]
            nbp += 1
            y = parent_node[y]
        while x != y:
            path_a[na] = parent_arc[x]
            na += 1
            x = parent_node[x]
            path_b[nbp] = parent_arc[y]
            nbp += 1
            y = parent_node[y]

        # signs alternate around the cycle starting + at the entering
        # cell; odd positions lose flow.  leaving tie-break: lowest
        # flat cell index, which keeps Bland's guarantee intact.
        theta = 0.0
        leav = -1
        leav_flat = -1
        first = True
        pidx = 1
        for s in range(nbp):
            k = path_b[s]
            if pidx & 1:
                f = bf[k]
                fl = bi[k] * n + bj[k]
                if first or f < theta or (f == theta and fl < leav_flat):
                    theta = f
                    leav = k
                    leav_flat = fl
                    first = False
            pidx += 1
        for s in range(na):
            k = path_a[na - 1 - s]
            if pidx & 1:
                f = bf[k]
                fl = bi[k] * n + bj[k]
                if first or f < theta or (f == theta and fl < leav_flat):
                    theta = f
                    leav = k
                    leav_flat = fl
                    first = False
            pidx += 1

        if theta > 0.0:
            pidx = 1
            for s in range(nbp):
                k = path_b[s]
                bf[k] += -theta if (pidx & 1) else theta
                pidx += 1
            for s in range(na):
                k = path_a[na - 1 - s]
                bf[k] += -theta if (pidx & 1) else theta
                pidx += 1
            stall = 0
        else:
            stall += 1
            if stall > stall_limit:
                bland = True

        bi[leav] = ei
        bj[leav] = ej
        bf[leav] = theta

        ok = _rebuild_tree(m, n, bi, bj, cost, deg, ptr, inc,
                           parent_node, parent_arc, depth, order, u, v)
        if ok == 0:
            plan = np.zeros((m, n))
            return plan, u, v, it, STATUS_BAD_BASIS

    plan = np.zeros((m, n))
    for k in range(nb):
        plan[bi[k], bj[k]] = bf[k]
    status = STATUS_OK if solved else STATUS_ITER_CAP
    return plan, u, v, it, status
