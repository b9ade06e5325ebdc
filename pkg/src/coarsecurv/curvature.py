"""Coarse Ricci curvature of a random walk on a finite space.

For distinct points x, y the curvature along the pair is

    kappa(x, y) = 1 - W1(m_x, m_y) / d(x, y),

the relative savings of transporting the walk distribution at x onto
the one at y compared to moving the points themselves.  Positive
values mean the walk contracts distances; the ceiling is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParameterError, UndefinedPairError
from .spaces import FiniteMetricMeasureSpace, RandomWalkKernel
from .transport import w1_exact

# module globals for forked workers; see _pool_init
_W_SPACE = None
_W_KERNEL = None


@dataclass(frozen=True)
class CurvatureReport:
    """Per-pair curvatures plus the infimum and its witness.

    pairs holds (x, y, d, w1, kappa) tuples in index order; meta
    carries sampling bookkeeping (near-pair counts, budgets).
    """

    pairs: list
    kappa_inf: float
    witness: Optional[tuple]
    meta: dict = field(default_factory=dict)


def _pair_values(space, kernel, x, y):
    """(d, w1, kappa) for one pair, solved on the union support."""
    d = float(space.dist[x, y])
    mu = kernel.rows[x]
    nu = kernel.rows[y]
    sup = np.flatnonzero((mu > 0) | (nu > 0))
    sub = np.ix_(sup, sup)
    res = w1_exact(mu[sup], nu[sup], space.dist[sub])
    return d, res.value, 1.0 - res.value / d


def kappa(space: FiniteMetricMeasureSpace, kernel: RandomWalkKernel,
          x: int, y: int) -> float:
    """Curvature along a single pair of distinct points.

    The transport problem is restricted to the union of the two row
    supports; a metric restricted to a subset stays a metric and no
    optimal plan moves mass through unsupported points, so the value
    is exact.
    """
    if x == y:
        raise UndefinedPairError(
            f"curvature along ({x}, {x}) divides by d(x, x) = 0")
    return _pair_values(space, kernel, x, y)[2]


def _pool_init(space, kernel):
    global _W_SPACE, _W_KERNEL
    _W_SPACE = space
    _W_KERNEL = kernel


def _chunk_worker(chunk):
    out = []
    for x, y in chunk:
        d, w1, k = _pair_values(_W_SPACE, _W_KERNEL, x, y)
        out.append((int(x), int(y), d, w1, k))
    return out


def _evaluate_pairs(space, kernel, pair_list, workers):
    """Solve all listed pairs, preserving list order in the output."""
    if workers <= 1 or len(pair_list) < 4:
        return _chunk_worker_direct(space, kernel, pair_list)

    import multiprocessing as mp

    # warm the JIT in the parent so forked children inherit it
    first = _chunk_worker_direct(space, kernel, pair_list[:1])
    rest = pair_list[1:]
    nchunks = min(len(rest), workers * 4)
    chunks = [rest[i::nchunks] for i in range(nchunks)]
    ctx = mp.get_context("fork")
    with ctx.Pool(workers, initializer=_pool_init,
                  initargs=(space, kernel)) as pool:
        parts = pool.map(_chunk_worker, chunks)
    by_pair = {(r[0], r[1]): r for part in parts for r in part}
    by_pair[(first[0][0], first[0][1])] = first[0]
    return [by_pair[(int(x), int(y))] for x, y in pair_list]


def _chunk_worker_direct(space, kernel, chunk):
    out = []
    for x, y in chunk:
        d, w1, k = _pair_values(space, kernel, x, y)
        out.append((int(x), int(y), d, w1, k))
    return out


def _report_from_rows(rows, meta=None):
    if not rows:
        return CurvatureReport(pairs=[], kappa_inf=math.inf, witness=None,
                               meta=meta or {})
    kmin = min(r[4] for r in rows)
    wit = next((r[0], r[1]) for r in rows if r[4] == kmin)
    return CurvatureReport(pairs=rows, kappa_inf=kmin, witness=wit,
                           meta=meta or {})


def kappa_all_pairs(space: FiniteMetricMeasureSpace,
                    kernel: RandomWalkKernel,
                    workers: int = 1) -> CurvatureReport:
    """Exact curvature infimum over every unordered pair."""
    if space.n < 2:
        raise InvalidParameterError("need at least 2 points")
    pair_list = [(x, y) for x in range(space.n)
                 for y in range(x + 1, space.n)]
    rows = _evaluate_pairs(space, kernel, pair_list, workers)
    return _report_from_rows(rows, meta={"mode": "all-pairs",
                                         "pairs_evaluated": len(rows)})


def kappa_sampled(space: FiniteMetricMeasureSpace,
                  kernel: RandomWalkKernel,
                  pair_budget: int, seed: int,
                  workers: int = 1,
                  near_pair_cap: Optional[int] = None) -> CurvatureReport:
    """Curvature over a seeded random pair sample plus near pairs.

    Draws pair_budget unordered pairs without replacement.  When the
    kernel carries a step radius r, all pairs with d(x, y) < 2r are
    added: those are the pairs whose walk supports overlap, where the
    infimum is typically attained.  near_pair_cap, if set, subsamples
    that near set (seeded) when it is larger than the cap; the meta
    block records both counts.  The resulting kappa_inf is an upper
    estimate of the true infimum.
    """
    if pair_budget < 1:
        raise InvalidParameterError("pair_budget must be >= 1")
    n = space.n
    total = n * (n - 1) // 2
    if pair_budget >= total:
        rep = kappa_all_pairs(space, kernel, workers=workers)
        rep.meta.update({"mode": "sampled-exhaustive", "seed": seed})
        return rep

    rng = np.random.default_rng(seed)
    flat = rng.choice(total, size=pair_budget, replace=False)
    flat.sort()
    # decode unordered-pair rank to (x, y), x < y: row x starts at
    # offset x*(n-1) - x*(x-1)/2 in lexicographic order
    row_ids = np.arange(n - 1, dtype=np.int64)
    offsets = row_ids * (n - 1) - row_ids * (row_ids - 1) // 2
    xs = np.searchsorted(offsets, flat, side="right") - 1
    ys = flat - offsets[xs] + xs + 1
    sampled = set(zip(xs.tolist(), ys.tolist()))

    near_total = 0
    near_kept = 0
    if kernel.step_radius is not None:
        r2 = 2.0 * kernel.step_radius
        iu = np.triu_indices(n, k=1)
        mask = space.dist[iu] < r2
        near_xs = iu[0][mask]
        near_ys = iu[1][mask]
        near_total = int(mask.sum())
        if near_pair_cap is not None and near_total > near_pair_cap:
            keep = rng.choice(near_total, size=near_pair_cap, replace=False)
            keep.sort()
            near_xs = near_xs[keep]
            near_ys = near_ys[keep]
        near_kept = len(near_xs)
        sampled.update(zip(near_xs.tolist(), near_ys.tolist()))

    pair_list = sorted(sampled)
    rows = _evaluate_pairs(space, kernel, pair_list, workers)
    meta = {
        "mode": "sampled",
        "seed": seed,
        "pair_budget": pair_budget,
        "pairs_evaluated": len(rows),
        "near_pairs_total": near_total,
        "near_pairs_evaluated": near_kept,
    }
    return _report_from_rows(rows, meta=meta)
