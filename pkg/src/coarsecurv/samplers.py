"""Space generators: model geometries, canonical graphs, random tests.

Stochastic samplers are pure functions of their seed.  The Heisenberg
sampler equips points of R^3 with the group law

    (x, y, t) * (x', y', t') = (x+x', y+y', t+t' + (x y' - y x')/2)

and the left-invariant sub-Riemannian distance for the horizontal
frame X = d/dx - (y/2) d/dt, Y = d/dy + (x/2) d/dt.  Every distance
reduces by left translation to a distance from the identity, and that
norm has a classical planar description: the shortest horizontal lift
over a planar curve from the origin to (x, y) sweeping signed area t.
The minimizer is a circular arc, leaving one scalar equation per pair,
solved here by vectorized bisection on the arc angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, SolverError
from .spaces import FiniteMetricMeasureSpace, make_space

# arc-angle solver regime cutoffs on |t| / rho^2
FLAT_RATIO = 1e-8   # below: straight segment, d = rho
VERT_RATIO = 1e15   # above: pure vertical formula, d = 2 sqrt(pi |t|)


# ---------------------------------------------------------------------------
# Heisenberg group

def heisenberg_mul(p, q):
    """Group product, broadcasting over leading axes of (..., 3) arrays."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    out = np.empty(np.broadcast(p, q).shape)
    out[..., 0] = p[..., 0] + q[..., 0]
    out[..., 1] = p[..., 1] + q[..., 1]
    out[..., 2] = p[..., 2] + q[..., 2] + 0.5 * (
        p[..., 0] * q[..., 1] - p[..., 1] * q[..., 0])
    return out


def heisenberg_inv(p):
    """Group inverse: componentwise negation."""
    return -np.asarray(p, dtype=np.float64)


def _arc_area_ratio(theta):
    # area/chord^2 profile of a circular arc with half-angle theta
    s = np.sin(theta)
    return (2.0 * theta - np.sin(2.0 * theta)) / (8.0 * s * s)


def _arc_area_ratio_flipped(eps):
    # same profile at theta = pi - eps, written cancellation-free
    s = np.sin(eps)
    return (2.0 * math.pi - 2.0 * eps + np.sin(2.0 * eps)) / (8.0 * s * s)


def _bisect(func, lo, hi, target, increasing, iters=60):
    lo = np.full(target.shape, lo)
    hi = np.full(target.shape, hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        val = func(mid)
        go_right = (val < target) if increasing else (val > target)
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    return 0.5 * (lo + hi)


def cc_norm(x, y, t):
    """Carnot-Caratheodory distance from the identity to (x, y, t).

    Vectorized.  With rho = sqrt(x^2 + y^2) and the ratio q = |t|/rho^2
    the geodesic arc's half-angle theta solves
    (2 theta - sin 2 theta) / (8 sin^2 theta) = q on (0, pi), and the
    length is rho * theta / sin(theta).  The two monotone halves of
    that equation are solved separately by bisection; tiny and huge
    ratios short-circuit to the straight (d = rho) and purely vertical
    (d = 2 sqrt(pi |t|)) closed forms, with switchover error far below
    solver tolerance.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    shape = np.broadcast(x, y, t).shape
    rho = np.broadcast_to(np.hypot(x, y), shape)
    tau = np.broadcast_to(np.abs(t), shape)
    d = np.zeros(shape)

    rho2 = rho * rho
    vertical = tau > VERT_RATIO * rho2      # includes rho=0, tau>0
    nonzero = (rho > 0) | (tau > 0)
    flat = (tau <= FLAT_RATIO * rho2) & nonzero & ~vertical
    solve = nonzero & ~vertical & ~flat

    d[vertical] = 2.0 * np.sqrt(math.pi * tau[vertical])
    d[flat] = rho[flat]

    if solve.any():
        q = tau[solve] / rho2[solve]
        rr = rho[solve]
        dd = np.empty(q.shape)
        low = q <= math.pi / 8.0
        if low.any():
            th = _bisect(_arc_area_ratio, 0.0, math.pi / 2.0, q[low],
                         increasing=True)
            resid = np.abs(_arc_area_ratio(th) - q[low])
            bad = resid > 1e-8 * (1.0 + q[low])
            if bad.any():
                k = int(np.argmax(bad))
                raise SolverError(
                    f"arc solver residual {resid[bad].max():.3e} at "
                    f"ratio {q[low][k]!r}")
            dd[low] = rr[low] * th / np.sin(th)
        high = ~low
        if high.any():
            ep = _bisect(_arc_area_ratio_flipped, 1e-9, math.pi / 2.0,
                         q[high], increasing=False)
            resid = np.abs(_arc_area_ratio_flipped(ep) - q[high])
            bad = resid > 1e-8 * (1.0 + q[high])
            if bad.any():
                k = int(np.argmax(bad))
                raise SolverError(
                    f"arc solver residual {resid[bad].max():.3e} at "
                    f"ratio {q[high][k]!r}")
            dd[high] = rr[high] * (math.pi - ep) / np.sin(ep)
        d[solve] = dd
    return d if d.shape else float(d)


def cc_distance(p, q):
    """Left-invariant distance d(p, q) = ||p^-1 q||."""
    delta = heisenberg_mul(heisenberg_inv(p), q)
    return cc_norm(delta[..., 0], delta[..., 1], delta[..., 2])


def koranyi_norm(x, y, t):
    """Gauge norm (rho^4 + 16 t^2)^(1/4).

    A homogeneous quasi-norm comparable to the Carnot-Caratheodory
    norm within fixed constants (bi-Lipschitz only).  Cheap, but it
    does not carry the sub-Riemannian volume-growth constants; model
    comparisons must use the true distance.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    rho2 = x * x + y * y
    return (rho2 * rho2 + 16.0 * t * t) ** 0.25


def heisenberg_sample(count: int, box: float, seed: int = 0,
                      metric: str = "carnot") -> FiniteMetricMeasureSpace:
    """Uniform sample of the Heisenberg group in a coordinate box.

    Points are drawn uniformly (the Lebesgue measure is the Haar
    measure here) from [-box/2, box/2]^3 with unit weights.  metric
    "carnot" is the true sub-Riemannian distance; "koranyi" is the
    bi-Lipschitz gauge surrogate and must not feed model-bound
    comparisons.
    """
    if count < 2:
        raise InvalidParameterError("need count >= 2")
    if box <= 0:
        raise InvalidParameterError("need box > 0")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-box / 2.0, box / 2.0, size=(count, 3))

    xs, ys, ts = pts[:, 0], pts[:, 1], pts[:, 2]
    dx = xs[None, :] - xs[:, None]
    dy = ys[None, :] - ys[:, None]
    dt = ts[None, :] - ts[:, None] - 0.5 * (
        xs[:, None] * ys[None, :] - ys[:, None] * xs[None, :])
    if metric == "carnot":
        dist = cc_norm(dx, dy, dt)
    elif metric == "koranyi":
        dist = koranyi_norm(dx, dy, dt)
    else:
        raise InvalidParameterError(f"unknown metric {metric!r}")
    np.fill_diagonal(dist, 0.0)
    labels = [f"h{i}" for i in range(count)]
    return make_space(dist, labels=labels, check_triangle=False)


# ---------------------------------------------------------------------------
# model geometries

def euclidean_grid(side_count: int, spacing: float) -> FiniteMetricMeasureSpace:
    """Square planar lattice with Euclidean distances, unit weights."""
    if side_count < 2:
        raise InvalidParameterError("need side_count >= 2")
    if spacing <= 0:
        raise InvalidParameterError("need spacing > 0")
    ii, jj = np.meshgrid(np.arange(side_count), np.arange(side_count),
                         indexing="ij")
    pts = np.column_stack([ii.ravel(), jj.ravel()]).astype(np.float64) * spacing
    dist = np.hypot(pts[:, 0:1] - pts[None, :, 0],
                    pts[:, 1:2] - pts[None, :, 1])
    labels = [f"g{i}_{j}" for i, j in zip(ii.ravel(), jj.ravel())]
    return make_space(dist, labels=labels, check_triangle=False)


def euclidean_ball_sample(count: int, radius: float,
                          seed: int = 0) -> FiniteMetricMeasureSpace:
    """Uniform sample of a planar disc, Euclidean distances."""
    if count < 2 or radius <= 0:
        raise InvalidParameterError("need count >= 2 and radius > 0")
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    phi = rng.uniform(0, 2 * math.pi, count)
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi)])
    dist = np.hypot(pts[:, 0:1] - pts[None, :, 0],
                    pts[:, 1:2] - pts[None, :, 1])
    return make_space(dist, check_triangle=False)


def sphere_sample(count: int, seed: int = 0) -> FiniteMetricMeasureSpace:
    """Uniform points on the unit 2-sphere with great-circle distances.

    Normalized 3-dimensional Gaussians are exactly uniform on the
    sphere; the angle comes from atan2 of cross and dot products,
    which stays accurate at both ends of [0, pi].
    """
    if count < 2:
        raise InvalidParameterError("need count >= 2")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((count, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    g = u @ u.T
    g = 0.5 * (g + g.T)
    np.clip(g, -1.0, 1.0, out=g)
    sin = np.sqrt(np.clip(1.0 - g * g, 0.0, None))
    dist = np.arctan2(sin, g)
    np.fill_diagonal(dist, 0.0)
    return make_space(dist, check_triangle=False)


def hyperbolic_sample(count: int, radius: float,
                      seed: int = 0) -> FiniteMetricMeasureSpace:
    """Area-uniform sample of a hyperbolic disc (curvature -1).

    Geodesic-polar inversion: the radial CDF of the hyperbolic area
    element is (cosh s - 1)/(cosh R - 1), so s = arccosh(1 + u (cosh R
    - 1)).  Points live in the Poincare disc at Euclidean radius
    tanh(s/2), and distances follow the closed form
    arccosh(1 + 2 |z-w|^2 / ((1-|z|^2)(1-|w|^2))).
    """
    if count < 2 or radius <= 0:
        raise InvalidParameterError("need count >= 2 and radius > 0")
    rng = np.random.default_rng(seed)
    s = np.arccosh(1.0 + rng.uniform(0, 1, count) * (math.cosh(radius) - 1.0))
    phi = rng.uniform(0, 2 * math.pi, count)
    er = np.tanh(s / 2.0)
    pts = np.column_stack([er * np.cos(phi), er * np.sin(phi)])
    return make_space(_poincare_dist(pts), check_triangle=False)


def _poincare_dist(pts):
    sq = (pts ** 2).sum(axis=1)
    diff = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
    denom = (1.0 - sq)[:, None] * (1.0 - sq)[None, :]
    arg = 1.0 + 2.0 * diff / denom
    np.clip(arg, 1.0, None, out=arg)
    d = np.arccosh(arg)
    np.fill_diagonal(d, 0.0)
    return 0.5 * (d + d.T)


# ---------------------------------------------------------------------------
# canonical graphs (shortest-path metric, unit weights)

def cycle_graph(n: int) -> FiniteMetricMeasureSpace:
    if n < 3:
        raise InvalidParameterError("cycle needs n >= 3")
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :])
    dist = np.minimum(gap, n - gap).astype(np.float64)
    return make_space(dist, check_triangle=False)


def complete_graph(n: int) -> FiniteMetricMeasureSpace:
    if n < 3:
        raise InvalidParameterError("complete graph needs n >= 3")
    dist = np.ones((n, n)) - np.eye(n)
    return make_space(dist, check_triangle=False)


def hypercube_graph(dim: int) -> FiniteMetricMeasureSpace:
    if dim < 1:
        raise InvalidParameterError("hypercube needs dim >= 1")
    n = 1 << dim
    idx = np.arange(n)
    xor = idx[:, None] ^ idx[None, :]
    dist = np.zeros((n, n))
    for b in range(dim):
        dist += (xor >> b) & 1
    labels = [format(i, f"0{dim}b") for i in idx]
    return make_space(dist, labels=labels, check_triangle=False)


def path_graph(n: int) -> FiniteMetricMeasureSpace:
    if n < 2:
        raise InvalidParameterError("path needs n >= 2")
    idx = np.arange(n)
    dist = np.abs(idx[:, None] - idx[None, :]).astype(np.float64)
    return make_space(dist, check_triangle=False)


# ---------------------------------------------------------------------------
# random instances for property suites

def random_space(n: int, seed: int = 0) -> FiniteMetricMeasureSpace:
    """Random valid space: points in R^3, random positive weights."""
    if n < 1:
        raise InvalidParameterError("need n >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0, 1, (n, 3))
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(-1))
    np.fill_diagonal(dist, 0.0)
    w = rng.uniform(0.5, 2.0, n)
    return make_space(dist, measure=w, check_triangle=False)


def random_stochastic_kernel(space: FiniteMetricMeasureSpace,
                             seed: int = 0, zero_fraction: float = 0.0):
    """Random row-stochastic kernel; optionally sparsified rows."""
    from .spaces import make_kernel

    rng = np.random.default_rng(seed)
    n = space.n
    rows = rng.gamma(1.0, 1.0, (n, n)) + 1e-12
    if zero_fraction > 0:
        mask = rng.uniform(0, 1, (n, n)) < zero_fraction
        # keep at least one positive entry per row
        for i in range(n):
            if mask[i].all():
                mask[i, rng.integers(0, n)] = False
        rows = np.where(mask, 0.0, rows)
    rows /= rows.sum(axis=1, keepdims=True)
    return make_kernel(space, rows, kind="random")


# ---------------------------------------------------------------------------
# named generators

@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible recipe for a space: name, params, seed."""

    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0


_GENERATORS = {
    "euclidean_grid": lambda p, seed: euclidean_grid(**p),
    "euclidean_ball_sample": lambda p, seed: euclidean_ball_sample(seed=seed, **p),
    "sphere_sample": lambda p, seed: sphere_sample(seed=seed, **p),
    "hyperbolic_sample": lambda p, seed: hyperbolic_sample(seed=seed, **p),
    "heisenberg_sample": lambda p, seed: heisenberg_sample(seed=seed, **p),
    "cycle_graph": lambda p, seed: cycle_graph(**p),
    "complete_graph": lambda p, seed: complete_graph(**p),
    "hypercube_graph": lambda p, seed: hypercube_graph(**p),
    "path_graph": lambda p, seed: path_graph(**p),
}


def generate(spec: GeneratorSpec) -> FiniteMetricMeasureSpace:
    """Materialize a GeneratorSpec; identical specs give identical spaces."""
    if spec.name not in _GENERATORS:
        raise InvalidParameterError(
            f"unknown generator {spec.name!r}; have "
            f"{sorted(_GENERATORS)}")
    try:
        return _GENERATORS[spec.name](dict(spec.params), spec.seed)
    except TypeError as e:
        raise InvalidParameterError(
            f"bad parameters for generator {spec.name!r}: {e}") from None
