"""Model-geometry comparison functions and volume-growth checks.

The warp function behind constant-curvature comparison geometry,

    warp(K, N, t) = sqrt((N-1)/K)  * sin(t * sqrt(K/(N-1)))   K > 0
                    t                                          K = 0
                    sqrt((N-1)/-K) * sinh(t * sqrt(-K/(N-1)))  K < 0,

integrates to the model ball-volume profile

    vol(K, N, r) = integral_0^r warp(K, N, t)^(N-1) dt,

whose growth ratio vol(R)/vol(r) upper-bounds ball-mass ratios on
spaces with curvature at least K and dimension at most N (the
Bishop-Gromov inequality).  From the same profile comes the curvature
lower bound for the step-radius walk and the ball-difference estimate
used to prove it.  Checks here are diagnostics: finite samples satisfy
the continuum inequalities only up to a declared, reported slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, InvalidParameterError
from .spaces import FiniteMetricMeasureSpace


def domain_cap(K: float, N: float) -> float:
    """Upper end of the model domain: pi*sqrt((N-1)/K) for K > 0,
    infinite otherwise."""
    if N <= 1:
        raise InvalidParameterError(f"dimension parameter must exceed 1, got {N}")
    if K > 0:
        return math.pi * math.sqrt((N - 1) / K)
    return math.inf


@dataclass(frozen=True)
class ModelBoundParams:
    """Validated (K, N, r) triple for walk-bound evaluations."""

    K: float
    N: float
    r: float

    def __post_init__(self):
        cap = domain_cap(self.K, self.N)  # also validates N
        if self.r <= 0:
            raise InvalidParameterError(f"walk radius must be positive, got {self.r}")
        if self.r >= cap:
            raise DomainError(
                f"walk radius {self.r} must stay below the domain cap {cap}")

    @property
    def cap(self) -> float:
        return domain_cap(self.K, self.N)


def model_warp(K: float, N: float, t: float) -> float:
    """The sin/linear/sinh warp; continuous in K at K = 0."""
    cap = domain_cap(K, N)
    if t < 0:
        raise DomainError(f"warp argument must be nonnegative, got {t}")
    if K > 0:
        if t > cap:
            raise DomainError(f"argument {t} beyond domain cap {cap}")
        s = math.sqrt((N - 1) / K)
        return s * math.sin(t / s)
    if K == 0:
        return t
    s = math.sqrt((N - 1) / -K)
    return s * math.sinh(t / s)


def model_ball_volume(K: float, N: float, r: float,
                      method: str = "auto") -> float:
    """Model ball-volume profile: integral of warp^(N-1) from 0 to r.

    Closed forms cover K = 0 (r^N / N) and N = 2 with either sign of
    K; other parameters integrate numerically to relative accuracy
    1e-10.  method: "auto" prefers closed forms, "closed" requires
    one, "quadrature" forces the numeric route (useful to cross-check
    the closed forms).  For K > 0 the endpoint r = cap is allowed.
    """
    cap = domain_cap(K, N)
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    if K > 0 and r > cap:
        raise DomainError(f"radius {r} beyond domain cap {cap}")

    closed = None
    if K == 0:
        closed = r ** N / N
    elif N == 2 and K > 0:
        # 1 - cos(theta) written cancellation-free
        closed = 2.0 * math.sin(0.5 * r * math.sqrt(K)) ** 2 / K
    elif N == 2 and K < 0:
        closed = 2.0 * math.sinh(0.5 * r * math.sqrt(-K)) ** 2 / (-K)

    if method == "auto":
        return closed if closed is not None else _volume_quad(K, N, r)
    if method == "closed":
        if closed is None:
            raise InvalidParameterError(
                f"no closed form for K={K}, N={N}; use quadrature")
        return closed
    if method == "quadrature":
        return _volume_quad(K, N, r)
    raise InvalidParameterError(f"unknown method {method!r}")


def _volume_quad(K, N, r):
    from scipy.integrate import quad

    val, err = quad(lambda t: model_warp(K, N, t) ** (N - 1), 0.0, r,
                    epsabs=1e-14, epsrel=1e-11, limit=200)
    return val


def walk_curvature_bound(K: float, N: float, r: float) -> float:
    """Curvature lower bound for the step-radius walk:
    1 - 2r * warp(r)^(N-1) / vol(r).

    For K = 0 the ratio collapses algebraically to 2N, so the bound is
    returned as exactly 1 - 2N with no floating arithmetic in r.  As
    r -> 0+ the bound tends to 1 - 2N for every K.
    """
    cap = domain_cap(K, N)
    if r <= 0:
        raise DomainError(f"walk radius must be positive, got {r}")
    if r >= cap:
        raise DomainError(f"walk radius {r} must stay below the cap {cap}")
    if K == 0:
        return 1.0 - 2.0 * N
    shell = model_warp(K, N, r) ** (N - 1)
    return 1.0 - 2.0 * r * shell / model_ball_volume(K, N, r)


def heat_curvature_bound(K: float, t: float) -> float:
    """Curvature of the continuum heat walk at time t: 1 - exp(-K t)."""
    if t <= 0:
        raise InvalidParameterError(f"time must be positive, got {t}")
    return 1.0 - math.exp(-K * t)


@dataclass(frozen=True)
class VolumeGrowthReport:
    """Outcome of a ball-growth or ball-difference sweep.

    evaluations: per-check tuples; violations: the failing subset;
    worst: evaluation with the largest margin (None when nothing was
    checked); skipped: out-of-regime items with reasons; coverage:
    (centers checked, total points).  Margins are positive only on
    violations beyond the declared slack.
    """

    evaluations: list
    violations: list
    worst: Optional[tuple]
    skipped: list
    coverage: tuple
    slack_description: str

    @property
    def ok(self) -> bool:
        return not self.violations


def check_bishop_gromov(space: FiniteMetricMeasureSpace, K: float, N: float,
                        radius_pairs=None, centers=None,
                        budget: int = 40, seed: int = 0,
                        slack: Optional[float] = None) -> VolumeGrowthReport:
    """Test ball-mass growth against the model ratio.

    For sampled centers x and radius pairs r < R (within the domain
    cap), checks

        mass(B_R(x)) / mass(B_r(x)) <= vol(R)/vol(r) * (1 + slack)

    with slack defaulting to max-nearest-neighbor-spacing / r, the
    declared discretization allowance.  Evaluations record
    (x, r, R, lhs, rhs, margin) with margin = lhs/rhs - 1 - slack;
    positive margins are violations.  Radii beyond the cap are
    rejected and listed in skipped, not clamped.
    """
    cap = domain_cap(K, N)
    n = space.n
    rng = np.random.default_rng(seed)
    if n < 1:
        raise InvalidParameterError("empty space")

    if centers is None:
        if n <= budget:
            centers = np.arange(n)
        else:
            centers = np.sort(rng.choice(n, size=budget, replace=False))
    centers = np.asarray(centers, dtype=np.int64)

    if radius_pairs is None:
        rmax = min(space.diameter, cap)
        radius_pairs = []
        for _ in range(max(4, budget // 8)):
            r = float(rng.uniform(0.15, 0.7) * rmax)
            R = float(r + rng.uniform(0.1, 1.0) * (rmax - r))
            radius_pairs.append((r, R))

    spacing = space.nearest_neighbor_spacing()[centers].max() if n > 1 else 0.0

    evaluations = []
    violations = []
    skipped = []
    for (r, R) in radius_pairs:
        if not (0 < r < R):
            skipped.append((r, R, "need 0 < r < R"))
            continue
        if R > cap:
            skipped.append((r, R, f"R beyond domain cap {cap}"))
            continue
        rhs = model_ball_volume(K, N, R) / model_ball_volume(K, N, r)
        allow = slack if slack is not None else float(spacing) / r
        for x in centers:
            inside_r = space.dist[x] < r
            inside_R = space.dist[x] < R
            lhs = float(space.measure[inside_R].sum()) / \
                float(space.measure[inside_r].sum())
            margin = lhs / rhs - 1.0 - allow
            row = (int(x), float(r), float(R), lhs, float(rhs), float(margin))
            evaluations.append(row)
            if margin > 0:
                violations.append(row)

    worst = max(evaluations, key=lambda t: t[5]) if evaluations else None
    return VolumeGrowthReport(
        evaluations=evaluations, violations=violations, worst=worst,
        skipped=skipped, coverage=(len(centers), n),
        slack_description="multiplicative; nn-spacing/r unless overridden")


def check_ball_difference(space: FiniteMetricMeasureSpace, K: float, N: float,
                          r: float, pairs=None, budget: int = 200,
                          seed: int = 0,
                          slack: Optional[float] = None) -> VolumeGrowthReport:
    """Test the ball-difference estimate behind the walk bound.

    For pairs x, y with d = d(x, y) < r and r + d/2 within the domain
    cap, the mass of B_r(x) outside B_r(y), relative to B_r(x), is at
    most 1 - vol(r - d/2)/vol(r + d/2).  Checks sampled (or given)
    pairs with an additive slack defaulting to
    max-nearest-neighbor-spacing / r; margin = lhs - rhs - slack.
    Out-of-regime pairs are skipped with a notice.
    """
    cap = domain_cap(K, N)
    n = space.n
    rng = np.random.default_rng(seed)

    if pairs is None:
        iu = np.triu_indices(n, k=1)
        mask = space.dist[iu] < r
        cand = np.flatnonzero(mask)
        if len(cand) > budget:
            cand = np.sort(rng.choice(cand, size=budget, replace=False))
        pairs = list(zip(iu[0][cand].tolist(), iu[1][cand].tolist()))

    # group by x so each ball row is materialized once
    by_x = {}
    for x, y in pairs:
        by_x.setdefault(int(x), []).append(int(y))

    spacing = float(space.nearest_neighbor_spacing().max()) if n > 1 else 0.0
    allow = slack if slack is not None else spacing / r

    evaluations = []
    violations = []
    skipped = []
    for x, ys in sorted(by_x.items()):
        in_x = space.dist[x] < r
        mass_x = float(space.measure[in_x].sum())
        for y in ys:
            d = float(space.dist[x, y])
            if d >= r:
                skipped.append((x, y, f"d = {d} not below r = {r}"))
                continue
            if r + d / 2.0 > cap:
                skipped.append((x, y, "r + d/2 beyond domain cap"))
                continue
            lhs = float(space.measure[in_x & ~(space.dist[y] < r)].sum()) \
                / mass_x
            rhs = 1.0 - model_ball_volume(K, N, r - d / 2.0) \
                / model_ball_volume(K, N, r + d / 2.0)
            margin = lhs - rhs - allow
            row = (int(x), int(y), d, lhs, float(rhs), float(margin))
            evaluations.append(row)
            if margin > 0:
                violations.append(row)

    worst = max(evaluations, key=lambda t: t[5]) if evaluations else None
    return VolumeGrowthReport(
        evaluations=evaluations, violations=violations, worst=worst,
        skipped=skipped, coverage=(len(by_x), n),
        slack_description="additive; nn-spacing/r unless overridden")
