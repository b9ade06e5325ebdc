"""Finite metric measure spaces and random-walk kernels.

A space is a finite point set carrying a full symmetric distance matrix
and strictly positive weights.  A walk kernel attaches to every point a
probability row supported near it.  Two constructions matter most here:
the step-radius walk, which restricts the reference weights to an open
metric ball and renormalizes, and the Gaussian walk, which reweights
them by a heat-style factor exp(-d^2 / (4t)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EmptyNeighborhoodError,
    InvalidKernelError,
    InvalidParameterError,
    InvalidRadiusError,
    InvalidSpaceError,
)

# tolerance for symmetry / stochasticity checks, double-precision headroom
CHECK_TOL = 1e-12

# full triangle validation is O(n^3); above this size it must be asked for
TRIANGLE_GATE = 500


@dataclass(frozen=True)
class FiniteMetricMeasureSpace:
    """A finite metric space with a positive reference measure.

    Attributes
    ----------
    dist : ndarray, shape (n, n)
        Symmetric distances, zero diagonal.
    measure : ndarray, shape (n,)
        Strictly positive weights.  Any positive total mass is allowed;
        walk rows are normalized separately.
    labels : list
        Point identifiers, JSON-compatible.  Defaults to 0..n-1.
    """

    dist: np.ndarray
    measure: np.ndarray
    labels: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.labels) == 0:
            object.__setattr__(self, "labels", list(range(self.dist.shape[0])))

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.dist.max()) if self.n else 0.0

    def nearest_neighbor_spacing(self) -> np.ndarray:
        """Distance from each point to its nearest distinct point."""
        d = self.dist + np.diag(np.full(self.n, np.inf))
        return d.min(axis=1)


@dataclass(frozen=True)
class RandomWalkKernel:
    """Row-stochastic transition weights over a space.

    ``rows[x]`` is the one-step distribution started at point x.  The
    ``kind`` tag records the construction; ``step_radius`` is set for
    step-radius walks and drives near-pair enumeration downstream.
    """

    space: FiniteMetricMeasureSpace
    rows: np.ndarray
    kind: str = "custom"
    step_radius: Optional[float] = None
    param: Optional[float] = None


@dataclass(frozen=True)
class BallIndex:
    """Open metric ball: member indices and their total weight."""

    center: int
    radius: float
    members: np.ndarray
    mass: float


@dataclass(frozen=True)
class SpaceValidationReport:
    """Outcome of validate_space.  Never raises; lists violations.

    Each violation is a (kind, detail) pair where detail identifies the
    offending entry or triple.
    """

    violations: list
    triangle_checked: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def make_space(dist, measure=None, labels=None, validate: bool = True,
               check_triangle: Optional[bool] = None) -> FiniteMetricMeasureSpace:
    """Build a space from raw arrays, optionally validating the axioms.

    Parameters
    ----------
    dist : array_like, shape (n, n)
    measure : array_like, shape (n,), optional
        Defaults to unit weights.
    labels : sequence, optional
    validate : bool
        When true (default), raise InvalidSpaceError on any violated
        axiom instead of returning a bad space.
    check_triangle : bool or None
        None defers to the size gate in validate_space.
    """
    dist = np.array(dist, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise InvalidSpaceError(f"dist must be square, got shape {dist.shape}")
    n = dist.shape[0]
    if measure is None:
        measure = np.ones(n)
    measure = np.array(measure, dtype=np.float64)
    if measure.shape != (n,):
        raise InvalidSpaceError(
            f"measure must have shape ({n},), got {measure.shape}")
    labels = list(labels) if labels is not None else list(range(n))
    if len(labels) != n:
        raise InvalidSpaceError(f"expected {n} labels, got {len(labels)}")
    dist.setflags(write=False)
    measure.setflags(write=False)
    space = FiniteMetricMeasureSpace(dist=dist, measure=measure, labels=labels)
    if validate:
        report = validate_space(space, check_triangle=check_triangle)
        if not report.ok:
            shown = "; ".join(f"{k}: {d}" for k, d in report.violations[:5])
            raise InvalidSpaceError(
                f"{len(report.violations)} axiom violation(s): {shown}")
    return space


def validate_space(space: FiniteMetricMeasureSpace,
                   check_triangle: Optional[bool] = None,
                   max_report: int = 20) -> SpaceValidationReport:
    """Check every metric-measure axiom and report violations.

    Diagnostic only: always returns a report, never raises.  Reported
    kinds are ``asymmetry``, ``nonzero-diagonal``, ``negative-entry``,
    ``duplicate-points``, ``triangle`` (with the offending triple) and
    ``nonpositive-weight``.

    The triangle scan is cubic; with ``check_triangle=None`` it runs
    only for n <= 500.
    """
    d = space.dist
    w = space.measure
    n = space.n
    violations = []

    def room():
        return len(violations) < max_report

    asym = np.argwhere(np.abs(d - d.T) > CHECK_TOL)
    for i, j in asym[np.lexsort((asym[:, 1], asym[:, 0]))] if len(asym) else []:
        if i < j and room():
            violations.append(("asymmetry", (int(i), int(j))))
    for i in np.flatnonzero(np.abs(np.diag(d)) > CHECK_TOL):
        if room():
            violations.append(("nonzero-diagonal", int(i)))
    neg = np.argwhere(d < -CHECK_TOL)
    for i, j in neg:
        if room():
            violations.append(("negative-entry", (int(i), int(j))))
    dup = np.argwhere((d == 0) & ~np.eye(n, dtype=bool))
    for i, j in dup:
        if i < j and room():
            violations.append(("duplicate-points", (int(i), int(j))))
    for i in np.flatnonzero(w <= 0):
        if room():
            violations.append(("nonpositive-weight", int(i)))

    do_triangle = check_triangle if check_triangle is not None else n <= TRIANGLE_GATE
    if do_triangle and not violations:
        # d[i,j] <= d[i,k] + d[k,j] for all triples, checked one k-slab
        # at a time to stay in O(n^2) memory
        for k in range(n):
            excess = d - (d[:, k:k + 1] + d[k:k + 1, :])
            bad = np.argwhere(excess > CHECK_TOL)
            for i, j in bad:
                if room():
                    violations.append(
                        ("triangle",
                         (int(i), int(k), int(j),
                          float(d[i, j]), float(d[i, k] + d[k, j]))))
            if not room():
                break
    return SpaceValidationReport(violations=violations,
                                 triangle_checked=bool(do_triangle))


def open_ball(space: FiniteMetricMeasureSpace, x: int, r: float) -> BallIndex:
    """Members and weight of the open ball around point x.

    Strictly open: points at distance exactly r are excluded.  The
    center always belongs, so the mass is positive.
    """
    if r <= 0:
        raise InvalidRadiusError(f"ball radius must be positive, got {r}")
    members = np.flatnonzero(space.dist[x] < r)
    mass = float(space.measure[members].sum())
    return BallIndex(center=int(x), radius=float(r), members=members, mass=mass)


def r_step_walk(space: FiniteMetricMeasureSpace, r: float) -> RandomWalkKernel:
    """Walk that jumps to a weight-proportional point of the open ball.

    Row x carries measure[i] / ball_mass for points with dist[x][i] < r
    and exact zeros elsewhere.
    """
    if r <= 0:
        raise InvalidRadiusError(f"step radius must be positive, got {r}")
    inside = space.dist < r
    rows = np.where(inside, space.measure[None, :], 0.0)
    rows /= rows.sum(axis=1, keepdims=True)
    rows.setflags(write=False)
    return RandomWalkKernel(space=space, rows=rows, kind="r-step",
                            step_radius=float(r))


def gaussian_walk(space: FiniteMetricMeasureSpace, t: float,
                  floor: float = 0.0) -> RandomWalkKernel:
    """Heat-style walk: row x proportional to measure * exp(-d^2/(4t)).

    Parameters
    ----------
    t : float
        Time-scale parameter, must be positive.  As t -> 0+ the rows
        concentrate on their centers.
    floor : float
        Optional relative support cutoff.  Entries below floor times
        the row maximum are zeroed before normalization, which keeps
        far-field supports finite on large spaces.  The default 0.0
        keeps the exact dense rows.
    """
    if t <= 0:
        raise InvalidParameterError(f"time parameter must be positive, got {t}")
    rows = space.measure[None, :] * np.exp(-space.dist ** 2 / (4.0 * t))
    if floor > 0.0:
        rows[rows < floor * rows.max(axis=1, keepdims=True)] = 0.0
    rows /= rows.sum(axis=1, keepdims=True)
    rows.setflags(write=False)
    return RandomWalkKernel(space=space, rows=rows, kind="gaussian",
                            param=float(t))


def delta_walk(space: FiniteMetricMeasureSpace) -> RandomWalkKernel:
    """Identity kernel: every point stays put."""
    rows = np.eye(space.n)
    rows.setflags(write=False)
    return RandomWalkKernel(space=space, rows=rows, kind="delta")


def neighbor_uniform_walk(space: FiniteMetricMeasureSpace) -> RandomWalkKernel:
    """Uniform step onto unit-distance neighbors.

    Intended for graph spaces with the shortest-path metric, where
    distance exactly 1 means adjacency.  Raises if some point has no
    unit-distance neighbor.
    """
    adj = space.dist == 1.0
    counts = adj.sum(axis=1)
    lonely = np.flatnonzero(counts == 0)
    if len(lonely):
        raise EmptyNeighborhoodError(
            f"point(s) {lonely[:5].tolist()} have no unit-distance neighbors")
    rows = adj / counts[:, None]
    rows.setflags(write=False)
    return RandomWalkKernel(space=space, rows=rows, kind="neighbor-uniform")


def make_kernel(space: FiniteMetricMeasureSpace, rows,
                kind: str = "custom", step_radius=None,
                param=None) -> RandomWalkKernel:
    """Wrap explicit rows as a kernel, enforcing stochasticity."""
    rows = np.array(rows, dtype=np.float64)
    if rows.shape != (space.n, space.n):
        raise InvalidKernelError(
            f"rows must have shape ({space.n}, {space.n}), got {rows.shape}")
    if rows.min() < 0:
        i, j = np.unravel_index(rows.argmin(), rows.shape)
        raise InvalidKernelError(f"negative weight at ({i}, {j}): {rows[i, j]}")
    sums = rows.sum(axis=1)
    off = np.abs(sums - 1.0)
    if off.max() > CHECK_TOL:
        i = int(off.argmax())
        raise InvalidKernelError(f"row {i} sums to {sums[i]!r}, not 1")
    rows.setflags(write=False)
    return RandomWalkKernel(space=space, rows=rows, kind=kind,
                            step_radius=step_radius, param=param)
