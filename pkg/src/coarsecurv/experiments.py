"""Named end-to-end verification experiments.

Each experiment samples a space, builds a walk, computes curvature or
spectra, compares against the model-geometry prediction with an
explicit declared slack, and returns a verdict plus every intermediate
number.  They are deliberately deterministic: a fixed seed fixes the
report bit for bit, and worker count never changes results, only wall
time.

  euclidean-grid-bound   dense planar grid, step-radius walk; the
                         curvature infimum must respect the flat-space
                         walk bound 1 - 2N = -3 within slack.
  heisenberg-bound       Heisenberg group sample with CC distances;
                         the walk bound with N = 2n + 3 = 5 gives -9.
  finite-bracket         random kernels; every real eigenvalue of the
                         walk Laplacian attached to a nonconstant
                         eigenfunction must lie in the curvature
                         bracket, and positive curvature forces a
                         one-dimensional harmonic space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import kappa, kappa_all_pairs, kappa_sampled
from .errors import InvalidParameterError
from .modelbounds import walk_curvature_bound
from .samplers import (
    euclidean_grid,
    heisenberg_sample,
    random_space,
    random_stochastic_kernel,
)
from .spaces import r_step_walk, gaussian_walk
from .spectral import check_bracket, laplacian, liouville_check, spectrum


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    passed: bool
    report: dict


def run_grid_bound(seed: int = 0, workers: int = 1,
                   tolerances=None) -> ExperimentResult:
    """Flat-grid walk bound: kappa_inf >= -3 - slack on a 50x50 grid."""
    tol = dict(tolerances or {})
    side = int(tol.get("side_count", 50))
    spacing = float(tol.get("spacing", 0.02))
    r = float(tol.get("r", 0.3))
    slack = float(tol.get("slack", 0.5))
    budget = int(tol.get("pair_budget", 40))
    near_cap = int(tol.get("near_pair_cap", 40))

    space = euclidean_grid(side, spacing)
    kernel = r_step_walk(space, r)
    rep = kappa_sampled(space, kernel, pair_budget=budget, seed=seed,
                        workers=workers, near_pair_cap=near_cap)
    bound = walk_curvature_bound(0.0, 2.0, r)
    margin = rep.kappa_inf - (bound - slack)
    near = [row for row in rep.pairs if row[2] < 2.0 * r]
    near_inf = min((row[4] for row in near), default=float("inf"))
    report = {
        "space": {"generator": "euclidean_grid",
                  "side_count": side, "spacing": spacing},
        "kernel": {"kind": "r-step", "r": r},
        "n": space.n,
        "seed": seed,
        "workers": workers,
        "model_bound": bound,
        "declared_slack": slack,
        "kappa_inf": rep.kappa_inf,
        "kappa_inf_near_pairs": near_inf,
        "witness": rep.witness,
        "margin": margin,
        "sampling": rep.meta,
    }
    return ExperimentResult("euclidean-grid-bound", bool(margin >= 0), report)


def run_heisenberg_bound(seed: int = 0, workers: int = 1,
                         tolerances=None) -> ExperimentResult:
    """Heisenberg-group walk bound: kappa_inf >= -9 - slack.

    The group's volume growth matches dimension parameter N = 2n + 3
    at n = 1, so the flat walk bound is 1 - 2*5 = -9.  The walk radius
    defaults to a third of the sample diameter.
    """
    tol = dict(tolerances or {})
    count = int(tol.get("count", 800))
    box = float(tol.get("box", 2.0))
    slack = float(tol.get("slack", 1.0))
    budget = int(tol.get("pair_budget", 80))
    near_cap = int(tol.get("near_pair_cap", 80))

    space = heisenberg_sample(count, box=box, seed=seed)
    r = float(tol.get("r", space.diameter / 3.0))
    kernel = r_step_walk(space, r)
    rep = kappa_sampled(space, kernel, pair_budget=budget, seed=seed,
                        workers=workers, near_pair_cap=near_cap)
    bound = walk_curvature_bound(0.0, 5.0, r)
    margin = rep.kappa_inf - (bound - slack)
    report = {
        "space": {"generator": "heisenberg_sample",
                  "count": count, "box": box, "metric": "carnot"},
        "kernel": {"kind": "r-step", "r": r},
        "n": space.n,
        "diameter": space.diameter,
        "seed": seed,
        "workers": workers,
        "model_bound": bound,
        "declared_slack": slack,
        "kappa_inf": rep.kappa_inf,
        "witness": rep.witness,
        "margin": margin,
        "sampling": rep.meta,
    }
    return ExperimentResult("heisenberg-bound", bool(margin >= 0), report)


def run_finite_bracket(seed: int = 0, workers: int = 1,
                       tolerances=None) -> ExperimentResult:
    """Bracket and harmonic-space checks over random kernels.

    Kernel k lives on a random space with n = 2 + (k mod 14) points;
    kappa_inf is exact over all pairs.  Bracket violations at tol 1e-7
    fail the experiment, as does any positive-curvature kernel whose
    Laplacian kernel is not one-dimensional.
    """
    tol = dict(tolerances or {})
    kernels = int(tol.get("kernels", 200))
    tol_bracket = float(tol.get("bracket", 1e-7))

    violations = []
    liouville_failures = []
    checked = 0
    liouville_applicable = 0
    positive = 0
    for k in range(kernels):
        n = 2 + (k % 14)
        space = random_space(n, seed=seed * 100003 + k)
        kern = random_stochastic_kernel(
            space, seed=seed * 200003 + k,
            zero_fraction=0.3 if k % 3 == 0 else 0.0)
        rep = kappa_all_pairs(space, kern, workers=1)
        delta = laplacian(kern)
        spec_rep = spectrum(delta)
        verdict = check_bracket(spec_rep, rep.kappa_inf, tol=tol_bracket)
        checked += 1
        if not verdict.passed:
            violations.append((k, n, rep.kappa_inf, verdict.violations))
        if rep.kappa_inf > 0:
            positive += 1
            lv = liouville_check(delta, rep.kappa_inf)
            liouville_applicable += 1
            if not lv.passed:
                liouville_failures.append((k, n, lv.kernel_dimension))
    report = {
        "kernels_checked": checked,
        "seed": seed,
        "bracket_tol": tol_bracket,
        "bracket_violations": violations,
        "positive_curvature_kernels": positive,
        "liouville_checked": liouville_applicable,
        "liouville_failures": liouville_failures,
    }
    passed = not violations and not liouville_failures
    return ExperimentResult("finite-bracket", bool(passed), report)


def run_gaussian_smoke(seed: int = 0, workers: int = 1,
                       tolerances=None) -> ExperimentResult:
    """Gaussian-walk sign consistency on a flat grid.

    The continuum heat-walk bound at K = 0 is zero; on a finite grid
    the walk only approximates it, so the check is sign-level:
    kappa_inf >= -0.25 with the slack absorbing discretization.  Rows
    are support-floored at 1e-9 relative, which moves each row by less
    than 1e-6 in total variation and kappa by far less than the
    asserted granularity.
    """
    tol = dict(tolerances or {})
    side = int(tol.get("side_count", 40))
    spacing = float(tol.get("spacing", 0.05))
    t = float(tol.get("t", 0.01))
    floor = float(tol.get("floor", 1e-9))
    threshold = float(tol.get("threshold", -0.25))
    budget = int(tol.get("pair_budget", 20))
    near_budget = int(tol.get("near_pair_budget", 12))

    space = euclidean_grid(side, spacing)
    kernel = gaussian_walk(space, t, floor=floor)
    rep = kappa_sampled(space, kernel, pair_budget=budget, seed=seed,
                        workers=workers)
    # a gaussian kernel carries no step radius, so kappa_sampled draws
    # no near set; add seeded lattice-neighbor pairs where the walk
    # rows overlap most and the infimum is likeliest
    rng = np.random.default_rng(seed + 1)
    starts = rng.choice(space.n - side - 1, size=near_budget, replace=False)
    near_rows = []
    for x in np.sort(starts):
        x = int(x)
        y = x + 1 if (x + 1) % side else x + side
        d = float(space.dist[x, y])
        kv = kappa(space, kernel, x, y)
        near_rows.append((x, y, d, (1.0 - kv) * d, kv))
    near_inf = min(row[4] for row in near_rows)
    kappa_inf = min(rep.kappa_inf, near_inf)
    margin = kappa_inf - threshold
    report = {
        "space": {"generator": "euclidean_grid",
                  "side_count": side, "spacing": spacing},
        "kernel": {"kind": "gaussian", "t": t, "floor": floor},
        "n": space.n,
        "seed": seed,
        "workers": workers,
        "threshold": threshold,
        "kappa_inf": kappa_inf,
        "kappa_inf_random_pairs": rep.kappa_inf,
        "kappa_inf_near_pairs": near_inf,
        "witness": rep.witness,
        "margin": margin,
        "sampling": rep.meta,
    }
    return ExperimentResult("gaussian-smoke", bool(margin >= 0), report)


EXPERIMENTS = {
    "euclidean-grid-bound": run_grid_bound,
    "heisenberg-bound": run_heisenberg_bound,
    "finite-bracket": run_finite_bracket,
    "gaussian-smoke": run_gaussian_smoke,
}


def run_experiment(name: str, seed: int = 0, workers: int = 1,
                   tolerances=None) -> ExperimentResult:
    """Dispatch an experiment by name."""
    if name not in EXPERIMENTS:
        raise InvalidParameterError(
            f"unknown experiment {name!r}; have {sorted(EXPERIMENTS)}")
    return EXPERIMENTS[name](seed=seed, workers=workers, tolerances=tolerances)
