"""End-to-end acceptance checks.

One test per shipped claim, each printing a single PASS/FAIL line with
the measured quantities.  Tolerances and slacks are stated inline; a
failing claim fails loudly rather than being averaged away.
"""

import math
import time

import numpy as np
import pytest

from oracles import brute_force_w1

from coarsecurv.curvature import kappa, kappa_all_pairs
from coarsecurv.experiments import run_experiment
from coarsecurv.modelbounds import (
    check_ball_difference,
    check_bishop_gromov,
    model_ball_volume,
    walk_curvature_bound,
)
from coarsecurv.samplers import complete_graph, cycle_graph, euclidean_grid
from coarsecurv.spaces import make_space, neighbor_uniform_walk
from coarsecurv.spectral import laplacian, liouville_check
from coarsecurv.transport import w1_exact


def _line(num, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:02d}] {status} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_01_exact_transport():
    """100 rational instances vs brute force to 1e-10; duality gap
    <= 1e-8 up to n = 40; under 30 s."""
    start = time.time()
    rng = np.random.default_rng(101)
    worst_oracle = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        total = int(rng.integers(3, 13))
        mu_c = rng.multinomial(total, np.ones(n) / n)
        nu_c = rng.multinomial(total, np.ones(n) / n)
        pts = rng.normal(size=(n, 3))
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.sqrt((diff ** 2).sum(-1))
        want = brute_force_w1(mu_c, nu_c, d)
        got = w1_exact(mu_c / total, nu_c / total, d).value
        worst_oracle = max(worst_oracle, abs(want - got))

    worst_gap = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 41))
        pts = rng.normal(size=(n, 3))
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.sqrt((diff ** 2).sum(-1))
        mu = rng.gamma(1.0, 1.0, n) + 1e-9
        nu = rng.gamma(1.0, 1.0, n) + 1e-9
        res = w1_exact(mu / mu.sum(), nu / nu.sum(), d)
        worst_gap = max(worst_gap, abs(res.gap))
    elapsed = time.time() - start
    ok = worst_oracle <= 1e-10 and worst_gap <= 1e-8 and elapsed < 30.0
    _line(1, ok, f"oracle diff {worst_oracle:.2e}, gap {worst_gap:.2e}, "
                 f"{elapsed:.1f} s")


def test_criterion_02_closed_form_curvatures():
    """Complete graphs: kappa = (n-2)/(n-1); cycles: kappa_inf = 0.
    Both certified against the brute-force transport oracle."""
    worst = 0.0
    for n in range(3, 11):
        sp = complete_graph(n)
        kern = neighbor_uniform_walk(sp)
        val = kappa(sp, kern, 0, 1)
        worst = max(worst, abs(val - (n - 2) / (n - 1)))
        # oracle certification: rows are counts/(n-1)
        counts_x = np.ones(n, dtype=int)
        counts_x[0] = 0
        counts_y = np.ones(n, dtype=int)
        counts_y[1] = 0
        w1 = brute_force_w1(counts_x, counts_y, sp.dist)
        worst = max(worst, abs((1.0 - w1) - (n - 2) / (n - 1)))

    worst_cycle = 0.0
    for n in range(5, 13):
        sp = cycle_graph(n)
        kern = neighbor_uniform_walk(sp)
        rep = kappa_all_pairs(sp, kern)
        worst_cycle = max(worst_cycle, abs(rep.kappa_inf))
        # certify the witness pair: rows are counts/2
        x, y = rep.witness[:2]
        cx = np.zeros(n, dtype=int)
        cx[(x - 1) % n] = cx[(x + 1) % n] = 1
        cy = np.zeros(n, dtype=int)
        cy[(y - 1) % n] = cy[(y + 1) % n] = 1
        w1 = brute_force_w1(cx, cy, sp.dist)
        kap = 1.0 - w1 / sp.dist[x, y]
        worst_cycle = max(worst_cycle, abs(kap - rep.kappa_inf))
    ok = worst <= 1e-12 and worst_cycle <= 1e-12
    _line(2, ok, f"complete-graph err {worst:.2e}, cycle err {worst_cycle:.2e}")


def test_criterion_03_flat_grid_walk_bound():
    """50x50 grid, r-step 0.3: kappa_inf >= -3 - 0.5, 8 workers,
    under 5 minutes."""
    start = time.time()
    result = run_experiment("euclidean-grid-bound", seed=0, workers=8)
    elapsed = time.time() - start
    rep = result.report
    ok = (result.passed and rep["kappa_inf"] >= -3.0 - 0.5
          and "margin" in rep and elapsed < 300.0)
    _line(3, ok, f"kappa_inf {rep['kappa_inf']:.4f}, margin "
                 f"{rep['margin']:.4f}, slack {rep['declared_slack']}, "
                 f"{elapsed:.0f} s")


def test_criterion_04_heisenberg_walk_bound():
    """800-point Heisenberg sample, CC metric, r = diameter/3:
    kappa_inf >= -9 - 1.0."""
    result = run_experiment("heisenberg-bound", seed=0, workers=1)
    rep = result.report
    ok = result.passed and rep["kappa_inf"] >= -9.0 - 1.0
    _line(4, ok, f"kappa_inf {rep['kappa_inf']:.4f} vs bound "
                 f"{rep['model_bound']} - slack {rep['declared_slack']}")


def test_criterion_05_eigenvalue_bracket():
    """200 random kernels (n <= 15): all real eigenvalues of
    nonconstant modes inside [kappa_inf - 1e-7, 2 - kappa_inf + 1e-7];
    under 2 minutes."""
    start = time.time()
    result = run_experiment("finite-bracket", seed=0, workers=1)
    elapsed = time.time() - start
    rep = result.report
    ok = (rep["kernels_checked"] == 200
          and rep["bracket_violations"] == [] and elapsed < 120.0)
    _line(5, ok, f"{rep['kernels_checked']} kernels, "
                 f"{len(rep['bracket_violations'])} violations, "
                 f"{elapsed:.1f} s")


def test_criterion_06_liouville_property():
    """Every positive-curvature kernel has a one-dimensional harmonic
    space."""
    result = run_experiment("finite-bracket", seed=0, workers=1)
    rep = result.report
    ok = rep["positive_curvature_kernels"] > 0 and rep["liouville_failures"] == []
    for n in range(3, 7):
        sp = complete_graph(n)
        kern = neighbor_uniform_walk(sp)
        ki = kappa_all_pairs(sp, kern).kappa_inf
        lv = liouville_check(laplacian(kern), ki)
        ok = ok and lv.applicable and lv.passed and lv.kernel_dimension == 1
    _line(6, ok, f"{rep['liouville_checked']} random positive-curvature "
                 f"kernels plus 4 cliques, all harmonic spaces 1-dimensional")


def test_criterion_07_model_functions():
    """Flat walk bound is exactly 1 - 2N; quadrature volume matches
    1 - cos r to 1e-10 on (0, pi)."""
    exact = all(walk_curvature_bound(0.0, N, r) == 1.0 - 2.0 * N
                for N in (1.5, 2.0, 3.0, 5.0, 10.0)
                for r in (0.1, 1.0, 10.0))
    worst = 0.0
    for r in np.linspace(1e-3, math.pi - 1e-3, 50):
        q = model_ball_volume(1.0, 2.0, float(r), method="quadrature")
        worst = max(worst, abs(q - (1.0 - math.cos(r))))
    ok = exact and worst <= 1e-10
    _line(7, ok, f"flat bound exact: {exact}, quadrature err {worst:.2e}")


def test_criterion_08_ball_difference_grid():
    """Ball-difference estimate on the 50x50 grid, r = 0.3, all pairs
    with d < r/2: zero violations beyond slack."""
    sp = euclidean_grid(50, 0.02)
    r = 0.3
    iu = np.triu_indices(sp.n, k=1)
    mask = sp.dist[iu] < r / 2.0
    pairs = list(zip(iu[0][mask].tolist(), iu[1][mask].tolist()))
    rep = check_ball_difference(sp, 0.0, 2.0, r=r, pairs=pairs)
    ok = rep.ok and len(rep.evaluations) == len(pairs)
    _line(8, ok, f"{len(rep.evaluations)} pairs, "
                 f"{len(rep.violations)} violations, worst margin "
                 f"{rep.worst[5]:.4f}")


def test_criterion_09_growth_checker_can_fail():
    """The two-point weighted counterexample must be flagged."""
    sp = make_space([[0.0, 1.0], [1.0, 0.0]], measure=[1.0, 100.0])
    rep = check_bishop_gromov(sp, 0.0, 2.0,
                              radius_pairs=[(0.5, 1.5)], centers=[0])
    ok = (not rep.ok) and rep.worst[3] == pytest.approx(101.0) \
        and rep.worst[4] == pytest.approx(9.0)
    _line(9, ok, f"ratio {rep.worst[3]:.0f} vs model {rep.worst[4]:.0f} "
                 f"reported as violation: {not rep.ok}")


def test_criterion_10_gaussian_walk_smoke():
    """Gaussian walk on a 40x40 grid, t = 0.01: kappa_inf >= -0.25."""
    result = run_experiment("gaussian-smoke", seed=0, workers=1)
    rep = result.report
    ok = result.passed and rep["kappa_inf"] >= -0.25
    _line(10, ok, f"kappa_inf {rep['kappa_inf']:.4f} vs threshold "
                  f"{rep['threshold']}")
