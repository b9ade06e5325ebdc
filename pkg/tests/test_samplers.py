import math

import numpy as np
import pytest

from oracles import poincare_distance, polygon_cc_norm

from coarsecurv.errors import InvalidParameterError
from coarsecurv.samplers import (
    GeneratorSpec,
    _poincare_dist,
    cc_distance,
    cc_norm,
    complete_graph,
    cycle_graph,
    euclidean_ball_sample,
    euclidean_grid,
    generate,
    heisenberg_inv,
    heisenberg_mul,
    heisenberg_sample,
    hypercube_graph,
    hyperbolic_sample,
    koranyi_norm,
    path_graph,
    random_space,
    random_stochastic_kernel,
    sphere_sample,
)
from coarsecurv.spaces import validate_space

RNG = np.random.default_rng(20240915)


# ---------------------------------------------------------------------------
# Heisenberg group and CC distance

def test_group_law():
    p = RNG.normal(size=(10, 3))
    q = RNG.normal(size=(10, 3))
    r = RNG.normal(size=(10, 3))
    left = heisenberg_mul(heisenberg_mul(p, q), r)
    right = heisenberg_mul(p, heisenberg_mul(q, r))
    assert np.allclose(left, right, atol=1e-12)
    e = heisenberg_mul(p, heisenberg_inv(p))
    assert np.allclose(e, 0.0, atol=1e-12)


def test_cc_norm_closed_forms():
    assert cc_norm(0.0, 0.0, 0.0) == 0.0
    # horizontal: straight segment
    assert cc_norm(3.0, 4.0, 0.0) == pytest.approx(5.0, abs=1e-12)
    assert cc_norm(-2.0, 0.0, 0.0) == pytest.approx(2.0, abs=1e-12)
    # vertical: full circle of the right area
    assert cc_norm(0.0, 0.0, 2.0) == pytest.approx(2 * math.sqrt(2 * math.pi),
                                                   abs=1e-12)
    assert cc_norm(0.0, 0.0, -2.0) == cc_norm(0.0, 0.0, 2.0)


def test_cc_norm_dilation_homogeneity():
    # the anisotropic dilation (sx, sy, s^2 t) scales distance by s
    pts = RNG.normal(size=(50, 3))
    base = cc_norm(pts[:, 0], pts[:, 1], pts[:, 2])
    for s in (0.5, 2.0, 7.0):
        scaled = cc_norm(s * pts[:, 0], s * pts[:, 1], s * s * pts[:, 2])
        assert np.allclose(scaled, s * base, rtol=1e-12)


def test_cc_distance_left_invariant():
    p = RNG.normal(size=(30, 3))
    q = RNG.normal(size=(30, 3))
    g = RNG.normal(size=3)
    d0 = cc_distance(p, q)
    d1 = cc_distance(heisenberg_mul(g, p), heisenberg_mul(g, q))
    assert np.allclose(d0, d1, atol=1e-8)


def test_cc_distance_symmetric():
    p = RNG.normal(size=(30, 3))
    q = RNG.normal(size=(30, 3))
    assert np.allclose(cc_distance(p, q), cc_distance(q, p), atol=1e-10)


def test_cc_norm_against_shortest_path_oracle():
    # polygonal horizontal paths upper-bound the distance and converge
    cases = [
        (0.0, 0.0, 1.0),    # purely vertical
        (0.0, 0.0, -0.4),
        (1.0, 0.5, 0.3),
        (0.2, -0.1, 0.5),
        (2.0, 0.0, 1.0),
    ]
    for x, y, t in cases:
        d = float(cc_norm(np.array(x), np.array(y), np.array(t)))
        upper = polygon_cc_norm(x, y, t, seed=3)
        assert d <= upper * (1 + 1e-9)
        assert upper <= d * 1.01, (x, y, t, d, upper)


def test_koranyi_is_bilipschitz_to_cc():
    pts = RNG.normal(size=(200, 3))
    cc = cc_norm(pts[:, 0], pts[:, 1], pts[:, 2])
    kg = koranyi_norm(pts[:, 0], pts[:, 1], pts[:, 2])
    ratio = kg / cc
    # gauge/CC ratio lives in [1/sqrt(pi), 1]
    assert ratio.min() >= 1.0 / math.sqrt(math.pi) - 1e-9
    assert ratio.max() <= 1.0 + 1e-9


def test_heisenberg_sample_space():
    sp = heisenberg_sample(60, box=2.0, seed=5)
    assert sp.n == 60
    assert sp.labels[0] == "h0"
    rep = validate_space(sp)  # triangle inequality included at this size
    assert rep.ok, rep.violations[:3]
    again = heisenberg_sample(60, box=2.0, seed=5)
    assert np.array_equal(sp.dist, again.dist)
    other = heisenberg_sample(60, box=2.0, seed=6)
    assert not np.array_equal(sp.dist, other.dist)


def test_heisenberg_sample_koranyi_mode():
    sp = heisenberg_sample(40, box=2.0, seed=5, metric="koranyi")
    assert validate_space(sp).ok
    with pytest.raises(InvalidParameterError):
        heisenberg_sample(40, box=2.0, metric="euclid")


# ---------------------------------------------------------------------------
# model geometries

def test_euclidean_grid_small():
    sp = euclidean_grid(2, 1.0)
    assert sp.n == 4
    assert sp.diameter == pytest.approx(math.sqrt(2.0))
    sp3 = euclidean_grid(3, 1.0)
    assert sp3.n == 9
    assert validate_space(sp3).ok
    assert sp3.labels[0] == "g0_0"


def test_euclidean_ball_sample():
    sp = euclidean_ball_sample(80, radius=2.0, seed=1)
    assert sp.diameter <= 4.0 + 1e-12
    assert validate_space(sp).ok
    assert np.array_equal(sp.dist,
                          euclidean_ball_sample(80, radius=2.0, seed=1).dist)


def test_sphere_sample():
    sp = sphere_sample(300, seed=2)
    off = sp.dist[~np.eye(sp.n, dtype=bool)]
    assert off.min() > 0.0
    assert off.max() <= math.pi + 1e-12
    # with hundreds of points some pair is nearly antipodal
    assert off.max() > math.pi - 0.25
    assert validate_space(sp).ok
    assert np.array_equal(sp.dist, sphere_sample(300, seed=2).dist)


def test_hyperbolic_sample_against_closed_form():
    sp = hyperbolic_sample(120, radius=2.0, seed=3)
    assert validate_space(sp).ok
    assert sp.diameter <= 4.0 + 1e-9  # reverse triangle through the center
    # library distance matrix vs an independent Mobius-transform oracle
    rng = np.random.default_rng(7)
    er = np.tanh(rng.uniform(0, 2, 25) / 2.0)
    phi = rng.uniform(0, 2 * math.pi, 25)
    pts = np.column_stack([er * np.cos(phi), er * np.sin(phi)])
    got = _poincare_dist(pts)
    zs = pts[:, 0] + 1j * pts[:, 1]
    for i in range(25):
        for j in range(i + 1, 25):
            assert got[i, j] == pytest.approx(
                poincare_distance(zs[i], zs[j]), abs=1e-11)


def test_hyperbolic_radial_distance_is_sampling_radius():
    # a disc point at Euclidean radius tanh(s/2) lies at distance s
    s = 1.7
    pts = np.array([[0.0, 0.0], [math.tanh(s / 2.0), 0.0]])
    assert _poincare_dist(pts)[0, 1] == pytest.approx(s, abs=1e-12)


# ---------------------------------------------------------------------------
# graphs

def test_graph_generators():
    assert cycle_graph(6).dist[0, 3] == 3.0
    k4 = complete_graph(4)
    assert np.array_equal(k4.dist, np.ones((4, 4)) - np.eye(4))
    h3 = hypercube_graph(3)
    assert h3.n == 8
    assert h3.diameter == 3.0
    assert h3.dist[0, 6] == 2.0  # 000 vs 110
    assert h3.labels[5] == "101"
    assert path_graph(4).dist[0, 3] == 3.0
    for sp in (cycle_graph(6), k4, h3, path_graph(4)):
        assert validate_space(sp).ok
    with pytest.raises(InvalidParameterError):
        cycle_graph(2)
    with pytest.raises(InvalidParameterError):
        hypercube_graph(0)


# ---------------------------------------------------------------------------
# random instances and the generator registry

def test_random_space_is_valid():
    for seed in range(4):
        sp = random_space(12, seed=seed)
        assert validate_space(sp).ok
        assert sp.measure.min() > 0


def test_random_stochastic_kernel():
    sp = random_space(9, seed=1)
    k = random_stochastic_kernel(sp, seed=2, zero_fraction=0.4)
    assert np.allclose(k.rows.sum(axis=1), 1.0)
    assert (k.rows == 0.0).sum() > 0
    assert np.array_equal(
        k.rows, random_stochastic_kernel(sp, seed=2, zero_fraction=0.4).rows)


def test_generate_registry():
    sp = generate(GeneratorSpec("cycle_graph", {"n": 5}))
    assert sp.n == 5
    sp2 = generate(GeneratorSpec("sphere_sample", {"count": 30}, seed=4))
    assert np.array_equal(
        sp2.dist, generate(GeneratorSpec("sphere_sample", {"count": 30},
                                         seed=4)).dist)
    with pytest.raises(InvalidParameterError, match="unknown generator"):
        generate(GeneratorSpec("mystery", {}))
    with pytest.raises(InvalidParameterError, match="bad parameters"):
        generate(GeneratorSpec("cycle_graph", {"count": 5}))
