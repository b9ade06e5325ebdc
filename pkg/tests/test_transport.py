import numpy as np
import pytest

from oracles import brute_force_w1

from coarsecurv.errors import (
    InvalidParameterError,
    NotLipschitzError,
    OutOfRegimeError,
    UnbalancedMarginalsError,
)
from coarsecurv.spaces import make_space, r_step_walk
from coarsecurv.transport import (
    Coupling,
    kr_dual_value,
    naive_ball_transport_bound,
    validate_coupling,
    w1_exact,
)


def random_metric(rng, n, dim=3):
    pts = rng.normal(size=(n, dim))
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1))


def random_simplex(rng, n):
    w = rng.gamma(1.0, 1.0, n) + 1e-9
    return w / w.sum()


def test_point_masses():
    d = random_metric(np.random.default_rng(0), 6)
    mu = np.zeros(6)
    nu = np.zeros(6)
    mu[1] = 1.0
    nu[4] = 1.0
    res = w1_exact(mu, nu, d)
    assert res.value == pytest.approx(d[1, 4], abs=1e-14)


def test_identical_marginals_fast_path():
    rng = np.random.default_rng(1)
    d = random_metric(rng, 8)
    mu = random_simplex(rng, 8)
    res = w1_exact(mu, mu.copy(), d)
    assert res.value == 0.0
    assert res.gap == 0.0
    assert np.array_equal(res.coupling.plan, np.diag(mu))


def test_matches_brute_force_oracle():
    # rational marginals, exhaustive integral plans
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        total = int(rng.integers(4, 13))
        mu_c = rng.multinomial(total, np.ones(n) / n)
        nu_c = rng.multinomial(total, np.ones(n) / n)
        d = random_metric(rng, n, dim=2)
        want = brute_force_w1(mu_c, nu_c, d)
        got = w1_exact(mu_c / total, nu_c / total, d)
        assert got.value == pytest.approx(want, abs=1e-10)


def test_methods_agree():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(3, 20))
        d = random_metric(rng, n)
        mu = random_simplex(rng, n)
        nu = random_simplex(rng, n)
        a = w1_exact(mu, nu, d, method="netsimplex")
        b = w1_exact(mu, nu, d, method="lp")
        assert a.value == pytest.approx(b.value, abs=1e-9)


def test_certificates():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 41))
        d = random_metric(rng, n)
        mu = random_simplex(rng, n)
        nu = random_simplex(rng, n)
        res = w1_exact(mu, nu, d)
        # marginals of the returned coupling
        assert np.abs(res.coupling.plan.sum(axis=1) - mu).max() <= 1e-10
        assert np.abs(res.coupling.plan.sum(axis=0) - nu).max() <= 1e-10
        assert res.coupling.plan.min() >= 0.0
        # certified duality gap
        assert -1e-9 <= res.gap <= 1e-8
        # potential is 1-Lipschitz and reproduces the value
        f = res.potential
        assert (np.abs(f[:, None] - f[None, :]) - d).max() <= 1e-9
        assert float(f @ (mu - nu)) == pytest.approx(res.value, abs=1e-8)


def test_w1_is_a_metric_on_distributions():
    rng = np.random.default_rng(5)
    n = 12
    d = random_metric(rng, n)
    dists = [random_simplex(rng, n) for _ in range(3)]
    a, b, c = dists
    ab = w1_exact(a, b, d).value
    ba = w1_exact(b, a, d).value
    ac = w1_exact(a, c, d).value
    cb = w1_exact(c, b, d).value
    assert ab == pytest.approx(ba, abs=1e-12)
    assert ab <= ac + cb + 1e-12
    assert ab > 0.0


def test_rejects_unbalanced_and_negative():
    d = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(UnbalancedMarginalsError):
        w1_exact([0.7, 0.2], [0.5, 0.5], d)
    with pytest.raises(InvalidParameterError):
        w1_exact([1.5, -0.5], [0.5, 0.5], d)


def test_kr_dual_value_lower_bounds_w1():
    rng = np.random.default_rng(13)
    n = 15
    d = random_metric(rng, n)
    mu = random_simplex(rng, n)
    nu = random_simplex(rng, n)
    w1 = w1_exact(mu, nu, d).value
    # any 1-Lipschitz test function stays below the optimum
    anchor = d[0]
    for scale in (1.0, -0.5, 0.3):
        val = kr_dual_value(scale * anchor, mu, nu, d)
        assert val <= w1 + 1e-12
    # the optimal potential attains it
    f = w1_exact(mu, nu, d).potential
    assert kr_dual_value(f, mu, nu, d) == pytest.approx(w1, abs=1e-8)


def test_kr_dual_rejects_non_lipschitz():
    d = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(NotLipschitzError, match=r"f\[0\] - f\[1\]"):
        kr_dual_value([0.0, 2.0], [1.0, 0.0], [0.0, 1.0], d)


def test_naive_ball_bound_dominates_w1():
    rng = np.random.default_rng(17)
    pts = rng.uniform(0, 1, (40, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    sp = make_space(np.sqrt((diff ** 2).sum(-1)), check_triangle=False)
    r = 0.4
    kern = r_step_walk(sp, r)
    checked = 0
    for x in range(sp.n):
        for y in range(x + 1, sp.n):
            dxy = sp.dist[x, y]
            if dxy >= r:
                continue
            bound = naive_ball_transport_bound(sp, x, y, r)
            w1 = w1_exact(kern.rows[x], kern.rows[y], sp.dist).value
            assert w1 <= bound + 1e-12
            checked += 1
    assert checked > 10
    with pytest.raises(OutOfRegimeError):
        far = max(((x, y) for x in range(sp.n) for y in range(sp.n)),
                  key=lambda p: sp.dist[p])
        naive_ball_transport_bound(sp, far[0], far[1], r)


def test_validate_coupling_reports():
    mu = np.array([0.5, 0.5])
    nu = np.array([0.25, 0.75])
    good = Coupling(plan=np.array([[0.25, 0.25], [0.0, 0.5]]), mu=mu, nu=nu)
    assert validate_coupling(good).ok
    bad = Coupling(plan=np.array([[0.5, 0.0], [0.0, 0.5]]), mu=mu, nu=nu)
    rep = validate_coupling(bad)
    assert not rep.ok
    assert any(axis == "col" for axis, _, _ in rep.violations)
