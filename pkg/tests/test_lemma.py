import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brdlab.costs import TabularCosts
from brdlab.game import Game
from brdlab.lemma import (BoundQuery, LemmaParams, RunningStats, bound_query_for, general_loose_cap,
                          general_smoothed_bound, iteration_bound, lemma_bound_rhs, lemma_mc_estimate,
                          lemma_params_for, paired_lemma_comparison, per_run_cap)
from brdlab.smoothing import UniformLow, UniformWindow


def quad_expectation(mu, alpha, beta, phi, nodes=400_000):
    """E[min(alpha / Y, mu**beta)] for Y the minimum of mu iid U[0, 1/phi].

    Independent of the sampler: midpoint rule against the density of the
    minimum, split where the truncation switches off.
    """
    cap = float(mu) ** beta
    top = 1.0 / phi
    density = lambda y: mu * phi * (1.0 - phi * y) ** (mu - 1)
    knot = min(alpha / cap, top)

    def integrate(f, a, b):
        if b <= a:
            return 0.0
        h = (b - a) / nodes
        y = a + h * (np.arange(nodes) + 0.5)
        return float(np.sum(f(y)) * h)

    return integrate(lambda y: cap * density(y), 0.0, knot) + integrate(lambda y: alpha / y * density(y), knot, top)


def test_rhs_values():
    assert lemma_bound_rhs(LemmaParams(2, 1, 0, 1)) == pytest.approx(2 * math.log(2) + 1, rel=1e-12)
    assert lemma_bound_rhs(LemmaParams(3, 1, 0, 1)) == pytest.approx(3 * math.log(3) + 1, rel=1e-12)
    a = lemma_bound_rhs(LemmaParams(5, 2, 1, 3)) - 1
    b = lemma_bound_rhs(LemmaParams(5, 2, 0, 3)) - 1
    assert a / b == pytest.approx(2.0, rel=1e-12)


def test_params_validation():
    for bad in [(0, 1, 0, 1), (2, 0.5, 0, 1), (2, 1, -1, 1), (2, 1, 0, 0.9)]:
        with pytest.raises(ValueError):
            LemmaParams(*bad)


def test_single_sample_is_exact():
    # mu = 1 means the cap 1**beta binds for every draw
    mean, se = lemma_mc_estimate(LemmaParams(1, 1, 3, 2), trials=5000)
    assert mean == 1.0 and se == 0.0


def test_quadrature_reference():
    exact = 0.25 + 4 * math.log(2)  # closed form for mu=2, alpha=1, beta=2, phi=1
    assert exact == pytest.approx(3.0225887222397811, rel=1e-15)
    assert quad_expectation(2, 1.0, 2.0, 1.0) == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("mu,alpha,beta,phi", [(2, 1.0, 2.0, 1.0), (4, 2.0, 1.5, 3.0), (8, 1.0, 1.0, 2.0)])
def test_mc_matches_quadrature(mu, alpha, beta, phi):
    mean, se = lemma_mc_estimate(LemmaParams(mu, alpha, beta, phi), trials=200_000, seed=3)
    ref = quad_expectation(mu, alpha, beta, phi)
    assert abs(mean - ref) <= 4 * se + 1e-9
    assert mean <= lemma_bound_rhs(LemmaParams(mu, alpha, beta, phi))


def test_mc_deterministic():
    p = LemmaParams(4, 1.5, 1.0, 2.0)
    assert lemma_mc_estimate(p, trials=20_000, seed=9) == lemma_mc_estimate(p, trials=20_000, seed=9)
    # chunking does not change the estimate beyond rounding
    a = lemma_mc_estimate(p, trials=20_000, seed=9, chunk=1000)
    b = lemma_mc_estimate(p, trials=20_000, seed=9, chunk=7)
    assert a[0] == pytest.approx(b[0], rel=1e-12)


def test_paired_window_above_low():
    p = LemmaParams(8, 1.0, 1.0, 4.0)
    est = paired_lemma_comparison(p, UniformLow(4.0), UniformWindow(0.5, 4.0), trials=50_000)
    assert est.mean_diff > 0
    assert est.mean_a - est.mean_b == pytest.approx(est.mean_diff, rel=1e-9)


def test_iteration_bound_general():
    cap, rhs = iteration_bound(BoundQuery("tabular", 2, 2, 1.0, 1.0))
    assert cap == 9
    assert rhs == pytest.approx(96 * math.log(4) + 1, rel=1e-12)
    assert rhs == pytest.approx(134.0842586675095, rel=1e-12)
    assert general_smoothed_bound(2, 2, 1.0, 1.0) == pytest.approx(rhs, rel=1e-12)
    assert general_loose_cap(2, 2, 1.0, 0.01) == 16


def test_iteration_bound_models():
    step = lemma_params_for(BoundQuery("step", 3, 2, 0.5, 2.0, d=4))
    assert (step.mu, step.alpha) == (4, pytest.approx(3 * 3 * 4))
    assert step.beta == pytest.approx(2 * math.log(4) / math.log(4))
    poly = lemma_params_for(BoundQuery("polynomial", 2, 3, 1.0, 1.0, degree=2, d_tilde=3))
    assert (poly.mu, poly.alpha) == (3, pytest.approx(2 * 3 * 8))
    cs = lemma_params_for(BoundQuery("cost_sharing", 4, 3, 1.0))
    assert cs.mu == 3
    assert cs.alpha == pytest.approx(2 * 4 * 3 * (1 + 1 / 2 + 1 / 3 + 1 / 4))


@pytest.mark.parametrize("q", [BoundQuery("step", 3, 2, 0.5, d=1), BoundQuery("cost_sharing", 3, 1, 0.5),
                               BoundQuery("polynomial", 3, 2, 0.5, degree=2, d_tilde=1)])
def test_log_exponent_needs_mu_two(q):
    with pytest.raises(ValueError, match="mu"):
        iteration_bound(q)


def test_query_validation():
    with pytest.raises(ValueError):
        BoundQuery("step", 2, 2, 0.5)
    with pytest.raises(ValueError):
        BoundQuery("tabular", 2, 2, 0.0)
    with pytest.raises(ValueError):
        BoundQuery("linear", 2, 2, 0.5)


@settings(max_examples=100, deadline=None)
@given(model=st.sampled_from(["tabular", "step", "polynomial", "cost_sharing"]),
       n=st.integers(1, 20), m=st.integers(2, 10), eps=st.floats(0.01, 5), phi=st.floats(1, 100))
def test_bound_monotone(model, n, m, eps, phi):
    extra = {"step": {"d": m}, "polynomial": {"degree": 2, "d_tilde": 2}}.get(model, {})
    base = iteration_bound(BoundQuery(model, n, m, eps, phi, **extra))[1]
    assert iteration_bound(BoundQuery(model, n + 1, m, eps, phi, **extra))[1] >= base
    assert iteration_bound(BoundQuery(model, n, m, eps / 2, phi, **extra))[1] >= base
    assert iteration_bound(BoundQuery(model, n, m, eps, phi * 2, **extra))[1] >= base
    if model in ("tabular", "cost_sharing"):
        assert iteration_bound(BoundQuery(model, n, m + 1, eps, phi))[1] >= base


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.floats(-1e3, 1e3), max_size=30), min_size=1, max_size=5))
def test_running_stats_merge(batches):
    flat = np.array([x for b in batches for x in b])
    parts = [RunningStats().add_batch(b) for b in batches]
    left = RunningStats()
    for p in parts:
        left.merge(p)
    right = RunningStats()
    for p in reversed(parts):
        right.merge(p)
    assert left.count == right.count == flat.size
    if flat.size:
        assert left.mean == pytest.approx(flat.mean(), abs=1e-9)
        assert right.mean == pytest.approx(left.mean, abs=1e-9)
    if flat.size > 1:
        assert left.variance == pytest.approx(flat.var(ddof=1), rel=1e-7, abs=1e-6)
        assert right.variance == pytest.approx(left.variance, rel=1e-7, abs=1e-6)


def test_per_run_cap_g1(g1):
    # Phi_max = n*m*c_max = 2, C_min = 0.2, eps = 1 -> 20, exhaustive (n+1)**m = 9
    assert per_run_cap(g1, 1.0) == 9
    big = Game(2, TabularCosts([[0.2, 0.5], [0.3, 0.4]] + [[1.0, 1.0]] * 4),
               strategies=(((0,), (1,)), ((0,), (1,))))
    assert per_run_cap(big, 1.0) == pytest.approx(2 * 2 * 6 * 1.0 / 0.2)
    assert bound_query_for(g1, 0.5, 2.0) == BoundQuery("tabular", 2, 2, 0.5, 2.0)
