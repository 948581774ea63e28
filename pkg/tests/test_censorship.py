"""Censorship construction, the certificate identities, verification, the
maximal threshold, and the generic price-function test."""

import numpy as np
import pytest

from censearch.censorship import (
    deviation_net_gain,
    equilibrium_set,
    is_downward_closed,
    solve_a_max,
    threshold_from_cost,
    upper_censorship,
    verify_price_function,
    verify_uce,
    virtual_demand,
)
from censearch.demand import DemandCurve
from censearch.dists import PiecewisePolyDist, incremental_benefit


def test_upper_censorship_structure(F):
    U0 = upper_censorship(F, 0.0)
    assert U0.max_supp() == pytest.approx(0.5) and U0.atom_masses[0] == pytest.approx(1.0)
    assert upper_censorship(F, 1.0) is F
    U4 = upper_censorship(F, 0.4)
    assert U4.pdf(0.2) == pytest.approx(1.0)
    assert U4.pdf(0.55) == pytest.approx(0.0)
    assert U4.atom_locs[0] == pytest.approx(0.7) and U4.atom_masses[0] == pytest.approx(0.6)


def test_virtual_demand_examples(F, H_uniform):
    assert virtual_demand(F, H_uniform, 0.4, 2, 0.55) == pytest.approx(0.55, abs=1e-12)
    assert virtual_demand(F, H_uniform, 0.4, 2, 0.2) == pytest.approx(0.2, abs=1e-12)
    assert virtual_demand(F, H_uniform, 0.4, 2, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_net_gain_examples(F, H_uniform):
    assert deviation_net_gain(F, H_uniform, 0.4, 0.09, 2) == pytest.approx(0.0, abs=1e-12)
    val = deviation_net_gain(F, H_uniform, 0.3, 0.09, 2)
    assert val == pytest.approx(0.35 * (0.09 / 0.245 - 0.5), abs=1e-12)
    assert val < 0
    assert deviation_net_gain(F, H_uniform, 0.3, 0.0, 2) == 0.0


def test_net_gain_matches_certificate_gap(F, H_uniform):
    rng = np.random.default_rng(3)
    for a in (0.15, 0.3, 0.4):
        Ua = upper_censorship(F, a)
        curve = DemandCurve(Ua, 2, H_uniform)
        pool = Ua.max_supp()
        for c in rng.uniform(1e-3, 0.1799, 32):
            x = pool - float(c) / (1.0 - F.cdf(a))
            gain = deviation_net_gain(F, H_uniform, a, float(c), 2)
            gap = virtual_demand(F, H_uniform, a, 2, x, curve) - curve.value(x)
            assert gain == pytest.approx(-gap, abs=1e-8)


def test_verify_uniform_benchmark(F, H_uniform):
    r = verify_uce(F, H_uniform, 0.3, 50)
    assert r.verdict == "equilibrium" and r.checks["cost_condition"]
    r = verify_uce(F, H_uniform, 0.45, 50)
    assert r.verdict == "fails" and not r.checks["cost_condition"]
    r = verify_uce(F, H_uniform, 0.4, 50)
    assert r.verdict == "equilibrium"
    assert r.margin == pytest.approx(0.0, abs=1e-12)  # binding
    assert r.pooled_signal == pytest.approx(0.7)
    r = verify_uce(F, H_uniform, 0.0, 50)
    assert r.verdict == "equilibrium"


def test_solve_a_max_corpus(F, H_uniform, H_convex, H_step, H_bimodal):
    assert solve_a_max(F, H_uniform) == (pytest.approx(0.4, abs=1e-10), "b", True)
    a, case, att = solve_a_max(F, H_convex)
    assert (a, case, att) == (pytest.approx(1 - np.sqrt(0.6), abs=1e-10), "d", True)
    assert solve_a_max(F, H_step) == (0.0, "a", True)
    a, case, att = solve_a_max(F, H_bimodal)
    expect = 1 - np.sqrt(2 * 0.875 / (0.82 / 0.15 - 0.5))
    assert (a, case, att) == (pytest.approx(expect, abs=1e-9), "c", True)


def test_solve_rejects_bad_configs(F):
    with pytest.raises(ValueError, match="below the prior mean"):
        solve_a_max(F, PiecewisePolyDist.uniform(0, 0.7))
    with pytest.raises(ValueError, match="starting at 0"):
        solve_a_max(F, PiecewisePolyDist.uniform(0.05, 0.18))


def test_solve_concave_supremum_sentinel(F):
    # strictly decreasing density: every threshold below full disclosure
    # passes; the solver reports the open-edge sentinel, unattained
    Hcc = PiecewisePolyDist([0, 0.2], [np.array([10.0, -50.0])])
    a, case, att = solve_a_max(F, Hcc)
    assert case == "d" and not att and a == pytest.approx(1.0, abs=1e-9)


def test_equilibrium_set_nestedness(F, H_uniform, H_bimodal):
    grid = np.linspace(0.0, 0.6, 25)
    for H, n in ((H_uniform, 50), (H_uniform, 5), (H_bimodal, 5), (H_bimodal, 50)):
        res = equilibrium_set(F, H, grid, n)
        assert is_downward_closed(res)
        assert res[0][1]  # no disclosure always passes


def test_tangency_at_maximal_threshold(F, H_uniform, H_bimodal):
    for H in (H_uniform, H_bimodal):
        a_max, case, _ = solve_a_max(F, H)
        assert case in ("b", "c")
        rep = verify_uce(F, H, a_max, 50)
        assert rep.verdict == "equilibrium"
        assert abs(rep.margin) <= 1e-6  # binding at the top
        rep_lo = verify_uce(F, H, a_max - 0.05, 50)
        assert rep_lo.verdict == "equilibrium"
        assert rep_lo.margin > 0.0  # strictly slack below the top
        assert rep.binding_signals  # tangency point reported


def test_monotone_kink_in_threshold(F, H_uniform):
    # the certificate's right-hand slope at the threshold grows with it
    slopes = []
    for b in np.linspace(0.05, 0.4, 8):
        Ub = upper_censorship(F, float(b))
        curve = DemandCurve(Ub, 50, H_uniform)
        k = Ub.max_supp()
        slopes.append((curve.value(k) - curve.value(float(b))) / (k - float(b)))
    assert all(s2 >= s1 - 1e-12 for s1, s2 in zip(slopes[:-1], slopes[1:]))


def test_threshold_monotone_in_evenness(F):
    # uniform cost families with evenness 2.5, 4, 5.5: the maximal threshold
    # strictly increases
    thresholds = []
    for h in (2.5, 4.0, 5.5):
        H = PiecewisePolyDist.uniform(0.0, 1.0 / h)
        a, case, _ = solve_a_max(F, H)
        assert case == "b"
        assert a == pytest.approx(1 - np.sqrt(2.0 / h), abs=1e-10)
        thresholds.append(a)
    assert thresholds[0] < thresholds[1] < thresholds[2]


def test_threshold_cost_inversion_roundtrip(F, F_tilted):
    for prior in (F, F_tilted):
        for a in np.linspace(0.05, 0.95, 10):
            cost = incremental_benefit(prior, float(a))
            assert threshold_from_cost(prior, cost) == pytest.approx(float(a), abs=1e-8)
    assert threshold_from_cost(F, 0.6) == 0.0
    assert threshold_from_cost(F, 0.0) == pytest.approx(1.0)


def test_price_function_trio(F, H_uniform):
    delta = upper_censorship(F, 0.0)
    rep = verify_price_function(delta, F, H_uniform, 50)
    assert rep.passed, rep.detail
    a_max, _, _ = solve_a_max(F, H_uniform)
    rep = verify_price_function(upper_censorship(F, a_max), F, H_uniform, 50)
    assert rep.passed, rep.detail
    assert rep.min_margin == pytest.approx(0.0, abs=1e-7)  # tangency
    rep = verify_price_function(F, F, H_uniform, 50)
    assert not rep.passed and not rep.convex_ok


def test_price_function_rejects_above_maximal(F, H_uniform):
    rep = verify_price_function(upper_censorship(F, 0.45), F, H_uniform, 5)
    assert not rep.passed


def test_verify_fails_below_mean_floor(F, H_step):
    # smallest-critical-minimum below 1/mean: every positive threshold fails
    for a in (0.05, 0.2, 0.35):
        assert verify_uce(F, H_step, a, 50).verdict == "fails"
    assert verify_uce(F, H_step, 0.0, 50).verdict == "equilibrium"
