import numpy as np
import pytest

import starcov as sc

LOS_K = 1e9


def test_split_elements():
    assert sc.split_elements(100) == (50, 50)
    assert sc.split_elements(101) == (50, 51)  # odd leftover reflects
    assert sc.split_elements(1) == (0, 1)
    assert sc.split_elements(2) == (1, 1)


def test_los_gain_quarter(defaults):
    # deterministic channels: half the elements means a quarter of the
    # coherent gain per user
    p = sc.merge_params(defaults, {"k_ar": LOS_K, "k_ru": LOS_K})
    star = sc.effective_gain(sc.generate_channel(p, 0))
    conv = sc.conventional_gains(p, 0)
    assert conv.c_t / star.c_t == pytest.approx(0.25, rel=1e-3)
    assert conv.c_r / star.c_r == pytest.approx(0.25, rel=1e-3)


def test_los_reach_ratio(defaults):
    # the quarter gain turns into (1/4)**(1/alpha) of the reach
    p = sc.merge_params(defaults, {"k_ar": LOS_K, "k_ru": LOS_K})
    star = sc.effective_gain(sc.generate_channel(p, 0))
    conv = sc.conventional_gains(p, 0)
    d_star = sc.oma_reach(1.0, 0.5, "t", star, p)
    d_conv = sc.oma_reach(1.0, 0.5, "t", conv, p)
    assert 0.25 ** (1.0 / 2.2) == pytest.approx(0.5325205447199813, rel=1e-12)
    assert d_conv / d_star == pytest.approx(0.25 ** (1.0 / 2.2), rel=1e-3)


def test_surface_assignment_symmetric_in_distribution(defaults):
    # with an even element count neither user is favored on average
    sums = np.zeros(2)
    for seed in range(300):
        g = sc.conventional_gains(defaults, seed)
        sums += (g.c_t, g.c_r)
    assert sums[0] / sums[1] == pytest.approx(1.0, abs=0.05)


def test_conventional_solvers_pin_full_splits(params06):
    gains = sc.conventional_gains(params06, 3)
    for solve in (sc.solve_conventional_noma, sc.solve_conventional_oma):
        sol = solve(gains, params06)
        assert sol.feasible
        assert sol.alloc.beta_t == 1.0
        assert sol.alloc.beta_r == 1.0
        assert not sol.alloc.beta_coupled
        assert "beta_sum" not in sol.residuals


def test_conventional_power_split_is_free(params06):
    # unlike the shared surface, the two-surface budget split is optimized,
    # so the per-user powers need not ride the (pinned) splits
    gains = sc.conventional_gains(params06, 3)
    sol = sc.solve_conventional_oma(gains, params06)
    assert sol.alloc.p_t + sol.alloc.p_r == pytest.approx(params06.pmax_w, rel=1e-9)
    assert 0.0 < sol.alloc.p_t < params06.pmax_w


def test_single_element_surface_degenerates(params06):
    p = sc.merge_params(params06, {"m_elements": 1})
    gains = sc.conventional_gains(p, 0)
    assert gains.c_t == 0.0  # zero-element transmit surface
    assert gains.c_r > 0.0
    assert not sc.solve_conventional_noma(gains, p).feasible
    assert not sc.solve_conventional_oma(gains, p).feasible


def test_shared_surface_dominates_split_pair(params06):
    # same seed, same budget: the energy-splitting surface reaches at least
    # as far as the conventional pair, for both access schemes
    for seed in range(20):
        star = sc.effective_gain(sc.generate_channel(params06, seed))
        conv = sc.conventional_gains(params06, seed)
        assert sc.solve_noma(star, params06).d0 >= \
            sc.solve_conventional_noma(conv, params06).d0 - 1e-6
        assert sc.solve_oma(star, params06).d0 >= \
            sc.solve_conventional_oma(conv, params06).d0 - 1e-6


def test_conventional_gains_reproducible(defaults):
    g1 = sc.conventional_gains(defaults, 11)
    g2 = sc.conventional_gains(defaults, 11)
    assert g1.c_t == g2.c_t and g1.c_r == g2.c_r
    g3 = sc.conventional_gains(defaults, 12)
    assert g1.c_t != g3.c_t
