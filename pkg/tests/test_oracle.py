import pytest

import starcov as sc
from starcov import DecodingOrder

# regression anchors for seed 7, mu_t = 0.6, default deployment, n = 256;
# frozen from the grid search itself after cross-checking the solver
NOMA_D0 = 19.855654093180135
NOMA_BETA = 0.1875
NOMA_FRAC = 0.9765625
NOMA_SLACK = 5.366188026035736
OMA_D0 = 14.449416240382206
OMA_BETA = 0.5546875
OMA_FRAC = 0.5546875
OMA_OMEGA = 0.51953125
OMA_SLACK = 0.32142357216053874


def test_noma_regression_anchor(params06, gains7):
    ref = sc.oracle_noma(gains7, params06)
    assert ref.feasible
    assert ref.grid_n == 256
    assert ref.d0 == pytest.approx(NOMA_D0, rel=1e-12)
    assert ref.beta_t == NOMA_BETA
    assert ref.power_frac == NOMA_FRAC
    assert ref.order is DecodingOrder.R_STRONG
    assert ref.cell_slack == pytest.approx(NOMA_SLACK, rel=1e-9)
    assert ref.omega_t is None


def test_oma_regression_anchor(params06, gains7):
    ref = sc.oracle_oma(gains7, params06)
    assert ref.feasible
    assert ref.d0 == pytest.approx(OMA_D0, rel=1e-12)
    assert ref.beta_t == OMA_BETA
    assert ref.power_frac == OMA_FRAC
    assert ref.omega_t == OMA_OMEGA
    assert ref.cell_slack == pytest.approx(OMA_SLACK, rel=1e-9)
    assert ref.order is None


def test_oracle_deterministic(params06, gains7):
    a = sc.oracle_noma(gains7, params06, grid_n=64)
    b = sc.oracle_noma(gains7, params06, grid_n=64)
    assert a == b


def test_refinement_never_shrinks(params06, gains7):
    # each doubled grid contains the previous one, so the best cell can
    # only improve
    for fn in (sc.oracle_noma, sc.oracle_oma):
        prev = None
        for n in (32, 64, 128, 256):
            d0 = fn(gains7, params06, grid_n=n).d0
            if prev is not None:
                assert d0 >= prev - 1e-12
            prev = d0


def test_oma_share_lock_on_grid(params06, gains7):
    # with the power split free, the argmax rides the energy split
    ref = sc.oracle_oma(gains7, params06)
    assert abs(ref.power_frac - ref.beta_t) <= 2.0 / 256.0 + 1e-12


def test_symmetric_oma_argmax(defaults):
    gains = sc.EffectiveGains(1.5e-3, 1.5e-3)
    ref = sc.oracle_oma(gains, defaults, grid_n=64)
    assert ref.beta_t == 0.5
    assert ref.power_frac == 0.5
    assert ref.omega_t == 0.5


def test_degenerate_gain_infeasible(params06):
    for fn in (sc.oracle_noma, sc.oracle_oma):
        ref = fn(sc.EffectiveGains(1e-3, 0.0), params06, grid_n=32)
        assert not ref.feasible
        assert ref.d0 == 0.0


def test_hopeless_target_infeasible(params06, gains7):
    p = sc.merge_params(params06, {"gamma_t": 3000.0})
    ref = sc.oracle_noma(gains7, p, grid_n=32)
    assert not ref.feasible


def test_orthogonal_never_beats_superposed(params06):
    for seed in (1, 7):
        gains = sc.effective_gain(sc.generate_channel(params06, seed))
        on = sc.oracle_noma(gains, params06, grid_n=128)
        oo = sc.oracle_oma(gains, params06, grid_n=128)
        assert oo.d0 <= on.d0 + on.cell_slack + oo.cell_slack


def test_pinned_splits_narrow_the_search(params06):
    # full-split surfaces: the search keeps both splits at 1 instead of
    # walking the complementary-split axis
    gains = sc.conventional_gains(params06, 7)
    ref = sc.oracle_noma(gains, params06, grid_n=256, pinned_beta=(1.0, 1.0))
    assert ref.beta_t == 1.0
    sol = sc.solve_conventional_noma(gains, params06)
    assert sol.d0 >= ref.d0 - 1e-9
    assert abs(sol.d0 - ref.d0) <= ref.cell_slack

    ref = sc.oracle_oma(gains, params06, grid_n=128, pinned_beta=(1.0, 1.0))
    sol = sc.solve_conventional_oma(gains, params06)
    assert sol.d0 >= ref.d0 - 1e-9
    assert abs(sol.d0 - ref.d0) <= ref.cell_slack


def test_rejects_coarse_grid(params06, gains7):
    with pytest.raises(ValueError):
        sc.oracle_noma(gains7, params06, grid_n=16)
    with pytest.raises(ValueError):
        sc.oracle_oma(gains7, params06, grid_n=31)
