"""Coverage-range maximization under superposed (NOMA) transmission.

The power-minimization subproblem at a fixed coverage range has a closed
form: with both QoS constraints tight, total power as a function of the
transmission-side energy split is ``A/beta + B/(1 - beta)``, a strictly
convex function whose stationary point is ``1/(1 + sqrt(B/A))``.  The
successive-interference-cancellation ordering constraint linearizes to a
one-sided bound on the split ratio, so the constrained minimizer is just
the stationary point clamped to that interval.  The outer problem then
bisects on the coverage range, whose minimum required power is monotone,
and the better of the two decoding orders wins.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .channel import EffectiveGains
from .rates import Allocation, DecodingOrder
from .solution import CoverageSolution, Scheme, build_solution
from .units import SystemParams

EPS_BETA = 1e-9      # smallest energy split a user may be served with
D_TOL = 1e-4         # absolute bisection tolerance on the coverage range, m
D_CAP = 2.0 ** 20    # bracket growth cap, m

_LN2 = math.log(2.0)


class PowerSplit(NamedTuple):
    """Minimum total power and the allocation achieving it."""

    power: float
    beta_t: float
    p_t: float
    p_r: float


_INFEASIBLE_SPLIT = PowerSplit(math.inf, math.nan, math.nan, math.nan)


def _rate_threshold(gamma: float) -> float:
    # 2**gamma - 1, saturating instead of raising once past double range;
    # an infinite threshold simply marks the target as unservable.
    x = gamma * _LN2
    return math.inf if x > 709.0 else math.expm1(x)


def sic_beta_bound(gamma_t: float, gamma_r: float, order: DecodingOrder) -> float:
    """Slope of the linearized decoding-order constraint on the energy split.

    For ``R_STRONG`` the constraint is ``beta_r <= bound * beta_t``; for
    ``T_STRONG`` it is ``beta_t <= bound * beta_r``.  The bound grows without
    limit as the weak user's rate target shrinks, making the constraint
    vacuous in that regime.
    """
    if gamma_t <= 0.0 or gamma_r <= 0.0:
        raise ValueError("rate targets must be > 0")
    # 2**g_strongside * (2**g_weak... written via expm1 so tiny and huge
    # targets both keep full precision:
    #   R_STRONG: 2**gt (2**gr - 1) / (2**gt - 1)  ==  (2**gr - 1)/(1 - 2**-gt)
    if order is DecodingOrder.R_STRONG:
        return _rate_threshold(gamma_r) / -math.expm1(-gamma_t * _LN2)
    if order is DecodingOrder.T_STRONG:
        return _rate_threshold(gamma_t) / -math.expm1(-gamma_r * _LN2)
    raise ValueError(f"unknown decoding order {order!r}")


def _served_distances(d0: float, params: SystemParams) -> tuple[float, float]:
    # Each user sits at its priority share of the coverage range, but never
    # inside the 1 m far-field floor.
    return max(params.mu_t * d0, 1.0), max(params.mu_r * d0, 1.0)


def min_power_at(d0: float, order: DecodingOrder, gains: EffectiveGains,
                 params: SystemParams,
                 pinned_beta: tuple[float, float] | None = None) -> PowerSplit:
    """Minimum total power serving both users at coverage range ``d0``.

    ``pinned_beta`` freezes the energy splits (used for the conventional
    two-surface baseline, where each surface passes all of its energy);
    otherwise the split is optimized in closed form subject to the
    linearized decoding-order constraint.
    """
    if not (d0 > 0.0 and math.isfinite(d0)):
        raise ValueError(f"coverage range must be positive, got {d0!r}")
    if gains.c_t <= 0.0 or gains.c_r <= 0.0:
        return _INFEASIBLE_SPLIT

    d_t, d_r = _served_distances(d0, params)
    alpha = params.alpha_ru
    # Per-user noise-over-gain coefficients; the weak side additionally pays
    # the strong user's power scaled through its own rate threshold.
    a = params.sigma2_w / (params.rho0 * gains.c_t)
    b = params.sigma2_w / (params.rho0 * gains.c_r)
    thr_t = _rate_threshold(params.gamma_t)
    thr_r = _rate_threshold(params.gamma_r)
    if order is DecodingOrder.R_STRONG:
        # T user decoded under interference, R user decoded clean.
        coeff_weak = thr_t * a * d_t ** alpha
        coeff_strong = (thr_t + 1.0) * thr_r * b * d_r ** alpha
    else:
        coeff_weak = thr_r * b * d_r ** alpha
        coeff_strong = (thr_r + 1.0) * thr_t * a * d_t ** alpha
    if not (math.isfinite(coeff_weak) and math.isfinite(coeff_strong)):
        return _INFEASIBLE_SPLIT

    if pinned_beta is not None:
        beta_t, beta_r = pinned_beta
    else:
        # Interval allowed by the linearized ordering constraint, expressed
        # on beta_t.
        bound = sic_beta_bound(params.gamma_t, params.gamma_r, order)
        if order is DecodingOrder.R_STRONG:
            lo, hi = max(EPS_BETA, 1.0 / (1.0 + bound)), 1.0 - EPS_BETA
        else:
            lo, hi = EPS_BETA, min(1.0 - EPS_BETA, bound / (1.0 + bound))
        if lo > hi:
            return _INFEASIBLE_SPLIT
        if order is DecodingOrder.R_STRONG:
            ratio = coeff_strong / coeff_weak     # B/A of A/b + B/(1-b)
        else:
            ratio = coeff_weak / coeff_strong
        beta_t = min(max(1.0 / (1.0 + math.sqrt(ratio)), lo), hi)
        beta_r = 1.0 - beta_t

    if beta_t < EPS_BETA or beta_r < EPS_BETA:
        return _INFEASIBLE_SPLIT

    if order is DecodingOrder.R_STRONG:
        p_r = thr_r * b * d_r ** alpha / beta_r
        p_t = thr_t * (a * d_t ** alpha / beta_t + p_r)
    else:
        p_t = thr_t * a * d_t ** alpha / beta_t
        p_r = thr_r * (b * d_r ** alpha / beta_r + p_t)
    return PowerSplit(p_t + p_r, beta_t, p_t, p_r)


def _max_range_for_order(order: DecodingOrder, gains: EffectiveGains,
                         params: SystemParams,
                         pinned_beta: tuple[float, float] | None) -> float | None:
    """Largest coverage range this decoding order can support, or None."""
    pmax = params.pmax_w

    def feasible(d0: float) -> bool:
        return min_power_at(d0, order, gains, params, pinned_beta).power <= pmax

    d_lo = 1.0 / max(params.mu_t, params.mu_r)
    if not feasible(d_lo):
        # Both users are already at the 1 m floor here, so no smaller range
        # can help: the instance is infeasible for this order outright.
        return None
    lo, hi = d_lo, 2.0 * max(1.0, d_lo)
    while feasible(hi):
        lo, hi = hi, 2.0 * hi
        if hi > D_CAP:
            raise RuntimeError(
                "required power stays within budget beyond the bracket cap; "
                "coverage range is effectively unbounded")
    while hi - lo > D_TOL:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def solve_noma(gains: EffectiveGains, params: SystemParams,
               pinned_beta: tuple[float, float] | None = None) -> CoverageSolution:
    """Maximize the coverage range under NOMA for one channel realization.

    Both decoding orders are solved and the larger range wins; ties within
    the bisection tolerance resolve to ``R_STRONG`` for determinism.
    Infeasible instances come back with ``feasible=False`` and diagnostic
    residuals from the floor probe.
    """
    ranges: dict[DecodingOrder, float | None] = {
        order: _max_range_for_order(order, gains, params, pinned_beta)
        for order in (DecodingOrder.R_STRONG, DecodingOrder.T_STRONG)
    }
    d_rs, d_ts = ranges[DecodingOrder.R_STRONG], ranges[DecodingOrder.T_STRONG]

    if d_rs is None and d_ts is None:
        return _infeasible_probe(gains, params, pinned_beta)
    if d_ts is None or (d_rs is not None and d_rs >= d_ts - D_TOL):
        order, d0 = DecodingOrder.R_STRONG, d_rs
    else:
        order, d0 = DecodingOrder.T_STRONG, d_ts

    split = min_power_at(d0, order, gains, params, pinned_beta)
    d_t, d_r = _served_distances(d0, params)
    alloc = Allocation(
        p_t=split.p_t, p_r=split.p_r,
        beta_t=split.beta_t, beta_r=1.0 - split.beta_t if pinned_beta is None
        else pinned_beta[1],
        d_t=d_t, d_r=d_r, order=order, beta_coupled=pinned_beta is None,
    )
    return build_solution(d0, alloc, Scheme.NOMA, gains, params)


def _infeasible_probe(gains: EffectiveGains, params: SystemParams,
                      pinned_beta: tuple[float, float] | None) -> CoverageSolution:
    """Diagnostic solution for an instance that fails even at the floor."""
    d_lo = 1.0 / max(params.mu_t, params.mu_r)
    d_t, d_r = _served_distances(d_lo, params)
    probe = min_power_at(d_lo, DecodingOrder.R_STRONG, gains, params, pinned_beta)
    coupled = pinned_beta is None
    if math.isfinite(probe.power):
        beta_r = 1.0 - probe.beta_t if coupled else pinned_beta[1]
        alloc = Allocation(p_t=probe.p_t, p_r=probe.p_r, beta_t=probe.beta_t,
                           beta_r=beta_r, d_t=d_t, d_r=d_r,
                           order=DecodingOrder.R_STRONG, beta_coupled=coupled)
    else:
        # Degenerate gains: report a silent zero-power floor attempt.
        betas = (0.5, 0.5) if coupled else pinned_beta
        alloc = Allocation(p_t=0.0, p_r=0.0, beta_t=betas[0], beta_r=betas[1],
                           d_t=d_t, d_r=d_r, order=DecodingOrder.R_STRONG,
                           beta_coupled=coupled)
    return build_solution(d_lo, alloc, Scheme.NOMA, gains, params)
