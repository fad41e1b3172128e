"""Coverage-range maximization under orthogonal (OMA) transmission.

At the optimum of the fixed-share subproblem each user's power rides the
budget proportionally to its energy split (``p_k = pmax * beta_k``), which
turns every rate constraint into an explicit reach: the largest distance at
which that user's QoS still holds.  Maximizing the common coverage range
then means equalizing the priority-weighted reaches, a monotone
root-finding problem with a closed-form root; the remaining scalar search
over the resource share runs a coarse grid followed by golden-section
refinement.

The same machinery solves the conventional two-surface baseline by pinning
both energy splits to one; the free variable of the inner problem is then
the power split instead of the energy split.
"""

from __future__ import annotations

import math

import numpy as np

from .channel import EffectiveGains
from .rates import Allocation
from .solution import CoverageSolution, Scheme, build_solution
from .units import SystemParams

EPS_BETA = 1e-9
OMEGA_FLOOR = 1e-6        # below this a positive rate target is hopeless
OMEGA_TOL = 1e-6          # golden-section tolerance on the resource share
_COARSE_STEPS = 512       # resource-share grid resolution of the outer search

# Beyond this QoS-to-share ratio the required SNR (2**(gamma/omega) - 1)
# overflows a double; evaluated in log space the reach is then far below
# the 1 m floor for any physical parameter set, so the share is infeasible.
_EXP_GUARD = 700.0 * math.log2(math.e)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _qos_factor(gamma: float, omega):
    """omega * (2**(gamma/omega) - 1), vectorized and overflow-safe."""
    omega = np.asarray(omega, dtype=float)
    exponent = np.divide(gamma, omega, out=np.full_like(omega, np.inf),
                         where=omega > 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        # 0 * inf at omega == 0 produces a nan that the guard replaces
        factor = omega * np.expm1(exponent * math.log(2.0))
    return np.where(exponent > _EXP_GUARD, np.inf, factor)


def oma_reach(beta_k: float, omega_k: float, user: str, gains: EffectiveGains,
              params: SystemParams) -> float:
    """Largest distance at which user ``k`` meets its QoS target.

    Assumes the budget-riding power rule ``p_k = pmax * beta_k``, so the
    received energy scales with ``beta_k`` squared.  A zero resource share
    gives a zero reach.
    """
    if not 0.0 < beta_k <= 1.0:
        raise ValueError(f"energy split must lie in (0, 1], got {beta_k!r}")
    if not 0.0 <= omega_k <= 1.0:
        raise ValueError(f"resource share must lie in [0, 1], got {omega_k!r}")
    if user not in ("t", "r"):
        raise ValueError(f"user must be 't' or 'r', got {user!r}")
    c_k = gains.c_t if user == "t" else gains.c_r
    gamma_k = params.gamma_t if user == "t" else params.gamma_r
    factor = float(_qos_factor(gamma_k, omega_k))
    if not math.isfinite(factor) or c_k <= 0.0:
        return 0.0
    d_alpha = (params.pmax_w * beta_k ** 2 * params.rho0 * c_k
               / (factor * params.sigma2_w))
    return d_alpha ** (1.0 / params.alpha_ru)


def _inner_split(omega_t, gains: EffectiveGains, params: SystemParams,
                 pinned_beta: tuple[float, float] | None):
    """Best coverage range at fixed resource share(s), vectorized.

    The free variable x is the transmission-side share of the budgeted
    quantity: the energy split itself when the surface is shared (received
    energy ~ x**2), or the power split when the splits are pinned
    (received energy ~ x * beta_pinned).  Returns ``(d0, x)`` arrays with
    ``-inf`` marking infeasible shares.
    """
    omega_t = np.asarray(omega_t, dtype=float)
    omega_r = 1.0 - omega_t
    alpha = params.alpha_ru
    # Split exponent: quadratic for a shared surface, linear once pinned.
    exp_split = 2.0 if pinned_beta is None else 1.0
    pin_t, pin_r = (1.0, 1.0) if pinned_beta is None else pinned_beta

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        f_t = _qos_factor(params.gamma_t, omega_t)
        f_r = _qos_factor(params.gamma_r, omega_r)
        # Reach at full share, per user; zero when the share is hopeless.
        g_t = np.where(np.isfinite(f_t) & (gains.c_t > 0.0),
                       (params.pmax_w * pin_t * params.rho0 * gains.c_t
                        / (f_t * params.sigma2_w)) ** (1.0 / alpha), 0.0)
        g_r = np.where(np.isfinite(f_r) & (gains.c_r > 0.0),
                       (params.pmax_w * pin_r * params.rho0 * gains.c_r
                        / (f_r * params.sigma2_w)) ** (1.0 / alpha), 0.0)

        # Smallest x serving each user at the 1 m floor.
        x_min_t = np.where(g_t > 0.0, g_t ** (-alpha / exp_split), np.inf)
        x_min_r = np.where(g_r > 0.0, g_r ** (-alpha / exp_split), np.inf)
        x_lo = np.maximum(EPS_BETA, x_min_t)
        x_hi = np.minimum(1.0 - EPS_BETA, 1.0 - x_min_r)
        ok = x_lo <= x_hi

        if params.mu_t == 0.0:
            x = x_lo
        elif params.mu_r == 0.0:
            x = x_hi
        else:
            # Root of the priority-weighted reach difference, in closed form:
            # both reaches are power functions of x, so equalizing them is a
            # single ratio equation.
            inv_ratio = np.where(
                g_r > 0.0,
                (g_t * params.mu_r / np.where(g_r > 0.0, g_r * params.mu_t, 1.0))
                ** (alpha / exp_split),
                np.inf)
            x = np.clip(1.0 / (1.0 + inv_ratio), x_lo, x_hi)

        reach_t = g_t * x ** (exp_split / alpha)
        reach_r = g_r * (1.0 - x) ** (exp_split / alpha)
        d0_t = reach_t / params.mu_t if params.mu_t > 0.0 else np.inf
        d0_r = reach_r / params.mu_r if params.mu_r > 0.0 else np.inf
        d0 = np.where(ok, np.minimum(d0_t, d0_r), -np.inf)
        x = np.where(ok, x, np.nan)
    return d0, x


def _golden_max(fun, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of a scalar unimodal function."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fun(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fun(x1)
    return 0.5 * (lo + hi)


def solve_oma_fixed_omega(omega_t: float, gains: EffectiveGains,
                          params: SystemParams,
                          pinned_beta: tuple[float, float] | None = None
                          ) -> CoverageSolution:
    """Maximize the coverage range with the resource share held fixed."""
    if not OMEGA_FLOOR <= omega_t <= 1.0 - OMEGA_FLOOR:
        raise ValueError(f"resource share must lie in [{OMEGA_FLOOR}, "
                         f"{1 - OMEGA_FLOOR}], got {omega_t!r}")
    d0_arr, x_arr = _inner_split(omega_t, gains, params, pinned_beta)
    return _assemble(float(d0_arr), float(x_arr), omega_t, gains, params, pinned_beta)


def solve_oma(gains: EffectiveGains, params: SystemParams,
              pinned_beta: tuple[float, float] | None = None) -> CoverageSolution:
    """Maximize the coverage range under OMA for one channel realization.

    Runs the closed-form inner split on a coarse resource-share grid, then
    refines the best bracket by golden section.
    """
    omegas = np.arange(1, _COARSE_STEPS) / _COARSE_STEPS
    d0_grid, _ = _inner_split(omegas, gains, params, pinned_beta)
    i_best = int(np.argmax(d0_grid))
    if not np.isfinite(d0_grid[i_best]):
        d0_arr, x_arr = _inner_split(0.5, gains, params, pinned_beta)
        return _assemble(float(d0_arr), float(x_arr), 0.5, gains, params, pinned_beta)

    def value(omega: float) -> float:
        d0_arr, _ = _inner_split(omega, gains, params, pinned_beta)
        return float(d0_arr)

    step = 1.0 / _COARSE_STEPS
    lo = max(OMEGA_FLOOR, omegas[i_best] - step)
    hi = min(1.0 - OMEGA_FLOOR, omegas[i_best] + step)
    omega_ref = _golden_max(value, lo, hi, OMEGA_TOL)
    # Keep whichever candidate actually scored best.
    omega_star = max((float(omegas[i_best]), omega_ref), key=value)

    d0_arr, x_arr = _inner_split(omega_star, gains, params, pinned_beta)
    return _assemble(float(d0_arr), float(x_arr), omega_star, gains, params,
                     pinned_beta)


def _assemble(d0: float, x: float, omega_t: float, gains: EffectiveGains,
              params: SystemParams,
              pinned_beta: tuple[float, float] | None) -> CoverageSolution:
    if not math.isfinite(d0):
        # Nothing feasible at this share; report a floor attempt with the
        # whole budget split evenly so the residuals show what is missing.
        x = 0.5
        d0 = 1.0 / max(params.mu_t, params.mu_r)
    if pinned_beta is None:
        beta_t, beta_r = x, 1.0 - x
    else:
        beta_t, beta_r = pinned_beta
    p_t = params.pmax_w * x
    p_r = params.pmax_w * (1.0 - x)
    d_t = max(params.mu_t * d0, 1.0)
    d_r = max(params.mu_r * d0, 1.0)
    alloc = Allocation(p_t=p_t, p_r=p_r, beta_t=beta_t, beta_r=beta_r,
                       d_t=d_t, d_r=d_r, omega_t=omega_t, omega_r=1.0 - omega_t,
                       beta_coupled=pinned_beta is None)
    return build_solution(d0, alloc, Scheme.OMA, gains, params)
