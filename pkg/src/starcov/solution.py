"""Solver output container and independent feasibility re-verification.

Every solver funnels its result through :func:`build_solution`, which
recomputes all constraint slacks with the plain rate expressions from
:mod:`starcov.rates`.  A solution is only marked feasible if it survives
that re-check, so reformulation bugs in the solvers cannot hide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Mapping

from .channel import EffectiveGains
from .rates import Allocation, DecodingOrder, noma_rate, oma_rate
from .units import SystemParams


class Scheme(Enum):
    NOMA = "NOMA"
    OMA = "OMA"


# Acceptance tolerances for the re-verification slacks.
RATE_TOL = 1e-6          # bits/s/Hz
POWER_REL_TOL = 1e-9     # relative to the power budget
BETA_SUM_TOL = 1e-9
OMEGA_SUM_TOL = 1e-9
DIST_TOL = 1e-6          # meters
SIC_ORDER_REL_TOL = 1e-6


@dataclass(frozen=True)
class CoverageSolution:
    """Best coverage range found for one channel realization."""

    d0: float
    d_t: float
    d_r: float
    alloc: Allocation
    scheme: Scheme
    feasible: bool
    residuals: Mapping[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        a = self.alloc
        return {
            "scheme": self.scheme.value,
            "feasible": self.feasible,
            "d0": self.d0,
            "d_t": self.d_t,
            "d_r": self.d_r,
            "p_t": a.p_t,
            "p_r": a.p_r,
            "beta_t": a.beta_t,
            "beta_r": a.beta_r,
            "omega_t": a.omega_t,
            "omega_r": a.omega_r,
            "order": a.order.value if a.order is not None else None,
            "residuals": dict(self.residuals),
        }


def solution_residuals(d0: float, alloc: Allocation, scheme: Scheme,
                       gains: EffectiveGains, params: SystemParams) -> dict[str, float]:
    """Per-constraint slacks of the raw coverage problem at this point.

    Positive values mean satisfied with margin; the keyed tolerances in
    :func:`residuals_feasible` say how negative each slack may go before the
    point is declared infeasible.
    """
    res: dict[str, float] = {}
    if scheme is Scheme.NOMA:
        res["rate_t"] = noma_rate("t", alloc, gains, params, check=False) - params.gamma_t
        res["rate_r"] = noma_rate("r", alloc, gains, params, check=False) - params.gamma_r
    else:
        res["rate_t"] = oma_rate("t", alloc, gains, params, check=False) - params.gamma_t
        res["rate_r"] = oma_rate("r", alloc, gains, params, check=False) - params.gamma_r
        res["omega_sum"] = 1.0 - (alloc.omega_t + alloc.omega_r)
    res["power"] = params.pmax_w - (alloc.p_t + alloc.p_r)
    if alloc.beta_coupled:
        # Signed drift of the energy split off the conservation constraint.
        res["beta_sum"] = (alloc.beta_t + alloc.beta_r) - 1.0
    res["dist_t"] = alloc.d_t - params.mu_t * d0
    res["dist_r"] = alloc.d_r - params.mu_r * d0
    res["floor_t"] = alloc.d_t - 1.0
    res["floor_r"] = alloc.d_r - 1.0
    if scheme is Scheme.NOMA and alloc.order is not None:
        g_t = params.rho0 * alloc.beta_t * gains.c_t / alloc.d_t ** params.alpha_ru
        g_r = params.rho0 * alloc.beta_r * gains.c_r / alloc.d_r ** params.alpha_ru
        strong, weak = (g_r, g_t) if alloc.order is DecodingOrder.R_STRONG else (g_t, g_r)
        scale = max(strong, weak)
        res["sic_order"] = (strong - weak) / scale if scale > 0.0 else 0.0
    return res


def residuals_feasible(residuals: Mapping[str, float], params: SystemParams) -> bool:
    checks = {
        "rate_t": -RATE_TOL,
        "rate_r": -RATE_TOL,
        "power": -POWER_REL_TOL * params.pmax_w,
        "omega_sum": -OMEGA_SUM_TOL,
        "dist_t": -DIST_TOL,
        "dist_r": -DIST_TOL,
        "floor_t": -DIST_TOL,
        "floor_r": -DIST_TOL,
        "sic_order": -SIC_ORDER_REL_TOL,
    }
    for key, lower in checks.items():
        if key in residuals and residuals[key] < lower:
            return False
    if "beta_sum" in residuals and abs(residuals["beta_sum"]) > BETA_SUM_TOL:
        return False
    return True


def build_solution(d0: float, alloc: Allocation, scheme: Scheme,
                   gains: EffectiveGains, params: SystemParams) -> CoverageSolution:
    residuals = solution_residuals(d0, alloc, scheme, gains, params)
    ok = residuals_feasible(residuals, params)
    return CoverageSolution(
        d0=d0 if ok else 0.0,
        d_t=alloc.d_t,
        d_r=alloc.d_r,
        alloc=alloc,
        scheme=scheme,
        feasible=ok,
        residuals=MappingProxyType(residuals),
    )
