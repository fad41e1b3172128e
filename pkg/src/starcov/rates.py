"""Achievable-rate expressions and decoding-order bookkeeping.

These functions are the ground truth the optimizers are verified against:
they evaluate exactly the constraint functions of the coverage problems,
with no reformulation shortcuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .channel import EffectiveGains
from .units import SystemParams


class DecodingOrder(Enum):
    """Which user decodes first under successive interference cancellation.

    The "strong" user cancels the other user's signal before decoding its
    own and therefore sees no intra-pair interference; the other user treats
    the strong user's signal as noise.
    """

    T_STRONG = "T_STRONG"
    R_STRONG = "R_STRONG"


class GainOrder(Enum):
    """Ordering of the two users' received channel gains."""

    T_STRONGER = "T_STRONGER"
    R_STRONGER = "R_STRONGER"
    EQUAL = "EQUAL"


# Feasibility slack accepted when validating an allocation against the
# power budget / split conventions.
_SUM_TOL = 1e-9
_FLOOR_TOL = 1e-9


@dataclass(frozen=True)
class Allocation:
    """One candidate operating point of the downlink.

    ``beta_coupled`` says whether the two energy-split coefficients live on
    a single shared surface (and must sum to one) or on two separate
    single-mode surfaces (each fixed at one).
    """

    p_t: float
    p_r: float
    beta_t: float
    beta_r: float
    d_t: float = 1.0
    d_r: float = 1.0
    omega_t: float | None = None
    omega_r: float | None = None
    order: DecodingOrder | None = None
    beta_coupled: bool = True

    def validate(self, params: SystemParams) -> None:
        """Raise ValueError if the allocation violates its own contract."""
        for name in ("p_t", "p_r", "beta_t", "beta_r", "d_t", "d_r"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.p_t < 0.0 or self.p_r < 0.0:
            raise ValueError("transmit powers must be >= 0")
        if self.p_t + self.p_r > params.pmax_w * (1.0 + _SUM_TOL):
            raise ValueError("total transmit power exceeds the budget")
        for name, b in (("beta_t", self.beta_t), ("beta_r", self.beta_r)):
            if not (0.0 < b <= 1.0 + _SUM_TOL):
                raise ValueError(f"{name} must lie in (0, 1], got {b!r}")
        if self.beta_coupled and abs(self.beta_t + self.beta_r - 1.0) > _SUM_TOL:
            raise ValueError("energy-split coefficients must sum to 1")
        if self.d_t < 1.0 - _FLOOR_TOL or self.d_r < 1.0 - _FLOOR_TOL:
            raise ValueError("user distances must be >= 1 m (far-field floor)")
        if (self.omega_t is None) != (self.omega_r is None):
            raise ValueError("either both or neither resource share may be set")
        if self.omega_t is not None:
            if self.omega_t < 0.0 or self.omega_r < 0.0:
                raise ValueError("resource shares must be >= 0")
            if self.omega_t + self.omega_r > 1.0 + _SUM_TOL:
                raise ValueError("resource shares must sum to at most 1")


def _user_fields(user: str, alloc: Allocation, gains: EffectiveGains):
    if user == "t":
        return alloc.p_t, alloc.beta_t, alloc.d_t, gains.c_t, alloc.p_r
    if user == "r":
        return alloc.p_r, alloc.beta_r, alloc.d_r, gains.c_r, alloc.p_t
    raise ValueError(f"user must be 't' or 'r', got {user!r}")


def _interference_active(user: str, order: DecodingOrder) -> bool:
    # A user sees interference exactly when the *other* user is the strong
    # one: the strong user's signal is decoded last and never cancelled at
    # the weak receiver.
    if order is DecodingOrder.R_STRONG:
        return user == "t"
    return user == "r"


def noma_rate(user: str, alloc: Allocation, gains: EffectiveGains,
              params: SystemParams, check: bool = True) -> float:
    """Achievable rate of one user under superposed transmission, bits/s/Hz."""
    if check:
        alloc.validate(params)
    if alloc.order is None:
        raise ValueError("NOMA rate needs a decoding order on the allocation")
    p_k, beta_k, d_k, c_k, p_other = _user_fields(user, alloc, gains)
    rho0 = params.rho0
    signal = rho0 * p_k * beta_k * c_k
    noise = d_k ** params.alpha_ru * params.sigma2_w
    if _interference_active(user, alloc.order):
        noise = noise + rho0 * p_other * beta_k * c_k
    return math.log2(1.0 + signal / noise)


def oma_rate(user: str, alloc: Allocation, gains: EffectiveGains,
             params: SystemParams, check: bool = True) -> float:
    """Achievable rate of one user under orthogonal transmission, bits/s/Hz.

    A zero resource share yields a zero rate (the limit of the expression),
    not an error.
    """
    if check:
        alloc.validate(params)
    if alloc.omega_t is None:
        raise ValueError("OMA rate needs resource shares on the allocation")
    p_k, beta_k, d_k, c_k, _ = _user_fields(user, alloc, gains)
    omega_k = alloc.omega_t if user == "t" else alloc.omega_r
    if omega_k == 0.0:
        return 0.0
    snr = params.rho0 * p_k * beta_k * c_k / (omega_k * d_k ** params.alpha_ru
                                              * params.sigma2_w)
    return omega_k * math.log2(1.0 + snr)


def channel_gain_order(alloc: Allocation, gains: EffectiveGains,
                       params: SystemParams, rel_tol: float = 1e-9) -> GainOrder:
    """Compare the users' received channel gains at this operating point."""
    g_t = params.rho0 * alloc.beta_t * gains.c_t / alloc.d_t ** params.alpha_ru
    g_r = params.rho0 * alloc.beta_r * gains.c_r / alloc.d_r ** params.alpha_ru
    if abs(g_t - g_r) <= rel_tol * max(g_t, g_r):
        return GainOrder.EQUAL
    return GainOrder.T_STRONGER if g_t > g_r else GainOrder.R_STRONGER
