"""Brute-force grid optimizer over the raw coverage problems.

Ground truth for the closed-form solvers: no constraint transformation, no
budget-riding lock, no equality-at-optimum assumption.  Every candidate
allocation on a uniform grid is checked against the untransformed rate
constraints, with the one analytic step being the inversion of each rate
constraint for the largest admissible distance (exact, and it removes the
distance dimension from the grid).

Grids use the nested lattice {i/n : i = 1..n-1}, so doubling ``grid_n``
only adds candidates and the best value is monotone in the resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import EffectiveGains
from .rates import DecodingOrder
from .units import SystemParams

GRID_N_MIN = 32
GRID_N_DEFAULT = 256

# The solvers carry their own overflow-safe formula evaluations; these are
# deliberately written out again here so the oracle shares no numeric code
# with what it is checking.
_LN2 = math.log(2.0)


def _snr_threshold(gamma: float) -> float:
    # 2**gamma - 1, saturating to inf past double range.
    x = gamma * _LN2
    return math.inf if x > 709.0 else math.expm1(x)


def _share_factor(gamma: float, omega):
    # omega * (2**(gamma/omega) - 1); inf where the share cannot carry the
    # target without overflowing.
    omega = np.asarray(omega, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        expo = np.divide(gamma * _LN2, omega,
                         out=np.full_like(omega, np.inf), where=omega > 0.0)
        out = omega * np.expm1(expo)
    return np.where(expo > 709.0, np.inf, out)


@dataclass(frozen=True)
class OracleResult:
    """Best grid cell found by exhaustive search.

    ``cell_slack`` is the largest coverage-range change when moving one grid
    step from the argmax along any single axis (infeasible or out-of-range
    neighbors skipped): the resolution-limited uncertainty of ``d0``.
    """

    d0: float
    feasible: bool
    beta_t: float
    power_frac: float
    omega_t: float | None
    order: DecodingOrder | None
    cell_slack: float
    grid_n: int

    def to_json_dict(self) -> dict:
        return {
            "d0": self.d0,
            "feasible": self.feasible,
            "beta_t": self.beta_t,
            "power_frac": self.power_frac,
            "omega_t": self.omega_t,
            "order": self.order.name if self.order is not None else None,
            "cell_slack": self.cell_slack,
            "grid_n": self.grid_n,
        }


def _grid(n: int) -> np.ndarray:
    if n < GRID_N_MIN:
        raise ValueError(f"grid_n must be >= {GRID_N_MIN}, got {n!r}")
    return np.arange(1, n) / n


def _beta_axes(grid_n: int,
               pinned_beta: tuple[float, float] | None) -> tuple[np.ndarray, np.ndarray]:
    # the two splits are only complementary on the shared surface; a pinned
    # pair (the conventional baseline) carries both values independently
    if pinned_beta is None:
        b = _grid(grid_n)
        return b, 1.0 - b
    return np.asarray([pinned_beta[0]]), np.asarray([pinned_beta[1]])


def _range_from_caps(cap_t, cap_r, params: SystemParams):
    """Coverage range implied by per-user distance caps (alpha-th power).

    A cap below the 1 m far-field floor kills the cell.  A user with zero
    priority weight only has to clear the floor.
    """
    inv_alpha = 1.0 / params.alpha_ru
    with np.errstate(invalid="ignore", over="ignore"):
        d_t = np.where(cap_t > 0.0, np.maximum(cap_t, 0.0) ** inv_alpha, -np.inf)
        d_r = np.where(cap_r > 0.0, np.maximum(cap_r, 0.0) ** inv_alpha, -np.inf)
        ok = (d_t >= 1.0) & (d_r >= 1.0)
        d0 = np.full(np.broadcast(d_t, d_r).shape, np.inf)
        if params.mu_t > 0.0:
            d0 = np.minimum(d0, d_t / params.mu_t)
        if params.mu_r > 0.0:
            d0 = np.minimum(d0, d_r / params.mu_r)
    return np.where(ok, d0, -np.inf)


def _noma_cell_d0(beta_t, beta_r, frac, order: DecodingOrder,
                  gains: EffectiveGains, params: SystemParams):
    """Largest feasible coverage range per (beta_t, power-fraction) cell.

    Inverts both rate constraints for the distance, then checks the
    decoding-order admissibility (the strong user must still have the
    stronger effective channel at the resulting positions).
    """
    beta_t = np.asarray(beta_t, dtype=float)
    beta_r = np.asarray(beta_r, dtype=float)
    frac = np.asarray(frac, dtype=float)
    p_t = frac * params.pmax_w
    p_r = (1.0 - frac) * params.pmax_w

    if order is DecodingOrder.R_STRONG:
        p_s, p_w = p_r, p_t
        beta_s, beta_w, c_s, c_w = beta_r, beta_t, gains.c_r, gains.c_t
        gamma_s, gamma_w = params.gamma_r, params.gamma_t
    else:
        p_s, p_w = p_t, p_r
        beta_s, beta_w, c_s, c_w = beta_t, beta_r, gains.c_t, gains.c_r
        gamma_s, gamma_w = params.gamma_t, params.gamma_r

    thr_s = _snr_threshold(gamma_s)
    thr_w = _snr_threshold(gamma_w)
    # Strong user decodes interference-free; the weak user's SNR margin must
    # also absorb the strong user's superposed power.
    cap_s = params.rho0 * p_s * beta_s * c_s / (thr_s * params.sigma2_w)
    cap_w = params.rho0 * beta_w * c_w * (p_w / thr_w - p_s) / params.sigma2_w

    if order is DecodingOrder.R_STRONG:
        d0 = _range_from_caps(cap_w, cap_s, params)
    else:
        d0 = _range_from_caps(cap_s, cap_w, params)

    # Order admissibility at the achieved positions.
    with np.errstate(invalid="ignore"):
        pos_t = np.maximum(params.mu_t * d0, 1.0)
        pos_r = np.maximum(params.mu_r * d0, 1.0)
        h2_t = beta_t * gains.c_t / pos_t ** params.alpha_ru
        h2_r = beta_r * gains.c_r / pos_r ** params.alpha_ru
        admissible = (h2_r >= h2_t) if order is DecodingOrder.R_STRONG \
            else (h2_t >= h2_r)
    return np.where(admissible, d0, -np.inf)


def _oma_cell_d0(beta_t, beta_r, frac, omega_t, gains: EffectiveGains,
                 params: SystemParams):
    beta_t = np.asarray(beta_t, dtype=float)
    beta_r = np.asarray(beta_r, dtype=float)
    frac = np.asarray(frac, dtype=float)
    f_t = _share_factor(params.gamma_t, omega_t)
    f_r = _share_factor(params.gamma_r, 1.0 - np.asarray(omega_t, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cap_t = np.where(np.isfinite(f_t),
                         params.rho0 * frac * params.pmax_w * beta_t * gains.c_t
                         / (f_t * params.sigma2_w), -np.inf)
        cap_r = np.where(np.isfinite(f_r),
                         params.rho0 * (1.0 - frac) * params.pmax_w
                         * beta_r * gains.c_r
                         / (f_r * params.sigma2_w), -np.inf)
    return _range_from_caps(cap_t, cap_r, params)


def _slack(best: float, neighbors: list[float]) -> float:
    vals = [v for v in neighbors if math.isfinite(v)]
    if not vals:
        return 0.0
    return max(abs(best - v) for v in vals)


def oracle_noma(gains: EffectiveGains, params: SystemParams,
                grid_n: int = GRID_N_DEFAULT,
                pinned_beta: tuple[float, float] | None = None) -> OracleResult:
    """Exhaustive search over energy split, power fraction and both orders."""
    betas, betas_r = _beta_axes(grid_n, pinned_beta)
    fracs = _grid(grid_n)
    bb, ff = np.meshgrid(betas, fracs, indexing="ij")
    bb_r, _ = np.meshgrid(betas_r, fracs, indexing="ij")

    best = (-np.inf, None, None, None)
    cells = {}
    for order in DecodingOrder:
        d0 = _noma_cell_d0(bb, bb_r, ff, order, gains, params)
        cells[order] = d0
        i, j = np.unravel_index(int(np.argmax(d0)), d0.shape)
        if d0[i, j] > best[0]:
            best = (float(d0[i, j]), int(i), int(j), order)

    d0_best, i, j, order = best
    if not math.isfinite(d0_best) or d0_best <= 0.0:
        return OracleResult(0.0, False, math.nan, math.nan, None, None, 0.0, grid_n)

    d0 = cells[order]
    neighbors = []
    if len(betas) > 1:
        neighbors += [float(d0[i - 1, j])] if i > 0 else []
        neighbors += [float(d0[i + 1, j])] if i + 1 < d0.shape[0] else []
    neighbors += [float(d0[i, j - 1])] if j > 0 else []
    neighbors += [float(d0[i, j + 1])] if j + 1 < d0.shape[1] else []
    return OracleResult(d0_best, True, float(betas[i]), float(fracs[j]),
                        None, order, _slack(d0_best, neighbors), grid_n)


def oracle_oma(gains: EffectiveGains, params: SystemParams,
               grid_n: int = GRID_N_DEFAULT,
               pinned_beta: tuple[float, float] | None = None) -> OracleResult:
    """Exhaustive search over energy split, resource share and power fraction.

    The budget-riding rule is deliberately NOT assumed here; the power
    fraction is a free grid axis so the search can certify that rule
    independently.  Evaluated one resource-share slice at a time to bound
    memory at one (beta, fraction) mesh.
    """
    betas, betas_r = _beta_axes(grid_n, pinned_beta)
    fracs = _grid(grid_n)
    omegas = _grid(grid_n)
    bb, ff = np.meshgrid(betas, fracs, indexing="ij")
    bb_r, _ = np.meshgrid(betas_r, fracs, indexing="ij")

    best = (-np.inf, None, None, None)
    for k, omega in enumerate(omegas):
        d0 = _oma_cell_d0(bb, bb_r, ff, float(omega), gains, params)
        i, j = np.unravel_index(int(np.argmax(d0)), d0.shape)
        if d0[i, j] > best[0]:
            best = (float(d0[i, j]), int(i), int(j), int(k))

    d0_best, i, j, k = best
    if not math.isfinite(d0_best) or d0_best <= 0.0:
        return OracleResult(0.0, False, math.nan, math.nan, math.nan, None,
                            0.0, grid_n)

    def at(ii: int, jj: int, kk: int) -> float:
        if not (0 <= ii < len(betas) and 0 <= jj < len(fracs)
                and 0 <= kk < len(omegas)):
            return -math.inf
        return float(_oma_cell_d0(betas[ii], betas_r[ii], fracs[jj],
                                  float(omegas[kk]), gains, params))

    neighbors = []
    if len(betas) > 1:
        neighbors += [at(i - 1, j, k), at(i + 1, j, k)]
    neighbors += [at(i, j - 1, k), at(i, j + 1, k),
                  at(i, j, k - 1), at(i, j, k + 1)]
    return OracleResult(d0_best, True, float(betas[i]), float(fracs[j]),
                        float(omegas[k]), None, _slack(d0_best, neighbors),
                        grid_n)
