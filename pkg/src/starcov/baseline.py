"""Conventional two-surface baseline.

Instead of one full-size surface that both transmits and reflects, the
baseline deploys two colocated half-size surfaces: one serving the
transmission-side user, one the reflection-side user.  Each surface throws
all of its energy at its own user, so the energy splits are pinned to one
and the remaining freedom is how the shared power budget divides between
the two data streams.  The NOMA and OMA solvers accept that pinning
directly; this module only prepares the half-size channel draws and
dispatches.
"""

from __future__ import annotations

import numpy as np

from .channel import EffectiveGains, effective_gain, generate_channel
from .noma import solve_noma
from .oma import solve_oma
from .solution import CoverageSolution
from .units import SystemParams, merge_params

PINNED_FULL = (1.0, 1.0)


def split_elements(m: int) -> tuple[int, int]:
    """Element counts of the two half-size surfaces (odd leftover reflects)."""
    return m // 2, m - m // 2


def conventional_gains(params: SystemParams, seed: int) -> EffectiveGains:
    """Effective gains produced by two independent half-size surfaces.

    Each surface sees its own AP link and its own user link, drawn from
    seed streams spawned off the master seed so the two surfaces stay
    independent of each other and of the full-surface draw with the same
    seed.  A surface with zero elements yields a zero gain.
    """
    m_t, m_r = split_elements(params.m_elements)
    child_t, child_r = np.random.SeedSequence(seed).spawn(2)

    def surface_gain(m_k: int, child: np.random.SeedSequence, user: str) -> float:
        if m_k == 0:
            return 0.0
        sub_seed = int(child.generate_state(1)[0])
        real = generate_channel(merge_params(params, {"m_elements": m_k}), sub_seed)
        g = effective_gain(real)
        return g.c_t if user == "t" else g.c_r

    return EffectiveGains(c_t=surface_gain(m_t, child_t, "t"),
                          c_r=surface_gain(m_r, child_r, "r"))


def solve_conventional_noma(gains: EffectiveGains,
                            params: SystemParams) -> CoverageSolution:
    return solve_noma(gains, params, pinned_beta=PINNED_FULL)


def solve_conventional_oma(gains: EffectiveGains,
                           params: SystemParams) -> CoverageSolution:
    return solve_oma(gains, params, pinned_beta=PINNED_FULL)
