"""Unit conversions and the canonical system parameter container.

Everything downstream computes in watts, meters and bits/s/Hz.  Decibel
quantities exist only at the configuration boundary: they are converted to
linear scale once, inside :class:`SystemParams`, and never travel further.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from typing import Any, Mapping


def db_to_linear(value_db: float) -> float:
    """Convert a dB ratio to linear scale: 10**(x/10)."""
    if not math.isfinite(value_db):
        raise ValueError(f"dB value must be finite, got {value_db!r}")
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a positive linear ratio to dB: 10*log10(x)."""
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"linear value must be finite and > 0, got {value!r}")
    return 10.0 * math.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    """Convert a dBm power to watts: 10**((x - 30)/10)."""
    if not math.isfinite(value_dbm):
        raise ValueError(f"dBm value must be finite, got {value_dbm!r}")
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


# Tolerance on the priority weights summing to one.  The weights are exact
# user input, so anything beyond float rounding is a configuration mistake.
_MU_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """Immutable scenario description for a single solve or experiment.

    Default values describe the reference deployment used throughout the
    test-suite and the bundled scenario presets.
    """

    rho0_db: float = -30.0      # path loss at the 1 m reference distance, dB
    sigma2_dbm: float = -80.0   # noise power at each receiver, dBm
    pmax_dbm: float = 30.0      # AP transmit power budget, dBm
    alpha_ru: float = 2.2       # path-loss exponent, surface -> user
    alpha_ar: float = 2.2       # path-loss exponent, AP -> surface
    k_ru: float = 10.0          # Rician K-factor, surface -> user links
    k_ar: float = 10.0          # Rician K-factor, AP -> surface link
    d_ap_ris: float = 50.0      # AP to surface distance, m
    m_elements: int = 100       # number of surface elements
    gamma_t: float = 5.0        # QoS rate target of the transmission-side user, bits/s/Hz
    gamma_r: float = 5.0        # QoS rate target of the reflection-side user, bits/s/Hz
    mu_t: float = 0.5           # coverage priority weight, transmission side
    mu_r: float = 0.5           # coverage priority weight, reflection side

    def __post_init__(self) -> None:
        for name in ("rho0_db", "sigma2_dbm", "pmax_dbm", "alpha_ru", "alpha_ar",
                     "k_ru", "k_ar", "d_ap_ris", "gamma_t", "gamma_r", "mu_t", "mu_r"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
        if self.alpha_ru < 2.0 or self.alpha_ar < 2.0:
            raise ValueError("path-loss exponents must be >= 2")
        if self.k_ru < 0.0 or self.k_ar < 0.0:
            raise ValueError("Rician K-factors must be >= 0")
        if self.d_ap_ris <= 0.0:
            raise ValueError("AP-surface distance must be > 0")
        if not isinstance(self.m_elements, int) or isinstance(self.m_elements, bool) \
                or self.m_elements < 1:
            raise ValueError(f"m_elements must be an integer >= 1, got {self.m_elements!r}")
        if self.gamma_t <= 0.0 or self.gamma_r <= 0.0:
            raise ValueError("rate targets must be > 0")
        if self.mu_t < 0.0 or self.mu_r < 0.0:
            raise ValueError("priority weights must be >= 0")
        if abs(self.mu_t + self.mu_r - 1.0) > _MU_SUM_TOL:
            raise ValueError(
                f"priority weights must sum to 1, got {self.mu_t} + {self.mu_r}")

    # -- linear-scale views -------------------------------------------------

    @property
    def rho0(self) -> float:
        """Reference path loss as a linear ratio."""
        return db_to_linear(self.rho0_db)

    @property
    def sigma2_w(self) -> float:
        """Noise power in watts."""
        return dbm_to_watts(self.sigma2_dbm)

    @property
    def pmax_w(self) -> float:
        """Power budget in watts."""
        return dbm_to_watts(self.pmax_dbm)

    def replace(self, **changes: Any) -> "SystemParams":
        return merge_params(self, changes)


_FIELD_NAMES = tuple(f.name for f in dataclasses.fields(SystemParams))


def merge_params(base: SystemParams, overrides: Mapping[str, Any]) -> SystemParams:
    """Apply a dict of field overrides to a parameter set.

    Setting one priority weight without the other fills in the complement so
    the pair keeps summing to one; setting both leaves them to validation.
    """
    unknown = set(overrides) - set(_FIELD_NAMES)
    if unknown:
        raise ValueError(f"unknown parameter fields: {sorted(unknown)}")
    changes = dict(overrides)
    if "mu_t" in changes and "mu_r" not in changes:
        changes["mu_r"] = 1.0 - float(changes["mu_t"])
    elif "mu_r" in changes and "mu_t" not in changes:
        changes["mu_t"] = 1.0 - float(changes["mu_r"])
    if "m_elements" in changes:
        m = changes["m_elements"]
        if isinstance(m, float) and m.is_integer():
            changes["m_elements"] = int(m)
    return dataclasses.replace(base, **changes)


def params_from_dict(data: Mapping[str, Any]) -> SystemParams:
    """Build a parameter set from a mapping; missing fields take defaults."""
    return merge_params(SystemParams(), data)


def params_from_json(text: str) -> SystemParams:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("parameter JSON must contain an object at top level")
    return params_from_dict(data)
