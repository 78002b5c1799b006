"""Air-to-ground link budgets and Ricean channel draws.

Large-scale quantities are deterministic functions of geometry: free-space
path loss, an elevation-dependent line-of-sight probability, and the mean
path loss mixing LoS/NLoS excess losses.  Small-scale realizations mix the
deterministic steering phasor with an i.i.d. complex-normal scatter term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import SPEED_OF_LIGHT, ArrayGeometry, UserField, distance_matrix

# Urban environment defaults.
DEFAULT_ENV_A = 9.61
DEFAULT_ENV_B = 0.16
DEFAULT_ETA_LOS_DB = 1.0
DEFAULT_ETA_NLOS_DB = 20.0
NOISE_PSD_DBM_PER_HZ = -174.0
DEFAULT_NOISE_FIGURE_DB = 7.0

PLOS_FORMULAS = ("standard", "literal_inverted")


def noise_power(bandwidth_hz: float, noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB) -> float:
    """Receiver noise power in Watts over ``bandwidth_hz``.

    sigma^2 = 10^((-174 + 10 log10(BW) + NF - 30) / 10).
    """
    if bandwidth_hz <= 0.0:
        raise ValueError("bandwidth must be positive")
    dbm = NOISE_PSD_DBM_PER_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db
    return 10.0 ** ((dbm - 30.0) / 10.0)


# 20 MHz thermal floor plus the default noise figure.
DEFAULT_NOISE_W = noise_power(20.0e6, DEFAULT_NOISE_FIGURE_DB)


@dataclass(frozen=True)
class ChannelParams:
    """Carrier, excess-loss, and environment constants for one scenario."""

    f_c: float = 2.0e9
    eta_los_db: float = DEFAULT_ETA_LOS_DB
    eta_nlos_db: float = DEFAULT_ETA_NLOS_DB
    env_a: float = DEFAULT_ENV_A
    env_b: float = DEFAULT_ENV_B
    noise_power_w: float = DEFAULT_NOISE_W
    plos_formula: str = "standard"

    def __post_init__(self):
        if self.f_c <= 0.0:
            raise ValueError("carrier frequency must be positive")
        if not (0.0 <= self.eta_los_db <= self.eta_nlos_db):
            raise ValueError("excess losses must satisfy 0 <= eta_los <= eta_nlos")
        if self.noise_power_w <= 0.0:
            raise ValueError("noise power must be positive")
        if self.plos_formula not in PLOS_FORMULAS:
            raise ValueError(f"plos_formula must be one of {PLOS_FORMULAS}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.f_c

    @property
    def beta0(self) -> float:
        """Linear power gain at the 1 m reference distance."""
        return (4.0 * math.pi * self.f_c / SPEED_OF_LIGHT) ** -2


@dataclass(frozen=True)
class LinkBudget:
    """Per-user deterministic link quantities (vectors of length K)."""

    fspl_db: np.ndarray
    p_los: np.ndarray
    pl_db: np.ndarray
    beta_sq: np.ndarray
    eta_k: np.ndarray

    def __post_init__(self):
        if np.any((self.p_los < 0.0) | (self.p_los > 1.0)):
            raise ValueError("p_los must lie in [0, 1]")
        if np.any(self.beta_sq <= 0.0):
            raise ValueError("beta_sq must be positive")


def fspl_db(distance_m, f_c: float = 2.0e9):
    """Free-space path loss 20 log10(4 pi f d / c) in dB."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError("distance must be positive")
    return 20.0 * np.log10(4.0 * math.pi * f_c * d / SPEED_OF_LIGHT)


def p_los(elevation_deg, env_a: float = DEFAULT_ENV_A, env_b: float = DEFAULT_ENV_B,
          formula: str = "standard"):
    """Line-of-sight probability at an elevation angle in degrees.

    The standard sigmoid 1 / (1 + A exp(-B (E - A))) increases with
    elevation.  ``literal_inverted`` keeps an alternative grouping
    1 / (1 + A exp(-B (90 - E) - A)) that decreases with elevation; it is
    retained only so the non-physical reading stays testable.
    """
    e = np.asarray(elevation_deg, dtype=float)
    if formula == "standard":
        return 1.0 / (1.0 + env_a * np.exp(-env_b * (e - env_a)))
    if formula == "literal_inverted":
        return 1.0 / (1.0 + env_a * np.exp(-env_b * (90.0 - e) - env_a))
    raise ValueError(f"unknown p_los formula {formula!r}")


def link_budget(users: UserField, params: ChannelParams,
                force_p_los: float | None = None) -> LinkBudget:
    """Mean path loss and large-scale power gain for each user.

    PL_k mixes the LoS and NLoS excess losses by the LoS probability;
    beta_sq = 10^(-PL_k / 10) = eta_k * beta0 / d_k^2.  ``force_p_los``
    overrides the elevation-derived probability (e.g. 1.0 for pure-LoS
    studies).
    """
    fspl = fspl_db(users.d_k, params.f_c)
    if force_p_los is None:
        pl_prob = p_los(users.elevation_deg, params.env_a, params.env_b, params.plos_formula)
    else:
        if not 0.0 <= force_p_los <= 1.0:
            raise ValueError("force_p_los must lie in [0, 1]")
        pl_prob = np.full(users.n_users, float(force_p_los))
    pl = pl_prob * (fspl + params.eta_los_db) + (1.0 - pl_prob) * (fspl + params.eta_nlos_db)
    eta_k = 10.0 ** (
        -(pl_prob * params.eta_los_db + (1.0 - pl_prob) * params.eta_nlos_db) / 10.0
    )
    return LinkBudget(
        fspl_db=fspl,
        p_los=pl_prob,
        pl_db=pl,
        beta_sq=10.0 ** (-pl / 10.0),
        eta_k=eta_k,
    )


def steering_phases(geometry: ArrayGeometry, users: UserField, wavelength: float) -> np.ndarray:
    """Propagation phases 2 pi d_km / lambda, radians, (K, M)."""
    return 2.0 * math.pi * distance_matrix(geometry, users) / wavelength


def steering_vectors(geometry: ArrayGeometry, users: UserField, wavelength: float) -> np.ndarray:
    """Unit-modulus steering phasors exp(j 2 pi d_km / lambda), (K, M)."""
    return np.exp(1j * steering_phases(geometry, users, wavelength))


def sample_channel(
    users: UserField,
    geometry: ArrayGeometry,
    budget: LinkBudget,
    params: ChannelParams,
    seed,
    n_draws: int = 1,
) -> np.ndarray:
    """Ricean channel realizations, complex (n_draws, K, M).

    h_km = 10^(-PL_k/20) (sqrt(P_los) b_km + sqrt(1 - P_los) CN(0, 1)) with
    i.i.d. scatter across elements and draws.  Deterministic for a fixed
    seed; E|h_km|^2 equals beta_sq.
    """
    rng = np.random.default_rng(seed)
    k, m = users.n_users, geometry.n_elements
    b = steering_vectors(geometry, users, params.wavelength)
    amp = 10.0 ** (-budget.pl_db / 20.0)
    los = np.sqrt(budget.p_los)[:, None] * b
    scale = np.sqrt(1.0 - budget.p_los)[:, None]
    scatter = rng.standard_normal((n_draws, k, m)) + 1j * rng.standard_normal((n_draws, k, m))
    scatter *= 1.0 / math.sqrt(2.0)
    return amp[None, :, None] * (los[None, :, :] + scale[None, :, :] * scatter)
