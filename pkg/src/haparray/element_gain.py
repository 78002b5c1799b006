"""Directional element gain pattern and the user-by-element gain matrix.

Each element radiates a quadratic-rolloff pattern around its boresight: peak
linear gain 32400 / theta_3dB^2, attenuation 12 (theta / theta_3dB)^2 dB
clamped at the front-to-back ratio, and zero linear gain in the back
half-space (theta >= 90 degrees).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, UserField, boresight_angle_matrix


@dataclass(frozen=True)
class GainPattern:
    theta_3db: float = 25.0
    gamma_max_db: float = 30.0

    def __post_init__(self):
        if not (0.0 < self.theta_3db <= 180.0):
            raise ValueError("theta_3db must lie in (0, 180]")
        if self.gamma_max_db < 0.0:
            raise ValueError("gamma_max_db must be non-negative")

    @property
    def g_e_max_linear(self) -> float:
        """Peak linear gain 32400 / theta_3dB^2."""
        return 32400.0 / (self.theta_3db * self.theta_3db)


def element_gain_linear(theta_km_deg, pattern: GainPattern = GainPattern()):
    """Linear power gain of one element at an off-boresight angle in degrees.

    Front region (theta < 90): peak gain attenuated by
    min(12 (theta/theta_3dB)^2, gamma_max) dB.  The back half-space including
    the theta = 90 boundary radiates nothing.
    """
    theta = np.asarray(theta_km_deg, dtype=float)
    if np.any((theta < 0.0) | (theta > 180.0)):
        raise ValueError("theta must lie in [0, 180] degrees")
    rolloff_db = np.minimum(12.0 * (theta / pattern.theta_3db) ** 2, pattern.gamma_max_db)
    front = pattern.g_e_max_linear * 10.0 ** (-rolloff_db / 10.0)
    out = np.where(theta < 90.0, front, 0.0)
    return float(out) if np.isscalar(theta_km_deg) else out


def gain_matrix(geometry: ArrayGeometry, users: UserField,
                pattern: GainPattern = GainPattern()) -> np.ndarray:
    """Linear power gains g_km of every element at every user, (K, M)."""
    return element_gain_linear(boresight_angle_matrix(geometry, users), pattern)
