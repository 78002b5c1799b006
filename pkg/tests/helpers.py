"""Shared instance builders for the test suite."""

from itertools import combinations

import numpy as np

import haparray as ha
from haparray.element_gain import GainPattern, gain_matrix


def simplex_grid(n: int, k: int, total: float) -> np.ndarray:
    """All compositions of n into k parts, scaled to sum to ``total``."""
    cuts = np.array(list(combinations(range(n + k - 1), k - 1)))
    bounds = np.concatenate(
        [
            np.full((cuts.shape[0], 1), -1),
            cuts,
            np.full((cuts.shape[0], 1), n + k - 1),
        ],
        axis=1,
    )
    parts = np.diff(bounds, axis=1) - 1
    return parts / n * total


def random_desk_instance(rng, k=None, m=None, m_k=None, area_half=30000.0,
                         theta_3db=None):
    """Desk-scale hemispherical instance: gains, large-scale gains, noise."""
    k = k if k is not None else int(rng.integers(1, 3))
    m = m if m is not None else int(rng.integers(6, 11))
    m_k = m_k if m_k is not None else int(rng.integers(1, 4))
    geom = ha.build_hemispherical(m, 3.0)
    users = ha.UserField(rng.uniform(-area_half, area_half, size=(k, 2)))
    pattern = GainPattern(
        theta_3db=float(rng.uniform(20, 60)) if theta_3db is None else theta_3db
    )
    gains = gain_matrix(geom, users, pattern)
    beta_sq = ha.link_budget(users, ha.ChannelParams()).beta_sq
    sigma_sq = ha.noise_power(20e6, 7.0)
    return gains, beta_sq, sigma_sq, m_k


def los_only_instance(xy, m=64, m_k=8, theta_3db=25.0, radius=3.0):
    """Pure line-of-sight hemispherical instance for oracle comparisons."""
    geom = ha.build_hemispherical(m, radius)
    users = ha.UserField(np.asarray(xy, dtype=float))
    params = ha.ChannelParams()
    budget = ha.link_budget(users, params, force_p_los=1.0)
    pattern = GainPattern(theta_3db=theta_3db)
    gains = gain_matrix(geom, users, pattern)
    selection = ha.select_greedy(gains, m_k)
    sigma_sq = ha.noise_power(20e6, 7.0)
    return geom, users, params, budget, pattern, gains, selection, sigma_sq
