"""Per-user SINR and rate under matched-filter analog beamforming.

The closed form treats the mean beamformed channel as the useful signal and
every second-moment term (own-signal fluctuation included) as interference:

    SINR_k = (p_k b_k^2 / M_k) T_k^2
             -----------------------------------------
             b_k^2 sum_k' (p_k' / M_k') S_kk'  +  sigma^2

with T_k the sum of sqrt(g_km) over user k's selected elements and
S_kk' the sum of user k's gains over user k''s selected elements.  A
Monte Carlo estimator of the same use-and-then-forget bound, driven by
sampled channel realizations, serves as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, LinkBudget, sample_channel, steering_vectors
from .element_gain import GainPattern, gain_matrix
from .geometry import ArrayGeometry, UserField
from .selection import SelectionMatrix

LOG2_E = math.log2(math.e)


@dataclass(frozen=True)
class PowerAllocation:
    """Per-user transmit powers under a total budget."""

    p: np.ndarray
    p_haps: float

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if np.any(p <= 0.0):
            raise ValueError("per-user powers must be strictly positive")
        if p.sum() > self.p_haps + 1e-9:
            raise ValueError("total power exceeds the budget")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class RateReport:
    """Per-user linear SINR and achievable rate at one bandwidth."""

    sinr_linear: np.ndarray
    bandwidth_hz: float

    @property
    def rate_bps(self) -> np.ndarray:
        return rate(self.sinr_linear, self.bandwidth_hz)

    @property
    def sum_rate_bps(self) -> float:
        return float(self.rate_bps.sum())


def selection_traces(selection: SelectionMatrix, gains: np.ndarray):
    """Amplitude and power sums over selected elements.

    Returns (t, s): t[k] = sum over user k's own selection of sqrt(g_km);
    s[k, k'] = sum over user k''s selection of g_km.
    """
    g = np.asarray(gains, dtype=float)
    mask = selection.a.astype(float)
    t = (np.sqrt(g) * mask).sum(axis=1)
    s = g @ mask.T
    return t, s


def sinr_coefficients(selection: SelectionMatrix, gains: np.ndarray, beta_sq):
    """Linear SINR coefficients: SINR_k(p) = a_k p_k / ((B p)_k + sigma^2).

    a_k = (beta_k^2 / M_k) T_k^2 and B[k, k'] = beta_k^2 S_kk' / M_k'.
    """
    beta_sq = np.asarray(beta_sq, dtype=float)
    counts = selection.m_k.astype(float)
    t, s = selection_traces(selection, gains)
    a = beta_sq * t * t / counts
    b = beta_sq[:, None] * s / counts[None, :]
    return a, b


def sinr_closed_form(p, selection: SelectionMatrix, gains: np.ndarray, beta_sq,
                     sigma_sq: float) -> np.ndarray:
    """Closed-form per-user SINR; the denominator sum includes k' = k."""
    p = np.asarray(p, dtype=float)
    if np.any(selection.a.sum(axis=1) == 0):
        raise ValueError("every user must have at least one selected element")
    if sigma_sq <= 0.0:
        raise ValueError("sigma_sq must be positive")
    a, b = sinr_coefficients(selection, gains, beta_sq)
    return a * p / (b @ p + sigma_sq)


def rate(sinr_linear, bandwidth_hz: float):
    """Shannon rate BW log2(1 + SINR) in bit/s."""
    s = np.asarray(sinr_linear, dtype=float)
    if np.any(s < 0.0):
        raise ValueError("SINR must be non-negative")
    out = bandwidth_hz * np.log2(1.0 + s)
    return float(out) if np.isscalar(sinr_linear) else out


def sinr_interference_limited(selection: SelectionMatrix, gains: np.ndarray) -> np.ndarray:
    """Noise-free equal-power SINR limit T_k^2 / sum_k' S_kk'.

    Valid under equal per-user powers and equal selection counts; it is the
    sigma^2 -> 0 limit of the closed form under those hypotheses.
    """
    counts = selection.m_k
    if np.any(counts != counts[0]):
        raise ValueError("interference-limited form requires equal selection counts")
    t, s = selection_traces(selection, np.asarray(gains, dtype=float))
    return t * t / s.sum(axis=1)


def sum_rate_asymptotic(m_k: int, bandwidth_hz: float) -> float:
    """Many-user sum-rate limit BW * m_k * log2(e) for unit-gain elements."""
    return bandwidth_hz * m_k * LOG2_E


def beamforming_weights(selection: SelectionMatrix, steering: np.ndarray) -> np.ndarray:
    """Matched-filter phase-shifter weights, (K, M) complex.

    Active entries carry the conjugate steering phasor at constant modulus
    1/sqrt(M_k); masked-off elements are zero.
    """
    counts = selection.m_k.astype(float)
    return selection.a * np.conj(steering) / np.sqrt(counts)[:, None]


def sinr_monte_carlo(
    users: UserField,
    geometry: ArrayGeometry,
    budget: LinkBudget,
    selection: SelectionMatrix,
    p,
    pattern: GainPattern,
    params: ChannelParams,
    sigma_sq: float,
    n_draws: int = 10_000,
    seed=0,
    chunk: int = 500,
) -> np.ndarray:
    """Use-and-then-forget SINR estimated from sampled channel realizations.

    Per draw, the effective gain of beam k' at user k is
    c_kk' = sum_m h_km sqrt(g_km) w_k'm; the useful signal is the squared
    mean of c_kk over draws and everything else of the received second
    moment counts as interference:

        SINR_k = p_k |E c_kk|^2 /
                 (sum_k' p_k' E|c_kk'|^2 - p_k |E c_kk|^2 + sigma^2)

    Deterministic for a fixed seed.  The estimate coincides with the closed
    form when the line-of-sight probability is 1 and the denominator is
    noise-dominated; under scattered channels the interference second
    moments are estimated empirically.
    """
    if n_draws < 10:
        raise ValueError("n_draws must be at least 10")
    p = np.asarray(p, dtype=float)
    g = gain_matrix(geometry, users, pattern)
    weights = beamforming_weights(selection, steering_vectors(geometry, users, params.wavelength))
    sqrt_g = np.sqrt(g)

    k = users.n_users
    mean_c = np.zeros(k, dtype=complex)
    second = np.zeros((k, k))
    done = 0
    batch = 0
    while done < n_draws:
        n = min(chunk, n_draws - done)
        h = sample_channel(users, geometry, budget, params, seed=(seed, batch), n_draws=n)
        c = np.einsum("dkm,jm->dkj", h * sqrt_g[None, :, :], weights)
        mean_c += c[:, np.arange(k), np.arange(k)].sum(axis=0)
        second += (np.abs(c) ** 2).sum(axis=0)
        done += n
        batch += 1
    mean_c /= n_draws
    second /= n_draws

    useful = p * np.abs(mean_c) ** 2
    total = second @ p
    return useful / (total - useful + sigma_sq)
