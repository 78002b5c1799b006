"""Max-min SINR power allocation by bisection over the target level.

For a fixed target eta the constraint set {SINR_k >= eta for all k,
sum p <= budget, p > 0} is linear in p.  Its minimal-power point solves the
equal-SINR system (diag(a) - eta B) p = eta sigma^2 1; the target is
feasible iff that solution is componentwise positive and fits the budget.
Bisection over eta then converges to the max-min optimum, where all user
SINRs are equal.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .link_rate import PowerAllocation, sinr_coefficients
from .selection import SelectionMatrix

log = logging.getLogger(__name__)

MAX_BRACKET_DOUBLINGS = 20
RESIDUAL_WARN_REL = 1e-6
SATURATION_REFINE_STEPS = 60


@dataclass(frozen=True)
class BisectionConfig:
    eta_min: float = 0.0
    eta_max: float = 1500.0
    epsilon: float = 0.01

    def __post_init__(self):
        if not (0.0 <= self.eta_min < self.eta_max):
            raise ValueError("bracket must satisfy 0 <= eta_min < eta_max")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")


@dataclass
class MaxMinResult:
    allocation: PowerAllocation
    eta: float
    sinr: np.ndarray
    iterations: int
    bracket: tuple[float, float]
    trace: list = field(default_factory=list)  # (iteration, eta_min, eta_max, feasible)
    refine_iterations: int = 0


def _feasible_at(eta: float, a: np.ndarray, b: np.ndarray, sigma_sq: float,
                 p_haps: float):
    """Minimal-power equal-SINR witness for target ``eta``, or None."""
    k = a.shape[0]
    if eta <= 0.0:
        # Constraints are vacuous in the limit; any vanishing allocation works.
        return np.full(k, min(p_haps / k, 1e-12))
    mat = np.diag(a) - eta * b
    rhs = np.full(k, eta * sigma_sq)
    try:
        p = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError:
        return None
    residual = np.linalg.norm(mat @ p - rhs) / np.linalg.norm(rhs)
    if residual > RESIDUAL_WARN_REL:
        warnings.warn(
            f"equal-SINR solve at eta={eta:g} is ill-conditioned "
            f"(relative residual {residual:.2e})",
            RuntimeWarning,
            stacklevel=2,
        )
    if np.any(p <= 0.0) or p.sum() > p_haps * (1.0 + 1e-12):
        return None
    return p


def feasibility(eta: float, selection: SelectionMatrix, gains, beta_sq,
                sigma_sq: float, p_haps: float):
    """Decide whether powers exist achieving SINR >= eta for every user.

    Returns (feasible, witness) where the witness is the minimal-power
    equal-SINR allocation when one exists within the budget.
    """
    a, b = sinr_coefficients(selection, gains, beta_sq)
    p = _feasible_at(eta, a, b, sigma_sq, p_haps)
    return (p is not None), p


def max_min_power_coeffs(a, b, sigma_sq: float, p_haps: float,
                         config: BisectionConfig = BisectionConfig()) -> MaxMinResult:
    """Bisection on the SINR target given precomputed link coefficients."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if sigma_sq <= 0.0 or p_haps <= 0.0:
        raise ValueError("sigma_sq and p_haps must be positive")
    if np.any(a <= 0.0):
        raise ValueError("every user needs a positive signal coefficient")

    lo, hi = config.eta_min, config.eta_max
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if _feasible_at(hi, a, b, sigma_sq, p_haps) is None:
            break
        log.info("eta_max=%g is feasible; doubling the bracket", hi)
        hi *= 2.0
    bracket = (lo, hi)

    witness = None
    trace = []
    iterations = 0
    while hi - lo >= config.epsilon:
        iterations += 1
        mid = 0.5 * (lo + hi)
        p = _feasible_at(mid, a, b, sigma_sq, p_haps)
        trace.append((iterations, lo, hi, p is not None))
        if p is not None:
            lo, witness = mid, p
        else:
            hi = mid

    # Saturation polish: the optimum uses the whole budget, so keep bisecting
    # the same predicate until the equal-SINR witness pins it down.  This
    # leaves all user SINRs equal at the returned allocation instead of
    # scaling a coarse witness unevenly.
    refine = 0
    while refine < SATURATION_REFINE_STEPS and hi > lo:
        refine += 1
        mid = 0.5 * (lo + hi)
        p = _feasible_at(mid, a, b, sigma_sq, p_haps)
        trace.append((iterations + refine, lo, hi, p is not None))
        if p is not None:
            lo, witness = mid, p
        else:
            hi = mid

    if witness is None:
        # The optimum sits below the refined bracket; fall back to an equal split.
        witness = np.full(a.shape[0], p_haps / a.shape[0])
    # Exact budget saturation: a uniform scale-up cannot decrease any SINR.
    witness = witness * (p_haps / witness.sum())
    sinr = a * witness / (b @ witness + sigma_sq)
    return MaxMinResult(
        allocation=PowerAllocation(p=witness, p_haps=p_haps),
        eta=float(sinr.min()),
        sinr=sinr,
        iterations=iterations,
        bracket=bracket,
        trace=trace,
        refine_iterations=refine,
    )


def max_min_power(selection: SelectionMatrix, gains, beta_sq, sigma_sq: float,
                  p_haps: float, config: BisectionConfig = BisectionConfig()) -> MaxMinResult:
    """Max-min SINR allocation for a fixed selection and gain matrix."""
    a, b = sinr_coefficients(selection, gains, beta_sq)
    return max_min_power_coeffs(a, b, sigma_sq, p_haps, config)


def bisection_iteration_bound(config: BisectionConfig, bracket_hi: float | None = None) -> int:
    """Worst-case bisection probe count for a bracket and tolerance."""
    hi = config.eta_max if bracket_hi is None else bracket_hi
    return int(math.ceil(math.log2((hi - config.eta_min) / config.epsilon)))
