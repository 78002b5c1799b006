"""Antenna selection: per-user gain-greedy ranking and a brute-force oracle.

The greedy rule sorts each user's gain row in descending order and keeps the
first m_k element indices, breaking ties toward lower indices so results are
reproducible.  An optional per-element cap limits how many users may share
one element; users are then processed in index order and skip saturated
elements.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np


class InfeasibleSelectionError(ValueError):
    """Raised when the per-element cap cannot accommodate all users."""


@dataclass(frozen=True)
class SelectionMatrix:
    """Boolean K x M assignment with per-user counts and the element cap."""

    a: np.ndarray
    m_k: np.ndarray
    m_element_cap: int

    def __post_init__(self):
        a = np.asarray(self.a, dtype=bool)
        m_k = np.asarray(self.m_k, dtype=int)
        if a.ndim != 2:
            raise ValueError("selection must be a K x M matrix")
        if m_k.shape != (a.shape[0],):
            raise ValueError("m_k must hold one count per user")
        if np.any(a.sum(axis=1) > m_k):
            raise ValueError("a row selects more elements than its m_k")
        if np.any(a.sum(axis=0) > self.m_element_cap):
            raise ValueError("a column exceeds the per-element cap")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "m_k", m_k)

    @property
    def n_users(self) -> int:
        return self.a.shape[0]

    @property
    def n_elements(self) -> int:
        return self.a.shape[1]

    def selected_indices(self, user: int) -> np.ndarray:
        return np.flatnonzero(self.a[user])

    def pairs(self):
        """(user, element) pairs for CSV dumps, row-major."""
        users, elements = np.nonzero(self.a)
        return list(zip(users.tolist(), elements.tolist()))


def _ranked_indices(gain_row: np.ndarray) -> np.ndarray:
    # Stable sort on the negated gains: descending gain, ties by lowest index.
    return np.argsort(-gain_row, kind="stable")


def select_greedy(gains: np.ndarray, m_k, m_element_cap: int | None = None) -> SelectionMatrix:
    """Top-m_k elements per user by gain, optionally honoring an element cap.

    With the default cap (one slot per user, so it never binds) every user
    independently receives its m_k highest-gain elements.  A finite cap is
    enforced sequentially over users in index order.  Users with fewer than
    m_k positive-gain elements are padded with the smallest-index remaining
    elements and a warning is emitted.
    """
    g = np.asarray(gains, dtype=float)
    if g.ndim != 2:
        raise ValueError("gains must be a K x M matrix")
    if np.any(g < 0.0):
        raise ValueError("gains must be non-negative")
    n_users, n_elements = g.shape
    m_k = np.broadcast_to(np.asarray(m_k, dtype=int), (n_users,)).copy()
    if np.any(m_k <= 0) or np.any(m_k > n_elements):
        raise ValueError("per-user counts must lie in [1, M]")
    cap = n_users if m_element_cap is None else int(m_element_cap)
    if cap <= 0:
        raise ValueError("m_element_cap must be positive")
    if int(m_k.sum()) > n_elements * cap:
        raise InfeasibleSelectionError(
            f"cannot place {int(m_k.sum())} selections on {n_elements} elements "
            f"with at most {cap} users per element"
        )

    a = np.zeros((n_users, n_elements), dtype=bool)
    load = np.zeros(n_elements, dtype=int)
    for k in range(n_users):
        chosen = []
        for idx in _ranked_indices(g[k]):
            if load[idx] >= cap:
                continue
            chosen.append(idx)
            if len(chosen) == m_k[k]:
                break
        if len(chosen) < m_k[k]:
            raise InfeasibleSelectionError(
                f"user {k} cannot obtain {m_k[k]} elements under the cap"
            )
        chosen = np.array(chosen)
        if np.any(g[k, chosen] == 0.0) and np.any(g[k] > 0.0):
            warnings.warn(
                f"user {k} has fewer than {m_k[k]} forward-facing elements; "
                "padding with zero-gain elements",
                RuntimeWarning,
                stacklevel=2,
            )
        a[k, chosen] = True
        load[chosen] += 1
    return SelectionMatrix(a=a, m_k=m_k, m_element_cap=cap)


# Enumerability bounds for the exhaustive oracle.
BRUTE_FORCE_MAX_M = 12
BRUTE_FORCE_MAX_K = 3
BRUTE_FORCE_MAX_MK = 4


def select_brute_force(
    gains: np.ndarray,
    m_k: int,
    beta_sq,
    power_per_user: float,
    sigma_sq: float,
) -> tuple[SelectionMatrix, float]:
    """Exhaustive search over per-user m_k-subsets maximizing min-user SINR.

    Evaluates the closed-form SINR at equal powers for every combination of
    per-user selections and returns an argmax selection together with its
    min-SINR.  Only desk-scale instances are accepted.
    """
    from .link_rate import sinr_closed_form

    g = np.asarray(gains, dtype=float)
    n_users, n_elements = g.shape
    if n_elements > BRUTE_FORCE_MAX_M or n_users > BRUTE_FORCE_MAX_K or m_k > BRUTE_FORCE_MAX_MK:
        raise ValueError(
            f"instance exceeds the enumerability bound "
            f"(M <= {BRUTE_FORCE_MAX_M}, K <= {BRUTE_FORCE_MAX_K}, m_k <= {BRUTE_FORCE_MAX_MK})"
        )
    beta_sq = np.broadcast_to(np.asarray(beta_sq, dtype=float), (n_users,))
    p = np.full(n_users, power_per_user, dtype=float)
    counts = np.full(n_users, m_k, dtype=int)

    subsets = list(itertools.combinations(range(n_elements), m_k))
    best_value = -np.inf
    best = None
    for combo in itertools.product(subsets, repeat=n_users):
        a = np.zeros((n_users, n_elements), dtype=bool)
        for k, subset in enumerate(combo):
            a[k, list(subset)] = True
        sel = SelectionMatrix(a=a, m_k=counts, m_element_cap=n_users)
        value = float(np.min(sinr_closed_form(p, sel, g, beta_sq, sigma_sq)))
        if value > best_value:
            best_value = value
            best = sel
    return best, best_value
