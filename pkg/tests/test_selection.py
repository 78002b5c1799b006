import numpy as np
import pytest

import haparray as ha
from haparray.link_rate import sinr_closed_form
from haparray.selection import (
    InfeasibleSelectionError,
    SelectionMatrix,
    select_brute_force,
    select_greedy,
)

from helpers import random_desk_instance


def test_greedy_top_two_by_gain():
    sel = select_greedy(np.array([[0.9, 0.5, 0.8]]), 2)
    assert set(sel.selected_indices(0)) == {0, 2}


def test_greedy_tie_break_lowest_index():
    sel = select_greedy(np.array([[0.4, 0.4, 0.4, 0.4]]), 2)
    assert list(sel.selected_indices(0)) == [0, 1]


def test_greedy_cap_forces_second_user_to_next_element():
    gains = np.array([[0.9, 0.8], [0.9, 0.8]])
    sel = select_greedy(gains, 1, m_element_cap=1)
    assert list(sel.selected_indices(0)) == [0]
    assert list(sel.selected_indices(1)) == [1]


def test_cardinality_bounds_hold():
    rng = np.random.default_rng(0)
    gains = rng.uniform(size=(5, 12))
    sel = select_greedy(gains, 3, m_element_cap=2)
    assert (sel.a.sum(axis=1) <= sel.m_k).all()
    assert (sel.a.sum(axis=0) <= 2).all()


def test_gain_dominance_when_cap_slack():
    rng = np.random.default_rng(1)
    gains = rng.uniform(size=(4, 20))
    sel = select_greedy(gains, 6)
    for k in range(4):
        chosen = sel.a[k]
        assert gains[k, chosen].min() >= gains[k, ~chosen].max()


def test_infeasible_cap_reported():
    gains = np.ones((3, 2))
    with pytest.raises(InfeasibleSelectionError):
        select_greedy(gains, 2, m_element_cap=2)  # 6 slots > 2*2


def test_zero_gain_padding_warns():
    gains = np.array([[0.5, 0.0, 0.0]])
    with pytest.warns(RuntimeWarning):
        sel = select_greedy(gains, 2)
    assert list(sel.selected_indices(0)) == [0, 1]


def test_selection_matrix_validation():
    with pytest.raises(ValueError):
        SelectionMatrix(a=np.ones((2, 3), dtype=bool), m_k=np.array([2, 2]), m_element_cap=2)
    with pytest.raises(ValueError):
        SelectionMatrix(a=np.ones((2, 3), dtype=bool), m_k=np.array([3, 3]), m_element_cap=1)


def test_greedy_deterministic():
    rng = np.random.default_rng(9)
    gains = rng.uniform(size=(3, 15))
    a = select_greedy(gains, 4).a
    b = select_greedy(gains, 4).a
    assert np.array_equal(a, b)


def test_brute_force_single_user_argmax():
    gains = np.array([[1.0, 2.0, 3.0, 4.0]])
    sel, value = select_brute_force(gains, 1, np.ones(1), 1.0, 1.0)
    assert list(sel.selected_indices(0)) == [3]
    assert value > 0.0


def test_brute_force_rejects_large_instances():
    with pytest.raises(ValueError):
        select_brute_force(np.ones((1, 13)), 1, np.ones(1), 1.0, 1.0)
    with pytest.raises(ValueError):
        select_brute_force(np.ones((4, 8)), 1, np.ones(4), 1.0, 1.0)


def test_greedy_matches_brute_force_on_decoupled_instance():
    # two users with disjoint support: no interference coupling at all
    gains = np.zeros((2, 8))
    gains[0, :4] = [0.9, 0.7, 0.5, 0.3]
    gains[1, 4:] = [0.8, 0.6, 0.4, 0.2]
    beta = np.ones(2)
    greedy = select_greedy(gains, 4)
    gv = float(np.min(sinr_closed_form(np.ones(2), greedy, gains, beta, 0.1)))
    bf_sel, bf_value = select_brute_force(gains, 4, beta, 1.0, 0.1)
    sets = [set(greedy.selected_indices(k)) for k in range(2)]
    assert sets[0].isdisjoint(sets[1])
    assert gv == pytest.approx(bf_value, rel=1e-12)


def test_greedy_near_oracle_on_random_geometry_instance():
    rng = np.random.default_rng(7)
    gains, beta, sigma, m_k = random_desk_instance(rng, k=2, m=6, m_k=2)
    if (gains > 0).all(axis=1).any():
        p = np.full(2, 0.01)
        greedy = select_greedy(gains, m_k)
        gv = float(np.min(sinr_closed_form(p, greedy, gains, beta, sigma)))
        _, bf_value = select_brute_force(gains, m_k, beta, 0.01, sigma)
        assert gv >= 0.95 * bf_value
