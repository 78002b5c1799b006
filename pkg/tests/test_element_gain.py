import numpy as np
import pytest
from hypothesis import given, strategies as st

import haparray as ha
from haparray.element_gain import GainPattern, element_gain_linear, gain_matrix


def test_peak_gain_constants():
    pattern = GainPattern(theta_3db=25.0)
    assert pattern.g_e_max_linear == pytest.approx(51.84, abs=1e-12)
    assert 10.0 * np.log10(pattern.g_e_max_linear) == pytest.approx(17.15, abs=0.005)
    assert element_gain_linear(0.0, pattern) == pytest.approx(51.84, abs=1e-12)


def test_half_beamwidth_is_exactly_three_db_down():
    pattern = GainPattern(theta_3db=25.0)
    peak = element_gain_linear(0.0, pattern)
    half = element_gain_linear(12.5, pattern)
    assert 10.0 * np.log10(peak / half) == pytest.approx(3.0, abs=1e-12)


def test_back_hemisphere_is_dead():
    assert element_gain_linear(120.0) == 0.0
    assert element_gain_linear(90.0) == 0.0  # boundary counts as back region
    assert element_gain_linear(180.0) == 0.0


def test_clamp_region_is_exact_floor():
    pattern = GainPattern(theta_3db=25.0, gamma_max_db=30.0)
    theta_clamp = 25.0 * np.sqrt(30.0 / 12.0)
    floor = pattern.g_e_max_linear * 10.0 ** (-3.0)
    for theta in (theta_clamp, theta_clamp + 5.0, 89.9):
        assert element_gain_linear(theta, pattern) == pytest.approx(floor, rel=1e-12)


def test_narrower_beam_raises_peak():
    ratio = GainPattern(theta_3db=10.0).g_e_max_linear / GainPattern(theta_3db=25.0).g_e_max_linear
    assert ratio == pytest.approx(6.25, abs=1e-12)


@given(st.floats(0.0, 89.0), st.floats(0.001, 1.0))
def test_monotone_attenuation_in_front_region(theta, step):
    pattern = GainPattern()
    hi = element_gain_linear(theta, pattern)
    lo = element_gain_linear(min(theta + step, 89.999), pattern)
    assert lo <= hi + 1e-15


def test_rejects_out_of_range_angles():
    with pytest.raises(ValueError):
        element_gain_linear(-0.1)
    with pytest.raises(ValueError):
        element_gain_linear(180.1)
    with pytest.raises(ValueError):
        GainPattern(theta_3db=0.0)
    with pytest.raises(ValueError):
        GainPattern(theta_3db=181.0)


def test_gain_bounds_invariant():
    pattern = GainPattern()
    theta = np.linspace(0.0, 180.0, 721)
    g = element_gain_linear(theta, pattern)
    front = theta < 90.0
    floor = pattern.g_e_max_linear * 10.0 ** (-pattern.gamma_max_db / 10.0)
    assert (g[~front] == 0.0).all()
    assert (g[front] >= floor - 1e-15).all()
    assert (g[front] <= pattern.g_e_max_linear + 1e-12).all()


def test_rectangular_array_sees_full_gain_at_nadir():
    geom = ha.build_rectangular(10, 10)
    users = ha.UserField(np.array([[0.0, 0.0]]))
    g = gain_matrix(geom, users)
    # all boresights point at the nadir user: every element at peak gain
    assert np.abs(g - 51.84).max() < 1e-6


def test_cylinder_side_elements_dead_at_nadir():
    geom = ha.build_cylindrical(6, 11)
    users = ha.UserField(np.array([[0.0, 0.0]]))
    g = gain_matrix(geom, users)
    assert np.abs(g).max() == 0.0  # horizontal boresights orthogonal to nadir


def test_hemisphere_has_forward_gain_everywhere():
    geom = ha.build_hemispherical(2650, 3.0)
    rng = np.random.default_rng(5)
    users = ha.UserField(rng.uniform(-30000.0, 30000.0, size=(200, 2)))
    g = gain_matrix(geom, users)
    assert ((g > 0.0).sum(axis=1) >= 64).all()
