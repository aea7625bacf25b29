import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from msbeam.surface import (
    SPEED_OF_LIGHT,
    ComplexProfile,
    DielectricState,
    PhaseProfile,
    StateCodebook,
    build_grid,
    canonical_codebook,
    circular_distance,
    dielectric_reflection_phase,
    quantize_profile,
    relative_state_phases,
    wrap_phase,
)

F = 28e9
LAM = SPEED_OF_LIGHT / F


def test_reference_grid_dimensions():
    g = build_grid(24, 24, 1 / 3, F)
    assert g.shape == (24, 24)
    # c / (3 f) = 3.56896 mm; the commonly quoted 3.5693 mm agrees to 1e-4
    assert_allclose(g.cell_size, 3.5693e-3, rtol=2e-4)
    assert_allclose(g.cell_size, SPEED_OF_LIGHT / (3 * F), rtol=1e-15)
    assert_allclose(g.aperture_size, (8 * LAM, 8 * LAM), rtol=1e-12)


def test_single_cell_grid():
    g = build_grid(1, 1, 1 / 3, F)
    xs, ys = g.cell_centers()
    assert_allclose(xs, [[g.cell_size / 2]])
    assert_allclose(ys, [[g.cell_size / 2]])


@pytest.mark.parametrize("size", [0.6, 0.5, 0.0, -0.1])
def test_grid_rejects_large_or_nonpositive_cells(size):
    with pytest.raises(ValueError):
        build_grid(24, 24, size, F)


def test_cell_indices_are_one_based():
    g = build_grid(3, 2, 0.25, F)
    m, n = g.cell_indices()
    assert m[0, 0] == 1 and n[0, 0] == 1
    assert m[-1, -1] == 3 and n[-1, -1] == 2


def test_canonical_codebooks():
    assert_allclose(canonical_codebook(4).as_array(), [0, np.pi / 2, np.pi, 3 * np.pi / 2])
    assert_allclose(canonical_codebook(2).as_array(), [0, np.pi])
    assert_allclose(canonical_codebook(8).as_array(), np.arange(8) * np.pi / 4)
    with pytest.raises(ValueError):
        canonical_codebook(1)


@pytest.mark.parametrize("n", [2, 3, 4, 8, 16])
def test_codebook_uniform_spacing(n):
    assert_allclose(np.diff(canonical_codebook(n).as_array()), 2 * np.pi / n, rtol=1e-12)


def test_codebook_rejects_duplicate_phases():
    with pytest.raises(ValueError):
        StateCodebook(2, (0.0, 2 * np.pi))


@pytest.mark.parametrize("eps, expected_deg", [(3.1, 91.3), (6.28, 180.7), (10.62, 271.0)])
def test_dielectric_relative_phase(eps, expected_deg):
    # closed-form oracle (2*pi/3)(sqrt(eps) - 1) for a lambda/6 slab
    oracle = math.degrees((2 * math.pi / 3) * (math.sqrt(eps) - 1)) % 360
    assert_allclose(oracle, expected_deg, atol=0.1)
    rel = relative_state_phases([1.0, eps], LAM / 6, F)
    assert_allclose(math.degrees(rel[1]), oracle, atol=1e-9)


def test_dielectric_states_match_four_state_codebook():
    rel = np.degrees(relative_state_phases([1.0, 3.1, 6.28, 10.62], LAM / 6, F))
    assert np.all(np.abs(rel - [0, 90, 180, 270]) < 2.0)


def test_dielectric_phase_is_round_trip_phase():
    state = DielectricState(1.0, LAM / 8)
    assert_allclose(dielectric_reflection_phase(state, F), np.pi / 2, atol=1e-12)
    with pytest.raises(ValueError):
        DielectricState(0.5, 1e-3)


def _profile(phases):
    phases = np.atleast_2d(np.asarray(phases, dtype=float))
    g = build_grid(*phases.shape, 1 / 3, F)
    return PhaseProfile(g, phases)


def test_quantizer_examples():
    cb = canonical_codebook(4)
    q, idx = quantize_profile(_profile([np.pi / 3, 0.0, 2 * np.pi - 0.01]), cb)
    assert_array_equal(idx, [[1, 0, 0]])
    assert_allclose(q.phase, [[np.pi / 2, 0, 0]])


def test_quantizer_tie_goes_to_lower_index():
    _, idx = quantize_profile(_profile([np.pi / 4, 3 * np.pi / 4, 7 * np.pi / 4]), canonical_codebook(4))
    assert_array_equal(idx, [[0, 1, 0]])


def test_profiles_are_read_only_and_wrapped():
    p = _profile([-np.pi / 2, 5 * np.pi])
    assert_allclose(p.phase, [[3 * np.pi / 2, np.pi]])
    with pytest.raises(ValueError):
        p.phase[0, 0] = 1.0


def test_complex_profile_amplitude_bounds():
    g = build_grid(1, 2, 1 / 3, F)
    with pytest.raises(ValueError):
        ComplexProfile(g, np.array([[0.5, 1.5]]), np.zeros((1, 2)))
    with pytest.raises(ValueError):
        PhaseProfile(g, np.zeros((2, 2)))


phase_arrays = st.lists(st.floats(-20, 20, allow_nan=False), min_size=1, max_size=30)


@settings(max_examples=200, deadline=None)
@given(phase_arrays, st.integers(2, 16))
def test_quantizer_error_bound_and_idempotence(values, n_states):
    cb = canonical_codebook(n_states)
    q, idx = quantize_profile(_profile(values), cb)
    err = circular_distance(_profile(values).phase, q.phase)
    assert np.all(err <= np.pi / n_states + 1e-12)
    q2, idx2 = quantize_profile(q, cb)
    assert_array_equal(idx2, idx)
    assert_array_equal(q2.phase, q.phase)


@given(st.floats(-100, 100, allow_nan=False))
def test_wrap_phase_range(x):
    w = float(wrap_phase(x))
    assert 0.0 <= w < 2 * np.pi
    assert circular_distance(w, x) < 1e-9
