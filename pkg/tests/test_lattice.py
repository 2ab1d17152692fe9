import numpy as np
import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from qwalk2d import engine
from qwalk2d.lattice import (
    CoinState,
    RadiusOverflowError,
    WalkState,
    alternate_initial_coin,
    crop,
    grover_initial_coin,
    new_state,
    norm_squared,
    origin_probability,
    probability_distribution,
)

from conftest import alternate_symmetric_state, grover_nonlocal_state

R2 = np.sqrt(2.0)


def test_grover_initial_coin_values():
    c = grover_initial_coin()
    np.testing.assert_array_equal(c.amplitudes, [0.5, -0.5, -0.5, 0.5])
    assert c.dim == 4
    assert np.vdot(c.amplitudes, c.amplitudes).real == 1.0


def test_alternate_initial_coin_values():
    c = alternate_initial_coin()
    np.testing.assert_allclose(c.amplitudes, [1 / R2, 1j / R2], rtol=0, atol=1e-15)
    assert abs(np.vdot(c.amplitudes, c.amplitudes).real - 1.0) < 1e-15


def test_new_state_grover_origin():
    s = new_state(4, 50, grover_initial_coin())
    assert s.time == 0
    assert [s.amplitude(0, 0, c) for c in range(4)] == [0.5, -0.5, -0.5, 0.5]
    assert np.count_nonzero(s.amplitudes) == 4


def test_new_state_alternate_origin():
    s = new_state(2, 50, alternate_initial_coin())
    assert s.amplitude(0, 0, 0) == pytest.approx(1 / R2, abs=1e-15)
    assert s.amplitude(0, 0, 1) == pytest.approx(1j / R2, abs=1e-15)
    assert np.count_nonzero(s.amplitudes) == 2


def test_new_state_radius_zero_delta():
    s = new_state(2, 0, [1, 0])
    assert s.amplitudes.shape == (1, 1, 2)
    assert norm_squared(s) == 1.0
    assert np.flatnonzero(s.amplitudes).tolist() == [0]


def test_new_state_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        new_state(4, 3, alternate_initial_coin())


@pytest.mark.parametrize("coin", [[1.0, 0.1], [0.5, 0.5, 0.5, 0.4], [0, 0]])
def test_unnormalized_coin_rejected(coin):
    with pytest.raises(ValueError, match="normalized"):
        new_state(len(coin), 2, coin)


def test_coin_tolerance_for_typed_decimals():
    # 8 decimals leaves |c|^2 off by ~1e-8; 13 decimals is inside 1e-9
    with pytest.raises(ValueError):
        CoinState(np.array([0.70710678, 0.70710678j]))
    CoinState(np.array([0.7071067811865, 0.7071067811865j]))


def test_bad_coin_dimension():
    with pytest.raises(ValueError):
        CoinState(np.array([1.0, 0, 0]))


def test_time_cannot_exceed_radius():
    with pytest.raises(RadiusOverflowError):
        WalkState(2, 1, 2, np.zeros((3, 3, 2), dtype=complex))


def test_norm_squared_zero_state():
    s = WalkState(4, 2, 0, np.zeros((5, 5, 4), dtype=complex))
    assert norm_squared(s) == 0.0


def test_norm_after_50_grover_steps():
    s = engine.evolve(grover_nonlocal_state(50), "grover", 50)
    assert abs(norm_squared(s) - 1.0) < 1e-12


def test_fresh_distribution():
    p = probability_distribution(alternate_symmetric_state(3))
    assert p[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert list(p.items()) == [((0, 0), p[0, 0])]
    assert origin_probability(grover_nonlocal_state(3)) == 1.0


@pytest.mark.parametrize("kind,init", [
    ("alternate", alternate_symmetric_state),
    ("grover", grover_nonlocal_state),
])
def test_distribution_after_one_step(kind, init):
    p = probability_distribution(engine.step(init(1), kind))
    expected = {(-1, -1): 0.25, (-1, 1): 0.25, (1, -1): 0.25, (1, 1): 0.25}
    got = dict(p.items())
    assert got.keys() == expected.keys()
    for site, v in expected.items():
        assert got[site] == pytest.approx(v, abs=1e-15)
    assert origin_probability(engine.step(init(1), kind)) == 0.0


def test_distribution_lookup_outside_grid_is_zero():
    p = probability_distribution(grover_nonlocal_state(1))
    assert p[5, -7] == 0.0


def test_crop_roundtrip_and_guard():
    s = engine.evolve(grover_nonlocal_state(10), "grover", 3)
    c = crop(s, 3)
    assert c.radius == 3 and c.time == 3
    assert norm_squared(c) == pytest.approx(1.0, abs=1e-13)
    with pytest.raises((ValueError, RadiusOverflowError)):
        crop(s, 2)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(["grover", "alternate"]),
    st.integers(min_value=0, max_value=12),
    st.lists(st.floats(-1, 1), min_size=8, max_size=8),
)
def test_evolved_states_keep_invariants(kind, t, raw):
    """Norm, parity support and bounded support for arbitrary initial coins."""
    d = engine.WalkKind(kind).coin_dim
    z = np.array(raw[:d]) + 1j * np.array(raw[d:2 * d])
    assume(np.linalg.norm(z) > 0.1)
    s = engine.evolve(new_state(d, t, z / np.linalg.norm(z)), kind, t)
    assert abs(norm_squared(s) - 1.0) < 1e-12
    xs = s.coords
    odd = ((xs[:, None] + t) % 2 == 1) | ((xs[None, :] + t) % 2 == 1)
    assert not np.any(s.amplitudes[odd])
    outside = (np.abs(xs)[:, None] > t) | (np.abs(xs)[None, :] > t)
    assert not np.any(s.amplitudes[outside])
    p = probability_distribution(s)
    assert abs(p.total() - 1.0) < 1e-10
    assert np.all(p.values >= 0)
