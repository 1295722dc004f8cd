"""Unit and property tests for the scalar swarm building blocks."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fractalmc import clone_probability, compose_reward, relativize, virtual_reward

finite_floats = st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False)
value_batches = arrays(np.float64, st.integers(min_value=1, max_value=40),
                       elements=finite_floats)


class TestRelativize:
    def test_zero_variance_maps_to_ones(self):
        assert np.array_equal(relativize([0.0, 0.0, 0.0]), [1.0, 1.0, 1.0])
        assert np.array_equal(relativize([7.5, 7.5]), [1.0, 1.0])

    def test_two_point_example(self):
        # z = -1 -> exp(-1); z = +1 -> 1 + ln(2)
        out = relativize([-1.0, 1.0])
        assert out == pytest.approx([0.36787944117144233, 1.6931471805599454])

    def test_three_point_example(self):
        # population std sqrt(2/3); z = -1.2247, 0, +1.2247
        out = relativize([1.0, 2.0, 3.0])
        assert out == pytest.approx(
            [0.293832655878073, 1.0, 1.7996422445006162])

    def test_single_value(self):
        assert np.array_equal(relativize([42.0]), [1.0])

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            relativize([])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            relativize([1.0, np.nan])
        with pytest.raises(ValueError, match="non-finite"):
            relativize([1.0, np.inf])

    @given(value_batches)
    def test_strictly_positive(self, values):
        assert np.all(relativize(values) > 0.0)

    @given(value_batches)
    def test_monotone(self, values):
        out = relativize(values)
        order = np.argsort(values, kind="stable")
        assert np.all(np.diff(out[order]) >= -1e-12)

    @given(value_batches,
           st.floats(min_value=1e-3, max_value=1e3),
           st.floats(min_value=-1e3, max_value=1e3))
    def test_affine_invariance(self, values, a, b):
        # near-degenerate spreads flip between the zero-variance branch and
        # huge z-scores depending on rounding; require a real spread
        assume(np.std(values) > 1e-6 * (1.0 + np.abs(values).max()))
        base = relativize(values)
        scaled = relativize(a * values + b)
        assert np.allclose(base, scaled, atol=1e-6, rtol=1e-6)


class TestVirtualReward:
    def test_plain_product(self):
        assert virtual_reward(2.0, 3.0) == pytest.approx(6.0)

    def test_density_ratio_form(self):
        # reward 6 against a crowd density of 3 scores 6 * (1/3) = 2
        assert virtual_reward(6.0, 1.0 / 3.0) == pytest.approx(2.0)

    def test_alpha_zero_ignores_reward(self):
        assert virtual_reward(5.0, 2.0, alpha=0.0, beta=1.0) == pytest.approx(2.0)

    def test_vectorized(self):
        out = virtual_reward(np.array([1.0, 2.0]), np.array([3.0, 4.0]),
                             alpha=2.0, beta=1.0)
        assert out == pytest.approx([3.0, 16.0])


class TestCloneProbability:
    def test_zero_own_score_forces_clone(self):
        assert clone_probability(0.0, 0.0) == 1.0
        assert clone_probability(0.0, 123.0) == 1.0

    def test_higher_own_score_forbids_clone(self):
        assert clone_probability(2.0, 1.0) == 0.0

    def test_gap_ratio_and_clamp(self):
        assert clone_probability(1.0, 3.0, clamp=False) == pytest.approx(2.0)
        assert clone_probability(1.0, 3.0, clamp=True) == 1.0
        assert clone_probability(2.0, 3.0) == pytest.approx(0.5)

    def test_equal_scores_never_clone(self):
        assert clone_probability(1.5, 1.5) == 0.0

    @given(st.floats(min_value=0, max_value=1e6),
           st.floats(min_value=0, max_value=1e6))
    def test_clamped_output_in_unit_interval(self, a, b):
        p = clone_probability(a, b)
        assert 0.0 <= p <= 1.0

    def test_vectorized(self):
        p = clone_probability(np.array([0.0, 2.0, 1.0]),
                              np.array([5.0, 1.0, 3.0]))
        assert p == pytest.approx([1.0, 0.0, 1.0])


class TestComposeReward:
    def test_zero_value_annihilates(self):
        assert compose_reward([(0.0, 1.0), (7.3, 1.0)]) == 0.0

    def test_plain_product(self):
        assert compose_reward([(0.5, 1.0), (0.2, 1.0)]) == pytest.approx(0.1)
        assert compose_reward([(2.0, 1.0), (3.0, 1.0)]) == pytest.approx(6.0)

    def test_zero_to_the_zero_counts_as_one(self):
        assert compose_reward([(0.0, 0.0)]) == pytest.approx(1.0)

    def test_weights_act_as_exponents(self):
        assert compose_reward([(4.0, 0.5), (2.0, 2.0)]) == pytest.approx(8.0)

    def test_negative_value_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            compose_reward([(-0.1, 1.0)])

    def test_batched_components(self):
        out = compose_reward([(np.array([1.0, 0.0]), 1.0),
                              (np.array([2.0, 5.0]), 1.0)])
        assert out == pytest.approx([2.0, 0.0])
