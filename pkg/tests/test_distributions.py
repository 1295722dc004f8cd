"""Distribution validation plus divergence/entropy measures."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalmc import Distribution, dh_divergence, shannon_entropy


def random_distributions(n):
    return st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=n,
                    max_size=n).filter(lambda w: sum(w) > 1e-6).map(
        lambda w: Distribution(np.asarray(w) / sum(w)))


class TestDistribution:
    def test_valid(self):
        d = Distribution([0.25, 0.75])
        assert len(d) == 2
        assert d[1] == 0.75

    def test_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            Distribution([0.5, 0.6])

    def test_nonnegative(self):
        with pytest.raises(ValueError, match="nonnegative"):
            Distribution([-0.5, 1.5])

    def test_constructors(self):
        assert Distribution.uniform(4).weights == pytest.approx([0.25] * 4)
        assert Distribution.from_counts([1, 3]).weights == pytest.approx([0.25, 0.75])
        assert Distribution.point(1, 3).weights == pytest.approx([0.0, 1.0, 0.0])
        with pytest.raises(ValueError, match="positive total"):
            Distribution.from_counts([0, 0])


class TestDhDivergence:
    def test_zero_iff_equal(self):
        assert dh_divergence([0.3, 0.7], [0.3, 0.7]) == 0.0

    def test_point_vs_uniform_is_ln2(self):
        assert dh_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))

    def test_support_escape_is_infinite(self):
        assert dh_divergence([0.5, 0.5], [1.0, 0.0]) == float("inf")

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="equal length"):
            dh_divergence([1.0], [0.5, 0.5])

    @given(random_distributions(4), random_distributions(4))
    def test_nonnegative(self, p, q):
        assert dh_divergence(p, q) >= -1e-12

    @given(random_distributions(5))
    def test_identity_of_indiscernibles(self, p):
        assert dh_divergence(p, p) <= 1e-9

    @given(random_distributions(4), random_distributions(4))
    def test_infinite_exactly_on_support_escape(self, p, q):
        escapes = bool(np.any((p.weights > 0) & (q.weights == 0)))
        assert math.isinf(dh_divergence(p, q)) == escapes


class TestShannonEntropy:
    def test_point_mass_zero(self):
        assert shannon_entropy([1.0, 0.0, 0.0]) == 0.0

    def test_uniform_closed_form(self):
        assert shannon_entropy([0.25] * 4) == pytest.approx(math.log(4))
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(math.log(2))

    @given(random_distributions(6))
    def test_bounded_by_ln_n(self, p):
        h = shannon_entropy(p)
        assert -1e-12 <= h <= math.log(6) + 1e-12
