import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_log2, brute_force_normalizer
from nmlcause import (
    BoundExceededError,
    DiscreteSample,
    Histogram,
    InputShapeError,
    conditional_stochastic_complexity,
    histogram,
    ml_codelength,
    normalizing_sum,
    normalizing_sum_oracle,
    stochastic_complexity,
)


def sample(values, m):
    return DiscreteSample(np.asarray(values), m)


@st.composite
def samples(draw, max_m=12, max_n=60):
    m = draw(st.integers(1, max_m))
    values = draw(st.lists(st.integers(0, m - 1), min_size=1, max_size=max_n))
    return DiscreteSample(np.asarray(values), m)


class TestDiscreteSample:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            sample([0, 3], 3)
        with pytest.raises(ValueError):
            sample([-1, 0], 2)

    def test_rejects_empty(self):
        with pytest.raises(InputShapeError):
            sample([], 2)

    def test_values_are_read_only(self):
        s = sample([0, 1], 2)
        with pytest.raises(ValueError):
            s.values[0] = 1

    def test_from_tokens_first_appearance(self):
        s = DiscreteSample.from_tokens(["b", "a", "b", "c"])
        assert s.values.tolist() == [0, 1, 0, 2]
        assert s.domain_size == 3
        assert s.decode() == ["b", "a", "b", "c"]

    def test_from_integers_round_trip(self):
        raw = [5, -3, 5, 9, -3]
        s = DiscreteSample.from_integers(raw)
        assert s.domain_size == 3
        assert s.decode() == raw


class TestHistogram:
    @pytest.mark.parametrize(
        "values, m, counts",
        [([0, 0, 1, 1], 2, [2, 2]), ([0], 3, [1, 0, 0]), ([2, 2, 2], 3, [0, 0, 3])],
    )
    def test_examples(self, values, m, counts):
        h = histogram(sample(values, m))
        assert h.counts.tolist() == counts
        assert h.n == len(values)
        assert h.m == m


class TestMlCodelength:
    def test_constant_is_zero(self):
        assert ml_codelength(Histogram([4])) == 0.0
        assert ml_codelength(Histogram([0, 7, 0])) == 0.0

    def test_two_two(self):
        assert ml_codelength(Histogram([2, 2])) == pytest.approx(4.0, abs=1e-12)

    def test_one_three(self):
        # -log2 of (1/4)^1 (3/4)^3
        expected = -(math.log2(0.25) + 3 * math.log2(0.75))
        assert expected == pytest.approx(3.2451, abs=1e-4)
        assert ml_codelength(Histogram([1, 3])) == pytest.approx(expected, abs=1e-12)

    @given(st.lists(st.integers(0, 50), min_size=1, max_size=15).filter(lambda c: sum(c) > 0))
    def test_matches_likelihood_form(self, counts):
        n = sum(counts)
        expected = -math.fsum(h * math.log2(h / n) for h in counts if h)
        got = ml_codelength(Histogram(counts))
        assert got == pytest.approx(expected, abs=1e-9)
        assert got >= 0.0
        assert (got == 0.0) == (sum(1 for h in counts if h) == 1)


class TestOracle:
    def test_composition_enumeration_matches_sequence_enumeration(self):
        for m in range(1, 5):
            for n in range(1, 7):
                assert normalizing_sum_oracle(m, n).log2_R == pytest.approx(
                    brute_force_log2(m, n), rel=1e-12, abs=1e-12)

    def test_spot_values(self):
        assert brute_force_normalizer(2, 2) == pytest.approx(2.5)
        assert brute_force_normalizer(3, 2) == pytest.approx(4.5)
        assert 2 ** normalizing_sum_oracle(2, 2).log2_R == pytest.approx(2.5, rel=1e-14)
        assert 2 ** normalizing_sum_oracle(3, 2).log2_R == pytest.approx(4.5, rel=1e-14)
        assert 2 ** normalizing_sum_oracle(2, 4).log2_R == pytest.approx(3.21875, rel=1e-14)

    def test_single_symbol(self):
        for n in range(1, 13):
            assert normalizing_sum_oracle(1, n).log2_R == 0.0

    @pytest.mark.parametrize("m, n", [(9, 2), (2, 13), (0, 3), (3, 0)])
    def test_limits(self, m, n):
        with pytest.raises((BoundExceededError, ValueError)):
            normalizing_sum_oracle(m, n)

    def test_bound_error_type(self):
        with pytest.raises(BoundExceededError):
            normalizing_sum_oracle(8, 13)


class TestNormalizingSum:
    @pytest.mark.parametrize("m", range(1, 9))
    @pytest.mark.parametrize("n", range(1, 13))
    def test_oracle_grid(self, m, n):
        if math.comb(n + m - 1, m - 1) > 60_000:
            pytest.skip("enumeration too large for the unit suite")
        fast = normalizing_sum(m, n).log2_R
        exact = normalizing_sum_oracle(m, n).log2_R
        assert fast == pytest.approx(exact, rel=1e-9, abs=1e-12)

    def test_examples(self):
        assert normalizing_sum(2, 2).log2_R == pytest.approx(1.3219, abs=1e-4)
        assert normalizing_sum(5, 1).log2_R == pytest.approx(math.log2(5), abs=1e-12)
        assert normalizing_sum(3, 8).log2_R == pytest.approx(normalizing_sum_oracle(3, 8).log2_R, rel=1e-9)

    def test_low_precision_still_within_bound(self):
        for digits in (2, 4, 6):
            for n in (50, 1000, 20_000):
                lo = normalizing_sum(2, n, digits).log2_R
                hi = normalizing_sum(2, n, 17).log2_R
                assert abs(lo - hi) <= hi * 10.0 ** (-digits + 1)

    def test_large_inputs_are_finite(self):
        r = normalizing_sum(100_000, 10_000_000).log2_R
        assert math.isfinite(r) and r > 0

    def test_monotone_grid(self):
        grid = [[normalizing_sum(m, n).log2_R for n in range(1, 40)] for m in range(1, 15)]
        arr = np.array(grid)
        assert (np.diff(arr, axis=0) >= 0).all()
        assert (np.diff(arr, axis=1) >= 0).all()

    def test_lower_bound(self):
        for m in (1, 2, 5, 40):
            for n in (1, 3, 100):
                assert normalizing_sum(m, n).log2_R >= math.log2(m) - 1e-12

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            normalizing_sum(0, 3)
        with pytest.raises(ValueError):
            normalizing_sum(2, 0)
        with pytest.raises(ValueError):
            normalizing_sum(2, 3, 0)


class TestStochasticComplexity:
    def test_constant_single_symbol(self):
        assert stochastic_complexity(sample([0, 0, 0, 0], 1)) == 0.0

    def test_balanced_binary(self):
        expected = 4 + math.log2(3.21875)
        assert expected == pytest.approx(5.6865, abs=1e-4)
        assert stochastic_complexity(sample([0, 0, 1, 1], 2)) == pytest.approx(expected, abs=1e-10)

    @given(samples(), st.randoms(use_true_random=False))
    def test_permutation_invariance(self, s, rnd):
        vals = s.values.tolist()
        rnd.shuffle(vals)
        assert stochastic_complexity(sample(vals, s.domain_size)) == stochastic_complexity(s)

    @given(samples(), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, s, rnd):
        perm = list(range(s.domain_size))
        rnd.shuffle(perm)
        relabeled = sample([perm[v] for v in s.values], s.domain_size)
        assert stochastic_complexity(relabeled) == stochastic_complexity(s)

    @given(samples())
    def test_non_negative(self, s):
        assert stochastic_complexity(s) >= 0.0


class TestConditional:
    def test_identical_sequences(self):
        vals = [0, 1, 1, 2, 2, 2]
        s = sample(vals, 3)
        expected = sum(normalizing_sum(3, c).log2_R for c in (1, 2, 3))
        assert conditional_stochastic_complexity(s, s) == pytest.approx(expected, abs=1e-12)

    def test_constant_condition(self):
        t = sample([0, 1, 1, 0, 2], 3)
        c = sample([0] * 5, 1)
        assert conditional_stochastic_complexity(t, c) == pytest.approx(stochastic_complexity(t), abs=1e-12)

    def test_hand_example(self):
        t = sample([0, 1, 0, 1], 2)
        c = sample([0, 0, 1, 1], 2)
        expected = 2 * (2 + math.log2(2.5))
        assert expected == pytest.approx(6.6439, abs=1e-4)
        assert conditional_stochastic_complexity(t, c) == pytest.approx(expected, abs=1e-12)

    def test_slices_use_global_domain(self):
        # each slice is constant; cost is log2 R(4, .) not log2 R(1, .) = 0
        t = sample([0, 0, 3, 3], 4)
        c = sample([0, 0, 1, 1], 2)
        assert conditional_stochastic_complexity(t, c) == pytest.approx(2 * normalizing_sum(4, 2).log2_R)

    def test_length_mismatch(self):
        with pytest.raises(InputShapeError):
            conditional_stochastic_complexity(sample([0, 1], 2), sample([0], 1))

    @given(samples(max_n=40), st.data())
    @settings(max_examples=60)
    def test_decomposition(self, t, data):
        mc = data.draw(st.integers(1, 6))
        cond = data.draw(st.lists(st.integers(0, mc - 1), min_size=t.n, max_size=t.n))
        c = sample(cond, mc)
        expected = 0.0
        for v in set(cond):
            sl = t.values[np.asarray(cond) == v]
            expected += stochastic_complexity(DiscreteSample(sl, t.domain_size))
        assert conditional_stochastic_complexity(t, c) == pytest.approx(expected, rel=1e-12, abs=1e-9)
