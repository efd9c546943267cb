"""Tests for exact distributions, sampling, and the distance operations."""

from fractions import Fraction

import pytest

from binident import (
    Distribution,
    SampleSet,
    ak_distance,
    brute_force_ak_distance,
    empirical,
    kolmogorov_distance,
    sample,
    total_variation,
)
from conftest import random_distribution


class TestDistributionConstruction:
    def test_masses_must_sum_to_one(self):
        with pytest.raises(ValueError, match="deficit 1/100"):
            Distribution(["49/100", "1/2"])

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            Distribution(["3/2", "-1/2"])

    def test_empty_domain_rejected(self):
        with pytest.raises(ValueError, match="at least 1"):
            Distribution([])

    def test_prefix_structure(self, rng):
        for _ in range(20):
            d = random_distribution(rng, rng.randint(1, 9))
            assert d.prefix[0] == 0
            assert d.prefix[d.n] == 1
            for i in range(d.n):
                assert d.prefix[i + 1] - d.prefix[i] == d.pmf[i]

    def test_from_weights_normalizes(self):
        d = Distribution.from_weights([1, 2, 1])
        assert d.pmf == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))

    def test_point_mass_and_uniform(self):
        assert Distribution.point_mass(2, 3).pmf == (0, 1, 0)
        assert Distribution.uniform(2).pmf == (Fraction(1, 2), Fraction(1, 2))

    def test_mass_of_interval(self, staircase_p20):
        assert staircase_p20.mass(0, 8) == Fraction(3, 10)
        assert staircase_p20.mass(8, 17) == Fraction(1, 2)
        assert staircase_p20.mass(17, 20) == Fraction(1, 5)


class TestSampling:
    def test_point_mass_always_hits_the_point(self):
        d = Distribution.point_mass(3, 5)
        for seed in (0, 1, 123456789):
            assert sample(d, 4, seed).values == (3, 3, 3, 3)

    def test_zero_samples(self, staircase_p20):
        assert sample(staircase_p20, 0, 7).values == ()

    def test_determinism(self, staircase_p20):
        a = sample(staircase_p20, 50, 99)
        b = sample(staircase_p20, 50, 99)
        assert a.values == b.values

    def test_seed_is_reduced_to_64_bits(self, staircase_p20):
        a = sample(staircase_p20, 20, -1)
        b = sample(staircase_p20, 20, (1 << 64) - 1)
        assert a.values == b.values

    def test_uniform_two_frequency(self):
        d = Distribution.uniform(2)
        drawn = sample(d, 100_000, 1)
        freq = Fraction(sum(1 for v in drawn.values if v == 1), drawn.s)
        assert abs(freq - Fraction(1, 2)) < Fraction(1, 100)

    def test_zero_mass_elements_never_drawn(self):
        d = Distribution.from_weights([3, 0, 2, 0, 5])
        drawn = sample(d, 20_000, 5)
        assert set(drawn.values) <= {1, 3, 5}

    def test_negative_count_rejected(self, staircase_p20):
        with pytest.raises(ValueError, match="nonnegative"):
            sample(staircase_p20, -1, 0)


class TestEmpirical:
    def test_repeats_collapse_to_point_mass(self):
        d = empirical(SampleSet([3, 3, 3, 3]), 5)
        assert d == Distribution.point_mass(3, 5)

    def test_counts(self):
        d = empirical(SampleSet([1, 2, 2, 4]), 4)
        assert d.pmf == (Fraction(1, 4), Fraction(1, 2), 0, Fraction(1, 4))

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="no samples"):
            empirical(SampleSet([]), 3)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="exceeds domain"):
            empirical(SampleSet([5]), 4)

    def test_learning_in_interval_distance(self, staircase_p20):
        # 10^4 draws put the empirical distribution within interval distance
        # 0.1 of the source in at least 95 of 100 seeded runs.
        hits = 0
        for seed in range(100):
            p_hat = empirical(sample(staircase_p20, 10_000, seed), 20)
            if ak_distance(p_hat, staircase_p20, 4) <= Fraction(1, 10):
                hits += 1
        assert hits >= 95


class TestTotalVariation:
    def test_identity(self, staircase_p20):
        assert total_variation(staircase_p20, staircase_p20) == 0

    def test_disjoint_point_masses(self):
        d1 = Distribution.point_mass(1, 2)
        d2 = Distribution.point_mass(2, 2)
        assert total_variation(d1, d2) == 1

    def test_two_mode_vs_uniform(self, two_mode_p6):
        uniform = Distribution.uniform(6)
        oracle = sum(abs(a - b) for a, b in zip(two_mode_p6.pmf, uniform.pmf)) / 2
        value = total_variation(two_mode_p6, uniform)
        assert value == oracle == Fraction(127, 240)

    def test_domain_mismatch(self):
        with pytest.raises(ValueError, match="differ"):
            total_variation(Distribution.uniform(2), Distribution.uniform(3))

    def test_metric_properties(self, rng):
        for _ in range(25):
            n = rng.randint(1, 6)
            a = random_distribution(rng, n)
            b = random_distribution(rng, n)
            c = random_distribution(rng, n)
            assert total_variation(a, b) == total_variation(b, a)
            assert total_variation(a, c) <= total_variation(a, b) + total_variation(b, c)
            assert (total_variation(a, b) == 0) == (a == b)
            assert 0 <= total_variation(a, b) <= 1


class TestIntervalDistance:
    def test_self_distance_zero(self, staircase_p20):
        for ell in (1, 2, 7, 20):
            assert ak_distance(staircase_p20, staircase_p20, ell) == 0

    def test_point_masses_two_intervals(self):
        d1 = Distribution.point_mass(1, 2)
        d2 = Distribution.point_mass(2, 2)
        assert ak_distance(d1, d2, 2) == 2
        assert brute_force_ak_distance(d1, d2, 2) == 2

    def test_full_split_equals_twice_total_variation(self, rng):
        for _ in range(50):
            n = rng.randint(1, 10)
            a = random_distribution(rng, n)
            b = random_distribution(rng, n)
            assert ak_distance(a, b, n) == 2 * total_variation(a, b)

    def test_monotone_in_interval_count(self, rng):
        for _ in range(15):
            n = rng.randint(2, 9)
            a = random_distribution(rng, n)
            b = random_distribution(rng, n)
            values = [ak_distance(a, b, ell) for ell in range(1, n + 1)]
            assert all(x <= y for x, y in zip(values, values[1:]))

    def test_two_intervals_dominate_kolmogorov(self, rng):
        for _ in range(20):
            n = rng.randint(2, 9)
            a = random_distribution(rng, n)
            b = random_distribution(rng, n)
            assert ak_distance(a, b, 2) >= kolmogorov_distance(a, b)

    def test_matches_enumeration(self, rng):
        for _ in range(30):
            n = rng.randint(1, 8)
            ell = rng.randint(1, min(4, n))
            a = random_distribution(rng, n)
            b = random_distribution(rng, n)
            assert ak_distance(a, b, ell) == brute_force_ak_distance(a, b, ell)

    def test_interval_count_out_of_range(self):
        d = Distribution.uniform(3)
        with pytest.raises(ValueError, match="outside"):
            ak_distance(d, d, 0)
        with pytest.raises(ValueError, match="outside"):
            ak_distance(d, d, 4)


class TestSampleSet:
    def test_values_below_one_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            SampleSet([0, 1])

    def test_size(self):
        assert SampleSet([5, 5, 2]).s == 3
