"""Tests for serialization and the experiment runner."""

import math
from fractions import Fraction

import pytest

from binident import (
    Distribution,
    ExperimentSpec,
    IntervalPartition,
    make_hard_instance,
    run_experiment,
)
from binident.harness import (
    distribution_from_json,
    distribution_to_json,
    experiment_spec_from_json,
    hard_pair_from_json,
    hard_pair_to_json,
    load_distribution,
    load_hard_pair,
    partition_from_json,
    partition_to_json,
    store_distribution,
    store_hard_pair,
)
from conftest import random_distribution


class TestDistributionSerialization:
    def test_round_trip_is_exact(self, tmp_path, rng):
        for i in range(10):
            d = random_distribution(rng, rng.randint(1, 9), max_weight=50)
            path = tmp_path / f"d{i}.json"
            store_distribution(d, str(path))
            assert load_distribution(str(path), exact=True) == d

    def test_reference_file_loads(self, tmp_path, reference_q4):
        path = tmp_path / "q.json"
        path.write_text('{"n": 4, "pmf": ["3/10", "0", "1/2", "1/5"]}')
        assert load_distribution(str(path), exact=True) == reference_q4

    def test_deficit_reported_exactly(self):
        with pytest.raises(ValueError, match="deficit 1/100"):
            distribution_from_json({"n": 2, "pmf": ["49/100", "1/2"]})

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            distribution_from_json({"n": 2, "pmf": ["3/2", "-1/2"]})

    def test_exact_mode_rejects_numbers(self):
        with pytest.raises(ValueError, match="exact mode"):
            distribution_from_json({"n": 2, "pmf": [0.5, "1/2"]}, exact=True)

    def test_float_entries_accepted_otherwise(self):
        d = distribution_from_json({"n": 2, "pmf": [0.5, 0.5]})
        assert d == Distribution.uniform(2)

    def test_malformed_documents_rejected(self):
        with pytest.raises(ValueError, match='"n" and "pmf"'):
            distribution_from_json({"pmf": ["1"]})
        with pytest.raises(ValueError, match="length"):
            distribution_from_json({"n": 3, "pmf": ["1"]})
        with pytest.raises(ValueError, match="rational string"):
            distribution_from_json({"n": 1, "pmf": ["one"]})

    def test_json_uses_exact_strings(self, two_mode_p6):
        data = distribution_to_json(two_mode_p6)
        assert data["pmf"][1] == "2/5"


class TestPartitionSerialization:
    def test_round_trip(self):
        part = IntervalPartition([0, 3, 3, 7])
        assert partition_from_json(partition_to_json(part)) == part

    def test_rejects_non_arrays(self):
        with pytest.raises(ValueError, match="integer array"):
            partition_from_json({"bounds": [0, 1]})


class TestHardPairSerialization:
    def test_round_trip(self, tmp_path):
        pair = make_hard_instance(3, 12, 1, 2)
        path = tmp_path / "pair.json"
        store_hard_pair(pair, str(path))
        loaded = load_hard_pair(str(path))
        assert loaded == pair

    def test_tampered_distribution_rejected(self):
        pair = make_hard_instance(1, 4, 1, 2)
        data = hard_pair_to_json(pair)
        data["p_base"] = distribution_to_json(Distribution.uniform(4))
        with pytest.raises(ValueError, match="disagrees"):
            hard_pair_from_json(data)


class TestExperimentSpec:
    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown experiment kind"):
            ExperimentSpec("curve", {}, 0, 1, "out.csv")

    def test_trials_validated(self):
        with pytest.raises(ValueError, match="trials"):
            ExperimentSpec("calibration", {}, 0, 0, "out.csv")

    def test_from_json_defaults(self):
        spec = experiment_spec_from_json({"kind": "hard-pair-search"})
        assert spec.master_seed == 0 and spec.trials == 1


class TestRunExperiment:
    def test_calibration_rows_and_summary(self, tmp_path):
        out = tmp_path / "cal.csv"
        spec = ExperimentSpec(
            "calibration",
            {"n": 40, "k": 4, "epsilon": "1/5", "constant": "16"},
            master_seed=11,
            trials=5,
            output_path=str(out),
        )
        result = run_experiment(spec)
        lines = out.read_text().splitlines()
        assert lines[0].split(",")[:6] == [
            "kind", "n", "k", "epsilon", "constant", "master_seed"
        ]
        assert len(lines) == 6
        passed = sum(1 for row in result.rows if row[-1])
        assert result.summary["pass_fraction"] == str(Fraction(passed, 5))
        samples = {row[8] for row in result.rows}
        assert samples == {math.ceil(Fraction(16) * 4 / Fraction(1, 5) ** 2)}

    def test_rerun_is_bit_identical(self, tmp_path):
        out = tmp_path / "cal.csv"
        spec = ExperimentSpec(
            "calibration",
            {"n": 30, "k": 3, "epsilon": "1/4"},
            master_seed=2,
            trials=3,
            output_path=str(out),
        )
        run_experiment(spec)
        first = out.read_bytes()
        run_experiment(spec)
        assert out.read_bytes() == first

    def test_test_curve_with_inline_distributions(self, tmp_path):
        out = tmp_path / "curve.csv"
        spec = ExperimentSpec(
            "test-curve",
            {
                "p": {"n": 1, "pmf": ["1"]},
                "q": {"n": 2, "pmf": ["1/2", "1/2"]},
                "epsilons": ["1/10", "2/5"],
                "constant": "16",
            },
            master_seed=5,
            trials=4,
            output_path=str(out),
        )
        result = run_experiment(spec)
        assert len(result.rows) == 8
        assert result.summary["accept_rate"] == {"1/10": "0", "2/5": "0"}

    def test_overflow_curve(self, tmp_path):
        out = tmp_path / "overflow.csv"
        spec = ExperimentSpec(
            "overflow-curve",
            {"m": 1, "b": 4, "rho": "1", "k_prime": 10, "s_grid": [2, 4]},
            master_seed=3,
            trials=50,
            output_path=str(out),
        )
        result = run_experiment(spec)
        assert len(result.rows) == 100
        assert set(result.summary["overflow_fraction"]) == {"2", "4"}

    def test_hard_pair_search(self, tmp_path):
        out = tmp_path / "search.csv"
        spec = ExperimentSpec(
            "hard-pair-search",
            {"m": 3, "b": 12, "rho": "1"},
            master_seed=0,
            trials=1,
            output_path=str(out),
        )
        result = run_experiment(spec)
        assert result.summary["found"] is True
        assert result.summary["x"] == "222223323333"

    def test_missing_distribution_parameters(self, tmp_path):
        spec = ExperimentSpec(
            "test-curve",
            {"epsilons": ["1/10"]},
            master_seed=0,
            trials=1,
            output_path=str(tmp_path / "x.csv"),
        )
        with pytest.raises(ValueError, match='"p"'):
            run_experiment(spec)
