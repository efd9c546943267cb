"""Serialization and seeded experiment orchestration.

Distributions travel as ``{"n": <int>, "pmf": [<entry>, ...]}`` where each
entry is a number or an exact string like ``"3/10"``; exact mode insists on
strings.  Stored files always use the exact string form, so a store/load
round trip reproduces identical rationals.  Experiments write one CSV row
per (trial, parameter point) with fixed columns; identical specs produce
bit-identical files, and summaries are always recomputed from rows.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .binning import IntervalPartition
from .distributions import (
    Distribution,
    ak_distance,
    as_fraction,
    empirical,
    normalize_seed,
    sample,
)
from .lowerbound import (
    HardInstancePair,
    MassString,
    block_overflow_probability,
    block_overflow_trial,
    find_hard_pair,
)
from .tester import TestConfig, bin_identity_test

EXPERIMENT_KINDS = ("test-curve", "overflow-curve", "hard-pair-search", "calibration")


def _fraction_to_json(value: Fraction) -> str:
    return str(value)


def _entry_to_fraction(entry: Any, exact: bool, position: int) -> Fraction:
    if isinstance(entry, str):
        try:
            return Fraction(entry)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"entry {position}: not a rational string: {entry!r}") from exc
    if exact:
        raise ValueError(
            f"entry {position}: exact mode requires rational strings, got {entry!r}"
        )
    if isinstance(entry, bool) or not isinstance(entry, (int, float)):
        raise ValueError(f"entry {position}: not a number: {entry!r}")
    return Fraction(entry)


def distribution_from_json(data: Mapping[str, Any], exact: bool = False) -> Distribution:
    if not isinstance(data, Mapping) or "n" not in data or "pmf" not in data:
        raise ValueError('distribution JSON must carry "n" and "pmf"')
    n = data["n"]
    pmf = data["pmf"]
    if not isinstance(pmf, list) or len(pmf) != n:
        raise ValueError(f'"pmf" must be a list of length n = {n}')
    masses = [_entry_to_fraction(v, exact, i + 1) for i, v in enumerate(pmf)]
    for i, v in enumerate(masses):
        if v < 0:
            raise ValueError(f"entry {i + 1}: negative mass {v}")
    total = sum(masses)
    if total != 1:
        raise ValueError(f"pmf sums to {total}; deficit {1 - total}")
    return Distribution(masses)


def distribution_to_json(d: Distribution) -> dict:
    return {"n": d.n, "pmf": [_fraction_to_json(v) for v in d.pmf]}


def load_distribution(path: str, exact: bool = False) -> Distribution:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return distribution_from_json(data, exact=exact)


def store_distribution(d: Distribution, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(distribution_to_json(d), fh)
        fh.write("\n")


def partition_to_json(partition: IntervalPartition) -> list[int]:
    return list(partition.bounds)


def partition_from_json(data: Any) -> IntervalPartition:
    if not isinstance(data, list):
        raise ValueError("partition JSON must be an integer array of bounds")
    return IntervalPartition(data)


def hard_pair_to_json(pair: HardInstancePair) -> dict:
    return {
        "m": pair.m,
        "b": pair.b,
        "rho": _fraction_to_json(pair.rho),
        "k_prime": pair.k_prime,
        "x": pair.x.symbols,
        "y": pair.y.symbols,
        "p_base": distribution_to_json(pair.p_base),
        "q_base": distribution_to_json(pair.q_base),
        "p_big": distribution_to_json(pair.p_big),
        "q_big": distribution_to_json(pair.q_big),
    }


def hard_pair_from_json(data: Mapping[str, Any]) -> HardInstancePair:
    pair = HardInstancePair.build(
        MassString(data["x"]),
        MassString(data["y"]),
        int(data["m"]),
        Fraction(data["rho"]),
        int(data["k_prime"]),
    )
    for key in ("p_base", "q_base", "p_big", "q_big"):
        if key in data:
            stored = distribution_from_json(data[key], exact=True)
            if stored != getattr(pair, key):
                raise ValueError(f"stored {key} disagrees with the rebuilt pair")
    return pair


def store_hard_pair(pair: HardInstancePair, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(hard_pair_to_json(pair), fh, indent=2)
        fh.write("\n")


def load_hard_pair(path: str) -> HardInstancePair:
    with open(path, "r", encoding="utf-8") as fh:
        return hard_pair_from_json(json.load(fh))


@dataclass(frozen=True)
class ExperimentSpec:
    """A named experiment kind with parameters, seed, trial count, output."""

    kind: str
    parameters: Mapping[str, Any]
    master_seed: int
    trials: int
    output_path: str

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class ExperimentResult:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    summary: dict


def _cell(value: Any) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def write_rows_csv(path: str, columns: tuple[str, ...], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _resolve_distribution(params: Mapping[str, Any], key: str) -> Distribution:
    if key in params:
        return distribution_from_json(params[key], exact=False)
    file_key = f"{key}_file"
    if file_key in params:
        return load_distribution(params[file_key])
    raise ValueError(f'parameters need "{key}" (inline JSON) or "{file_key}" (path)')


def _run_test_curve(spec: ExperimentSpec) -> ExperimentResult:
    params = spec.parameters
    p = _resolve_distribution(params, "p")
    q = _resolve_distribution(params, "q")
    epsilons = [as_fraction(e) for e in params["epsilons"]]
    constant = as_fraction(params.get("constant", 16))
    base = normalize_seed(spec.master_seed)
    columns = (
        "kind", "epsilon", "constant", "master_seed",
        "trial", "seed", "samples", "delta", "threshold", "verdict",
    )
    rows = []
    accepts: dict[Fraction, int] = {}
    for eps in epsilons:
        accepts[eps] = 0
        for t in range(spec.trials):
            cfg = TestConfig(eps, learn_constant=constant, seed=base + t)
            report = bin_identity_test(p, q, p.n, cfg)
            if report.accepted:
                accepts[eps] += 1
            rows.append(
                (
                    spec.kind, eps, constant, spec.master_seed,
                    t, base + t, report.samples_used,
                    report.delta if report.delta is not None else "",
                    report.threshold, report.verdict,
                )
            )
    summary = {
        "accept_rate": {
            str(eps): str(Fraction(hits, spec.trials)) for eps, hits in accepts.items()
        }
    }
    return ExperimentResult(columns, tuple(rows), summary)


def _run_calibration(spec: ExperimentSpec) -> ExperimentResult:
    params = spec.parameters
    k = int(params["k"])
    eps = as_fraction(params["epsilon"])
    constant = as_fraction(params.get("constant", 16))
    if "p" in params or "p_file" in params:
        p = _resolve_distribution(params, "p")
    else:
        p = Distribution.uniform(int(params["n"]))
    n = p.n
    target = eps / 4
    samples = math.ceil(constant * k / eps**2)
    base = normalize_seed(spec.master_seed)
    columns = (
        "kind", "n", "k", "epsilon", "constant", "master_seed",
        "trial", "seed", "samples", "ak_error", "target", "passed",
    )
    rows = []
    passed = 0
    for t in range(spec.trials):
        drawn = sample(p, samples, base + t)
        err = ak_distance(empirical(drawn, n), p, k)
        ok = err <= target
        if ok:
            passed += 1
        rows.append(
            (
                spec.kind, n, k, eps, constant, spec.master_seed,
                t, base + t, samples, err, target, ok,
            )
        )
    summary = {"pass_fraction": str(Fraction(passed, spec.trials))}
    return ExperimentResult(columns, tuple(rows), summary)


def _run_overflow_curve(spec: ExperimentSpec) -> ExperimentResult:
    params = spec.parameters
    if "pair_file" in params:
        pair = load_hard_pair(params["pair_file"])
    else:
        m = int(params["m"])
        b = int(params["b"])
        rho = as_fraction(params.get("rho", Fraction(99, 100)))
        k_prime = int(params["k_prime"])
        found = find_hard_pair(m, b, rho)
        if found is None:
            raise ValueError(f"no moment-matched pair exists at m={m}, b={b}")
        pair = HardInstancePair.build(found[0], found[1], m, rho, k_prime)
    s_grid = [int(s) for s in params["s_grid"]]
    base = normalize_seed(spec.master_seed)
    columns = (
        "kind", "m", "b", "k_prime", "master_seed",
        "s", "trial", "seed", "overflow", "exact_probability",
    )
    rows = []
    fractions: dict[int, Fraction] = {}
    exacts: dict[int, Fraction] = {}
    for s in s_grid:
        exact = block_overflow_probability(pair.k_prime, s, pair.m)
        hits = 0
        for t in range(spec.trials):
            overflow = block_overflow_trial(pair, s, base + t)
            if overflow:
                hits += 1
            rows.append(
                (
                    spec.kind, pair.m, pair.b, pair.k_prime, spec.master_seed,
                    s, t, base + t, overflow, exact,
                )
            )
        fractions[s] = Fraction(hits, spec.trials)
        exacts[s] = exact
    summary = {
        "overflow_fraction": {str(s): str(v) for s, v in fractions.items()},
        "exact_probability": {str(s): str(v) for s, v in exacts.items()},
    }
    return ExperimentResult(columns, tuple(rows), summary)


def _run_hard_pair_search(spec: ExperimentSpec) -> ExperimentResult:
    params = spec.parameters
    m = int(params["m"])
    b = int(params["b"])
    rho = as_fraction(params.get("rho", Fraction(99, 100)))
    found = find_hard_pair(m, b, rho)
    columns = ("kind", "m", "b", "rho", "shift_threshold", "found", "x", "y")
    r = math.ceil(rho * b)
    if found is None:
        rows = ((spec.kind, m, b, rho, r, False, "", ""),)
        summary = {"found": False}
    else:
        x, y = found
        rows = ((spec.kind, m, b, rho, r, True, x.symbols, y.symbols),)
        summary = {"found": True, "x": x.symbols, "y": y.symbols}
    return ExperimentResult(columns, tuple(rows), summary)


_RUNNERS = {
    "test-curve": _run_test_curve,
    "overflow-curve": _run_overflow_curve,
    "hard-pair-search": _run_hard_pair_search,
    "calibration": _run_calibration,
}


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Dispatch an experiment, write its CSV, and return rows plus summary."""
    result = _RUNNERS[spec.kind](spec)
    if spec.output_path:
        write_rows_csv(spec.output_path, result.columns, result.rows)
    return result


def experiment_spec_from_json(data: Mapping[str, Any]) -> ExperimentSpec:
    return ExperimentSpec(
        kind=data["kind"],
        parameters=data.get("parameters", {}),
        master_seed=int(data.get("master_seed", 0)),
        trials=int(data.get("trials", 1)),
        output_path=data.get("output_path", ""),
    )


def load_experiment_spec(path: str) -> ExperimentSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return experiment_spec_from_json(json.load(fh))
