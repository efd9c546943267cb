"""End-to-end identity testing up to binning.

The test draws s = ceil(C * k / eps^2) samples, forms the empirical
distribution, minimizes the binned discrepancy against the reference with
the nonemptiness rule on, and accepts when the minimum is at most
eps * threshold_fraction (eps/4 by default).  When more reference bins
carry positive mass than the domain has elements, no distribution admits
the binning at all and the test rejects outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .binning import (
    IntervalPartition,
    InfeasibleBinningError,
    min_binned_discrepancy,
)
from .distributions import (
    Distribution,
    Rational,
    SampleSet,
    as_fraction,
    empirical,
    normalize_seed,
    sample,
)

ACCEPT = "accept"
REJECT = "reject"


@dataclass(frozen=True)
class TestConfig:
    """Distance parameter, sampling constant, accept threshold, seed."""

    __test__ = False  # keep pytest from collecting this as a test class

    epsilon: Fraction
    learn_constant: Fraction = Fraction(16)
    accept_threshold_fraction: Fraction = Fraction(1, 4)
    seed: int = 0

    def __init__(
        self,
        epsilon: Rational,
        learn_constant: Rational = Fraction(16),
        accept_threshold_fraction: Rational = Fraction(1, 4),
        seed: int = 0,
    ):
        eps = as_fraction(epsilon)
        if not 0 < eps <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
        c = as_fraction(learn_constant)
        if c <= 0:
            raise ValueError(f"learn constant must be positive, got {c}")
        frac = as_fraction(accept_threshold_fraction)
        if not 0 < frac < 1:
            raise ValueError(f"threshold fraction must lie in (0, 1), got {frac}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "learn_constant", c)
        object.__setattr__(self, "accept_threshold_fraction", frac)
        object.__setattr__(self, "seed", int(seed))

    def sample_budget(self, k: int) -> int:
        """ceil(C * k / eps^2), the number of samples a test run draws."""
        return math.ceil(self.learn_constant * k / self.epsilon**2)

    @property
    def accept_threshold(self) -> Fraction:
        return self.epsilon * self.accept_threshold_fraction


@dataclass(frozen=True)
class TestReport:
    """Outcome of one test run.

    delta and witness are None exactly when the reference admits no binning
    of the domain at all (more positive-mass bins than elements), which
    forces a reject; otherwise verdict == accept iff delta <= threshold.
    """

    __test__ = False

    verdict: str
    delta: Fraction | None
    witness: IntervalPartition | None
    samples_used: int
    p_hat: Distribution
    threshold: Fraction

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT


def bin_identity_test(
    sample_source: Union[Distribution, SampleSet],
    q: Distribution,
    n: int,
    cfg: TestConfig,
) -> TestReport:
    """Run the binned identity test against reference q over [k].

    A Distribution source is sampled internally with cfg.seed; a SampleSet
    is used as given.  Deterministic for fixed inputs and config.
    """
    k = q.n
    if isinstance(sample_source, Distribution):
        if sample_source.n != n:
            raise ValueError(
                f"source domain {sample_source.n} differs from stated n = {n}"
            )
        s = cfg.sample_budget(k)
        drawn = sample(sample_source, s, cfg.seed)
    elif isinstance(sample_source, SampleSet):
        if sample_source.s == 0:
            raise ValueError("cannot test from an empty sample set")
        drawn = sample_source
    else:
        raise TypeError("sample_source must be a Distribution or a SampleSet")

    p_hat = empirical(drawn, n)
    threshold = cfg.accept_threshold
    try:
        result = min_binned_discrepancy(p_hat, q, require_nonempty_on_support=True)
    except InfeasibleBinningError:
        # No distribution over [n] can realize q at all, so every source is
        # maximally far from the property.
        return TestReport(REJECT, None, None, drawn.s, p_hat, threshold)
    verdict = ACCEPT if result.delta <= threshold else REJECT
    return TestReport(verdict, result.delta, result.witness, drawn.s, p_hat, threshold)


def error_curve(
    p: Distribution,
    q: Distribution,
    epsilons: list,
    trials: int,
    master_seed: int,
    learn_constant: Rational = Fraction(16),
) -> list[dict]:
    """Accept/reject outcomes over an epsilon grid of seeded trials.

    Trial t runs with seed master_seed + t at every epsilon, so the whole
    table is reproducible from master_seed alone.  One row per
    (epsilon, trial); the accept frequency is recomputable from the rows.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    base = normalize_seed(master_seed)
    rows = []
    for eps in epsilons:
        eps_f = as_fraction(eps)
        for t in range(trials):
            cfg = TestConfig(eps_f, learn_constant=learn_constant, seed=base + t)
            report = bin_identity_test(p, q, p.n, cfg)
            rows.append(
                {
                    "epsilon": eps_f,
                    "trial": t,
                    "seed": base + t,
                    "samples": report.samples_used,
                    "delta": report.delta,
                    "verdict": report.verdict,
                }
            )
    return rows


def accept_rate(rows: list[dict], epsilon: Rational) -> Fraction:
    """Fraction of accepting trials at one epsilon of an error_curve table."""
    eps = as_fraction(epsilon)
    relevant = [r for r in rows if r["epsilon"] == eps]
    if not relevant:
        raise ValueError(f"no rows at epsilon {eps}")
    hits = sum(1 for r in relevant if r["verdict"] == ACCEPT)
    return Fraction(hits, len(relevant))
