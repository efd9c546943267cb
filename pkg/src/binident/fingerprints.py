"""Ordered fingerprints of samples and their exact occurrence probabilities.

The ordered fingerprint of a sample multiset is the tuple of multiplicities
of its distinct values in increasing value order, labels discarded; it is a
composition of the sample count s.  For a distribution d the probability of
observing fingerprint F = (F_1, ..., F_t) on s draws is

    multinomial(s; F) * sum over i_1 < ... < i_t of prod_j d(i_j)^F_j

evaluated here exactly.  The full table over all 2^(s-1) compositions is the
fingerprint distribution of s draws; two distributions with equal tables
cannot be told apart from ordered fingerprints alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from . import budgets
from .distributions import Distribution, SampleSet


@dataclass(frozen=True)
class OrderedFingerprint:
    """Ordered positive multiplicities of the distinct values in a sample."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]):
        c = tuple(int(v) for v in counts)
        if not c:
            raise ValueError("a fingerprint needs at least one count")
        if any(v < 1 for v in c):
            raise ValueError("fingerprint counts must be positive")
        object.__setattr__(self, "counts", c)

    @property
    def s(self) -> int:
        return sum(self.counts)

    @property
    def t(self) -> int:
        return len(self.counts)

    def key(self) -> str:
        """Serialization key, e.g. "2+1+1"."""
        return "+".join(str(v) for v in self.counts)

    @classmethod
    def from_key(cls, key: str) -> "OrderedFingerprint":
        return cls(int(part) for part in key.split("+"))


def fingerprint_of(samples: SampleSet) -> OrderedFingerprint:
    """Multiplicities of the distinct sample values, in value order."""
    if samples.s == 0:
        raise ValueError("cannot fingerprint an empty sample")
    counts: dict[int, int] = {}
    for v in samples.values:
        counts[v] = counts.get(v, 0) + 1
    return OrderedFingerprint(counts[v] for v in sorted(counts))


def compositions(s: int) -> Iterator[tuple[int, ...]]:
    """All compositions of s in lexicographic order; 2^(s-1) of them."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        yield ()
        return
    for first in range(1, s + 1):
        for rest in compositions(s - first):
            yield (first, *rest)


def multinomial(s: int, parts: tuple[int, ...]) -> int:
    coeff = 1
    remaining = s
    for p in parts:
        coeff *= math.comb(remaining, p)
        remaining -= p
    return coeff


def _integer_pmf(d: Distribution) -> tuple[list[int], int]:
    scale = 1
    for v in d.pmf:
        scale = math.lcm(scale, v.denominator)
    return [v.numerator * (scale // v.denominator) for v in d.pmf], scale


def _raw_moment_sum(values: list[int], counts: tuple[int, ...]) -> int:
    # sum over i_1 < ... < i_t of prod_j values[i_j]^counts[j], by DP over
    # (position, composition prefix); zero entries contribute nothing.
    t = len(counts)
    g = [0] * (t + 1)
    g[0] = 1
    for a in values:
        if a == 0:
            continue
        for j in range(t, 0, -1):
            if g[j - 1]:
                g[j] += g[j - 1] * a ** counts[j - 1]
    return g[t]


def moment(d: Distribution, fingerprint: OrderedFingerprint | Iterable[int]) -> Fraction:
    """Exact probability that s draws from d show this ordered fingerprint."""
    f = (
        fingerprint
        if isinstance(fingerprint, OrderedFingerprint)
        else OrderedFingerprint(fingerprint)
    )
    budgets.check("moment_terms", (d.n + 1) * f.t, "DP cells")
    values, scale = _integer_pmf(d)
    raw = _raw_moment_sum(values, f.counts)
    return Fraction(multinomial(f.s, f.counts) * raw, scale**f.s)


def moment_exhaustive(
    d: Distribution, fingerprint: OrderedFingerprint | Iterable[int]
) -> Fraction:
    """Literal summation over all C(n, t) index tuples; oracle for `moment`."""
    f = (
        fingerprint
        if isinstance(fingerprint, OrderedFingerprint)
        else OrderedFingerprint(fingerprint)
    )
    budgets.check(
        "moment_literal_terms", math.comb(d.n, f.t) * max(f.t, 1), "summation steps"
    )
    total = Fraction(0)
    for idx in combinations(range(d.n), f.t):
        term = Fraction(1)
        for i, power in zip(idx, f.counts):
            term *= d.pmf[i] ** power
        total += term
    return multinomial(f.s, f.counts) * total


@dataclass(frozen=True)
class MomentVector:
    """Fingerprint distribution of s draws: one probability per composition."""

    s: int
    entries: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if len(self.entries) != 1 << (self.s - 1):
            raise ValueError(
                f"expected {1 << (self.s - 1)} compositions, got {len(self.entries)}"
            )
        total = sum(v for _, v in self.entries)
        if total != 1:
            raise ValueError(f"fingerprint probabilities sum to {total}, not 1")

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.entries)

    def probability(self, counts: Iterable[int]) -> Fraction:
        want = tuple(counts)
        for comp, value in self.entries:
            if comp == want:
                return value
        raise KeyError(want)


def moment_vector(d: Distribution, s: int) -> MomentVector:
    """All s-draw fingerprint probabilities of d, in lexicographic order."""
    if s < 1:
        raise ValueError("s must be at least 1")
    comps = list(compositions(s))
    budgets.check(
        "moment_terms", (d.n + 1) * sum(len(c) for c in comps), "DP cells"
    )
    values, scale = _integer_pmf(d)
    denom = scale**s
    entries = tuple(
        (c, Fraction(multinomial(s, c) * _raw_moment_sum(values, c), denom))
        for c in comps
    )
    return MomentVector(s, entries)


@dataclass(frozen=True)
class IndistinguishabilityResult:
    indistinguishable: bool
    tv_gap: Fraction


def fingerprints_indistinguishable(
    d1: Distribution, d2: Distribution, s: int
) -> IndistinguishabilityResult:
    """Whether s-draw fingerprint distributions coincide, with their exact gap.

    The gap is the total variation distance between the two fingerprint
    distributions; it is zero exactly when the moment vectors are equal.
    """
    v1 = moment_vector(d1, s)
    v2 = moment_vector(d2, s)
    gap = sum(abs(a - b) for (_, a), (_, b) in zip(v1.entries, v2.entries)) / 2
    return IndistinguishabilityResult(v1.entries == v2.entries, gap)
