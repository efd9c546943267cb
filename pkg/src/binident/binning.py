"""Interval partitions of [n] and binned-discrepancy minimization.

The central operation takes a distribution over [n] and a reference over
[k] and minimizes the summed bin discrepancy sum_j |p(I_j) - q(j)| over all
partitions of [n] into k consecutive, possibly empty intervals, optionally
requiring a nonempty interval for every positive-mass bin.  A suffix DP
gives the exact minimum in O(n^2 k); enumeration oracles are kept alongside
for cross-checks at small sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator

from . import budgets
from .distributions import Distribution, total_variation


class InfeasibleBinningError(ValueError):
    """More positive-mass bins than domain elements under the nonemptiness rule."""


@dataclass(frozen=True)
class IntervalPartition:
    """An ordered split of [n] into k consecutive, possibly empty intervals.

    bounds has k+1 nondecreasing entries with bounds[0] = 0 and bounds[k] = n;
    interval j (0-based) covers elements bounds[j]+1 .. bounds[j+1].
    """

    bounds: tuple[int, ...]

    def __init__(self, bounds):
        b = tuple(int(v) for v in bounds)
        if len(b) < 2:
            raise ValueError("bounds must contain at least 2 entries")
        if b[0] != 0:
            raise ValueError("bounds must start at 0")
        if any(b[i] > b[i + 1] for i in range(len(b) - 1)):
            raise ValueError("bounds must be nondecreasing")
        object.__setattr__(self, "bounds", b)

    @property
    def k(self) -> int:
        return len(self.bounds) - 1

    @property
    def n(self) -> int:
        return self.bounds[-1]

    def interval(self, j: int) -> tuple[int, int]:
        """Half-open bounds (lo, hi] of interval j, 0-based j."""
        return self.bounds[j], self.bounds[j + 1]

    def is_empty(self, j: int) -> bool:
        return self.bounds[j] == self.bounds[j + 1]

    def masses(self, d: Distribution) -> tuple[Fraction, ...]:
        if d.n != self.n:
            raise ValueError(f"domain sizes differ: {d.n} vs {self.n}")
        return tuple(d.mass(*self.interval(j)) for j in range(self.k))

    @classmethod
    def identity(cls, n: int) -> "IntervalPartition":
        return cls(range(n + 1))


@dataclass(frozen=True)
class BinningResult:
    """Minimized discrepancy together with a partition attaining it."""

    delta: Fraction
    witness: IntervalPartition


def enumerate_partitions(n: int, k: int) -> Iterator[IntervalPartition]:
    """Yield every partition of [n] into k intervals, C(n+k-1, n) in total.

    Intended for oracle use at small sizes; guarded accordingly.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    budgets.check("partition_enumeration", math.comb(n + k - 1, n), "partitions")
    for cuts in combinations_with_replacement(range(n + 1), k - 1):
        yield IntervalPartition((0, *cuts, n))


def partition_discrepancy(
    p: Distribution, partition: IntervalPartition, q: Distribution
) -> Fraction:
    """sum_j |p(I_j) - q(j)| for one fixed partition."""
    if partition.k != q.n:
        raise ValueError(f"partition has {partition.k} intervals, reference {q.n} bins")
    return sum(abs(m - qj) for m, qj in zip(partition.masses(p), q.pmf))


def _admissible(partition: IntervalPartition, q: Distribution, nonempty: bool) -> bool:
    if not nonempty:
        return True
    return all(not (q.pmf[j] > 0 and partition.is_empty(j)) for j in range(q.n))


def _common_scale(p_hat: Distribution, q: Distribution) -> tuple[list[int], list[int], int]:
    scale = 1
    for v in (*p_hat.prefix, *q.pmf):
        scale = math.lcm(scale, v.denominator)
    pre = [v.numerator * (scale // v.denominator) for v in p_hat.prefix]
    ref = [v.numerator * (scale // v.denominator) for v in q.pmf]
    return pre, ref, scale


def min_binned_discrepancy(
    p_hat: Distribution, q: Distribution, require_nonempty_on_support: bool
) -> BinningResult:
    """Exact minimum of sum_j |p_hat(I_j) - q(j)| over interval partitions.

    With the flag set, every bin j with q(j) > 0 must receive a nonempty
    interval; raises InfeasibleBinningError when more bins carry positive
    mass than there are domain elements.  The witness is the optimal
    partition with lexicographically smallest bounds.
    """
    n, k = p_hat.n, q.n
    if require_nonempty_on_support:
        positive = sum(1 for v in q.pmf if v > 0)
        if positive > n:
            raise InfeasibleBinningError(
                f"{positive} positive-mass bins cannot each receive a nonempty "
                f"interval of a {n}-element domain"
            )
    pre, ref, scale = _common_scale(p_hat, q)

    # suffix[j][i]: least cost of covering elements i+1..n with bins j+1..k.
    suffix: list[list[int | None]] = [[None] * (n + 1) for _ in range(k + 1)]
    suffix[k][n] = 0
    for j in range(k - 1, -1, -1):
        qj = ref[j]
        must_fill = require_nonempty_on_support and qj > 0
        nxt_row = suffix[j + 1]
        row = suffix[j]
        for i in range(n + 1):
            start = i + 1 if must_fill else i
            best: int | None = None
            pi = pre[i]
            for nxt in range(start, n + 1):
                tail = nxt_row[nxt]
                if tail is None:
                    continue
                cost = abs(pre[nxt] - pi - qj) + tail
                if best is None or cost < best:
                    best = cost
            row[i] = best

    total = suffix[0][0]
    if total is None:
        raise InfeasibleBinningError("no admissible partition exists")

    # Front-greedy reconstruction: the smallest feasible next bound at every
    # step yields the lexicographically smallest optimal witness.
    bounds = [0]
    cur = 0
    for j in range(k):
        qj = ref[j]
        must_fill = require_nonempty_on_support and qj > 0
        start = cur + 1 if must_fill else cur
        for nxt in range(start, n + 1):
            tail = suffix[j + 1][nxt]
            if tail is None:
                continue
            if abs(pre[nxt] - pre[cur] - qj) + tail == suffix[j][cur]:
                bounds.append(nxt)
                cur = nxt
                break
        else:
            raise AssertionError("witness reconstruction failed")

    return BinningResult(Fraction(total, scale), IntervalPartition(bounds))


def brute_force_min_discrepancy(
    p_hat: Distribution, q: Distribution, require_nonempty_on_support: bool
) -> BinningResult:
    """Enumeration oracle for min_binned_discrepancy (small n and k only)."""
    best: BinningResult | None = None
    for partition in enumerate_partitions(p_hat.n, q.n):
        if not _admissible(partition, q, require_nonempty_on_support):
            continue
        delta = partition_discrepancy(p_hat, partition, q)
        if best is None or delta < best.delta or (
            delta == best.delta and partition.bounds < best.witness.bounds
        ):
            best = BinningResult(delta, partition)
    if best is None:
        raise InfeasibleBinningError("no admissible partition exists")
    return best


def coarsening_distance(p: Distribution, q: Distribution) -> Fraction:
    """min over nondecreasing maps [n] -> [k] of the summed bin-mass gaps.

    Zero exactly when p admits a k-interval binning with masses q; half of
    the value lower-bounds the total variation from p to that set.
    """
    return min_binned_discrepancy(p, q, require_nonempty_on_support=False).delta


def brute_force_ak_distance(d1: Distribution, d2: Distribution, ell: int) -> Fraction:
    """Enumeration oracle for the interval-partition distance (small sizes)."""
    if d1.n != d2.n:
        raise ValueError(f"domain sizes differ: {d1.n} vs {d2.n}")
    best = Fraction(0)
    for partition in enumerate_partitions(d1.n, ell):
        value = sum(
            abs(a - b) for a, b in zip(partition.masses(d1), partition.masses(d2))
        )
        if value > best:
            best = value
    return best


def greedy_repair(
    p: Distribution, partition: IntervalPartition, q: Distribution
) -> Distribution:
    """Move mass between intervals until every bin matches the reference.

    Returns p* with p*(I_j) = q(j) for all j and
    total_variation(p, p*) = (1/2) sum_j |p(I_j) - q(j)|, exactly.  Mass
    leaves an over-full interval from its highest-index element first and
    lands on the lowest-index element of the receiving interval, making the
    result deterministic.
    """
    if partition.n != p.n:
        raise ValueError(f"domain sizes differ: {p.n} vs {partition.n}")
    if partition.k != q.n:
        raise ValueError(f"partition has {partition.k} intervals, reference {q.n} bins")
    masses = list(partition.masses(p))
    for j in range(q.n):
        if masses[j] < q.pmf[j] and partition.is_empty(j):
            raise InfeasibleBinningError(
                f"bin {j + 1} is under-full but its interval is empty"
            )
    new = list(p.pmf)
    surplus = [m - qj for m, qj in zip(masses, q.pmf)]
    while True:
        j1 = next((j for j, v in enumerate(surplus) if v > 0), None)
        if j1 is None:
            break
        j2 = next(j for j, v in enumerate(surplus) if v < 0)
        delta = min(surplus[j1], -surplus[j2])
        lo, hi = partition.interval(j1)
        need = delta
        for e in range(hi - 1, lo - 1, -1):
            take = min(new[e], need)
            new[e] -= take
            need -= take
            if need == 0:
                break
        lo2, _ = partition.interval(j2)
        new[lo2] += delta
        surplus[j1] -= delta
        surplus[j2] += delta
    return Distribution(new)


def repair_tv_identity(
    p: Distribution, partition: IntervalPartition, q: Distribution
) -> tuple[Distribution, Fraction]:
    """Repaired distribution plus its exact distance from p."""
    repaired = greedy_repair(p, partition, q)
    return repaired, total_variation(p, repaired)
