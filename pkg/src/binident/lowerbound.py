"""Construction and verification of hard instances for binned identity testing.

The ingredients, all exact:

* balanced mass strings over the alphabet {2, 3}, mapped to distributions
  whose masses are 4/(5b) and 6/(5b);
* a cyclic-LCS test deciding whether two strings are r-partial cyclic
  shifts of each other;
* a pigeonhole search for pairs of such distributions that share every
  s-draw fingerprint probability up to s = m yet are not shifts;
* a block blow-up spreading a base pair uniformly over k' blocks, the
  coarsening distance of the blown-up pair, and the exact probability that
  s uniform throws overflow some block past m occupants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import budgets
from .distributions import Distribution, Rational, as_fraction, normalize_seed, sample
from .binning import coarsening_distance
from .fingerprints import compositions, moment_vector

_ALPHABET = {"2", "3"}


@dataclass(frozen=True)
class MassString:
    """A balanced string over {2, 3}: b/2 twos and b/2 threes."""

    symbols: str

    def __init__(self, symbols: str):
        s = str(symbols)
        if len(s) % 2 != 0:
            raise ValueError("length must be even")
        if set(s) - _ALPHABET:
            raise ValueError(f"symbols must be drawn from {{2,3}}, got {s!r}")
        if s.count("2") != s.count("3"):
            raise ValueError("string must contain equally many 2s and 3s")
        object.__setattr__(self, "symbols", s)

    @property
    def b(self) -> int:
        return len(self.symbols)

    def digits(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.symbols)

    def to_distribution(self) -> Distribution:
        """Masses x_i * 2/(5b): value 2 maps to 4/(5b), value 3 to 6/(5b)."""
        b = self.b
        return Distribution(Fraction(2 * x, 5 * b) for x in self.digits())

    def rotated(self, offset: int) -> "MassString":
        b = self.b
        return MassString("".join(self.symbols[(i + offset) % b] for i in range(b)))


def balanced_strings(b: int) -> Iterator[MassString]:
    """All C(b, b/2) balanced strings of length b, in lexicographic order."""
    if b < 2 or b % 2 != 0:
        raise ValueError("b must be a positive even integer")
    budgets.check("hard_pair_strings", math.comb(b, b // 2), "strings")

    def emit(prefix: list[str], twos: int, threes: int) -> Iterator[str]:
        if twos == 0 and threes == 0:
            yield "".join(prefix)
            return
        if twos:
            prefix.append("2")
            yield from emit(prefix, twos - 1, threes)
            prefix.pop()
        if threes:
            prefix.append("3")
            yield from emit(prefix, twos, threes - 1)
            prefix.pop()

    for symbols in emit([], b // 2, b // 2):
        yield MassString(symbols)


def _lcs_with_pairs(a: str, c: str) -> list[tuple[int, int]]:
    # Standard quadratic LCS with a deterministic backtrack: prefer the
    # diagonal on a match, otherwise drop the a-index first.
    la, lc = len(a), len(c)
    table = [[0] * (lc + 1) for _ in range(la + 1)]
    for i in range(la - 1, -1, -1):
        row, nxt = table[i], table[i + 1]
        ai = a[i]
        for j in range(lc - 1, -1, -1):
            if ai == c[j]:
                row[j] = nxt[j + 1] + 1
            else:
                row[j] = nxt[j] if nxt[j] >= row[j + 1] else row[j + 1]
    pairs = []
    i = j = 0
    while i < la and j < lc:
        if a[i] == c[j] and table[i][j] == table[i + 1][j + 1] + 1:
            pairs.append((i, j))
            i += 1
            j += 1
        elif table[i + 1][j] >= table[i][j + 1]:
            i += 1
        else:
            j += 1
    return pairs


@dataclass(frozen=True)
class CyclicShiftResult:
    """Outcome of an r-partial cyclic shift test, with a witness when found.

    `matches` pairs 0-based indices (i in x, j in y) with x[i] == y[j]; the
    matched y-positions are increasing once unrotated by `rotation`.
    """

    is_shift: bool
    rotation: int | None = None
    matches: tuple[tuple[int, int], ...] | None = None


def is_partial_cyclic_shift(x: MassString, y: MassString, r: int) -> CyclicShiftResult:
    """True iff some rotation of y shares a common subsequence of length >= r with x.

    Scans the b rotations in offset order and returns the first witness;
    O(b^3) overall.
    """
    if x.b != y.b:
        raise ValueError(f"lengths differ: {x.b} vs {y.b}")
    b = x.b
    if r > b:
        raise ValueError(f"r = {r} exceeds string length {b}")
    if r <= 0:
        return CyclicShiftResult(True, 0, ())
    for offset in range(b):
        rotated = y.rotated(offset)
        pairs = _lcs_with_pairs(x.symbols, rotated.symbols)
        if len(pairs) >= r:
            matches = tuple((i, (j + offset) % b) for i, j in pairs)
            return CyclicShiftResult(True, offset, matches)
    return CyclicShiftResult(False)


def _raw_fingerprint_key(
    digits: Sequence[int], comps: Sequence[tuple[int, ...]]
) -> tuple[int, ...]:
    # Integer fingerprint sums: equal keys mean equal moment vectors, since
    # the multinomial factor and the 2/(5b) scaling are string-independent.
    key = []
    for counts in comps:
        t = len(counts)
        g = [0] * (t + 1)
        g[0] = 1
        for a in digits:
            for j in range(t, 0, -1):
                if g[j - 1]:
                    g[j] += g[j - 1] * a ** counts[j - 1]
        key.append(g[t])
    return tuple(key)


def find_hard_pair(
    m: int, b: int, rho: Rational
) -> tuple[MassString, MassString] | None:
    """Search balanced strings for a moment-matched non-shift pair.

    Buckets all C(b, b/2) strings by their exact m-draw fingerprint sums and
    returns the lexicographically first pair (x, y) in one bucket that fails
    the ceil(rho*b)-partial cyclic shift test, or None when no pair exists.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    rho_f = as_fraction(rho)
    if not 0 < rho_f <= 1:
        raise ValueError("rho must lie in (0, 1]")
    r = math.ceil(rho_f * b)
    comps = list(compositions(m))
    buckets: dict[tuple[int, ...], list[MassString]] = {}
    order: list[MassString] = []
    keys: dict[str, tuple[int, ...]] = {}
    for ms in balanced_strings(b):
        key = _raw_fingerprint_key(ms.digits(), comps)
        buckets.setdefault(key, []).append(ms)
        order.append(ms)
        keys[ms.symbols] = key
    for x in order:
        mates = buckets[keys[x.symbols]]
        if len(mates) < 2:
            continue
        for y in mates:
            if y.symbols <= x.symbols:
                continue
            if not is_partial_cyclic_shift(x, y, r).is_shift:
                return x, y
    return None


def block_construct(
    p_base: Distribution, q_base: Distribution, k_prime: int
) -> tuple[Distribution, Distribution]:
    """Spread a base pair over k' equal blocks of [b * k'].

    Element b*(i-1) + j receives mass p_base(j) / k', so every block sums to
    exactly 1/k' and repeats the base shape.
    """
    if p_base.n != q_base.n:
        raise ValueError(f"base domain sizes differ: {p_base.n} vs {q_base.n}")
    if k_prime < 1:
        raise ValueError("k_prime must be at least 1")
    p_big = Distribution(
        [v / k_prime for _ in range(k_prime) for v in p_base.pmf]
    )
    q_big = Distribution(
        [v / k_prime for _ in range(k_prime) for v in q_base.pmf]
    )
    return p_big, q_big


@dataclass(frozen=True)
class HardInstancePair:
    """A moment-matched non-shift base pair together with its block blow-up."""

    m: int
    b: int
    rho: Fraction
    x: MassString
    y: MassString
    k_prime: int
    p_base: Distribution
    q_base: Distribution
    p_big: Distribution
    q_big: Distribution

    @classmethod
    def build(
        cls, x: MassString, y: MassString, m: int, rho: Rational, k_prime: int
    ) -> "HardInstancePair":
        """Assemble and validate a pair from its base strings.

        Checks, exactly: equal fingerprint distributions at every s <= m,
        failure of the ceil(rho*b)-partial cyclic shift test, and the block
        structure of the blow-up.
        """
        if x.b != y.b:
            raise ValueError(f"lengths differ: {x.b} vs {y.b}")
        rho_f = as_fraction(rho)
        b = x.b
        p_base = x.to_distribution()
        q_base = y.to_distribution()
        for s in range(1, m + 1):
            if moment_vector(p_base, s) != moment_vector(q_base, s):
                raise ValueError(f"bases disagree on some {s}-draw fingerprint")
        r = math.ceil(rho_f * b)
        if is_partial_cyclic_shift(x, y, r).is_shift:
            raise ValueError(f"bases are {r}-partial cyclic shifts of each other")
        p_big, q_big = block_construct(p_base, q_base, k_prime)
        return cls(m, b, rho_f, x, y, k_prime, p_base, q_base, p_big, q_big)


def make_hard_instance(
    m: int, b: int, rho: Rational, k_prime: int
) -> HardInstancePair | None:
    """find_hard_pair followed by the validated block blow-up."""
    found = find_hard_pair(m, b, rho)
    if found is None:
        return None
    x, y = found
    return HardInstancePair.build(x, y, m, rho, k_prime)


def verify_distance_claim(pair: HardInstancePair) -> Fraction:
    """Exact coarsening distance between the blown-up distributions.

    Strictly positive whenever the bases differ: the blown-up masses take
    only the two values 4/(5bk') and 6/(5bk'), so no interval grouping can
    reproduce a differing reference exactly.
    """
    budgets.check("claim_domain", pair.b * pair.k_prime, "domain elements")
    return coarsening_distance(pair.p_big, pair.q_big)


def block_overflow_probability(k_prime: int, s: int, m: int) -> Fraction:
    """Exact chance that s uniform throws put > m balls into some block.

    Complement counted by a DP over (blocks processed, balls placed) with
    binomial weights; compare the birthday closed form at m = 1.
    """
    if k_prime < 1:
        raise ValueError("k_prime must be at least 1")
    if s < 0 or m < 0:
        raise ValueError("s and m must be nonnegative")
    if s <= m:
        return Fraction(0)
    budgets.check(
        "overflow_transitions", k_prime * (s + 1) * (min(m, s) + 1), "transitions"
    )
    # ways[r]: assignments of r labeled balls to the blocks processed so
    # far, none exceeding m occupants.
    ways = [0] * (s + 1)
    ways[0] = 1
    for _ in range(k_prime):
        nxt = [0] * (s + 1)
        for r in range(s + 1):
            if ways[r] == 0:
                continue
            for c in range(min(m, s - r) + 1):
                nxt[r + c] += ways[r] * math.comb(r + c, c)
        ways = nxt
    return 1 - Fraction(ways[s], k_prime**s)


def _block_of(value: int, b: int) -> int:
    return (value - 1) // b


def block_overflow_trial(pair: HardInstancePair, s: int, seed: int) -> bool:
    """Whether s draws from the blown-up p put > m values into one block."""
    draws = sample(pair.p_big, s, seed)
    occupancy: dict[int, int] = {}
    for v in draws.values:
        blk = _block_of(v, pair.b)
        occupancy[blk] = occupancy.get(blk, 0) + 1
    return bool(occupancy) and max(occupancy.values()) >= pair.m + 1


def sample_size_curve(
    pair: HardInstancePair,
    s_grid: Sequence[int],
    trials: int,
    seed: int,
) -> list[dict]:
    """Empirical block-overflow fractions along a sample-size grid.

    A trial counts as an overflow when the drawn sample puts at least m+1
    values into a single block, the precondition for fingerprints to carry
    any distinguishing signal.  Trial t reuses seed + t at every grid point,
    so the empirical fractions are monotone in s by construction and each
    point still matches its exact probability marginally.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    base = normalize_seed(seed)
    rows = []
    for s in s_grid:
        if s < 0:
            raise ValueError("sample sizes must be nonnegative")
        exact = block_overflow_probability(pair.k_prime, s, pair.m)
        hits = sum(
            1 for t in range(trials) if block_overflow_trial(pair, s, base + t)
        )
        rows.append(
            {
                "s": s,
                "trials": trials,
                "overflow_count": hits,
                "overflow_fraction": Fraction(hits, trials),
                "exact_probability": exact,
            }
        )
    return rows
