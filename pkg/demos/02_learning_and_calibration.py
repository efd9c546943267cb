"""How many samples does the empirical estimator need?

The tester's learning step draws s = ceil(C k / eps^2) samples and relies
on the empirical distribution being within interval distance eps/4 of the
source.  The interval distance over k intervals is what matters: it is
exactly the worst summed discrepancy any k-bin split can see.

This calibration sweep measures the miss rate of that guarantee for
several constants C.  C = 16 (the package default, i.e. VC constant 1 at
the eps/4 scale) under-learns by roughly a factor 4 in sample count:
its typical error lands near 1.6x the target.  C = 64 is the smallest
power of two that reliably clears the target.
"""

import math
from fractions import Fraction

from binident import Distribution, ak_distance, empirical, sample

n, k = 200, 10
eps = Fraction(1, 5)
target = eps / 4
trials = 60
p = Distribution.uniform(n)

print(f"uniform source over [{n}], k = {k}, eps = {eps}, target error {target}")
print(f"{'C':>4} {'samples':>8} {'within target':>14} {'mean error':>11}")
for constant in (8, 16, 32, 64, 128):
    s = math.ceil(constant * k / eps**2)
    errors = []
    hits = 0
    for seed in range(trials):
        p_hat = empirical(sample(p, s, seed), n)
        err = ak_distance(p_hat, p, k)
        errors.append(err)
        if err <= target:
            hits += 1
    mean = sum(errors) / len(errors)
    print(f"{constant:>4} {s:>8} {hits:>7}/{trials:<6} {float(mean):>11.4f}")

print()
print("The end-to-end tester is far less sensitive than the raw learning")
print("error: minimizing the discrepancy over all splits absorbs most of the")
print("estimation noise, which is why the default C = 16 still yields")
print("reliable verdicts on well-separated instances (see demo 01).")
