"""
Rank certificates for P(a - b)
==============================

For a polynomial P of degree at most d, the function (x, y) -> P(x - y)
factors through vectors of length 2m with m = sum_{i <= d/2} C(n, i).
If P vanishes on every difference of distinct points of A but not at 0,
the Gram matrix of A is a nonzero multiple of the identity, so A can have
at most 2m points.
"""

import random

import numpy as np

from z4ap.bounds import binom_sum
from z4ap.group import PointSet
from z4ap.lemma import (
    build_certificate,
    check_lemma,
    difference_expansion,
    independence_witness,
    max_vanishing_difference_set,
)
from z4ap.poly import MultilinearPoly, evaluate_mask, evaluation_matrix

# expansion of x1 x2 evaluated at x - y, as coefficients of x^I y^J
P = MultilinearPoly.monomial(2, [1, 2])
print("P(x - y) terms:", difference_expansion(P).C)

# build a P that vanishes on all differences of a small A but not at 0
n = 5
rng = random.Random(1)
A = PointSet(n, rng.sample(range(2 ** n), 4), binary=True)
diffs = PointSet(n, {a ^ b for a in A for b in A if a != b}, binary=True)
# any kernel polynomial with a nonzero constant term will do
P = None
for d in range(1, n + 1):
    P = next((Q for Q in evaluation_matrix(diffs, d).kernel_polys() if evaluate_mask(Q, 0)), None)
    if P is not None:
        break
cert = build_certificate(P, A, d)
print("d =", d, " m =", cert.m, " |A| =", cert.size)
print(np.array(cert.gram))

# the u-vectors are then independent, which caps |A| at 2m
w = independence_witness(cert)
print("rank", w.rank, "<= 2m =", w.two_m)

# the same instance through check_lemma: size_ok is False because
# |A| <= 2m, which is exactly what the lemma allows
rep = check_lemma(P, A, d)
print(rep)

# how tight is 2m?  the largest A with P(a - b) = 0 for all pairs
Q = MultilinearPoly(4, {0: 1, 0b0011: 1, 0b1100: 1})
best = max_vanishing_difference_set(Q)
print("largest vanishing-difference set:", len(best), "bound 2m =", 2 * binom_sum(4, 1))
