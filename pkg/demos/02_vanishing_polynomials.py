"""
Multilinear polynomials over F_2 that vanish on a set
=====================================================

The evaluation map sends a multilinear polynomial of degree at most d to
its values on a point set S.  When S has fewer points than there are
monomials the map has a kernel, and its first basis vector is a nonzero
polynomial vanishing on S.
"""

import random

import numpy as np

from z4ap.bounds import binom_sum
from z4ap.group import PointSet
from z4ap.poly import (
    dumps_poly,
    evaluate_mask,
    evaluation_matrix,
    monomial_count_fdelta,
    shift,
    vanishing_poly,
)

rng = random.Random(4)
n, d = 5, 2
S = PointSet(n, rng.sample(range(2 ** n), 12), binary=True)

# rows are points, columns the monomials of degree <= d in (degree, index) order
M = evaluation_matrix(S, d)
print("evaluation matrix", M.shape, "rank", M.rank())
print(np.array(M.rows)[:4])

# 12 points against binom_sum(5, 2) = 16 monomials: a kernel must exist
print("monomials:", binom_sum(n, d), "points:", len(S))
P = vanishing_poly(S, d)
print(dumps_poly(P), end="")
print("vanishes on S:", all(evaluate_mask(P, x) == 0 for x in S))
print("nonzero somewhere:", [x for x in range(2 ** n) if evaluate_mask(P, x)][:5])

# translating the argument keeps the degree
Q = shift(P, [1, 0, 1, 0, 0])
print("deg P =", P.degree, " deg P(c + x) =", Q.degree)

# with exponents up to delta instead of 1 the monomial count grows
for delta in (1, 2, 3):
    print("delta", delta, [monomial_count_fdelta(4, k, delta) for k in range(9)])
