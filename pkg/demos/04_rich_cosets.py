"""
Rich cosets and the disjointness of B and C
===========================================

A coset R of F_n is rich when it holds at least 2^(n H(1/2 - eps) + 1)
elements of A.  For progression-free A, the pair sums inside rich cosets
(B) never hit the doubled cosets (C), and there are fewer than
2^(n H(2 eps)) rich cosets.  At small n the threshold usually exceeds the
coset size 2^n, which the report flags as vacuous.
"""

import random

from z4ap.cosets import build_B_and_C, coset_profile, replay_proposition, rich_coset_report
from z4ap.group import PointSet, coset, coset_decompose
from z4ap.search import random_maximal_set

rng = random.Random(7)
A = random_maximal_set(4, rng)
prof = coset_profile(A)
print("|A| =", len(A), " coset sizes", prof.counts)
print("N(x) for x = 1..8:", [prof.N(x) for x in range(1, 9)])
print("step integral of N:", prof.step_integral())

# B and C for every coset that meets A
keys = [r for r, _ in coset_decompose(A).items()]
B, C = build_B_and_C(A, keys)
print("|B| =", len(B), " |C| =", len(C), " disjoint:", not (B.as_frozenset() & C.as_frozenset()))

# report over a few epsilons
for eps in ("1/20", "1/10", "6/25"):
    rep = rich_coset_report(A, eps)
    print(f"eps={eps:5s} threshold={rep.threshold:8.2f} rich={rep.rich_count} "
          f"bound={rep.bound:8.2f} vacuous={rep.vacuous}")

# at n = 6 and eps = 0.24 a full coset clears the threshold
full = coset(PointSet.from_digit_strings(["101101"], n=6).vectors()[0])
trace = replay_proposition(full, "6/25")
for step in trace.steps:
    print(f"  {step.name:30s} ok={step.ok}")
print("hypothesis satisfiable:", trace.hypothesis_satisfiable)
