import itertools
import random

import pytest

from z4ap.group import PointSet, pack
from z4ap.poly import MultilinearPoly, monomials_upto


def naive_progression_free(rows):
    """Triple loop over digit tuples, no packing, no bucketing."""
    rows = [tuple(r) for r in rows]
    for a, b, c in itertools.permutations(rows, 3):
        if all((x + y) % 4 == (2 * z) % 4 for x, y, z in zip(a, b, c)):
            return False
    return True


def z4_set(*strings):
    """PointSet from digit strings such as "013"."""
    n = len(strings[0]) if strings else 1
    return PointSet(n, (pack([int(ch) for ch in s]) for s in strings))


def random_z4_set(rng, n, k):
    universe = list(itertools.product(range(4), repeat=n))
    return PointSet(n, (pack(d) for d in rng.sample(universe, min(k, len(universe)))))


def random_poly(rng, n, d, p=2, density=0.5, nonzero_constant=None):
    coeffs = {}
    for m in monomials_upto(n, d):
        if rng.random() < density:
            coeffs[m] = rng.randrange(1, p)
    if nonzero_constant is True:
        coeffs[0] = rng.randrange(1, p)
    elif nonzero_constant is False:
        coeffs.pop(0, None)
    return MultilinearPoly(n, coeffs, p)


def truth_table_eval(P, x):
    """Evaluate by multiplying coordinates explicitly, independent of bit tricks."""
    total = 0
    for mask, c in P.coeffs.items():
        term = c
        for i in range(P.n):
            if (mask >> i) & 1:
                term *= x[i]
        total += term
    return total % P.p


@pytest.fixture
def rng():
    return random.Random(20261019)
