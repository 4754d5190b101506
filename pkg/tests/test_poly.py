import itertools
from math import comb

import numpy as np
import pytest

from conftest import random_poly, truth_table_eval
from z4ap import linalg
from z4ap.group import PointSet
from z4ap.poly import (
    Monomial,
    MultilinearPoly,
    PolyFormatError,
    dumps_poly,
    evaluate,
    evaluation_matrix,
    kernel_basis,
    loads_poly,
    monomial_count_fdelta,
    monomials_upto,
    rank,
    shift,
    vanishing_poly,
)


def naive_rank_mod_p(rows, p):
    """Row reduction on a numpy copy, pivoting bottom-up: independent of linalg."""
    M = np.array(rows, dtype=np.int64) % p
    if M.size == 0:
        return 0
    r = 0
    nrows, ncols = M.shape
    for c in reversed(range(ncols)):
        piv = [i for i in range(r, nrows) if M[i, c]]
        if not piv:
            continue
        M[[r, piv[-1]]] = M[[piv[-1], r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        for i in range(nrows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
    return r


def all_points(n, p=2):
    return list(itertools.product(range(p), repeat=n))


class TestEvaluate:
    def test_examples(self):
        assert evaluate(MultilinearPoly.zero(3), [1, 0, 1]) == 0
        P = MultilinearPoly.monomial(2, [1, 2])
        assert evaluate(P, [1, 1]) == 1
        assert evaluate(P, [1, 0]) == 0

    def test_hand_expansion(self):
        P = MultilinearPoly(3, {0b000: 1, 0b001: 1, 0b101: 1})
        assert evaluate(P, [1, 1, 1]) == 1
        assert truth_table_eval(P, [1, 1, 1]) == 1

    def test_matches_truth_table(self, rng):
        for p in (2, 3, 5):
            for _ in range(20):
                P = random_poly(rng, 4, 4, p)
                for x in all_points(4, p):
                    assert evaluate(P, x) == truth_table_eval(P, x)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(MultilinearPoly.one(3), [0, 1])

    def test_zero_flag_and_degree(self):
        Z = MultilinearPoly.zero(4)
        assert Z.is_zero and Z.degree == 0
        assert MultilinearPoly(3, {0b011: 2}, p=2).is_zero

    def test_rejects_non_prime(self):
        with pytest.raises(ValueError):
            MultilinearPoly(2, {}, p=4)


class TestShift:
    def test_examples(self, rng):
        P = random_poly(rng, 4, 3)
        assert shift(P, [0, 0, 0, 0]) == P
        assert shift(MultilinearPoly.monomial(1, [1]), [1]) == MultilinearPoly(1, {0: 1, 1: 1})

    def test_exhaustive_against_evaluation(self, rng):
        for p, n in ((2, 6), (2, 10), (3, 3)):
            for _ in range(5 if n > 6 else 20):
                P = random_poly(rng, n, n, p)
                c = [rng.randrange(p) for _ in range(n)]
                Q = shift(P, c)
                assert Q.degree <= P.degree
                pts = all_points(n, p) if p ** n <= 1024 else [
                    [rng.randrange(p) for _ in range(n)] for _ in range(300)]
                for x in pts:
                    assert evaluate(Q, x) == evaluate(P, [(a + b) % p for a, b in zip(c, x)])

    def test_group_action(self, rng):
        for p in (2, 3):
            P = random_poly(rng, 4, 4, p)
            c1 = [rng.randrange(p) for _ in range(4)]
            c2 = [rng.randrange(p) for _ in range(4)]
            assert shift(shift(P, c1), c2) == shift(P, [(a + b) % p for a, b in zip(c1, c2)])


class TestEvaluationMatrix:
    def test_origin_row(self):
        M = evaluation_matrix(PointSet(3, [0], binary=True), 3)
        assert M.rows == ((1, 0, 0, 0, 0, 0, 0, 0),)

    def test_all_ones_point(self):
        M = evaluation_matrix(PointSet(2, [0b11], binary=True), 2)
        assert M.monomials == (0b00, 0b01, 0b10, 0b11)
        assert M.rows == ((1, 1, 1, 1),)

    def test_full_cube_is_invertible(self):
        for n in range(1, 7):
            M = evaluation_matrix(PointSet(n, range(2 ** n), binary=True), n)
            assert M.shape == (2 ** n, 2 ** n)
            assert M.rank() == 2 ** n

    def test_column_count(self):
        for n in range(1, 6):
            for d in range(n + 1):
                M = evaluation_matrix(PointSet(n, [0], binary=True), d)
                assert M.shape[1] == sum(comb(n, i) for i in range(d + 1))

    def test_canonical_order(self):
        monos = monomials_upto(4, 4)
        keys = [(bin(m).count("1"), m) for m in monos]
        assert keys == sorted(keys)

    def test_points_are_independent_functionals(self, rng):
        for n in range(1, 5):
            for _ in range(20):
                S = PointSet(n, rng.sample(range(2 ** n), rng.randint(1, 2 ** n)), binary=True)
                assert evaluation_matrix(S, n).rank() == len(S)

    def test_odd_prime_points(self):
        pts = [(0, 1), (2, 2), (1, 0)]
        M = evaluation_matrix(pts, 2, p=3)
        assert M.rows[1] == (1, 2, 2, 1)


class TestRankKernel:
    def test_identity_and_zero(self):
        for k in (1, 4, 9):
            I = np.eye(k, dtype=int)
            assert rank(I) == k
            assert kernel_basis(I) == []
            Z = np.zeros((k, k + 2), dtype=int)
            assert rank(Z) == 0
            assert len(kernel_basis(Z)) == k + 2

    def test_random_gf2_against_oracle(self, rng):
        for _ in range(200):
            rows = [[rng.randrange(2) for _ in range(30)] for _ in range(20)]
            r = linalg.rank(rows, 2)
            assert r == naive_rank_mod_p(rows, 2)
            ker = linalg.kernel_basis(rows, 2)
            assert len(ker) == 30 - r
            M = np.array(rows)
            for v in ker:
                assert not (M @ np.array(v) % 2).any()
            assert naive_rank_mod_p(ker, 2) == len(ker) if ker else True

    def test_random_odd_prime_against_oracle(self, rng):
        for p in (3, 5, 7, 17):
            for _ in range(40):
                rows = [[rng.randrange(p) for _ in range(9)] for _ in range(7)]
                r = linalg.rank(rows, p)
                assert r == naive_rank_mod_p(rows, p)
                ker = linalg.kernel_basis(rows, p)
                M = np.array(rows)
                for v in ker:
                    assert not (M @ np.array(v) % p).any()
                assert len(ker) == 9 - r

    def test_rref_is_deterministic(self, rng):
        rows = [rng.getrandbits(40) for _ in range(25)]
        assert linalg.gf2_rref(rows, 40) == linalg.gf2_rref(list(rows), 40)
        reduced, pivots = linalg.gf2_rref(rows, 40)
        for r, pc in zip(reduced, pivots):
            assert r & ((1 << pc) - 1) == 0  # pivot is the leftmost set column
            assert sum((other >> pc) & 1 for other in reduced) == 1


class TestVanishingPoly:
    def test_empty_set(self):
        assert vanishing_poly(PointSet(3, [], binary=True), 0) == MultilinearPoly.one(3)

    def test_full_cube(self):
        for n in range(1, 6):
            assert vanishing_poly(PointSet(n, range(2 ** n), binary=True), n) is None

    def test_random_n4(self, rng):
        for _ in range(50):
            S = PointSet(4, rng.sample(range(16), 10), binary=True)
            P = vanishing_poly(S, 3)
            assert P is not None and not P.is_zero and P.degree <= 3
            for row in S.digit_rows():
                assert truth_table_eval(P, row) == 0

    def test_existence_threshold(self, rng):
        for _ in range(500):
            n = rng.randint(1, 6)
            d = rng.randint(0, n)
            dim = sum(comb(n, i) for i in range(d + 1))
            size = rng.randint(0, min(dim - 1, 2 ** n))
            S = PointSet(n, rng.sample(range(2 ** n), size), binary=True)
            P = vanishing_poly(S, d)
            assert P is not None
            assert all(truth_table_eval(P, r) == 0 for r in S.digit_rows())

    def test_point_indicator(self):
        # unique interpolation: vanishing off one point gives that point's indicator
        for n in range(1, 5):
            for pt in range(2 ** n):
                S = PointSet(n, [x for x in range(2 ** n) if x != pt], binary=True)
                P = vanishing_poly(S, n)
                for x in range(2 ** n):
                    row = [(x >> i) & 1 for i in range(n)]
                    assert truth_table_eval(P, row) == (1 if x == pt else 0)

    def test_interpolation_is_unique(self):
        for n in range(1, 4):
            M = evaluation_matrix(PointSet(n, range(2 ** n), binary=True), n)
            seen = set()
            for vec in itertools.product(range(2), repeat=2 ** n):
                P = MultilinearPoly.from_vector(n, M.monomials, vec)
                table = tuple(truth_table_eval(P, r) for r in M.points)
                seen.add(table)
            assert len(seen) == 2 ** (2 ** n)

    def test_smallest_leading_monomial(self, rng):
        from z4ap.poly import canonical_key

        for _ in range(30):
            S = PointSet(4, rng.sample(range(16), 6), binary=True)
            P = vanishing_poly(S, 2)
            lead = max((m for m in P.coeffs), key=canonical_key)
            M = evaluation_matrix(S, 2)
            for vec in itertools.product(range(2), repeat=len(M.monomials)):
                Q = MultilinearPoly.from_vector(4, M.monomials, vec)
                if Q.is_zero or any(truth_table_eval(Q, r) for r in S.digit_rows()):
                    continue
                assert canonical_key(max(Q.coeffs, key=canonical_key)) >= canonical_key(lead)


def brute_fdelta(n, d, delta):
    return sum(1 for e in itertools.product(range(delta + 1), repeat=n) if sum(e) <= d)


class TestFDelta:
    def test_multilinear_case(self):
        for n in range(1, 7):
            for d in range(9):
                assert monomial_count_fdelta(n, d, 1) == sum(comb(n, i) for i in range(min(d, n) + 1))

    def test_single_variable(self):
        for d in range(6):
            for delta in range(6):
                assert monomial_count_fdelta(1, d, delta) == min(delta, d) + 1

    def test_f2_3_4(self):
        assert monomial_count_fdelta(3, 4, 2) == brute_fdelta(3, 4, 2) == 23

    def test_unrestricted_when_delta_large(self):
        for n in range(1, 7):
            for d in range(7):
                assert monomial_count_fdelta(n, d, d) == comb(n + d, d)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            monomial_count_fdelta(0, 1, 1)


class TestTextFormat:
    def test_round_trip(self, rng):
        for p in (2, 3, 7):
            P = random_poly(rng, 5, 3, p)
            assert loads_poly(dumps_poly(P)) == P

    def test_layout(self):
        P = MultilinearPoly(3, {0: 1, 0b101: 1, 0b010: 1})
        assert dumps_poly(P) == "p=2 n=3\n1\nx2\nx1*x3\n"
        assert loads_poly("p=2 n=3\n1\nx2\n1*3\n") == P

    def test_errors(self):
        with pytest.raises(PolyFormatError):
            loads_poly("x1*x2\n")
        with pytest.raises(PolyFormatError, match="line 2"):
            loads_poly("p=2 n=2\nx1*x5\n")

    def test_monomial_type(self):
        m = Monomial(4, 0b1010)
        assert m.degree == 2 and m.variables == (2, 4)
        with pytest.raises(ValueError):
            Monomial(2, 0b100)
