"""Rank certificate for polynomials vanishing on a difference set.

For a multilinear P of degree <= d, P(x - y) splits as a scalar product
<u(x), v(y)> of vectors of length 2m, m = sum_{i <= d/2} C(n, i).  If P(a - b)
vanishes for all a != b in A but P(0) does not, the u(a) are independent,
so |A| <= 2m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .bounds import binom_sum
from .group import PointSet
from .poly import (
    MultilinearPoly,
    canonical_key,
    evaluate,
    monomial_value,
    monomials_upto,
    popcount,
    submasks,
)

Point = Tuple[int, ...]


@dataclass(frozen=True)
class DifferenceExpansion:
    """Coefficients C[(I, J)] with P(x - y) = sum C_{I,J} x^I y^J, I and J disjoint."""

    n: int
    p: int
    d: int
    C: Dict[Tuple[int, int], int]

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        p = self.p
        return sum(c * monomial_value(I, x, p) * monomial_value(J, y, p)
                   for (I, J), c in self.C.items()) % p


def difference_expansion(P: MultilinearPoly) -> DifferenceExpansion:
    """Closed form C_{I,J} = (-1)^{|J|} p_{I cup J}.

    Expanding prod_{i in K}(x_i - y_i) picks, for each i in K, either x_i or
    -y_i; the split K = I cup J therefore appears once with sign (-1)^{|J|}.
    """
    p = P.p
    C: Dict[Tuple[int, int], int] = {}
    for K, coef in P.terms():
        for J in submasks(K):
            c = coef if popcount(J) % 2 == 0 else (-coef) % p
            if c:
                C[(K & ~J, J)] = c
    return DifferenceExpansion(P.n, p, P.degree, C)


def _as_points(A, p: int) -> Tuple[int, List[Point]]:
    if isinstance(A, PointSet):
        if not A.binary:
            raise TypeError("lemma points must live in F_p^n; re-encode with to_binary()")
        if p != 2:
            raise ValueError("binary point sets are F_2 points")
        return A.n, [tuple(r) for r in A.digit_rows()]
    pts = []
    seen = set()
    for a in A:
        t = tuple(int(v) % p for v in a)
        if t not in seen:
            seen.add(t)
            pts.append(t)
    return (len(pts[0]) if pts else 0), pts


@dataclass
class LemmaCertificate:
    n: int
    p: int
    d: int
    m: int
    kappa: Tuple[int, ...]
    points: List[Point]
    u_vectors: List[List[int]]
    v_vectors: List[List[int]]
    gram: List[List[int]] = field(repr=False)
    p0: int

    @property
    def size(self) -> int:
        return len(self.points)


class CertificateBuilder:
    """u and v maps for one (P, d), usable at arbitrary points.

    ``d`` is the declared degree bound (default: deg P); the index family
    kappa is every support of size <= floor(d/2).  The second block of u at
    K sums C_{I,K} x^I over I disjoint from K with d/2 < |I| <= d - |K|; the
    first block of v sums C_{K,J} y^J over J disjoint from K with
    |J| <= d - |K|.
    """

    def __init__(self, P: MultilinearPoly, d: Optional[int] = None):
        if d is None:
            d = P.degree
        if P.degree > d and not P.is_zero:
            raise ValueError(f"deg P = {P.degree} exceeds the declared bound d = {d}")
        self.P = P
        self.d = d
        n, half = P.n, d // 2
        self.kappa = tuple(monomials_upto(n, half))
        self.m = binom_sum(n, half)
        self.expansion = difference_expansion(P)
        C = self.expansion.C
        full = (1 << n) - 1
        self._second_u = []
        self._first_v = []
        for K in self.kappa:
            k = popcount(K)
            rest = full & ~K
            # subsets in canonical order; keys absent from C carry coefficient 0
            I_range = sorted((I for I in submasks(rest) if half < popcount(I) <= d - k), key=canonical_key)
            J_range = sorted((J for J in submasks(rest) if popcount(J) <= d - k), key=canonical_key)
            self._second_u.append([(I, C[(I, K)]) for I in I_range if (I, K) in C])
            self._first_v.append([(J, C[(K, J)]) for J in J_range if (K, J) in C])

    def u(self, x: Sequence[int]) -> List[int]:
        p = self.P.p
        x = tuple(int(t) % p for t in x)
        first = [monomial_value(K, x, p) for K in self.kappa]
        second = [sum(c * monomial_value(I, x, p) for I, c in terms) % p for terms in self._second_u]
        return first + second

    def v(self, y: Sequence[int]) -> List[int]:
        p = self.P.p
        y = tuple(int(t) % p for t in y)
        first = [sum(c * monomial_value(J, y, p) for J, c in terms) % p for terms in self._first_v]
        second = [monomial_value(K, y, p) for K in self.kappa]
        return first + second

    def scalar_product(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.u(x), self.v(y))) % self.P.p

    def certificate(self, A) -> LemmaCertificate:
        P = self.P
        n, pts = _as_points(A, P.p)
        if pts and n != P.n:
            raise ValueError("point dimension does not match the polynomial")
        p = P.p
        u = [self.u(x) for x in pts]
        v = [self.v(y) for y in pts]
        gram = [[sum(a * b for a, b in zip(ux, vy)) % p for vy in v] for ux in u]
        p0 = evaluate(P, [0] * P.n)
        return LemmaCertificate(P.n, p, self.d, self.m, self.kappa, pts, u, v, gram, p0)


def build_certificate(P: MultilinearPoly, A, d: Optional[int] = None) -> LemmaCertificate:
    return CertificateBuilder(P, d).certificate(A)


@dataclass(frozen=True)
class LemmaReport:
    m: int
    size: int
    size_ok: bool
    hypothesis_ok: bool
    p0_zero: bool
    u_rank: int

    @property
    def consistent(self) -> bool:
        """False only if the lemma's conclusion failed on this instance."""
        return not (self.size_ok and self.hypothesis_ok) or self.p0_zero


def u_rank(cert: LemmaCertificate) -> int:
    return linalg.rank(cert.u_vectors, cert.p, 2 * cert.m)


def check_lemma(P: MultilinearPoly, A, d: Optional[int] = None) -> LemmaReport:
    cert = build_certificate(P, A, d)
    k = cert.size
    off_diag_zero = all(cert.gram[i][j] == 0 for i in range(k) for j in range(k) if i != j)
    return LemmaReport(cert.m, k, k > 2 * cert.m, off_diag_zero, cert.p0 == 0, u_rank(cert))


@dataclass(frozen=True)
class IndependenceWitness:
    rank: int
    size: int
    two_m: int


def independence_witness(cert: LemmaCertificate) -> IndependenceWitness:
    """Rank of the u(a) when the Gram matrix is diagonal with nonzero diagonal."""
    k = cert.size
    for i in range(k):
        if cert.gram[i][i] == 0:
            raise ValueError(f"gram[{i}][{i}] = 0: diagonal must be nonzero")
        for j in range(k):
            if i != j and cert.gram[i][j] != 0:
                raise ValueError(f"gram[{i}][{j}] = {cert.gram[i][j]}: off-diagonal must vanish")
    r = u_rank(cert)
    if r != k:
        raise AssertionError(f"u-vectors have rank {r} < |A| = {k} despite a diagonal Gram matrix")
    return IndependenceWitness(r, k, 2 * cert.m)


def max_vanishing_difference_set(P: MultilinearPoly) -> List[int]:
    """Largest A in F_2^n with P(a + b) = 0 for all distinct a, b (bitmasks).

    Exhaustive clique search in the Cayley graph on the zero set of P, with
    0 in A by translation invariance.  Exponential; meant for n <= 5.
    """
    if P.p != 2:
        raise ValueError("only F_2 is supported")
    from .poly import evaluate_mask

    n = P.n
    zeros = [z for z in range(1, 1 << n) if evaluate_mask(P, z) == 0]
    zero_set = set(zeros)
    best: List[int] = [0]

    def extend(current: List[int], cands: List[int]) -> None:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        if len(current) + len(cands) <= len(best):
            return
        for i, c in enumerate(cands):
            if len(current) + len(cands) - i <= len(best):
                return
            extend(current + [c], [e for e in cands[i + 1:] if (e ^ c) in zero_set])

    extend([0], zeros)
    return best
