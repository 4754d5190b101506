"""Multilinear polynomials over a prime field F_p.

A monomial x^I is identified with its support I, stored as a bitmask over
the variables (variable ``i``, 0-based, at bit ``i``).  Monomials are
ordered canonically by degree and then by the integer value of the mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .group import PointSet


def popcount(x: int) -> int:
    return bin(x).count("1")


def canonical_key(mask: int) -> Tuple[int, int]:
    return popcount(mask), mask


def monomials_upto(n: int, d: int) -> List[int]:
    """Supports of all multilinear monomials of degree <= d, canonical order."""
    d = min(d, n)
    if d < 0:
        return []
    return sorted((m for m in range(1 << n) if popcount(m) <= d), key=canonical_key)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Monomial:
    n: int
    support: int

    def __post_init__(self) -> None:
        if self.support < 0 or self.support >> self.n:
            raise ValueError("support not contained in [n]")

    @property
    def degree(self) -> int:
        return popcount(self.support)

    @property
    def variables(self) -> Tuple[int, ...]:
        """1-based variable indices."""
        return tuple(i + 1 for i in range(self.n) if (self.support >> i) & 1)

    def __lt__(self, other: "Monomial") -> bool:
        return canonical_key(self.support) < canonical_key(other.support)


def _check_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


class MultilinearPoly:
    """Sum of c_I x^I over F_p with nonzero coefficients only."""

    __slots__ = ("n", "p", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Union[int, Monomial], int] = None, p: int = 2):
        _check_prime(p)
        store: Dict[int, int] = {}
        for key, c in (coeffs or {}).items():
            mask = key.support if isinstance(key, Monomial) else int(key)
            if mask < 0 or mask >> n:
                raise ValueError(f"monomial {mask:b} not contained in [n] for n={n}")
            c %= p
            if c:
                store[mask] = (store.get(mask, 0) + c) % p
                if not store[mask]:
                    del store[mask]
        self.n = n
        self.p = p
        self._coeffs = store

    @classmethod
    def zero(cls, n: int, p: int = 2) -> "MultilinearPoly":
        return cls(n, {}, p)

    @classmethod
    def one(cls, n: int, p: int = 2) -> "MultilinearPoly":
        return cls(n, {0: 1}, p)

    @classmethod
    def monomial(cls, n: int, variables: Iterable[int], p: int = 2, coeff: int = 1) -> "MultilinearPoly":
        """Polynomial ``coeff * prod x_i`` over 1-based ``variables``."""
        mask = 0
        for v in variables:
            mask |= 1 << (v - 1)
        return cls(n, {mask: coeff}, p)

    @classmethod
    def from_vector(cls, n: int, monomials: Sequence[int], vec: Sequence[int], p: int = 2) -> "MultilinearPoly":
        return cls(n, {m: c for m, c in zip(monomials, vec) if c % p}, p)

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def terms(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items(), key=lambda t: canonical_key(t[0]))

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial (check ``is_zero``)."""
        return max((popcount(m) for m in self._coeffs), default=0)

    def coefficient(self, mask: int) -> int:
        return self._coeffs.get(mask, 0)

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return (self.n, self.p, self._coeffs) == (other.n, other.p, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.n, self.p, frozenset(self._coeffs.items())))

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("polynomials live in different rings")
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPoly(self.n, out, self.p)

    def __repr__(self) -> str:
        return f"MultilinearPoly(n={self.n}, p={self.p}, {format_poly(self)!r})"


def format_poly(P: MultilinearPoly) -> str:
    if P.is_zero:
        return "0"
    parts = []
    for m, c in P.terms():
        mono = "*".join(f"x{i}" for i in Monomial(P.n, m).variables) or "1"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


def _reduce_point(x: Sequence[int], n: int, p: int) -> List[int]:
    if len(x) != n:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, polynomial {n}")
    return [int(v) % p for v in x]


def monomial_value(mask: int, x: Sequence[int], p: int) -> int:
    v = 1
    i = 0
    while mask:
        if mask & 1:
            v = (v * x[i]) % p
            if not v:
                return 0
        mask >>= 1
        i += 1
    return v


def evaluate(P: MultilinearPoly, x: Sequence[int]) -> int:
    x = _reduce_point(x, P.n, P.p)
    if P.p == 2:
        return evaluate_mask(P, sum(b << i for i, b in enumerate(x)))
    return sum(c * monomial_value(m, x, P.p) for m, c in P._coeffs.items()) % P.p


def evaluate_mask(P: MultilinearPoly, x: int) -> int:
    """F_2 fast path: parity of the monomials whose support lies inside x."""
    if P.p != 2:
        raise ValueError("bitmask evaluation is only defined over F_2")
    return sum(1 for m in P._coeffs if m & x == m) & 1


def shift(P: MultilinearPoly, c: Sequence[int]) -> MultilinearPoly:
    """Q with Q(x) = P(c + x).

    Each x^K becomes prod_{i in K}(c_i + x_i) = sum_{J <= K} c^{K\\J} x^J.
    """
    c = _reduce_point(c, P.n, P.p)
    p = P.p
    out: Dict[int, int] = {}
    for K, coef in P._coeffs.items():
        for J in submasks(K):
            w = monomial_value(K & ~J, c, p)
            if w:
                out[J] = (out.get(J, 0) + coef * w) % p
    return MultilinearPoly(P.n, out, p)


def mask_to_vector(x: int, n: int) -> List[int]:
    return [(x >> i) & 1 for i in range(n)]


def _points(S, p: int) -> Tuple[int, List[Tuple[int, ...]]]:
    if isinstance(S, PointSet):
        if not S.binary:
            raise TypeError("evaluation points must lie in F_p^n; re-encode with to_binary()")
        return S.n, [tuple(r) for r in S.digit_rows()]
    rows = [tuple(int(v) % p for v in r) for r in S]
    return (len(rows[0]) if rows else 0), rows


@dataclass(frozen=True)
class EvaluationMatrix:
    """Rows indexed by points, columns by monomials of degree <= d."""

    n: int
    p: int
    d: int
    points: Tuple[Tuple[int, ...], ...]
    monomials: Tuple[int, ...]
    rows: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.monomials)

    def rank(self) -> int:
        return linalg.rank(self.rows, self.p, len(self.monomials))

    def kernel_basis(self) -> List[List[int]]:
        return linalg.kernel_basis(self.rows, self.p, len(self.monomials))

    def kernel_polys(self) -> List[MultilinearPoly]:
        return [MultilinearPoly.from_vector(self.n, self.monomials, v, self.p) for v in self.kernel_basis()]


def evaluation_matrix(S, d: int, p: int = 2, n: Optional[int] = None) -> EvaluationMatrix:
    """Evaluation matrix of the degree-<=d multilinear monomials on S.

    S is a binary PointSet (p = 2) or a sequence of coordinate tuples over F_p.
    """
    _check_prime(p)
    dim, pts = _points(S, p)
    if n is None:
        n = dim
    if pts and dim != n:
        raise ValueError("dimension mismatch")
    if not 0 <= d <= n:
        raise ValueError(f"degree bound {d} outside [0, {n}]")
    monos = monomials_upto(n, d)
    if p == 2:
        masks = [sum(b << i for i, b in enumerate(x)) for x in pts]
        rows = tuple(tuple(int(m & x == m) for m in monos) for x in masks)
    else:
        rows = tuple(tuple(monomial_value(m, x, p) for m in monos) for x in pts)
    return EvaluationMatrix(n, p, d, tuple(pts), tuple(monos), rows)


def rank(M, p: int = 2) -> int:
    if isinstance(M, EvaluationMatrix):
        return M.rank()
    return linalg.rank(M, p)


def kernel_basis(M, p: int = 2) -> List[List[int]]:
    if isinstance(M, EvaluationMatrix):
        return M.kernel_basis()
    return linalg.kernel_basis(M, p)


def vanishing_poly(S: PointSet, d: int, n: Optional[int] = None) -> Optional[MultilinearPoly]:
    """Nonzero multilinear P over F_2 with deg P <= d vanishing on S, or None.

    The returned P is the kernel vector whose highest monomial is smallest in
    canonical order.
    """
    if n is None:
        n = S.n
    M = evaluation_matrix(S, d, 2, n=n)
    basis = M.kernel_basis()
    if not basis:
        return None
    return MultilinearPoly.from_vector(n, M.monomials, basis[0], 2)


def monomial_count_fdelta(n: int, d: int, delta: int) -> int:
    """Number of exponent vectors in [0, delta]^n with total at most d.

    Coefficients of (1 + t + ... + t^delta)^n truncated at degree d, built
    one variable at a time with a sliding window sum.
    """
    if n < 1 or d < 0 or delta < 0:
        raise ValueError("need n >= 1, d >= 0, delta >= 0")
    poly = [1] + [0] * d
    for _ in range(n):
        nxt = [0] * (d + 1)
        window = 0
        for k in range(d + 1):
            window += poly[k]
            if k - delta - 1 >= 0:
                window -= poly[k - delta - 1]
            nxt[k] = window
        poly = nxt
    return sum(poly)


# -- text format ------------------------------------------------------------

def dumps_poly(P: MultilinearPoly) -> str:
    """Header ``p=<prime> n=<vars>``, then one monomial per line.

    A monomial is its sorted 1-based variables joined by ``*`` and written
    ``x<i>`` (the constant monomial is ``1``).  Over odd p a coefficient
    other than 1 precedes the monomial, separated by a space.
    """
    lines = [f"p={P.p} n={P.n}"]
    for m, c in P.terms():
        mono = "*".join(f"x{i}" for i in Monomial(P.n, m).variables) or "1"
        lines.append(mono if c == 1 else f"{c} {mono}")
    return "\n".join(lines) + "\n"


class PolyFormatError(ValueError):
    pass


def loads_poly(text: str) -> MultilinearPoly:
    header = None
    coeffs: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            try:
                fields = dict(tok.split("=", 1) for tok in line.split())
                header = int(fields["p"]), int(fields["n"])
            except (ValueError, KeyError):
                raise PolyFormatError(f"line {lineno}: expected header 'p=<prime> n=<vars>'") from None
            continue
        p, n = header
        parts = line.split()
        if len(parts) == 2:
            coef_txt, mono = parts
        elif len(parts) == 1:
            coef_txt, mono = "1", parts[0]
        else:
            raise PolyFormatError(f"line {lineno}: cannot parse {raw!r}")
        try:
            coef = int(coef_txt)
            if mono == "1":
                mask = 0
            else:
                idx = [int(t[1:] if t.startswith("x") else t) for t in mono.split("*")]
                if idx != sorted(set(idx)) or not all(1 <= i <= n for i in idx):
                    raise ValueError
                mask = sum(1 << (i - 1) for i in idx)
        except ValueError:
            raise PolyFormatError(f"line {lineno}: bad monomial {raw!r}") from None
        coeffs[mask] = (coeffs.get(mask, 0) + coef) % p
    if header is None:
        raise PolyFormatError("missing header line")
    p, n = header
    return MultilinearPoly(n, coeffs, p)
