"""Binary entropy, binomial sums, the exponent gamma and the bounds built on it.

Inequalities that compare exact integers with transcendental quantities are
decided with interval arithmetic (``mpmath.iv``), so a claim is only
certified when the rounding error cannot flip it.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

import mpmath
import numpy as np
from mpmath import iv

Real = Union[int, float, Fraction, str]

DEFAULT_PRECISION = 50
MAX_PRECISION = 400
GUARD_BAND = 1e-12


def working_precision() -> int:
    """Decimal digits for high-precision paths (env ``Z4AP_PRECISION``)."""
    try:
        return max(DEFAULT_PRECISION, int(os.environ.get("Z4AP_PRECISION", DEFAULT_PRECISION)))
    except ValueError:
        return DEFAULT_PRECISION


def as_fraction(x: Real) -> Fraction:
    """Exact rational from user input.

    Strings accept ``p/q`` or decimal syntax; floats are read through their
    shortest decimal repr, so 0.15 means 3/20 rather than the binary double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    return Fraction(str(x).strip())


# -- entropy ----------------------------------------------------------------

def entropy(x: float) -> float:
    """Binary entropy in bits; 0 at the endpoints by continuity."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_mp(x, dps: int = None):
    """Binary entropy as an mpmath float at ``dps`` decimal digits."""
    with mpmath.workdps(dps or working_precision()):
        if isinstance(x, (Fraction, str)):
            q = as_fraction(x)
            x = mpmath.mpf(q.numerator) / q.denominator
        x = mpmath.mpf(x)
        if x < 0 or x > 1:
            raise ValueError("entropy argument outside [0, 1]")
        if x == 0 or x == 1:
            return mpmath.mpf(0)
        return -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)


@contextmanager
def _iv_dps(dps: int):
    saved = iv.dps
    iv.dps = dps
    try:
        yield
    finally:
        iv.dps = saved


def _iv_rational(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


def entropy_iv(q: Fraction):
    """Enclosure of H(q) for a rational q, at the current ``iv.dps``."""
    if not 0 <= q <= 1:
        raise ValueError("entropy argument outside [0, 1]")
    if q == 0 or q == 1:
        return iv.mpf(0)
    x = _iv_rational(q)
    y = _iv_rational(1 - q)
    ln2 = iv.log(2)
    return -(x * iv.log(x) + y * iv.log(y)) / ln2


def _log2_iv(k: int):
    return iv.log(iv.mpf(k)) / iv.log(2)


def compare_int_pow2(k: int, n: int, q: Fraction, offset: int) -> int:
    """Sign of k - 2^(n*H(q) + offset): -1, 0 or 1.

    Double precision first; within the relative guard band the comparison is
    redone with interval arithmetic at increasing precision.  A tie that
    survives MAX_PRECISION digits is reported as 0 (exact equality).
    """
    t = 2.0 ** (n * entropy(float(q)) + offset)
    if abs(k - t) > GUARD_BAND * max(t, 1.0) + 1e-300:
        return 1 if k > t else -1
    if k <= 0:
        return -1
    dps = working_precision()
    while dps <= MAX_PRECISION:
        with _iv_dps(dps):
            e = n * entropy_iv(q) + offset
            lk = _log2_iv(k)
            if lk.a > e.b:
                return 1
            if lk.b < e.a:
                return -1
        dps *= 2
    return 0


# -- binomial sums ------------------------------------------------------------

def binom_sum(n: int, d: int) -> int:
    """Exact sum_{i=0}^{d} C(n, i)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if d < 0:
        return 0
    return sum(comb(n, i) for i in range(min(d, n) + 1))


@dataclass(frozen=True)
class EntropyBoundCheck:
    n: int
    z: Fraction
    lhs: int
    lhs_log2_upper: float
    rhs_log2_lower: float
    holds: bool


def check_entropy_bound(n: int, z: Real) -> EntropyBoundCheck:
    """Certify sum_{i <= z} C(n, i) < 2^(n H(z/n)) for 0 < z <= n/2.

    log2 of the exact integer sum is rounded up, n H(z/n) rounded down.
    """
    zq = as_fraction(z)
    if n < 1 or not 0 < zq <= Fraction(n, 2):
        raise ValueError(f"need n >= 1 and 0 < z <= n/2, got n={n}, z={z}")
    lhs = binom_sum(n, math.floor(zq))
    dps = working_precision()
    while True:
        with _iv_dps(dps):
            left = _log2_iv(lhs)
            right = n * entropy_iv(zq / n)
            holds = left.b < right.a
            if holds or left.a >= right.b or dps >= MAX_PRECISION:
                return EntropyBoundCheck(n, zq, lhs, float(left.b), float(right.a), holds)
        dps *= 2


def entropy_table(max_n: int):
    """All integer sweeps 1 <= z <= n/2 for n <= max_n."""
    return [check_entropy_bound(n, z) for n in range(1, max_n + 1) for z in range(1, n // 2 + 1)]


# -- gamma ------------------------------------------------------------------

def gamma_objective(eps: float) -> float:
    """(H(1/2 - eps) + H(2 eps)) / 2."""
    return 0.5 * (entropy(0.5 - eps) + entropy(2.0 * eps))


def _objective_mp(eps):
    return (entropy_mp(mpmath.mpf("0.5") - eps) + entropy_mp(2 * eps)) / 2


@dataclass(frozen=True)
class GammaResult:
    gamma: float
    eps_star: float
    iterations: int
    tolerance_achieved: float


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@lru_cache(maxsize=32)
def compute_gamma(tolerance: float = 1e-12) -> GammaResult:
    """Maximise the objective on (0, 1/4).

    Golden-section search brackets the maximiser to ~1e-7, then bisection on
    the sign of a central finite-difference derivative, evaluated with
    mpmath so the difference step can be far below the target tolerance.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    a, b = 0.0, 0.25
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = gamma_objective(c), gamma_objective(d)
    iterations = 0
    while b - a > 1e-7:
        iterations += 1
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = gamma_objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = gamma_objective(d)
    with mpmath.workdps(max(40, working_precision())):
        h = mpmath.mpf(10) ** -25
        slope = lambda e: (_objective_mp(e + h) - _objective_mp(e - h)) / (2 * h)
        lo, hi = mpmath.mpf(a), mpmath.mpf(b)
        # the golden bracket can lose the maximiser to rounding; widen if so
        while slope(lo) <= 0:
            lo = lo / 2
        while slope(hi) >= 0:
            hi = (hi + mpmath.mpf("0.25")) / 2
        while hi - lo > tolerance:
            iterations += 1
            mid = (lo + hi) / 2
            if slope(mid) > 0:
                lo = mid
            else:
                hi = mid
        eps_star = (lo + hi) / 2
        gamma = _objective_mp(eps_star)
        achieved = float((hi - lo) / 2)
    return GammaResult(float(gamma), float(eps_star), iterations, achieved)


def grid_scan_gamma(step: float = 1e-6):
    """Brute-force maximum of the objective over a uniform grid in (0, 1/4).

    Returns (max value, argmax).  Vectorised; independent of compute_gamma.
    """
    eps = np.arange(step, 0.25, step)
    def h(x):
        return -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    g = 0.5 * (h(0.5 - eps) + h(2 * eps))
    i = int(np.argmax(g))
    return float(g[i]), float(eps[i])


def gamma() -> float:
    return compute_gamma(1e-12).gamma


def theorem_bound(n: int) -> float:
    """4^(gamma n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return 4.0 ** (gamma() * n)


def finite_bound(n: int) -> float:
    """(n + 2) 4^(gamma n), the bound reached before the tensor power step."""
    return (n + 2) * theorem_bound(n)


# -- corollary -------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryBound:
    factors: tuple
    order: int
    rk4: int
    bound: float


def rk4(factors: Sequence[int]) -> int:
    return sum(1 for m in factors if m % 4 == 0)


def corollary_bound(factors: Sequence[int]) -> CorollaryBound:
    """4^(-(1-gamma) rk_4(G)) |G| for G = Z_{m_1} + ... + Z_{m_k}, m_1 | ... | m_k."""
    factors = tuple(int(m) for m in factors)
    if any(m < 1 for m in factors):
        raise ValueError("invariant factors must be positive")
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise ValueError(f"divisibility chain broken: {a} does not divide {b}")
    order = math.prod(factors)
    r = rk4(factors)
    return CorollaryBound(factors, order, r, 4.0 ** (-(1.0 - gamma()) * r) * order)


# -- integral identity -----------------------------------------------------

@dataclass(frozen=True)
class IntegralReport:
    n: int
    total: int
    step_integral: int
    int1_exact: bool
    int2_lhs: float
    int2_rhs: float
    int2_holds: bool
    int3_lhs: float
    int3_rhs: float
    int3_rel_error: float
    int3_ok: bool

    @property
    def ok(self) -> bool:
        return self.int1_exact and self.int2_holds and self.int3_ok


def _step_integral(counts: Sequence[int], upper: int) -> int:
    """Exact integral over [0, upper] of N(x) = #{c >= x}, summed by steps."""
    levels = sorted(set(counts))
    total = 0
    prev = 0
    for v in levels:
        if prev >= upper:
            break
        top = min(v, upper)
        total += (top - prev) * sum(1 for c in counts if c >= v)
        prev = v
    return total


def integral_decomposition_check(profile, rel_tol: float = 1e-6) -> IntegralReport:
    """Check the coset-count integral identities on one profile.

    ``profile`` exposes ``n`` and ``counts``.  The total-mass identity is
    exact; the low-range bound is decided with interval arithmetic; the
    change of variables x = 2^(n H(1/2 - eps) + 1) is checked by adaptive
    quadrature against the exact step integral.
    """
    from scipy import integrate, optimize

    n = profile.n
    counts = list(profile.counts)
    total = sum(counts)
    step = _step_integral(counts, 2 ** (n + 1))
    quarter = Fraction(1, 4)

    # low range: sum_c min(c, T) <= 2^n T, T = 2^(n H(1/4) + 1)
    above = [c for c in counts if compare_int_pow2(c, n, quarter, 1) >= 0]
    below = sum(c for c in counts if compare_int_pow2(c, n, quarter, 1) < 0)
    slack = 2 ** n - len(above)
    with _iv_dps(working_precision()):
        T = iv.mpf(2) ** (n * entropy_iv(quarter) + 1)
        if slack == 0:
            int2_holds = below == 0
        else:
            int2_holds = bool(iv.mpf(below).b <= (slack * T).a)
        lhs2 = float((len(above) * T + below).mid)
        rhs2 = float((2 ** n * T).mid)
    Tf = float(T.mid)

    # high range via substitution
    lhs3 = float(sum(max(0.0, min(c, 2.0 ** (n + 1)) - Tf) for c in counts))

    def x_of(e):
        return 2.0 ** (n * entropy(0.5 - e) + 1)

    def N(x):
        return sum(1 for c in counts if c >= x)

    def integrand(e):
        x = x_of(e)
        return n * x * N(x) * math.log((0.5 + e) / (0.5 - e))

    breaks = []
    for c in sorted(set(counts)):
        if Tf < c < 2.0 ** n:
            breaks.append(optimize.brentq(lambda e: x_of(e) - c, 0.0, 0.25, xtol=1e-15))
    if counts and any(c > Tf for c in counts):
        rhs3, _ = integrate.quad(integrand, 0.0, 0.25, points=breaks or None, limit=500,
                                 epsabs=0.0, epsrel=1e-10)
    else:
        rhs3 = 0.0
    if lhs3 == 0.0:
        rel = abs(rhs3)
    else:
        rel = abs(rhs3 - lhs3) / abs(lhs3)
    return IntegralReport(n, total, step, step == total, lhs2, rhs2, int2_holds,
                          lhs3, rhs3, rel, rel <= rel_tol)
