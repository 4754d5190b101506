"""Rich F_n-cosets of progression-free sets and an executable walk through
the vanishing-polynomial argument that bounds how many there can be."""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from . import bounds
from .bounds import Real, as_fraction, binom_sum, compare_int_pow2, entropy
from .group import (
    CosetDecomposition,
    GroupVector,
    PointSet,
    coset_decompose,
    double_word,
    find_progression,
    reduce_mod2,
    sub_words,
    to_binary,
    two_dot,
)
from .lemma import check_lemma
from .poly import evaluate_mask, mask_to_vector, shift, vanishing_poly


@dataclass(frozen=True)
class CosetProfile:
    """Sizes |A cap R| over the cosets R that meet A, largest first."""

    n: int
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def N(self, x: float) -> int:
        """Number of cosets holding at least x elements (N(x) = #cosets for x <= 0)."""
        if x <= 0:
            return 2 ** self.n
        asc = sorted(self.counts)
        return len(asc) - bisect_left(asc, math.ceil(x) if x != int(x) else int(x))

    def step_integral(self, upper: Optional[int] = None) -> int:
        """Exact integral of N over [0, upper] restricted to occupied cosets."""
        if upper is None:
            upper = 2 ** (self.n + 1)
        return bounds._step_integral(list(self.counts), upper)


def coset_profile(A: PointSet) -> CosetProfile:
    dec = coset_decompose(A)
    return CosetProfile(A.n, tuple(sorted((len(p) for p in dec.parts), reverse=True)))


def _coset_keys(dec: CosetDecomposition, selection) -> List[int]:
    n = dec.n
    keys = []
    for r in selection:
        w = r.word if isinstance(r, GroupVector) else int(r)
        keys.append(reduce_mod2(w, n))
    return keys


def build_B_and_C(A: PointSet, rich_set: Iterable) -> Tuple[PointSet, PointSet]:
    """B = union of 2.A_R and C = union of 2*R over the selected cosets.

    Cosets are given by any of their elements (GroupVector or packed word).
    Both results are subsets of F_n, returned encoded in F_2^n.
    """
    n = A.n
    dec = coset_decompose(A)
    parts = {r.word: part for r, part in dec.items()}
    keys = _coset_keys(dec, rich_set)
    for k in keys:
        if k not in parts:
            raise ValueError(f"coset {GroupVector(n, k)} does not meet A")
    B = set()
    C = set()
    for k in dict.fromkeys(keys):
        for s in two_dot(parts[k]):
            B.add(to_binary(s, n))
        C.add(to_binary(double_word(k, n), n))
    return PointSet(n, B, binary=True), PointSet(n, C, binary=True)


def check_epsilon(eps: Real) -> Fraction:
    q = as_fraction(eps)
    if not 0 < q < Fraction(1, 4):
        raise ValueError(f"epsilon must lie in (0, 1/4), got {eps}")
    return q


def proof_degree(n: int, eps: Real) -> int:
    """n - ceil(2 eps n), with the ceiling taken on the exact rational 2 eps n."""
    q = check_epsilon(eps)
    return n - math.ceil(2 * q * n)


@dataclass(frozen=True)
class RichCosetReport:
    n: int
    epsilon: Fraction
    threshold: float
    rich_count: int
    bound: float
    vacuous: bool
    holds: bool
    rich_keys: Tuple[int, ...] = field(repr=False, default=())


def _rich_keys(dec: CosetDecomposition, n: int, q: Fraction) -> List[int]:
    half = Fraction(1, 2) - q
    return [r.word for r, part in dec.items() if compare_int_pow2(len(part), n, half, 1) >= 0]


def rich_coset_report(A: PointSet, eps: Real) -> RichCosetReport:
    """Count cosets with at least 2^(n H(1/2 - eps) + 1) elements of A and
    compare with 2^(n H(2 eps)).  ``vacuous`` marks thresholds above 2^n."""
    q = check_epsilon(eps)
    n = A.n
    dec = coset_decompose(A)
    keys = _rich_keys(dec, n, q)
    threshold = 2.0 ** (n * entropy(float(Fraction(1, 2) - q)) + 1)
    bound = 2.0 ** (n * entropy(float(2 * q)))
    vacuous = compare_int_pow2(2 ** n, n, Fraction(1, 2) - q, 1) < 0
    holds = compare_int_pow2(len(keys), n, 2 * q, 0) < 0
    return RichCosetReport(n, q, threshold, len(keys), bound, vacuous, holds, tuple(keys))


@dataclass
class TraceStep:
    name: str
    ok: bool
    detail: dict

    def as_dict(self) -> dict:
        return {"step": self.name, "ok": self.ok, **self.detail}


@dataclass
class ProofTrace:
    n: int
    epsilon: Fraction
    steps: List[TraceStep]
    vacuous: bool
    hypothesis_satisfiable: bool
    contradiction_step: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": str(self.epsilon),
            "vacuous": self.vacuous,
            "hypothesis_satisfiable": self.hypothesis_satisfiable,
            "contradiction_step": self.contradiction_step,
            "ok": self.ok,
            "steps": [s.as_dict() for s in self.steps],
        }


def replay_proposition(A: PointSet, eps: Real) -> ProofTrace:
    """Run the rich-coset argument on concrete data.

    With d = n - ceil(2 eps n): build B and C from the rich cosets, look for
    a nonzero P of degree <= d vanishing off C, translate it to each rich
    coset and apply the lemma there to force P(2r) = 0.  Every step is
    checked on the data; the final step records whether P then vanishes on
    all of F_2^n, which is where the contradiction would appear.
    """
    witness = find_progression(A)
    if witness is not None:
        raise ValueError(f"set is not progression-free: {witness}")
    q = check_epsilon(eps)
    n = A.n
    report = rich_coset_report(A, q)
    steps: List[TraceStep] = []
    if report.vacuous:
        steps.append(TraceStep("vacuous", True, {
            "threshold": report.threshold, "max_coset_size": 2 ** n,
            "note": "threshold exceeds 2^n; no coset can be rich"}))
        return ProofTrace(n, q, steps, True, False)

    d = proof_degree(n, q)
    m = binom_sum(n, d // 2)
    satisfiable = not report.holds
    dec = coset_decompose(A)
    parts = {r.word: part for r, part in dec.items()}
    rich = list(report.rich_keys)
    steps.append(TraceStep("rich_cosets", True, {
        "d": d, "threshold": report.threshold, "rich_count": report.rich_count,
        "bound": report.bound, "hypothesis_satisfiable": satisfiable}))

    # lemma sizes: 2m < threshold <= |A_R|
    size_ok = [2 * m < len(parts[k]) for k in rich]
    steps.append(TraceStep("lemma_sizes", all(size_ok), {
        "two_m": 2 * m, "part_sizes": [len(parts[k]) for k in rich]}))

    B, C = build_B_and_C(A, rich)
    distinct = len(C) == len(rich)
    steps.append(TraceStep("doubled_cosets_distinct", distinct, {"C_size": len(C)}))
    disjoint = not (B.as_frozenset() & C.as_frozenset())
    steps.append(TraceStep("B_C_disjoint", disjoint, {"B_size": len(B)}))

    complement = PointSet(n, (x for x in range(1 << n) if x not in C.as_frozenset()), binary=True)
    count_ok = binom_sum(n, d) > len(complement)
    P = vanishing_poly(complement, d)
    steps.append(TraceStep("vanishing_poly_on_complement", True, {
        "dimension": binom_sum(n, d), "complement_size": len(complement),
        "existence_guaranteed": count_ok, "found": P is not None,
        "degree": None if P is None else P.degree}))
    if P is None:
        if not satisfiable:
            steps.append(TraceStep("conclusion", True, {
                "note": "hypothesis of contradiction not satisfiable",
                "rich_count": report.rich_count, "bound": report.bound}))
        else:
            steps.append(TraceStep("conclusion", False, {
                "note": "dimension count promised a vanishing polynomial but none exists"}))
        return ProofTrace(n, q, steps, False, satisfiable)

    on_B = all(evaluate_mask(P, b) == 0 for b in B)
    steps.append(TraceStep("P_vanishes_on_B", on_B, {}))

    forced = []
    lemma_ok = True
    for k in rich:
        part = parts[k]
        r = next(iter(part))
        two_r = to_binary(double_word(r, n), n)
        Q = shift(P, mask_to_vector(two_r, n))
        local = PointSet(n, (to_binary(sub_words(a, r, n), n) for a in part), binary=True)
        rep = check_lemma(Q, local, d)
        lemma_ok &= rep.consistent
        forced.append({"coset": str(GroupVector(n, k)), "size_ok": rep.size_ok,
                       "hypothesis_ok": rep.hypothesis_ok, "P_at_2r_zero": rep.p0_zero})
    steps.append(TraceStep("lemma_per_coset", lemma_ok, {"cosets": forced}))

    vanishes_everywhere = all(evaluate_mask(P, x) == 0 for x in range(1 << n))
    contradiction = "P_vanishes_everywhere" if vanishes_everywhere else None
    steps.append(TraceStep("conclusion", not vanishes_everywhere or satisfiable, {
        "vanishes_on_C": all(evaluate_mask(P, c) == 0 for c in C),
        "vanishes_everywhere": vanishes_everywhere,
        "note": ("nonzero P vanishes on all of F_2^n: contradiction" if vanishes_everywhere
                 else "P survives somewhere on C; rich cosets are too few to force a contradiction")}))
    return ProofTrace(n, q, steps, False, satisfiable, contradiction)


def disjointness_holds(A: PointSet, selection: Iterable) -> bool:
    B, C = build_B_and_C(A, selection)
    return not (B.as_frozenset() & C.as_frozenset())
