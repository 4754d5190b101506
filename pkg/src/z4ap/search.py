"""Exact and heuristic search for large progression-free sets in Z_4^n."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .group import (
    PointSet,
    add_words,
    all_words,
    double_word,
    is_progression_free,
    low_mask,
    sub_words,
)

METHODS = ("exhaustive", "branch_and_bound", "greedy", "random_restart")
_ALIASES = {"bnb": "branch_and_bound", "restart": "random_restart"}


@dataclass(frozen=True)
class SearchResult:
    n: int
    method: str
    best_size: int
    witness: PointSet
    exact: bool
    nodes_explored: int
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.witness) != self.best_size:
            raise RuntimeError("witness size differs from best_size")
        if not is_progression_free(self.witness):
            raise RuntimeError("search emitted a witness containing a progression")


def canonical_method(method: str) -> str:
    method = _ALIASES.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown search method {method!r}")
    return method


# -- naive oracle -------------------------------------------------------------

def _has_progression_naive(words: Sequence[int], n: int) -> bool:
    for a, b, c in itertools.permutations(words, 3):
        if a < b and add_words(a, b, n) == double_word(c, n):
            return True
    return False


def naive_r3(n: int, canonical: bool = True, budget: Optional[int] = None) -> SearchResult:
    """Largest progression-free set by plain subset enumeration.

    Sizes are tried from the top down and each candidate is checked with a
    triple loop.  With ``canonical`` only sets containing 0 are enumerated.
    """
    universe = all_words(n)
    nodes = 0
    if canonical:
        pool, fixed = universe[1:], [0]
    else:
        pool, fixed = universe, []
    for size in range(len(universe), 0, -1):
        k = size - len(fixed)
        if k < 0:
            continue
        for combo in itertools.combinations(pool, k):
            nodes += 1
            if budget is not None and nodes > budget:
                return _naive_fallback(n, nodes)
            words = fixed + list(combo)
            if not _has_progression_naive(words, n):
                return SearchResult(n, "exhaustive", size, PointSet(n, words), True, nodes)
    return SearchResult(n, "exhaustive", 0, PointSet(n), True, nodes)


def _naive_fallback(n: int, nodes: int) -> SearchResult:
    res = heuristic_r3(n, "greedy", seed=0)
    return SearchResult(n, "exhaustive", res.best_size, res.witness, False, nodes)


# -- branch and bound -----------------------------------------------------------

def _forbidden_table(n: int, universe: List[int]) -> List[List[int]]:
    """table[x][z]: bitmask of indices y with {x, y, z} pairwise distinct and
    one of them the midpoint of the other two."""
    index = {w: i for i, w in enumerate(universe)}
    lo = low_mask(n)
    by_double: Dict[int, List[int]] = {}
    for i, w in enumerate(universe):
        by_double.setdefault(double_word(w, n), []).append(i)
    size = len(universe)
    table = [[0] * size for _ in range(size)]
    for i, x in enumerate(universe):
        x2 = double_word(x, n)
        row = table[i]
        for j, z in enumerate(universe):
            if i == j:
                continue
            mask = 0
            # x + y = 2z  and  y + z = 2x
            for y in (sub_words(double_word(z, n), x, n), sub_words(x2, z, n)):
                k = index[y]
                if k != i and k != j:
                    mask |= 1 << k
            # x + z = 2y
            s = add_words(x, z, n)
            if not s & lo:
                for k in by_double.get(s, ()):
                    if k != i and k != j:
                        mask |= 1 << k
            row[j] = mask
    return table


class _BranchAndBound:
    def __init__(self, n: int, budget: Optional[int], lower: int):
        self.n = n
        self.universe = all_words(n)
        self.table = _forbidden_table(n, self.universe)
        self.budget = budget
        self.best: List[int] = []
        self.lower = lower
        self.nodes = 0
        self.exhausted = False

    def _target(self) -> int:
        return max(len(self.best), self.lower)

    def _packing(self, cand: int) -> int:
        """Greedy count of disjoint progressions inside ``cand``.

        A progression-free subset keeps at most two points of each, so the
        count can be subtracted from the candidate total.
        """
        table = self.table
        left = cand
        count = 0
        while left:
            low = left & -left
            x = low.bit_length() - 1
            left ^= low
            rest = left
            while rest:
                zb = rest & -rest
                rest ^= zb
                ys = table[x][zb.bit_length() - 1] & left & ~zb
                if ys:
                    left &= ~(zb | (ys & -ys))
                    count += 1
                    break
        return count

    def run(self, chosen: List[int], cand: int) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            self.exhausted = True
            return
        if len(chosen) > len(self.best) and len(chosen) > self.lower:
            self.best = list(chosen)
        table = self.table
        while cand:
            free = bin(cand).count("1")
            if len(chosen) + free <= self._target():
                return
            if len(chosen) + free - self._packing(cand) <= self._target():
                return
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            row = table[x]
            forb = 0
            for z in chosen:
                forb |= row[z]
            chosen.append(x)
            self.run(chosen, cand & ~forb)
            chosen.pop()
            if self.exhausted:
                return


_WORKER: Dict[int, "_BranchAndBound"] = {}


def _bnb_branch(args) -> Tuple[List[int], int, bool]:
    """Explore every set whose two smallest elements are 0 and ``first``."""
    n, first, budget, lower = args
    if n not in _WORKER:
        _WORKER[n] = _BranchAndBound(n, None, 0)
    proto = _WORKER[n]
    bb = _BranchAndBound.__new__(_BranchAndBound)
    bb.__dict__.update(proto.__dict__)
    bb.budget, bb.lower, bb.best, bb.nodes, bb.exhausted = budget, lower, [], 0, False
    size = len(bb.universe)
    cand = ((1 << size) - 1) & ~((1 << (first + 1)) - 1)
    bb.run([0, first], cand & ~bb.table[first][0])
    return [bb.universe[i] for i in bb.best], bb.nodes, bb.exhausted


def exact_r3(n: int, budget: Optional[int] = None, threads: int = 1) -> SearchResult:
    """r_3(Z_4^n) by branch and bound over sets containing 0.

    Elements are taken in lexicographic digit order; a node is pruned when
    its size plus the surviving candidates, less one per disjoint
    progression among them, cannot beat the incumbent.  The search splits
    into independent subtrees by the second element, each starting from the
    same greedy incumbent, so sizes, witnesses and node counts do not depend
    on ``threads``.  ``budget`` caps the nodes of each subtree; ``exact`` is
    False when any subtree hits it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    seed_set = heuristic_r3(n, "greedy", seed=0)
    lower = seed_set.best_size
    jobs = [(n, first, budget, lower) for first in range(1, 4 ** n)]
    if threads <= 1:
        results = list(map(_bnb_branch, jobs))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_bnb_branch, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    words: List[int] = []
    nodes, exhausted = 1, False
    for best, k, ex in results:
        nodes += k
        exhausted |= ex
        if len(best) > len(words):
            words = best
    witness = seed_set.witness if len(words) <= lower else PointSet(n, words)
    return SearchResult(n, "branch_and_bound", len(witness), witness, not exhausted, nodes)


# -- heuristics -----------------------------------------------------------------

class _Incremental:
    """Progression-free set under construction with O(1) admission tests.

    ``marks[y]`` counts members a with y = 2a - x or y = 2x - a for some other
    member x; ``sums[s]`` counts pairs of distinct same-coset members summing
    to s, which blocks every y with 2y = s.
    """

    def __init__(self, n: int):
        self.n = n
        self.lo = low_mask(n)
        self.members: set = set()
        self.marks: Dict[int, int] = {}
        self.sums: Dict[int, int] = {}

    def admits(self, y: int) -> bool:
        return (y not in self.members and not self.marks.get(y)
                and not self.sums.get(double_word(y, self.n)))

    def _update(self, x: int, step: int) -> None:
        n, lo = self.n, self.lo
        x2 = double_word(x, n)
        marks, sums = self.marks, self.sums
        for a in self.members:
            if a == x:
                continue
            for y in (sub_words(double_word(a, n), x, n), sub_words(x2, a, n)):
                marks[y] = marks.get(y, 0) + step
            if not (x ^ a) & lo:
                s = add_words(x, a, n)
                sums[s] = sums.get(s, 0) + step

    def add(self, x: int) -> None:
        self._update(x, 1)
        self.members.add(x)

    def remove(self, x: int) -> None:
        self.members.discard(x)
        self._update(x, -1)


def _greedy(n: int, order: Sequence[int], state: Optional[_Incremental] = None) -> _Incremental:
    state = state or _Incremental(n)
    for x in order:
        if state.admits(x):
            state.add(x)
    return state


def heuristic_r3(n: int, method: str = "greedy", seed: int = 0,
                 budget: Optional[int] = None) -> SearchResult:
    """Lower bound for r_3(Z_4^n).

    ``greedy``: one pass over a seeded random order.  ``random_restart``:
    ``budget`` rounds (default 200) of removing a few random elements and
    greedily refilling in a fresh random order, keeping any result that is
    at least as large.
    """
    if n < 1:
        raise ValueError("n must be positive")
    method = canonical_method(method)
    if method not in ("greedy", "random_restart"):
        raise ValueError(f"{method} is not a heuristic method")
    rng = random.Random(seed)
    universe = all_words(n)
    order = list(universe)
    rng.shuffle(order)
    state = _greedy(n, order)
    nodes = 1
    if method == "random_restart":
        rounds = 200 if budget is None else budget
        best = sorted(state.members)
        for _ in range(rounds):
            nodes += 1
            trial = _Incremental(n)
            kept = list(best)
            rng.shuffle(kept)
            drop = rng.randint(1, max(1, min(4, len(kept))))
            for x in kept[drop:]:
                trial.add(x)
            refill = list(universe)
            rng.shuffle(refill)
            _greedy(n, refill, trial)
            if len(trial.members) >= len(best):
                best = sorted(trial.members)
        witness = PointSet(n, best)
    else:
        witness = PointSet(n, state.members)
    return SearchResult(n, method, len(witness), witness, False, nodes, seed)


def random_maximal_set(n: int, rng: random.Random) -> PointSet:
    """A maximal progression-free set from a uniformly shuffled greedy pass."""
    order = all_words(n)
    rng.shuffle(order)
    return PointSet(n, _greedy(n, order).members)


def search(n: int, method: str = "branch_and_bound", seed: Optional[int] = None,
           budget: Optional[int] = None, threads: int = 1) -> SearchResult:
    method = canonical_method(method)
    if method == "exhaustive":
        return naive_r3(n, canonical=n > 1, budget=budget)
    if method == "branch_and_bound":
        return exact_r3(n, budget=budget, threads=threads)
    return heuristic_r3(n, method, seed=0 if seed is None else seed, budget=budget)


EPSILON_GRID = tuple(f"{k / 100:.2f}" for k in range(1, 25))


def verify_set(A: PointSet) -> dict:
    """Consolidated checks for one set: progression-freeness, coset profile,
    rich-coset counts over the 24-point epsilon grid and the size bounds."""
    from . import bounds, cosets
    from .group import find_progression

    witness = find_progression(A)
    report = {
        "n": A.n,
        "size": len(A),
        "progression_free": witness is None,
        "witness": None if witness is None else [str(v) for v in witness],
    }
    if A.n == 0:
        report.update(coset_counts=[], rich_cosets=[], integral=None, bounds=None, ok=True)
        return report
    profile = cosets.coset_profile(A)
    integral = bounds.integral_decomposition_check(profile)
    rich = []
    for eps in EPSILON_GRID:
        r = cosets.rich_coset_report(A, eps)
        rich.append({"epsilon": eps, "threshold": r.threshold, "rich_count": r.rich_count,
                     "bound": r.bound, "vacuous": r.vacuous, "holds": r.holds})
    theorem = bounds.theorem_bound(A.n)
    finite = bounds.finite_bound(A.n)
    report.update(
        coset_counts=list(profile.counts),
        rich_cosets=rich,
        integral={"total": integral.total, "step_integral": integral.step_integral,
                  "int1_exact": integral.int1_exact, "int2_holds": integral.int2_holds,
                  "int3_rel_error": integral.int3_rel_error, "int3_ok": integral.int3_ok},
        bounds={"theorem": theorem, "finite": finite,
                "within_theorem": len(A) <= theorem, "within_finite": len(A) < finite},
    )
    pf = witness is None
    report["ok"] = bool(pf and integral.ok and all(r["holds"] for r in rich)
                        and len(A) <= theorem)
    return report


def verify_file(path) -> dict:
    from .io import read_set

    report = verify_set(read_set(path))
    report["file"] = str(path)
    return report
