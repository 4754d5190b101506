"""Arithmetic in Z_4^n, the involution subgroup F_n and its cosets.

Elements are packed two bits per coordinate into a Python int: coordinate
``i`` (0-based) occupies bits ``2i`` (low) and ``2i+1`` (high).  Vectors of
F_2^n are plain bitmasks, coordinate ``i`` at bit ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union


def low_mask(n: int) -> int:
    """Bits 0, 2, 4, ... of a packed n-digit word."""
    return int("01" * n, 2) if n else 0


def high_mask(n: int) -> int:
    return low_mask(n) << 1


def pack(digits: Sequence[int]) -> int:
    word = 0
    for i, d in enumerate(digits):
        if not 0 <= d <= 3:
            raise ValueError(f"digit {d!r} at coordinate {i} not in 0..3")
        word |= d << (2 * i)
    return word


def unpack(word: int, n: int) -> Tuple[int, ...]:
    return tuple((word >> (2 * i)) & 3 for i in range(n))


def add_words(a: int, b: int, n: int) -> int:
    """Coordinatewise sum mod 4 of two packed words, without digit loops."""
    lo = low_mask(n)
    x = a ^ b
    carry = (a & b & lo) << 1
    return (x & lo) | ((x & ~lo) ^ carry)


def double_word(a: int, n: int) -> int:
    return (a & low_mask(n)) << 1


def neg_word(a: int, n: int) -> int:
    lo = low_mask(n)
    return (a & lo) | ((a & (lo << 1)) ^ ((a & lo) << 1))


def sub_words(a: int, b: int, n: int) -> int:
    return add_words(a, neg_word(b, n), n)


def reduce_mod2(a: int, n: int) -> int:
    """Coset key: the packed word of the coordinatewise mod-2 reduction."""
    return a & low_mask(n)


def in_involution_subgroup(a: int, n: int) -> bool:
    return a & low_mask(n) == 0


def to_binary(a: int, n: int) -> int:
    """Encode an element of F_n (digits in {0, 2}) as an F_2^n bitmask."""
    if not in_involution_subgroup(a, n):
        raise ValueError("element has odd digits; it is not in F_n")
    out = 0
    for i in range(n):
        if (a >> (2 * i + 1)) & 1:
            out |= 1 << i
    return out


def from_binary(x: int, n: int) -> int:
    """Inverse of :func:`to_binary`: bit i set becomes digit 2 at coordinate i."""
    out = 0
    for i in range(n):
        if (x >> i) & 1:
            out |= 2 << (2 * i)
    return out


def sort_key(word: int, n: int) -> Tuple[int, ...]:
    """Lexicographic order on digit strings, coordinate 1 leftmost."""
    return unpack(word, n)


def all_words(n: int) -> List[int]:
    """Every element of Z_4^n in lexicographic digit-string order."""
    return [pack(d) for d in itertools.product(range(4), repeat=n)]


@dataclass(frozen=True)
class GroupVector:
    """An element of Z_4^n."""

    n: int
    word: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if self.word < 0 or self.word >> (2 * self.n):
            raise ValueError("packed word does not fit in n digits")

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> "GroupVector":
        return cls(len(digits), pack(digits))

    @classmethod
    def zero(cls, n: int) -> "GroupVector":
        return cls(n, 0)

    @property
    def digits(self) -> Tuple[int, ...]:
        return unpack(self.word, self.n)

    def __add__(self, other: "GroupVector") -> "GroupVector":
        return add(self, other)

    def __sub__(self, other: "GroupVector") -> "GroupVector":
        _check_dims(self, other)
        return GroupVector(self.n, sub_words(self.word, other.word, self.n))

    def __neg__(self) -> "GroupVector":
        return GroupVector(self.n, neg_word(self.word, self.n))

    def __str__(self) -> str:
        return "".join(map(str, self.digits))

    def __repr__(self) -> str:
        return f"GroupVector({str(self)!r})"


def _check_dims(a: GroupVector, b: GroupVector) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} != {b.n}")


def add(a: GroupVector, b: GroupVector) -> GroupVector:
    _check_dims(a, b)
    return GroupVector(a.n, add_words(a.word, b.word, a.n))


def double(a: GroupVector) -> GroupVector:
    return GroupVector(a.n, double_word(a.word, a.n))


class PointSet:
    """Immutable finite subset of Z_4^n, or of F_2^n when ``binary`` is set.

    Z_4^n elements are stored as packed words, F_2^n elements as bitmasks.
    Iteration yields the raw ints in canonical order (lexicographic digit
    strings for Z_4^n, lexicographic bit strings for F_2^n).
    """

    __slots__ = ("n", "binary", "_words", "_members")

    def __init__(self, n: int, elements: Iterable[int] = (), binary: bool = False):
        if n < 0:
            raise ValueError("dimension must be non-negative")
        members = frozenset(int(e) for e in elements)
        limit = 1 << (n if binary else 2 * n)
        for e in members:
            if not 0 <= e < limit:
                raise ValueError(f"element {e} out of range for n={n}")
        self.n = n
        self.binary = binary
        self._members = members
        if binary:
            self._words = tuple(sorted(members, key=lambda x: _bit_key(x, n)))
        else:
            self._words = tuple(sorted(members, key=lambda w: unpack(w, n)))

    @classmethod
    def from_vectors(cls, vectors: Iterable[GroupVector], n: Optional[int] = None) -> "PointSet":
        vectors = list(vectors)
        if n is None:
            if not vectors:
                raise ValueError("dimension needed for an empty set")
            n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise ValueError("all elements must share dimension n")
        return cls(n, (v.word for v in vectors))

    @classmethod
    def from_digit_strings(cls, rows: Iterable[Union[str, Sequence[int]]], n: Optional[int] = None,
                           binary: bool = False) -> "PointSet":
        """Rows are digit strings such as "013" or sequences of ints."""
        rows = [tuple(int(ch) for ch in r) if isinstance(r, str) else tuple(r) for r in rows]
        if n is None:
            n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("all elements must share dimension n")
        if binary:
            words = []
            for r in rows:
                if any(d not in (0, 1) for d in r):
                    raise ValueError("binary points need coordinates in {0, 1}")
                words.append(sum(d << i for i, d in enumerate(r)))
            return cls(n, words, binary=True)
        return cls(n, (pack(r) for r in rows))

    @property
    def words(self) -> Tuple[int, ...]:
        return self._words

    def vectors(self) -> List[GroupVector]:
        if self.binary:
            raise TypeError("binary point sets hold F_2^n bitmasks")
        return [GroupVector(self.n, w) for w in self._words]

    def digit_rows(self) -> List[Tuple[int, ...]]:
        if self.binary:
            return [tuple((x >> i) & 1 for i in range(self.n)) for x in self._words]
        return [unpack(w, self.n) for w in self._words]

    def __iter__(self) -> Iterator[int]:
        return iter(self._words)

    def __len__(self) -> int:
        return len(self._words)

    def __contains__(self, item) -> bool:
        if isinstance(item, GroupVector):
            return not self.binary and item.n == self.n and item.word in self._members
        return item in self._members

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.n, self.binary, self._members) == (other.n, other.binary, other._members)

    def __hash__(self) -> int:
        return hash((self.n, self.binary, self._members))

    def __repr__(self) -> str:
        rows = ["".join(map(str, r)) for r in self.digit_rows()]
        kind = "F2" if self.binary else "Z4"
        return f"PointSet({kind}^{self.n}, {rows})"

    def as_frozenset(self) -> frozenset:
        return self._members

    def translate(self, t: int) -> "PointSet":
        if self.binary:
            return PointSet(self.n, (x ^ t for x in self._words), binary=True)
        return PointSet(self.n, (add_words(w, t, self.n) for w in self._words))

    def in_involution_subgroup(self) -> bool:
        return self.binary or all(in_involution_subgroup(w, self.n) for w in self._words)

    def to_binary(self) -> "PointSet":
        """Re-encode a subset of F_n as a subset of F_2^n (digit 2 -> 1)."""
        if self.binary:
            return self
        return PointSet(self.n, (to_binary(w, self.n) for w in self._words), binary=True)

    def from_binary(self) -> "PointSet":
        if not self.binary:
            return self
        return PointSet(self.n, (from_binary(x, self.n) for x in self._words))


def _bit_key(x: int, n: int) -> Tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


def _require_z4(S: PointSet) -> None:
    if S.binary:
        raise TypeError("operation needs a subset of Z_4^n")


def find_progression(A: PointSet) -> Optional[Tuple[GroupVector, GroupVector, GroupVector]]:
    """Return a pairwise-distinct triple (a, b, c) of A with a + b = 2c, or None.

    Elements are bucketed by their double; a pair (a, b) can only complete a
    progression when a + b lies in F_n.
    """
    _require_z4(A)
    n = A.n
    words = A.words
    by_double: Dict[int, List[int]] = {}
    for c in words:
        by_double.setdefault(double_word(c, n), []).append(c)
    lo = low_mask(n)
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            s = add_words(a, b, n)
            if s & lo:
                continue
            for c in by_double.get(s, ()):
                if c != a and c != b:
                    return GroupVector(n, a), GroupVector(n, b), GroupVector(n, c)
    return None


def is_progression_free(A: PointSet) -> bool:
    return find_progression(A) is None


@dataclass(frozen=True)
class CosetDecomposition:
    """Partition of a set by F_n-cosets.

    ``representatives[i]`` is the mod-2 reduction (digits in {0, 1}) shared by
    every element of ``parts[i]``.
    """

    n: int
    representatives: Tuple[GroupVector, ...]
    parts: Tuple[PointSet, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def part_for(self, key: GroupVector) -> PointSet:
        for r, part in zip(self.representatives, self.parts):
            if r == key:
                return part
        return PointSet(self.n)

    def items(self):
        return zip(self.representatives, self.parts)


def coset_decompose(A: PointSet) -> CosetDecomposition:
    _require_z4(A)
    n = A.n
    groups: Dict[int, List[int]] = {}
    for w in A:
        groups.setdefault(reduce_mod2(w, n), []).append(w)
    keys = sorted(groups, key=lambda k: unpack(k, n))
    return CosetDecomposition(
        n,
        tuple(GroupVector(n, k) for k in keys) if n else (),
        tuple(PointSet(n, groups[k]) for k in keys),
    )


def coset(r: GroupVector) -> PointSet:
    """The full coset r + F_n."""
    n = r.n
    base = reduce_mod2(r.word, n)
    return PointSet(n, (add_words(base, from_binary(x, n), n) for x in range(1 << n)))


def two_dot(S: PointSet) -> PointSet:
    """Sums s' + s'' over ordered pairs of distinct elements of S."""
    _require_z4(S)
    n = S.n
    words = S.words
    return PointSet(n, (add_words(a, b, n) for i, a in enumerate(words) for b in words[i + 1:]))


def two_star(S: PointSet) -> PointSet:
    _require_z4(S)
    return PointSet(S.n, (double_word(w, S.n) for w in S))


DEFAULT_POWER_CAP = 1 << 20


def tensor_power(A: PointSet, k: int, cap: int = DEFAULT_POWER_CAP) -> PointSet:
    """k-fold Cartesian product of A inside Z_4^{kn}, coordinates concatenated."""
    _require_z4(A)
    if k < 1:
        raise ValueError("k must be at least 1")
    size = len(A) ** k
    if size > cap:
        raise OverflowError(f"|A|^k = {size} exceeds cap {cap}")
    n = A.n
    shift = 2 * n
    out = []
    for combo in itertools.product(A.words, repeat=k):
        w = 0
        for j, part in enumerate(combo):
            w |= part << (shift * j)
        out.append(w)
    return PointSet(n * k, out)
