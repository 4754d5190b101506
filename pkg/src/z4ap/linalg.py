"""Exact Gaussian elimination over prime fields.

F_2 rows are packed into ints (column j at bit j) and reduced with XOR; odd
primes go through a plain list-of-lists path.  Both produce the reduced row
echelon form with pivots chosen leftmost, so kernels are reproducible.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = Sequence[Sequence[int]]


def pack_rows(rows: Matrix) -> List[int]:
    out = []
    for row in rows:
        word = 0
        for j, v in enumerate(row):
            if int(v) & 1:
                word |= 1 << j
        out.append(word)
    return out


def gf2_rref(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form of packed F_2 rows.

    Returns the nonzero reduced rows and their pivot columns (ascending).
    """
    work = [r for r in rows if r]
    pivots: List[int] = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        bit = 1 << col
        for r in range(top, len(work)):
            if work[r] & bit:
                break
        else:
            continue
        work[top], work[r] = work[r], work[top]
        prow = work[top]
        for r in range(len(work)):
            if r != top and work[r] & bit:
                work[r] ^= prow
        pivots.append(col)
        top += 1
    return work[:top], pivots


def gfp_rref(rows: Matrix, p: int, ncols: int) -> Tuple[List[List[int]], List[int]]:
    work = [[int(v) % p for v in row] for row in rows]
    pivots: List[int] = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        for r in range(top, len(work)):
            if work[r][col]:
                break
        else:
            continue
        work[top], work[r] = work[r], work[top]
        inv = pow(work[top][col], p - 2, p)
        prow = [(v * inv) % p for v in work[top]]
        work[top] = prow
        for r in range(len(work)):
            f = work[r][col]
            if r != top and f:
                work[r] = [(a - f * b) % p for a, b in zip(work[r], prow)]
        pivots.append(col)
        top += 1
    return work[:top], pivots


def _ncols(rows: Matrix, ncols) -> int:
    if ncols is not None:
        return ncols
    return len(rows[0]) if len(rows) else 0


def rank(rows: Matrix, p: int = 2, ncols: int = None) -> int:
    ncols = _ncols(rows, ncols)
    if p == 2:
        return len(gf2_rref(pack_rows(rows), ncols)[1])
    return len(gfp_rref(rows, p, ncols)[1])


def kernel_basis(rows: Matrix, p: int = 2, ncols: int = None) -> List[List[int]]:
    """Right kernel {v : M v = 0}, one basis vector per free column.

    Free columns are taken in ascending order and each basis vector carries a
    1 at its free column, so the first vector has the smallest possible
    highest nonzero column among all kernel vectors.
    """
    ncols = _ncols(rows, ncols)
    if p == 2:
        reduced, pivots = gf2_rref(pack_rows(rows), ncols)
        entry = lambda r, f: (reduced[r] >> f) & 1
    else:
        reduced, pivots = gfp_rref(rows, p, ncols)
        entry = lambda r, f: reduced[r][f]
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            if pc > f:
                break
            e = entry(r, f)
            if e:
                v[pc] = (-e) % p
        basis.append(v)
    return basis
