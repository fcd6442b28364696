"""Exact integer/rational linear algebra for the hull oracle.

Nothing here touches floating point: scalar routines use Python ints and
Fractions, batched routines use int64 numpy arrays whose entries stay tiny
(coordinates are in {-1, 0, 1} and d <= 4 in the batched paths).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                M[r][c] = (p * M[r][c] - M[r][col] * M[rank][c]) // prev
            M[r][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def bareiss_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Solve a square integer system exactly; None when singular."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            return None
        M[k], M[piv] = M[piv], M[k]
        for r in range(k + 1, n):
            for c in range(k + 1, n + 1):
                M[r][c] = (M[k][k] * M[r][c] - M[r][k] * M[k][c]) // prev
            M[r][k] = 0
        prev = M[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n]) - sum(M[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / M[i][i]
    return x


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_batch(M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of small integer matrices (Leibniz expansion)."""
    K, k, _ = M.shape
    out = np.zeros(K, dtype=np.int64)
    if k == 0:
        out[:] = 1
        return out
    rows = np.arange(k)
    for p in permutations(range(k)):
        out += _perm_sign(p) * np.prod(M[:, rows, list(p)], axis=1)
    return out


def in_convex_hull(v: Sequence[int], pts: Sequence[Sequence[int]]) -> bool:
    """Exact phase-1 simplex: is v a convex combination of pts?"""
    if not pts:
        return False
    d = len(v)
    m = len(pts)
    # rows: sum_i lam_i * pts_i = v, sum_i lam_i = 1
    A = [[Fraction(pts[i][r]) for i in range(m)] for r in range(d)] + [[Fraction(1)] * m]
    c = [Fraction(x) for x in v] + [Fraction(1)]
    nrows = d + 1
    for r in range(nrows):
        if c[r] < 0:
            A[r] = [-x for x in A[r]]
            c[r] = -c[r]
    # tableau with one artificial per row; columns 0..m-1 real, m..m+nrows-1 artificial
    T = [A[r] + [Fraction(1 if j == r else 0) for j in range(nrows)] + [c[r]] for r in range(nrows)]
    basis = [m + r for r in range(nrows)]
    ncols = m + nrows
    # objective: minimize sum of artificials -> reduced costs
    obj = [Fraction(0)] * (ncols + 1)
    for r in range(nrows):
        for j in range(ncols + 1):
            obj[j] -= T[r][j]
    for j in range(m, ncols):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)  # Bland
        if enter is None:
            break
        best = None
        for r in range(nrows):
            if T[r][enter] > 0:
                ratio = T[r][-1] / T[r][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:  # unbounded cannot happen in phase 1
            break
        r = best[1]
        pv = T[r][enter]
        T[r] = [x / pv for x in T[r]]
        for rr in range(nrows):
            if rr != r and T[rr][enter] != 0:
                f = T[rr][enter]
                T[rr] = [a - f * b for a, b in zip(T[rr], T[r])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, T[r])]
        basis[r] = enter
    return obj[-1] == 0
