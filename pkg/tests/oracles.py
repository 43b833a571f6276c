"""Reference computations that share no code with the library."""

from __future__ import annotations

import itertools
from functools import reduce as _fold
from math import gcd

import numpy as np


def det(M) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def determinantal_invariants(A, ncols) -> tuple:
    """``(nonzero diagonal of the Smith form, rank)`` from gcds of minors."""
    m = len(A)
    divisors = [1]
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(ncols), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    diag = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return diag, len(diag)


def brute_force_solve(A, b, bound: int):
    """Search ``|r_i| <= bound`` by meeting in the middle; None if no solution."""
    A = np.asarray(A, dtype=np.int64).reshape(len(b), -1)
    b = np.asarray(b, dtype=np.int64)
    n = A.shape[1]
    if n == 0:
        return [] if not b.any() else None
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    h = n // 2

    def grid(k):
        if k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(np.meshgrid(*([rng] * k), indexing="ij")).reshape(k, -1).T

    L, R = grid(h), grid(n - h)
    need = b[None, :] - L @ A[:, :h].T    # what the second half must supply
    right = R @ A[:, h:].T
    # pack each row into one integer key so the match is a sorted lookup
    base = int(max(np.abs(need).max(), np.abs(right).max())) * 2 + 1
    weights = base ** np.arange(A.shape[0], dtype=np.int64)
    kn = (need + base // 2) @ weights
    kr = (right + base // 2) @ weights
    order = np.argsort(kr, kind="stable")
    pos = np.searchsorted(kr[order], kn)
    pos = np.minimum(pos, len(order) - 1)
    hit = np.nonzero(kr[order][pos] == kn)[0]
    if len(hit) == 0:
        return None
    i = int(hit[0])
    return [int(x) for x in L[i]] + [int(x) for x in R[order[pos[i]]]]


def rational_solvable(A, b) -> bool:
    """Is ``A r = b`` solvable over the rationals (rank test)?"""
    A = np.asarray(A, dtype=float).reshape(len(b), -1)
    if A.shape[1] == 0:
        return not any(b)
    Ab = np.column_stack([A, np.asarray(b, dtype=float)])
    return np.linalg.matrix_rank(A) == np.linalg.matrix_rank(Ab)


def free_reduce_str(s: str) -> str:
    """Free reduction on strings where upper case is the inverse letter."""
    out = []
    for ch in s:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def word_to_str(w) -> str:
    return "".join("abcdefgh"[x - 1] if x > 0 else "ABCDEFGH"[-x - 1] for x in w)


def conjugate_str(u: str, v: str) -> bool:
    """Conjugacy in a free group by comparing all rotations of the cyclic
    reductions (strings, lower/upper case)."""
    def core(s):
        s = free_reduce_str(s)
        while len(s) >= 2 and s[0] == s[-1].swapcase():
            s = s[1:-1]
        return s

    cu, cv = core(u), core(v)
    return len(cu) == len(cv) and (cu == cv or cv in cu + cu)


def substitute_str(s: str, images: dict) -> str:
    out = []
    for ch in s:
        img = images[ch.lower()]
        out.append(img if ch.islower() else "".join(c.swapcase() for c in reversed(img)))
    return free_reduce_str("".join(out))


def gcd_list(xs) -> int:
    return _fold(gcd, xs, 0)
