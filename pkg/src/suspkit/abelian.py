"""Exact integer linear algebra: Smith normal form, H_1 and the degree map.

Matrices are lists of lists of Python ints.  Exponent vectors are row
vectors, so a homomorphism of free abelian groups acts by ``x -> x M`` and
the rows of a matrix are the images of the basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import SuspkitError
from .words import GroupPresentation, exponent_vector


def identity_matrix(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B) -> list:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def vecmat(x, M) -> list:
    cols = len(M[0]) if M else 0
    return [sum(x[k] * M[k][j] for k in range(len(M))) for j in range(cols)]


def matvec(M, y) -> list:
    return [sum(row[k] * y[k] for k in range(len(y))) for row in M]


def _snf(A, ncols=None):
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    D = [list(row) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)
    Vi = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V, Vi
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V, Vi


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple:
    """Return ``(U, D, V)`` with ``U A V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries forming a divisibility chain.
    ``ncols`` gives the column count when ``A`` has no rows.
    """
    U, D, V, _ = _snf(A, ncols)
    return U, D, V


def diagonal(D) -> list:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def solve_linear_system(A, b) -> list | None:
    """One integer solution of ``A r = b``, or None."""
    return smith_solve(A, b)[0]


def smith_solve(A, b, ncols=None) -> tuple:
    """Solve ``A r = b`` over the integers through the Smith normal form.

    Returns ``(r, None)`` on success, or ``(None, i)`` where ``i`` is the
    first canonical row whose divisibility (or zero) test fails.  The
    solution has all free canonical coordinates set to zero.
    """
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    U, D, V, _ = _snf(A, n)
    c = matvec(U, b) if m else []
    d = diagonal(D)
    y = [0] * n
    for i in range(m):
        di = d[i] if i < len(d) else 0
        if di:
            if c[i] % di:
                return None, i
            y[i] = c[i] // di
        elif c[i]:
            return None, i
    return matvec(V, y) if n else [], None


@dataclass
class AbelianGroupSNF:
    """``Z^n / rowspace(relations)`` in Smith coordinates.

    Canonical coordinates list the torsion coordinates (reduced modulo
    their invariant factor) first, then the free ones.
    """

    relations: list
    ngens: int
    U: list = field(init=False, repr=False)
    D: list = field(init=False, repr=False)
    V: list = field(init=False, repr=False)
    Vinv: list = field(init=False, repr=False)

    def __post_init__(self):
        self.U, self.D, self.V, self.Vinv = _snf(self.relations, self.ngens)
        d = diagonal(self.D) if self.relations else []
        d = d + [0] * (self.ngens - len(d))
        self.diag = d
        self.torsion_index = [i for i, x in enumerate(d) if x >= 2]
        self.free_index = [i for i, x in enumerate(d) if x == 0]

    @property
    def invariant_factors(self) -> list:
        return [self.diag[i] for i in self.torsion_index]

    @property
    def free_rank(self) -> int:
        return len(self.free_index)

    @property
    def moduli(self) -> list:
        """Per canonical coordinate: invariant factor, or 0 for free ones."""
        return self.invariant_factors + [0] * self.free_rank

    def coords(self, x: Sequence[int]) -> tuple:
        """Canonical coordinates of an exponent vector."""
        y = vecmat(list(x), self.V)
        tors = [y[i] % self.diag[i] for i in self.torsion_index]
        return tuple(tors + [y[i] for i in self.free_index])

    def normalize(self, c: Sequence[int]) -> tuple:
        return tuple(x % d if d else x for x, d in zip(c, self.moduli))

    def lift(self, c: Sequence[int]) -> list:
        """An exponent vector with canonical coordinates ``c``."""
        y = [0] * self.ngens
        for k, i in enumerate(self.torsion_index + self.free_index):
            y[i] = c[k]
        return vecmat(y, self.Vinv)

    def functional(self, lam: Sequence[int]) -> list:
        """Express a homomorphism ``Z^n -> Z`` (vanishing on the relations)
        as a vector over the canonical coordinates."""
        col = matvec(self.Vinv, list(lam))
        for i, x in enumerate(col):
            if x and i not in self.free_index:
                raise SuspkitError("functional does not vanish on the relations")
        return [0] * len(self.torsion_index) + [col[i] for i in self.free_index]

    def to_json(self) -> dict:
        return {"invariant_factors": self.invariant_factors, "free_rank": self.free_rank}


def relation_matrix(P: GroupPresentation) -> list:
    return [exponent_vector(r, P.generators.rank) for r in P.relators]


def h1_of_presentation(P: GroupPresentation) -> AbelianGroupSNF:
    return AbelianGroupSNF(relation_matrix(P), P.generators.rank)


class SuspensionDatum:
    """A presentation together with fiber elements and a transverse element.

    ``delta`` reads the exponent of the transverse element in the infinite
    cyclic quotient ``H_1(G) / <bar F>``.
    """

    def __init__(self, presentation: GroupPresentation, fiber: Sequence, transverse):
        self.presentation = presentation
        self.fiber = [tuple(w) for w in fiber]
        self.transverse = tuple(transverse)
        n = presentation.generators.rank
        self.h1 = h1_of_presentation(presentation)
        rows = relation_matrix(presentation) + [exponent_vector(w, n) for w in self.fiber]
        self.quotient = AbelianGroupSNF(rows, n)
        if self.quotient.invariant_factors or self.quotient.free_rank != 1:
            raise SuspkitError(
                "H_1(G)/<bar F> is not infinite cyclic "
                f"(torsion {self.quotient.invariant_factors}, free rank {self.quotient.free_rank})")
        t = self.quotient.coords(exponent_vector(self.transverse, n))[0]
        if t not in (1, -1):
            raise SuspkitError(f"transverse element maps to {t} in H_1(G)/<bar F>, not a generator")
        self._sign = t

    def bar(self, w) -> tuple:
        return self.h1.coords(exponent_vector(w, self.presentation.generators.rank))

    def delta(self, w) -> int:
        n = self.presentation.generators.rank
        return self.quotient.coords(exponent_vector(w, n))[0] * self._sign

    def delta_of_vector(self, x) -> int:
        return self.quotient.coords(x)[0] * self._sign
