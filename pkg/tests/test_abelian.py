import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det, determinantal_invariants
from suspkit.abelian import (AbelianGroupSNF, SuspensionDatum, h1_of_presentation, matmul,
                             smith_normal_form, smith_solve)
from suspkit.errors import SuspkitError
from suspkit.words import Alphabet, GroupPresentation

ABT = Alphabet(("a", "b", "t"))


def matrices(max_dim=4, bound=6):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def check_snf(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[:len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return nz


def test_snf_examples():
    assert check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]
    assert check_snf([[0, 0], [0, 0]]) == []


@settings(max_examples=150)
@given(matrices())
def test_snf_matches_minors_oracle(A):
    nz = check_snf(A)
    diag, rank = determinantal_invariants(A, len(A[0]))
    assert nz == diag


@settings(max_examples=150)
@given(matrices(), st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_smith_solve_sound(A, b):
    b = b[:len(A)]
    r, bad = smith_solve(A, b)
    if r is not None:
        assert [sum(a * x for a, x in zip(row, r)) for row in A] == b
    else:
        assert bad is not None


def pres(rels, alph=ABT):
    return GroupPresentation(alph, tuple(alph.parse(r) for r in rels))


def test_h1_examples():
    h = h1_of_presentation(GroupPresentation(Alphabet(("a", "b"))))
    assert (h.invariant_factors, h.free_rank) == ([], 2)
    fib = pres(["t^-1 a t b^-1", "t^-1 b t b^-1 a^-1"])
    h = h1_of_presentation(fib)
    assert (h.invariant_factors, h.free_rank) == ([], 1)
    at = Alphabet(("a", "t"))
    klein = pres(["t^-1 a t a"], at)
    h = h1_of_presentation(klein)
    assert (h.invariant_factors, h.free_rank) == ([2], 1)


def test_h1_coordinates_are_homomorphic():
    h = AbelianGroupSNF([[2, 0, 0], [0, 3, 3]], 3)
    assert (h.invariant_factors, h.free_rank) == ([6], 1)
    x, y = [1, 2, 0], [0, 1, 5]
    s = h.normalize([a + b for a, b in zip(h.coords(x), h.coords(y))])
    assert h.coords([a + b for a, b in zip(x, y)]) == s
    assert h.coords([2, 0, 0]) == h.normalize([0] * len(h.moduli))


def test_lift_inverts_coords():
    h = AbelianGroupSNF([[2, 4, 0], [6, 8, 0]], 3)
    for c in ([0, 1, 0], [1, 3, -2], [0, 0, 5]):
        c = h.normalize(c)
        assert h.coords(h.lift(c)) == c


def test_delta_examples():
    fib = pres(["t^-1 a t b^-1", "t^-1 b t b^-1 a^-1"])
    d = SuspensionDatum(fib, [ABT.parse("a"), ABT.parse("b")], ABT.parse("t"))
    assert d.delta(ABT.parse("t")) == 1
    assert d.delta(ABT.parse("a")) == 0 and d.delta(ABT.parse("b")) == 0
    assert d.delta(ABT.parse("t^2 a")) == 2
    assert d.delta(ABT.parse("t^-1 b t^-2")) == -3


def test_delta_rejects_bad_datum():
    free = GroupPresentation(ABT)
    with pytest.raises(SuspkitError):
        SuspensionDatum(free, [ABT.parse("a")], ABT.parse("t"))
    fib = pres(["t^-1 a t b^-1", "t^-1 b t b^-1 a^-1"])
    with pytest.raises(SuspkitError):
        SuspensionDatum(fib, [ABT.parse("a"), ABT.parse("b")], ABT.parse("t^2"))
