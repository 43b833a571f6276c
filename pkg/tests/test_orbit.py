import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_solve, rational_solvable
from suspkit import corpus
from suspkit.errors import CertificateError
from suspkit.formats import parse_bass, parse_family
from suspkit.gogaut import DehnTwist, GogAutomorphism, act_on_bass
from suspkit.orbit import (DiophantineSystem, Pi1Automorphism, apply_twists, build_system,
                           decide_aut_orbit, decide_mod_orbit, delta_pattern, solve_diophantine)

from support import enumerate_twist_powers


def fam(sp, *lines):
    return [parse_bass(sp.gog, text) for text in lines]


def system(A, b):
    n = len(A[0]) if A else 0
    return DiophantineSystem([("x", (i,)) for i in range(n)], A, b)


# -- building the system ------------------------------------------------------

def test_fiber_family_rhs(splittings, centralizers):
    sp = splittings["hnn_z"]
    sys_ = build_system(sp, centralizers["hnn_z"], fam(sp, "{a}", "{a^2}", "{a^-1}"))
    assert sys_.b == [0, 0, 1]
    assert sys_.shape == (3, 2)


def test_two_r_equals_three(splittings, centralizers):
    sp = splittings["parity"]
    gamma = fam(sp, "{a^-2} e {} e {}")
    assert sp.delta(gamma[0]) == -2 and sp.ncount(gamma[0], "e") == 2
    sys_ = build_system(sp, centralizers["parity"], gamma)
    assert sys_.A == [[2]] and sys_.b == [3]
    dec = solve_diophantine(sys_)
    assert not dec.decided and dec.failing_row == 0


def test_empty_S(splittings):
    sp = splittings["parity"]
    sys_ = build_system(sp, {}, fam(sp, "{} e {}", "{a}"))
    assert sys_.shape == (2, 0)
    assert sys_.b == [0, 0]
    assert solve_diophantine(sys_).decided
    assert solve_diophantine(build_system(sp, {}, fam(sp, "{a}"))).decided
    assert not solve_diophantine(build_system(sp, {}, fam(sp, "{a^2}"))).decided


def test_bad_centralizer_rejected(splittings):
    sp = splittings["fib_loop"]
    with pytest.raises(CertificateError):
        build_system(sp, {"t": [(1,)]}, fam(sp, "{a}"))


# -- solving ------------------------------------------------------------------

def test_solve_examples():
    dec = solve_diophantine(system([[2]], [2]))
    assert dec.decided and dec.solution == [1]
    dec = solve_diophantine(system([[2]], [1]))
    assert not dec.decided and dec.failing_row == 0
    dec = solve_diophantine(system([[2, 0], [0, 3]], [4, 6]))
    assert dec.decided and dec.solution == [2, 2]
    assert brute_force_solve([[2, 0], [0, 3]], [4, 6], 5) == [2, 2]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_solver_matches_brute_force(seed):
    A, b = corpus.random_system(random.Random(seed), max_dim=3, bound=5)
    dec = solve_diophantine(system(A, b))
    bf = brute_force_solve(A, b, 20)
    if bf is not None:
        assert dec.decided
    if dec.decided:
        assert all(x == 0 for x in system(A, b).residual(dec.solution))
    else:
        assert bf is None
        assert dec.failing_row is not None


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_unsolvable_over_q_is_reported(seed):
    A, b = corpus.random_system(random.Random(seed), max_dim=4, bound=5, solvable=False)
    if not rational_solvable(A, b):
        assert not solve_diophantine(system(A, b)).decided


# -- Mod-level decision -------------------------------------------------------

def test_pattern_already_satisfied(splittings, centralizers):
    sp = splittings["hnn_z"]
    dec = decide_mod_orbit(sp, centralizers["hnn_z"], fam(sp, "{a}", "{} e {}"))
    assert dec.decided and all(r == 0 for r in dec.solution)
    assert dec.twist_sequence(sp) == []


def test_hnn_z_family_matches_enumeration(splittings, centralizers):
    sp = splittings["hnn_z"]
    S = centralizers["hnn_z"]
    family = parse_family(sp, corpus.read("hnn_z.fam"))
    dec = decide_mod_orbit(sp, S, family)
    assert dec.decided == (enumerate_twist_powers(sp, S, family, 3) is not None)
    bad = fam(sp, "{a}", "{a}")       # degree 0 at j0 and twists by a cannot change it
    dec = decide_mod_orbit(sp, S, bad)
    assert not dec.decided
    assert enumerate_twist_powers(sp, S, bad, 3) is None


def test_parity_family(splittings, centralizers):
    sp = splittings["parity"]
    dec = decide_mod_orbit(sp, centralizers["parity"], parse_family(sp, corpus.read("parity.fam")))
    assert not dec.decided and dec.failing_row == 0


def test_twist_repairs_degree(splittings, centralizers):
    sp = splittings["parity"]
    S = centralizers["parity"]
    family = fam(sp, "{} e {a^-1}", "{a^-3} e {}")   # degrees -1 and -3, n = 1 each
    dec = decide_mod_orbit(sp, S, family)
    assert not dec.decided         # r = 1 and r = 4 cannot both hold
    family = fam(sp, "{} e {a^-1}", "{a^-1} e {} e {a}")
    dec = decide_mod_orbit(sp, S, family)
    assert not dec.decided
    family = fam(sp, "{a^-1} e {a^-1}", "{a^-1} e {}")   # r = 2 twice
    dec = decide_mod_orbit(sp, S, family)
    assert dec.decided and dec.solution == [2]
    family = fam(sp, "{a^2} e {}", "{} e {a^2} e {a^3}")
    dec = decide_mod_orbit(sp, S, family)
    assert dec.decided and dec.solution == [-2]
    moved = [apply_twists(sp, dec.twist_sequence(sp), x) for x in family]
    assert delta_pattern(sp, moved) == [0, 1]
    assert enumerate_twist_powers(sp, S, family, 3) == [-2]


FAMILY_LINES = {
    "parity": ["{a}", "{a^-1}", "{} e {}", "{} ebar {}", "{a} e {a}", "{} e {} e {}", "{a^2} ebar {}"],
    "fbc_hnn": ["{a}", "{s}", "{s^-1}", "{} e {}", "{s} e {}", "{} ebar {s^2}", "{b} e {} e {s}"],
    "hnn_z": ["{a}", "{} e {}", "{a} ebar {}", "{} e {a} e {}"],
}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(FAMILY_LINES)), st.integers(0, 10 ** 6))
def test_mod_decision_matches_enumeration(name, seed):
    sp = corpus.load_splitting(name)
    S = corpus.load_centralizers(sp, name)
    r = random.Random(seed)
    family = fam(sp, *r.choices(FAMILY_LINES[name], k=r.randint(1, 3)))
    dec = decide_mod_orbit(sp, S, family)
    found = enumerate_twist_powers(sp, S, family, 4)
    if found is not None:
        assert dec.decided
    if dec.decided:
        moved = family
        for d in dec.twist_sequence(sp):
            moved = [act_on_bass(d.automorphism(sp.gog), x) for x in moved]
        assert [sp.delta(x) for x in moved] == [0] * (len(family) - 1) + [1]
        if all(abs(x) <= 4 for x in dec.solution):
            assert found is not None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(FAMILY_LINES)), st.integers(0, 10 ** 6))
def test_monotonicity(name, seed):
    sp = corpus.load_splitting(name)
    S = corpus.load_centralizers(sp, name)
    r = random.Random(seed)
    family = fam(sp, *r.choices(FAMILY_LINES[name], k=r.randint(1, 3)))
    pairs = [(e, s) for e in S for s in S[e]]
    sub = [p for p in pairs if r.random() < 0.5]
    smaller = {}
    for e, s in sub:
        smaller.setdefault(e, []).append(s)
    if decide_mod_orbit(sp, smaller, family).decided:
        assert decide_mod_orbit(sp, S, family).decided


# -- Aut-level decision -------------------------------------------------------

def swap_a_e(sp):
    """``a <-> e`` on ``Z^2 = <a, e | [a, e]>``."""
    assert sp.pi1.alphabet.names == ("a", "e")
    return Pi1Automorphism(((2,), (1,)), ((2,), (1,)))


def test_identity_rep_reduces_to_mod(splittings, centralizers):
    sp = splittings["parity"]
    S = centralizers["parity"]
    for lines in (["{a}"], ["{} e {}", "{a}"], ["{a^2} e {}", "{} e {a^2} e {a}"]):
        family = fam(sp, *lines)
        a = decide_aut_orbit(sp, S, family, [GogAutomorphism.identity(sp.gog)])
        m = decide_mod_orbit(sp, S, family)
        assert a.decided == m.decided and a.solution == m.solution
        assert decide_aut_orbit(sp, S, family).decided == m.decided


def test_rep_fixing_pattern(splittings):
    sp = splittings["parity"]
    family = fam(sp, "{a}", "{} e {}")
    assert not decide_mod_orbit(sp, {}, family).decided
    dec = decide_aut_orbit(sp, {}, family, [swap_a_e(sp)])
    assert dec.decided and dec.coset_index == 1 and dec.twists == []


def test_second_rep_succeeds(splittings):
    sp = splittings["parity"]
    X = sp.gog
    family = fam(sp, "{} e {}", "{a}")
    twist = DehnTwist("e", (1,)).automorphism(X)     # e -> e a breaks the fiber condition
    ident = GogAutomorphism.identity(X)
    dec = decide_aut_orbit(sp, {}, family, [twist, ident])
    assert dec.decided and dec.coset_index == 2
    assert [a["decided"] for a in dec.attempts] == [False, True]


def test_all_reps_fail(splittings):
    sp = splittings["parity"]
    family = parse_family(sp, corpus.read("parity.fam"))
    dec = decide_aut_orbit(sp, corpus.load_centralizers(sp, "parity"), family,
                           [GogAutomorphism.identity(sp.gog), swap_a_e(sp)])
    assert not dec.decided and len(dec.attempts) == 2


def test_invalid_rep(splittings):
    sp = splittings["parity"]
    bogus = Pi1Automorphism(((1, 1), (2,)), ((1,), (2,)))
    with pytest.raises(CertificateError):
        decide_aut_orbit(sp, {}, fam(sp, "{a}"), [bogus])
