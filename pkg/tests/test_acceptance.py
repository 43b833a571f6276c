"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

import random
import time

from oracles import brute_force_solve, determinantal_invariants
from suspkit import corpus
from suspkit.abelian import h1_of_presentation, matmul
from suspkit.formats import parse_aut, parse_grp, parse_iso
from suspkit.freeaut import FreeAutomorphism, compose
from suspkit.gogaut import DehnTwist, act_on_bass, auto_centralizers, twist_transvection
from suspkit.orbit import DiophantineSystem, solve_diophantine
from suspkit.suspension import (CONJUGATE, build_iso_from_conjugacy, build_suspension,
                                check_item4, conjugacy_pipeline, extract_conjugacy,
                                toroidal_witness_search)
from suspkit.words import exponent_vector

from support import ACCEPTANCE, random_inert, twist_choices

SEED = corpus.seed(20240601)


def record(number, title, ok, detail, elapsed):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail} ({elapsed:.2f}s)"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def vecmul(v, M):
    return [sum(v[i] * M[i][j] for i in range(len(v))) for j in range(len(M[0]))]


def test_1_diophantine_oracle():
    r = random.Random(SEED)
    start = time.perf_counter()
    yes = no = outside = 0
    bad = []
    for k in range(500):
        A, b = corpus.random_system(r, max_dim=4, bound=5)
        system = DiophantineSystem([("x", (i,)) for i in range(len(A[0]))], A, b)
        dec = solve_diophantine(system)
        bf = brute_force_solve(A, b, 50)
        if dec.decided:
            yes += 1
            if any(system.residual(dec.solution)):
                bad.append((k, "witness does not verify"))
            if bf is None:
                # solvable, but every solution leaves the box; the exact witness settles it
                outside += 1
        else:
            no += 1
            if bf is not None:
                bad.append((k, "brute force found a solution"))
            if dec.failing_row is None:
                bad.append((k, "no divisibility certificate"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(1, "Diophantine solver vs brute force", ok,
           f"500 systems, {yes} yes / {no} no, {len(bad)} disagreements, "
           f"{outside} solvable only outside the box", elapsed)
    assert ok, bad[:5]


def test_2_transvection_law():
    r = random.Random(SEED + 2)
    loaded = []
    for name in corpus.SPLITTINGS:
        sp = corpus.load_splitting(name)
        S = corpus.load_centralizers(sp, name)
        if twist_choices(sp, S):
            loaded.append((sp, S))
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        sp, S = r.choice(loaded)
        X = sp.gog
        e, s = r.choice(twist_choices(sp, S))
        G = X.vertex_groups[X.t(e)]
        d = DehnTwist(e, G.power(s, r.choice([-2, -1, 1, 2])))
        x = X.random_loop(sp.base, r)
        y = act_on_bass(d.automorphism(X), x)
        h1 = sp.pi1.h1
        M = twist_transvection(d, sp)
        if sp.bar(y) != h1.normalize(vecmul(list(sp.bar(x)), M)):
            failures += 1
        h = type(x).vertex_element(X.t(e), d.gamma)
        if sp.delta(y) != sp.delta(x) + sp.ncount(x, e) * sp.delta(h):
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 5
    record(2, "transvection law and degree law", ok,
           f"200 pairs over {len(loaded)} splittings, {failures} failures", elapsed)
    assert ok


def test_3_transvections_commute():
    start = time.perf_counter()
    pairs = failures = 0
    for name in corpus.ALL_SPLITTINGS:
        sp = corpus.load_splitting(name)
        S = corpus.load_centralizers(sp, name)
        X = sp.gog
        mats = []
        for e, s in twist_choices(sp, S):
            for k in (1, -1, 2):
                mats.append(twist_transvection(DehnTwist(e, X.vertex_groups[X.t(e)].power(s, k)), sp))
        for i, P in enumerate(mats):
            for Q in mats[i:]:
                pairs += 1
                failures += matmul(P, Q) != matmul(Q, P)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and pairs > 0
    record(3, "twist matrices commute", ok, f"{pairs} pairs, {failures} failures", elapsed)
    assert ok


def test_4_inert_twists_trivial():
    r = random.Random(SEED + 4)
    start = time.perf_counter()
    failures = 0
    for name in corpus.ALL_SPLITTINGS:
        sp = corpus.load_splitting(name)
        X = sp.gog
        for _ in range(100):
            phi = random_inert(sp, r).automorphism(X)
            x = X.random_loop(sp.base, r)
            failures += act_on_bass(phi, x) != X.normalize(x)
    elapsed = time.perf_counter() - start
    ok = failures == 0
    record(4, "inert twists act trivially", ok,
           f"{100 * len(corpus.ALL_SPLITTINGS)} loops, {failures} failures", elapsed)
    assert ok


def test_5_certificate_round_trip():
    r = random.Random(SEED + 5)
    start = time.perf_counter()
    failures = 0
    for _ in range(50):
        phi1, phi2, c = corpus.random_conjugacy(r)
        cert = build_iso_from_conjugacy(c, phi1, phi2)
        back = extract_conjugacy(cert)
        ok = (c.verify(phi1, phi2) and not cert.violations() and check_item4(cert).holds
              and back.verify(phi1, phi2) and back == c)
        failures += not ok
    elapsed = time.perf_counter() - start
    ok = failures == 0
    record(5, "conjugacy certificate round trip", ok, f"50 certificates, {failures} failures", elapsed)
    assert ok


def test_6_fibonacci_toroidal():
    phi = parse_aut(corpus.read("fib.aut"))
    start = time.perf_counter()
    found = toroidal_witness_search(phi, 4, 2)
    elapsed = time.perf_counter() - start
    w = phi.domain.parse("a b a^-1 b^-1")
    ok = (found == (w, 2) and phi(w) == phi.domain.parse("b a b^-1 a^-1")
          and phi.power(2)(w) == w and elapsed < 1)
    record(6, "Fibonacci toroidal witness", ok,
           f"found {phi.domain.format(found[0]) if found else None}, k = {found and found[1]}", elapsed)
    assert ok


def h1_from_matrix(phi):
    """Invariants of the suspension from the minors oracle on ``M - I``."""
    n = phi.rank
    rows = [exponent_vector(w, n) for w in phi.images]
    diff = [[rows[i][j] - (i == j) for j in range(n)] for i in range(n)]
    diag, rank = determinantal_invariants(diff, n)
    return [d for d in diag if d > 1], n - rank + 1


def test_7_h1_desk_checks():
    start = time.perf_counter()
    cases = {
        "Fibonacci": (FreeAutomorphism.from_strings("ab", ["b", "a b"]), "fib-suspension.grp", ([], 1)),
        "Klein bottle": (FreeAutomorphism.from_strings("a", ["a^-1"]), "klein-suspension.grp", ([2], 1)),
        "HNN of Z": (FreeAutomorphism.from_strings("a", ["a"]), "hnn-z.grp", ([], 2)),
    }
    failures = []
    for label, (phi, grp, expected) in cases.items():
        h = h1_of_presentation(build_suspension(phi).presentation)
        g = h1_of_presentation(parse_grp(corpus.read(grp)).presentation)
        got = {(tuple(h.invariant_factors), h.free_rank), (tuple(g.invariant_factors), g.free_rank)}
        oracle = h1_from_matrix(phi)
        if got != {(tuple(expected[0]), expected[1])} or oracle != expected:
            failures.append(label)
    elapsed = time.perf_counter() - start
    ok = not failures
    record(7, "H_1 desk checks", ok, "3 suspensions" + (f", failed {failures}" if failures else ""), elapsed)
    assert ok


def test_8_end_to_end_pipeline():
    phi1 = parse_aut(corpus.read("fib.aut"))
    start = time.perf_counter()
    phi2 = compose(FreeAutomorphism.inner(phi1.domain, (1,)), phi1)
    iso = parse_iso(phi1, phi2, corpus.read("fib_ad.iso"))
    sp = build_suspension(phi2).splitting()
    S = auto_centralizers(sp.gog)
    res = conjugacy_pipeline(phi1, phi2, iso, sp, S, None)
    elapsed = time.perf_counter() - start
    cert = res.certificate
    ok = (res.verdict == CONJUGATE and cert is not None and cert.verify(phi1, phi2) and elapsed < 5)
    detail = res.verdict + (f", f0 = {phi1.domain.format(cert.f0)}" if cert else "")
    record(8, "end-to-end conjugacy pipeline", ok, detail, elapsed)
    assert ok


if __name__ == "__main__":
    for test in [v for k, v in sorted(globals().items()) if k.startswith("test_")]:
        try:
            test()
        except AssertionError:
            pass
