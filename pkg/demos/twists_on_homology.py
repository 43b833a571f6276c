"""Dehn twists act on H_1 by transvections, and transvections from one
splitting commute.  Prints the matrices for a few bundled splittings and
checks the action on a random loop.
"""

import random

from suspkit import corpus
from suspkit.abelian import matmul
from suspkit.formats import format_bass
from suspkit.gogaut import DehnTwist, act_on_bass, twist_transvection

r = random.Random(corpus.seed(7))
for name in ("hnn_z", "theta", "fbc_hnn"):
    sp = corpus.load_splitting(name)
    S = corpus.load_centralizers(sp, name)
    X = sp.gog
    print(f"{name}: H_1 invariants {sp.pi1.h1.invariant_factors}, free rank {sp.pi1.h1.free_rank}")
    mats = []
    for e in sorted(S):
        for s in S[e]:
            d = DehnTwist(e, s)
            M = twist_transvection(d, sp)
            mats.append(M)
            print(f"  twist {e} by {X.vertex_groups[X.t(e)].format(s)}: {M}")
    if mats:
        x = X.random_loop(sp.base, r)
        e = sorted(S)[0]
        d = DehnTwist(e, S[e][0])
        y = act_on_bass(d.automorphism(X), x)
        print("  loop", format_bass(X, x))
        print("  image", format_bass(X, y))
        print("  bar before", sp.bar(x), "after", sp.bar(y))
    commute = all(matmul(P, Q) == matmul(Q, P) for P in mats for Q in mats)
    print("  all pairs commute:", commute)
