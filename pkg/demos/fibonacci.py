"""Walk through the Fibonacci automorphism a -> b, b -> a b.

Builds its suspension, reads off H_1, finds the periodic conjugacy class of
the commutator, and decides conjugacy with ad_a o phi from an isomorphism
certificate.
"""

from suspkit import corpus
from suspkit.abelian import h1_of_presentation
from suspkit.formats import format_conj, parse_aut, parse_iso
from suspkit.freeaut import FreeAutomorphism, compose
from suspkit.gogaut import auto_centralizers
from suspkit.suspension import build_suspension, conjugacy_pipeline, toroidal_witness_search

phi = parse_aut(corpus.read("fib.aut"))
F = phi.domain
print("phi:", ", ".join(f"{n} -> {F.format(w)}" for n, w in zip(F.names, phi.images)))

S = build_suspension(phi)
print("\nsuspension presentation")
print(S.presentation.format())
h = h1_of_presentation(S.presentation)
print("H_1: free rank", h.free_rank, "torsion", h.invariant_factors)

w, k = toroidal_witness_search(phi, 4, 2)
print("\nperiodic class:", F.format(w), "with k =", k)
print("  phi(w)   =", F.format(phi(w)))
print("  phi^2(w) =", F.format(phi.power(2)(w)))

phi2 = compose(FreeAutomorphism.inner(F, (1,)), phi)
iso = parse_iso(phi, phi2, corpus.read("fib_ad.iso"))
sp = build_suspension(phi2).splitting()
res = conjugacy_pipeline(phi, phi2, iso, sp, auto_centralizers(sp.gog))
print("\npipeline on phi and ad_a o phi:", res.verdict)
print(format_conj(res.certificate), end="")
print("certificate verifies:", res.certificate.verify(phi, phi2))
