"""The orbit problem on Z^2 = <a, e | [a, e]> split as a loop with vertex
group <a>.

The Dehn twist along e by a^r adds r * n(x, e) * delta(a) to the degree of x.
With delta(a) = 1 here, an element of degree -2 crossing e twice needs
2r = 3, which has no integer solution.  A different family is repaired by a
single twist.
"""

from suspkit import corpus
from suspkit.formats import format_bass, parse_bass
from suspkit.orbit import apply_twists, build_system, decide_mod_orbit, delta_pattern

sp = corpus.load_splitting("parity")
S = corpus.load_centralizers(sp, "parity")
X = sp.gog


def show(lines):
    family = [parse_bass(X, s) for s in lines]
    system = build_system(sp, S, family)
    print("family:", ", ".join(lines))
    print("  degrees", [sp.delta(x) for x in family], "edge counts", [sp.ncount(x, "e") for x in family])
    print("  A =", system.A, " b =", system.b)
    dec = decide_mod_orbit(sp, S, family)
    if not dec.decided:
        print("  no: divisibility fails at canonical row", dec.failing_row)
        return
    twists = dec.twist_sequence(sp)
    moved = [apply_twists(sp, twists, x) for x in family]
    print("  yes: exponents", dec.solution)
    print("  moved family:", ", ".join(format_bass(X, x) for x in moved))
    print("  degrees now", delta_pattern(sp, moved))


show(["{a^-2} e {} e {}"])
print()
show(["{a^2} e {}", "{} e {a^2} e {a^3}"])
