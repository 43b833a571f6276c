"""Random objects over the bundled splittings, shared by several test files."""

import itertools

from suspkit.gogaut import DehnTwist, InertTwist, act_on_bass

ACCEPTANCE = []   # lines printed by the acceptance suite


def twist_choices(sp, S):
    return [(e, s) for e in sp.gog.graph.edges for s in S.get(e, ())]


def random_twist(sp, S, r, max_power=2):
    e, s = r.choice(twist_choices(sp, S))
    G = sp.gog.vertex_groups[sp.gog.t(e)]
    return DehnTwist(e, G.power(s, r.randint(-max_power, max_power)))


def random_inert(sp, r, fix_base=True):
    X = sp.gog
    gammas = {v: X.random_element(v, r, 3) for v in X.graph.vertices}
    if fix_base:
        gammas[sp.base] = ()
    return InertTwist(gammas)


def enumerate_twist_powers(sp, S, family, bound):
    """Search twist exponents in ``[-bound, bound]`` directly: apply every
    product of twist powers to the family and compare degrees with the
    target pattern.  Returns the first exponent vector found, or None."""
    X = sp.gog
    pairs = [(e, s) for e in sorted(X.graph.edges) for s in S.get(e, ())]
    target = [0] * (len(family) - 1) + [1]
    for rs in itertools.product(range(-bound, bound + 1), repeat=len(pairs)):
        moved = list(family)
        for (e, s), r in zip(pairs, rs):
            if r:
                d = DehnTwist(e, X.vertex_groups[X.t(e)].power(s, r)).automorphism(X)
                moved = [act_on_bass(d, x) for x in moved]
        if [sp.delta(x) for x in moved] == target:
            return list(rs)
    return None
