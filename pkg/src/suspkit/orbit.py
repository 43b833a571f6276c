"""The linear Diophantine system behind the orbit problem for fiber and
orientation, and the Mod- and Aut-level decisions built on it.

Unknowns are indexed by pairs ``(e, s)`` with ``s`` in ``S[e]``.  Row ``j``
of the system reads

    sum_{(e, s)} r_{e,s} n(gamma_j, e) delta(s) = -delta(gamma_j) + [j == j0]

with ``j0`` the last index of the family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import smith_solve
from .errors import CertificateError, SuspkitError
from .gog import BassExpression, Splitting, is_path_element, signed_edge_count
from .gogaut import (DehnTwist, GogAutomorphism, act_on_bass, small_modular_generators,
                     validate_gog_aut)
from .folding import substitute
from .words import exponent_vector


@dataclass
class DiophantineSystem:
    unknowns: list          # [(edge, s_word)]
    A: list
    b: list

    @property
    def shape(self) -> tuple:
        return len(self.b), len(self.unknowns)

    def residual(self, r) -> list:
        return [sum(a * x for a, x in zip(row, r)) - bj for row, bj in zip(self.A, self.b)]


@dataclass
class OrbitDecision:
    decided: bool
    solution: list = None
    twists: list = field(default_factory=list)   # [(edge, s_word, r)]
    failing_row: int = None
    coset_index: int = None
    images: list = None                           # alpha_i(gamma_j) when decided through cosets
    attempts: list = field(default_factory=list)

    def twist_sequence(self, splitting: Splitting) -> list:
        """The witness as Dehn twists ``D_{e, s^r}``, applied first to last."""
        X = splitting.gog
        return [DehnTwist(e, X.vertex_groups[X.t(e)].power(s, r)) for e, s, r in self.twists if r]


def _unknowns(splitting: Splitting, S: dict) -> list:
    X = splitting.gog
    out = []
    for e in sorted(X.graph.edges):
        for s in S.get(e, ()):
            out.append((e, X.vertex_groups[X.t(e)].normal_form(s)))
    return out


def build_system(splitting: Splitting, S: dict, family: list) -> DiophantineSystem:
    X = splitting.gog
    small_modular_generators(X, S)      # certificate check
    for x in family:
        if not is_path_element(X, x):
            raise SuspkitError("family member is not a path element")
    unknowns = _unknowns(splitting, S)
    ds = [splitting.delta(BassExpression.vertex_element(X.t(e), s)) for e, s in unknowns]
    A, b = [], []
    for j, x in enumerate(family):
        A.append([signed_edge_count(X, x, e) * d for (e, _), d in zip(unknowns, ds)])
        b.append(-splitting.delta(x) + (1 if j == len(family) - 1 else 0))
    return DiophantineSystem(unknowns, A, b)


def solve_diophantine(system: DiophantineSystem) -> OrbitDecision:
    m, n = system.shape
    r, bad = smith_solve(system.A, system.b, n)
    if r is None:
        return OrbitDecision(False, failing_row=bad)
    if any(system.residual(r)):
        raise AssertionError("Smith solution does not satisfy the system")
    twists = [(e, s, x) for (e, s), x in zip(system.unknowns, r)]
    return OrbitDecision(True, solution=r, twists=twists)


def apply_twists(splitting: Splitting, twists: list, x: BassExpression) -> BassExpression:
    X = splitting.gog
    for d in twists:
        x = act_on_bass(d.automorphism(X), x)
    return x


def delta_pattern(splitting: Splitting, family: list) -> list:
    return [splitting.delta(x) for x in family]


def _target(family) -> list:
    return [0] * (len(family) - 1) + [1] if family else []


def decide_mod_orbit(splitting: Splitting, S: dict, family: list) -> OrbitDecision:
    """Decide whether a product of Dehn twists sends every ``gamma_j``
    (``j < j0``) to degree 0 and ``gamma_j0`` to degree 1; the witness is
    re-verified by acting on the family."""
    system = build_system(splitting, S, family)
    dec = solve_diophantine(system)
    if dec.decided:
        seq = dec.twist_sequence(splitting)
        moved = [apply_twists(splitting, seq, x) for x in family]
        if delta_pattern(splitting, moved) != _target(family):
            raise AssertionError("twist witness fails re-verification")
    return dec


@dataclass(frozen=True)
class Pi1Automorphism:
    """An automorphism of the presented fundamental group, given by images
    of the presentation generators and a claimed inverse."""

    images: tuple
    inverse_images: tuple

    def violations(self, splitting: Splitting) -> list:
        """Checks decidable for any presentation: arities, and the induced
        maps on ``H_1`` are well defined and mutually inverse."""
        p = splitting.pi1
        n = p.alphabet.rank
        if len(self.images) != n or len(self.inverse_images) != n:
            return [f"expected {n} images and {n} inverse images"]
        h1 = p.h1
        out = []
        for r in p.presentation.relators:
            for imgs, name in ((self.images, "map"), (self.inverse_images, "inverse")):
                if any(h1.coords(exponent_vector(substitute(r, imgs), n))):
                    out.append(f"{name} does not kill relator {p.alphabet.format(r)} in H_1")
        for i in range(n):
            g = (i + 1,)
            for a, b in ((self.images, self.inverse_images), (self.inverse_images, self.images)):
                w = substitute(substitute(g, a), b)
                if h1.coords(exponent_vector(w, n)) != h1.coords(exponent_vector(g, n)):
                    out.append(f"map and inverse do not compose to the identity on {p.alphabet.names[i]} in H_1")
        return out

    def on_loop(self, splitting: Splitting, x: BassExpression) -> BassExpression:
        p = splitting.pi1
        return p.to_bass(substitute(p.to_word(x), self.images))


def _apply_rep(splitting: Splitting, alpha, x: BassExpression) -> BassExpression:
    if isinstance(alpha, GogAutomorphism):
        return act_on_bass(alpha, x)
    return alpha.on_loop(splitting, x)


def _check_rep(splitting: Splitting, alpha) -> list:
    if isinstance(alpha, GogAutomorphism):
        return validate_gog_aut(alpha)
    if isinstance(alpha, Pi1Automorphism):
        return alpha.violations(splitting)
    return ["unsupported coset representative type"]


def decide_aut_orbit(splitting: Splitting, S: dict, family: list, coset_reps=None) -> OrbitDecision:
    """Run the Mod-level decision on ``alpha_i(family)`` for each coset
    representative in order; the first success wins."""
    reps = [GogAutomorphism.identity(splitting.gog)] if not coset_reps else list(coset_reps)
    for i, alpha in enumerate(reps):
        bad = _check_rep(splitting, alpha)
        if bad:
            raise CertificateError(f"coset representative {i + 1}: " + "; ".join(bad))
    attempts = []
    for i, alpha in enumerate(reps):
        moved = [_apply_rep(splitting, alpha, x) for x in family]
        dec = decide_mod_orbit(splitting, S, moved)
        attempts.append({"index": i + 1, "decided": dec.decided, "failing_row": dec.failing_row})
        if dec.decided:
            dec.coset_index = i + 1
            dec.images = moved
            dec.attempts = attempts
            return dec
    return OrbitDecision(False, failing_row=attempts[-1]["failing_row"] if attempts else None,
                         attempts=attempts)
