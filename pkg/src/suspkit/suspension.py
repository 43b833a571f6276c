"""Suspensions ``F x|_phi <t>`` and certificates for isomorphisms between them.

An isomorphism of suspensions that preserves fiber and orientation is the
same thing as a conjugacy ``phi_2 o ad_{f0} o psi = psi o phi_1`` in
``Aut(F)``.  The classes here check both kinds of certificate exactly with
free-by-cyclic normal forms and translate between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import SuspensionDatum, h1_of_presentation
from .errors import CertificateError, OracleInconsistency, SuspkitError
from .folding import substitute
from .freeaut import FreeAutomorphism
from .gog import BassExpression, Graph, GraphOfGroups, Splitting
from .gogaut import auto_centralizers, induced_pi1_map
from .groups import FreeByCyclicGroup, FreeGroup, GroupMap
from .orbit import OrbitDecision, Pi1Automorphism, apply_twists, decide_aut_orbit
from .words import (TRANSVERSE, Alphabet, GroupPresentation, Word, cyclic_words,
                    exponent_vector, free_conjugate, inverse, mul, reduce)

CONJUGATE = "conjugate-with-certificate"
NOT_CONJUGATE = "not-conjugate-given-oracles"
ORACLE_MISSING = "iso-oracle-missing"


@dataclass(frozen=True)
class Suspension:
    phi: FreeAutomorphism

    @property
    def group(self) -> FreeByCyclicGroup:
        return FreeByCyclicGroup(self.phi, TRANSVERSE)

    @property
    def alphabet(self) -> Alphabet:
        return self.group.alphabet

    @property
    def presentation(self) -> GroupPresentation:
        return self.group.presentation()

    @property
    def t(self) -> Word:
        return (self.phi.rank + 1,)

    def fiber_words(self) -> list:
        return list(self.phi.domain.gens())

    def datum(self) -> SuspensionDatum:
        return SuspensionDatum(self.presentation, self.fiber_words(), self.t)

    def splitting(self, vertex: str = "v") -> Splitting:
        """One vertex, one loop ``t``; ``i_t = Id`` and ``i_{bar t} = phi``.

        The loop letter is the transverse letter, so the presentation of the
        fundamental group relative to the empty tree is the suspension
        presentation itself.
        """
        names = self.phi.domain.names
        tbar = TRANSVERSE + "bar"
        while tbar in names:
            tbar += "_"
        graph = Graph.from_pairs([vertex], [(TRANSVERSE, tbar, vertex, vertex)])
        F = FreeGroup(self.phi.domain)
        E = FreeGroup(self.phi.domain)
        X = GraphOfGroups(graph, {vertex: F}, {TRANSVERSE: E},
                          {TRANSVERSE: tuple(self.phi.domain.gens()), tbar: self.phi.images})
        pathdict = {name: BassExpression.vertex_element(vertex, g)
                    for name, g in zip(names, self.phi.domain.gens())}
        pathdict[TRANSVERSE] = BassExpression((TRANSVERSE,), ((vertex, ()), (vertex, ())))
        wordmap = {name: name for name in names + (TRANSVERSE,)}
        return Splitting(X, (), vertex, [pathdict[n] for n in names], pathdict[TRANSVERSE],
                         pathdict, wordmap)


def build_suspension(phi: FreeAutomorphism) -> Suspension:
    return Suspension(phi)


@dataclass(frozen=True)
class IsoCertificate:
    """``Psi : G_1 -> G_2`` by images of ``F u {t}`` with a claimed inverse."""

    phi1: FreeAutomorphism
    phi2: FreeAutomorphism
    images: tuple
    inverse_images: tuple

    def groups(self) -> tuple:
        return FreeByCyclicGroup(self.phi1), FreeByCyclicGroup(self.phi2)

    def as_map(self) -> GroupMap:
        G1, G2 = self.groups()
        return GroupMap(G1, G2, self.images, self.inverse_images)

    def violations(self) -> list:
        if self.phi1.domain != self.phi2.domain:
            return ["the two automorphisms act on different alphabets"]
        try:
            m = self.as_map()
        except SuspkitError as exc:
            return [str(exc)]
        return m.violations("Psi")

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise CertificateError("; ".join(bad))

    def __call__(self, w) -> Word:
        return self.as_map()(w)


@dataclass(frozen=True)
class ConjugacyCertificate:
    psi: FreeAutomorphism
    f0: Word

    def violations(self, phi1: FreeAutomorphism, phi2: FreeAutomorphism) -> list:
        """Generators where ``phi_2(ad_{f0}(psi(x))) != psi(phi_1(x))``."""
        out = []
        for name, x in zip(phi1.domain.names, phi1.domain.gens()):
            lhs = phi2(reduce(mul(inverse(self.f0), self.psi(x), self.f0)))
            rhs = self.psi(phi1(x))
            if lhs != rhs:
                out.append(f"relation fails on generator {name}: "
                           f"{phi1.domain.format(lhs)} != {phi1.domain.format(rhs)}")
        return out

    def verify(self, phi1, phi2) -> bool:
        return not self.violations(phi1, phi2)


@dataclass
class Item4Result:
    holds: bool
    fiber_degrees: list
    transverse_degree: int
    h1_matrix: list = field(default_factory=list)


def check_item4(cert: IsoCertificate) -> Item4Result:
    """Does ``Psi`` map ``bar F_1`` into ``bar F_2`` and ``bar t`` into
    ``bar t' + bar F_2``?  Read through the degree map of ``G_2``."""
    cert.validate()
    S1, S2 = Suspension(cert.phi1), Suspension(cert.phi2)
    d2 = S2.datum()
    n = cert.phi1.rank
    fiber = [d2.delta(cert.images[i]) for i in range(n)]
    trans = d2.delta(cert.images[n])
    h1a, h1b = S1.datum().h1, d2.h1
    matrix = []
    for k in range(len(h1a.moduli)):
        unit = [int(i == k) for i in range(len(h1a.moduli))]
        w = substitute(_word_of_vector(h1a.lift(unit)), cert.images)
        matrix.append(list(h1b.coords(exponent_vector(w, n + 1))))
    return Item4Result(all(d == 0 for d in fiber) and trans == 1, fiber, trans, matrix)


def _word_of_vector(vec) -> Word:
    out: list = []
    for i, x in enumerate(vec):
        out.extend([i + 1 if x > 0 else -(i + 1)] * abs(x))
    return tuple(out)


def extract_conjugacy(cert: IsoCertificate) -> ConjugacyCertificate:
    """``psi`` is the restriction of ``Psi`` to ``F``, and ``f0`` is read from
    ``Psi(t) = f0 t'``."""
    res = check_item4(cert)
    if not res.holds:
        raise CertificateError(f"certificate does not preserve fiber and orientation "
                               f"(fiber degrees {res.fiber_degrees}, transverse degree {res.transverse_degree})")
    G1, G2 = cert.groups()
    n = cert.phi1.rank
    imgs, back = [], []
    for i in range(n):
        k, w = G2.split(cert.images[i])
        if k:
            raise OracleInconsistency("a fiber image leaves the fiber despite degree 0")
        imgs.append(w)
        k, w = G1.split(cert.inverse_images[i])
        if k:
            raise OracleInconsistency("an inverse fiber image leaves the fiber")
        back.append(w)
    psi = FreeAutomorphism(cert.phi1.domain, tuple(imgs), tuple(back))
    k, w = G2.split(cert.images[n])
    if k != 1:
        raise OracleInconsistency("transverse image is not of the form f0 t")
    # t w = phi_2^-1(w) t
    f0 = cert.phi2.inverse()(w)
    out = ConjugacyCertificate(psi, f0)
    bad = out.violations(cert.phi1, cert.phi2)
    if bad:
        raise OracleInconsistency("extracted certificate fails: " + "; ".join(bad))
    return out


def build_iso_from_conjugacy(c: ConjugacyCertificate, phi1: FreeAutomorphism,
                             phi2: FreeAutomorphism) -> IsoCertificate:
    """``Psi|_F = psi`` and ``Psi(t) = f0 t``."""
    bad = c.violations(phi1, phi2)
    if bad:
        raise CertificateError("; ".join(bad))
    n = phi1.rank
    t = (n + 1,)
    psi_inv = c.psi.inverse()
    images = tuple(c.psi.images) + (mul(c.f0, t),)
    inv = tuple(psi_inv.images) + (mul(psi_inv(inverse(c.f0)), t),)
    cert = IsoCertificate(phi1, phi2, images, inv)
    cert.validate()
    if not check_item4(cert).holds:
        raise AssertionError("constructed certificate fails the orientation check")
    return cert


def toroidal_witness_search(phi: FreeAutomorphism, max_len: int, max_pow: int):
    """Search for ``(w, k)`` with ``phi^k(w)`` conjugate to ``w``.

    Order: by length of ``w``, then ``k``, then ``w``.  Both ``phi^k`` and
    ``phi^-k`` are tried for each ``k``; they detect the same classes.  A
    ``None`` result is not a proof of atoroidality.
    """
    if max_len < 1 or max_pow < 1:
        raise SuspkitError("bounds must be at least 1")
    powers = {}
    for length in range(1, max_len + 1):
        reps = list(cyclic_words(phi.rank, length))
        for k in range(1, max_pow + 1):
            if k not in powers:
                powers[k] = (phi.power(k), phi.power(-k))
            fwd, back = powers[k]
            for w in reps:
                if free_conjugate(fwd(w), w)[0] or free_conjugate(back(w), w)[0]:
                    return w, k
    return None


@dataclass
class PipelineResult:
    verdict: str
    certificate: ConjugacyCertificate = None
    decision: OrbitDecision = None
    iso: IsoCertificate = None
    diagnostics: list = field(default_factory=list)


def _pathdict_words(splitting: Splitting, names) -> list:
    p = splitting.pi1
    missing = [n for n in names if n not in splitting.pathdict]
    if missing:
        raise OracleInconsistency(f"path dictionary has no entry for {missing}")
    out = []
    for n in names:
        x = splitting.pathdict[n]
        if x.start != p.base or x.end != p.base:
            raise OracleInconsistency(f"path dictionary entry for {n} is not a loop at {p.base}")
        out.append(p.to_word(x))
    return out


def _wordmap_words(splitting: Splitting, alphabet: Alphabet) -> list:
    p = splitting.pi1
    out = []
    for name in p.alphabet.names:
        if name not in splitting.wordmap:
            raise OracleInconsistency(f"word map has no entry for {name}")
        out.append(alphabet.parse(splitting.wordmap[name]))
    return out


def _bass_of(splitting: Splitting, word, names) -> BassExpression:
    X = splitting.gog
    x = BassExpression.vertex_element(splitting.base)
    for letter in word:
        loop = splitting.pathdict[names[abs(letter) - 1]]
        x = X.concat(x, loop if letter > 0 else X.inverse(loop))
    return X.tidy(x)


def conjugacy_pipeline(phi1: FreeAutomorphism, phi2: FreeAutomorphism, iso: IsoCertificate = None,
                       splitting: Splitting = None, S: dict = None, coset_reps=None) -> PipelineResult:
    """Decide conjugacy of ``phi1`` and ``phi2`` in ``Out(F)`` given an
    isomorphism of suspensions and a splitting of the second one.

    The verdict ``conjugate-with-certificate`` is only returned with a
    conjugacy certificate that has been verified independently.
    """
    if iso is None:
        return PipelineResult(ORACLE_MISSING, diagnostics=["no isomorphism of suspensions supplied"])
    iso.validate()
    S2 = Suspension(phi2)
    G2 = S2.group
    names = G2.alphabet.names
    if splitting is None:
        splitting = S2.splitting()
    diag = []
    # oracle consistency
    p = splitting.pi1
    if p.h1.to_json() != h1_of_presentation(S2.presentation).to_json():
        raise OracleInconsistency("splitting and suspension have different abelianizations")
    pd = _pathdict_words(splitting, names)
    wm = _wordmap_words(splitting, G2.alphabet)
    for name, w in zip(names, pd):
        back = substitute(w, wm)
        if not G2.equal(back, G2.alphabet.parse(name)):
            raise OracleInconsistency(f"word map o path dictionary is not the identity on {name}")
    for r in p.presentation.relators:
        if not G2.is_identity(substitute(r, wm)):
            raise OracleInconsistency(f"word map does not kill relator {p.alphabet.format(r)}")
    split = Splitting(splitting.gog, splitting.tree, splitting.base,
                      [splitting.pathdict[n] for n in names[:-1]], splitting.pathdict[names[-1]],
                      splitting.pathdict, splitting.wordmap)
    if S is None:
        S = auto_centralizers(split.gog)
        diag.append("centralizer sets computed by the helper")
    family = [_bass_of(split, iso.images[i], names) for i in range(len(names))]
    dec = decide_aut_orbit(split, S, family, coset_reps)
    if not dec.decided:
        return PipelineResult(NOT_CONJUGATE, decision=dec,
                              diagnostics=diag + [f"orbit system unsolvable for all {len(dec.attempts)} coset representatives"])
    alpha = (coset_reps or [None])[dec.coset_index - 1]
    a_img, a_inv = _rep_maps(split, alpha)
    twists = dec.twist_sequence(split)
    undo = [type(d)(d.edge, split.gog.vertex_groups[split.gog.t(d.edge)].inv(d.gamma)) for d in reversed(twists)]
    n = p.alphabet.rank
    eta = [p.to_word(apply_twists(split, twists, p.generator_loop(i))) for i in range(n)]
    eta_inv = [p.to_word(apply_twists(split, undo, p.generator_loop(i))) for i in range(n)]
    # Psi' = wm o eta o alpha o pd o Psi, inverse in reverse
    images = tuple(substitute(substitute(substitute(substitute(w, pd), a_img), eta), wm)
                   for w in iso.images)
    inv_steps = [substitute(substitute(substitute(substitute(g, eta_inv), a_inv), wm), iso.inverse_images)
                 for g in pd]
    new = IsoCertificate(phi1, phi2, images, tuple(inv_steps))
    bad = new.violations()
    if bad:
        raise OracleInconsistency("repaired isomorphism is invalid: " + "; ".join(bad))
    cert = extract_conjugacy(new)
    bad = cert.violations(phi1, phi2)
    if bad:
        raise AssertionError("; ".join(bad))
    return PipelineResult(CONJUGATE, cert, dec, new, diag)


def _rep_maps(splitting: Splitting, alpha) -> tuple:
    n = splitting.pi1.alphabet.rank
    if alpha is None:
        gens = tuple((i + 1,) for i in range(n))
        return gens, gens
    if isinstance(alpha, Pi1Automorphism):
        return alpha.images, alpha.inverse_images
    return induced_pi1_map(splitting, alpha)
