"""Automorphisms of a graph of groups: tuples, Dehn twists and inert twists.

A tuple ``(Phi_X, (phi_v), (phi_e), (gamma_e))`` acts on path elements by
``g -> phi_v(g)`` on vertex entries and

    eps -> gamma_{bar eps}^-1 Phi_X(eps) gamma_eps

on edge letters.  Conjugation is the right action ``ad_g(x) = g^-1 x g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import h1_of_presentation
from .errors import CertificateError, SuspkitError
from .gog import BassExpression, GraphOfGroups, Splitting
from .groups import GroupMap
from .words import Word, exponent_vector, inverse, mul, reduce

TERMINAL = "terminal"
LITERAL = "literal"


@dataclass(frozen=True)
class GogAutomorphism:
    gog: GraphOfGroups
    vertex_perm: dict
    edge_perm: dict
    vertex_maps: dict     # v -> GroupMap Gamma_v -> Gamma_{Phi(v)}
    edge_maps: dict       # positive e -> GroupMap Gamma_e -> Gamma_{Phi(e)}
    gammas: dict          # oriented e -> word in Gamma_{Phi(t(e))}

    @classmethod
    def identity(cls, X: GraphOfGroups):
        g = X.graph
        return cls(X, {v: v for v in g.vertices}, {e: e for e in g.edges},
                   {v: GroupMap.identity(G) for v, G in X.vertex_groups.items()},
                   {e: GroupMap.identity(X.edge_group(e)) for e in g.positive},
                   {e: () for e in g.edges})

    def edge_map(self, e) -> GroupMap:
        return self.edge_maps[self.gog.graph.positive_rep(e)[0]]

    def gamma(self, e) -> Word:
        return self.gammas.get(e, ())

    def __call__(self, x: BassExpression) -> BassExpression:
        return act_on_bass(self, x)


def act_on_bass(phi: GogAutomorphism, x: BassExpression) -> BassExpression:
    X = phi.gog
    from .gog import is_path_element

    if not is_path_element(X, x):
        raise SuspkitError("not a path element")
    VG = X.vertex_groups
    v0, g0 = x.elements[0]
    elements = [(phi.vertex_perm[v0], phi.vertex_maps[v0](g0))]
    edges = []
    for eps, (v, g) in zip(x.edges, x.elements[1:]):
        u, w = elements[-1]
        elements[-1] = (u, VG[u].mul(w, inverse(phi.gamma(X.bar(eps)))))
        edges.append(phi.edge_perm[eps])
        tv = phi.vertex_perm[v]
        elements.append((tv, VG[tv].mul(phi.gamma(eps), phi.vertex_maps[v](g))))
    return BassExpression(tuple(edges), tuple(elements))


def _same_group(G, H) -> bool:
    return G is H or G == H


def _h1_signature(G) -> tuple:
    h = h1_of_presentation(G.presentation())
    return tuple(h.invariant_factors), h.free_rank


def validate_gog_aut(phi: GogAutomorphism, convention: str = TERMINAL) -> list:
    """Violations of the tuple axioms; empty means valid.

    ``convention="terminal"`` checks the compatibility square at ``t(e)``
    through the attaching maps ``i_{bar e}``.  ``convention="literal"``
    applies ``phi_{t(e)}`` to ``i_e`` as written, which only type-checks on
    loops; other edges are reported as not applicable.
    """
    if convention not in (TERMINAL, LITERAL):
        raise SuspkitError(f"unknown convention {convention!r}")
    X = phi.gog
    g = X.graph
    out = []
    V, E = set(g.vertices), set(g.edges)
    if set(phi.vertex_perm) != V or set(phi.vertex_perm.values()) != V:
        out.append("Phi_X is not a permutation of the vertices")
    if set(phi.edge_perm) != E or set(phi.edge_perm.values()) != E:
        out.append("Phi_X is not a permutation of the edges")
    if out:
        return out
    for e in g.edges:
        f = phi.edge_perm[e]
        if phi.edge_perm[g.bar[e]] != g.bar[f]:
            out.append(f"Phi_X does not commute with bar at {e}")
        if g.origin[f] != phi.vertex_perm[g.origin[e]] or g.terminus[f] != phi.vertex_perm[g.terminus[e]]:
            out.append(f"Phi_X does not respect the endpoints of {e}")
    if out:
        return out
    for v in g.vertices:
        m = phi.vertex_maps.get(v)
        if m is None:
            out.append(f"phi_{v}: missing")
            continue
        target = X.vertex_groups[phi.vertex_perm[v]]
        if not _same_group(m.source, X.vertex_groups[v]) or not _same_group(m.target, target):
            out.append(f"phi_{v}: wrong source or target group")
            continue
        if _h1_signature(m.source) != _h1_signature(m.target):
            out.append(f"phi_{v}: abelianizations of source and target differ")
            continue
        out.extend(m.violations(f"phi_{v}"))
    for e in g.positive:
        m = phi.edge_maps.get(e)
        if m is None:
            out.append(f"phi_{e}: missing")
            continue
        if not _same_group(m.source, X.edge_group(e)) or not _same_group(m.target, X.edge_group(phi.edge_perm[e])):
            out.append(f"phi_{e}: wrong source or target group")
            continue
        out.extend(m.violations(f"phi_{e}"))
    for e in g.edges:
        G = X.vertex_groups[phi.vertex_perm[g.terminus[e]]]
        if any(abs(x) > G.rank for x in phi.gamma(e)):
            out.append(f"gamma_{e}: not an element of the vertex group at Phi(t({e}))")
    if out:
        return out
    for e in g.edges:
        fe = phi.edge_perm[e]
        m = phi.edge_map(e)
        tv = g.terminus[e]
        G = X.vertex_groups[phi.vertex_perm[tv]]
        if convention == LITERAL and g.origin[e] != tv:
            out.append(f"edge {e}: literal compatibility square does not apply to a non-loop")
            continue
        for gen in X.edge_group(e).alphabet.gens():
            src = X.attach(e, gen) if convention == TERMINAL else X.inject(e, gen)
            lhs = phi.vertex_maps[tv](src)
            img = m(gen)
            tgt = X.attach(fe, img) if convention == TERMINAL else X.inject(fe, img)
            rhs = G.conj(tgt, phi.gamma(e))
            if not G.equal(lhs, rhs):
                out.append(f"edge {e}: compatibility fails on edge generator {X.edge_group(e).format(gen)}")
    return out


def compose_gog(phi: GogAutomorphism, psi: GogAutomorphism) -> GogAutomorphism:
    """``phi o psi`` (``psi`` acts first).

    The new edge elements are ``gamma_{Psi(e)} phi_{Psi(t e)}(eta_e)``, which
    is the order forced by the right action on edge letters.
    """
    if phi.gog is not psi.gog and phi.gog != psi.gog:
        raise SuspkitError("automorphisms of different graphs of groups")
    X = psi.gog
    g = X.graph
    vperm = {v: phi.vertex_perm[psi.vertex_perm[v]] for v in g.vertices}
    eperm = {e: phi.edge_perm[psi.edge_perm[e]] for e in g.edges}
    vmaps = {v: psi.vertex_maps[v].then(phi.vertex_maps[psi.vertex_perm[v]]) for v in g.vertices}
    emaps = {e: psi.edge_maps[e].then(phi.edge_map(psi.edge_perm[e])) for e in g.positive}
    gammas = {}
    for e in g.edges:
        pv = psi.vertex_perm[g.terminus[e]]
        G = X.vertex_groups[phi.vertex_perm[pv]]
        gammas[e] = G.mul(phi.gamma(psi.edge_perm[e]), phi.vertex_maps[pv](psi.gamma(e)))
    return GogAutomorphism(X, vperm, eperm, vmaps, emaps, gammas)


def inverse_gog(phi: GogAutomorphism) -> GogAutomorphism:
    X = phi.gog
    g = X.graph
    vinv = {w: v for v, w in phi.vertex_perm.items()}
    einv = {f: e for e, f in phi.edge_perm.items()}
    vmaps = {v: phi.vertex_maps[vinv[v]].inverse() for v in g.vertices}
    emaps = {}
    for e in g.positive:
        pre = einv[e]
        pos, sign = g.positive_rep(pre)
        emaps[e] = phi.edge_maps[pos].inverse()
    gammas = {}
    for e in g.edges:
        pre = einv[e]
        gammas[e] = phi.vertex_maps[g.terminus[pre]].apply_inverse(inverse(phi.gamma(pre)))
    return GogAutomorphism(X, vinv, einv, vmaps, emaps, gammas)


def power_gog(phi: GogAutomorphism, k: int) -> GogAutomorphism:
    base = phi if k >= 0 else inverse_gog(phi)
    out = GogAutomorphism.identity(phi.gog)
    for _ in range(abs(k)):
        out = compose_gog(base, out)
    return out


@dataclass(frozen=True)
class DehnTwist:
    """``D_{edge, gamma}``: ``edge -> edge gamma``, ``bar(edge) -> gamma^-1 bar(edge)``."""

    edge: str
    gamma: Word

    def violations(self, X: GraphOfGroups) -> list:
        if self.edge not in X.graph.bar:
            return [f"unknown edge {self.edge}"]
        G = X.vertex_groups[X.t(self.edge)]
        if any(abs(x) > G.rank for x in self.gamma):
            return [f"twist element is not in the vertex group at t({self.edge})"]
        out = []
        for img in X.attached_images(self.edge):
            if not G.commute(self.gamma, img):
                out.append(f"twist element {G.format(self.gamma)} does not centralize "
                           f"the edge image {G.format(img)} at t({self.edge})")
        return out

    def automorphism(self, X: GraphOfGroups) -> GogAutomorphism:
        bad = self.violations(X)
        if bad:
            raise CertificateError("; ".join(bad))
        base = GogAutomorphism.identity(X)
        gammas = dict(base.gammas)
        gammas[self.edge] = X.vertex_groups[X.t(self.edge)].normal_form(self.gamma)
        return GogAutomorphism(X, base.vertex_perm, base.edge_perm, base.vertex_maps,
                               base.edge_maps, gammas)

    def power(self, X: GraphOfGroups, r: int) -> "DehnTwist":
        return DehnTwist(self.edge, X.vertex_groups[X.t(self.edge)].power(self.gamma, r))


@dataclass(frozen=True)
class InertTwist:
    """``phi_v = ad_{gamma_v}`` and ``gamma_e = gamma_{t(e)}``."""

    gammas: dict = field(default_factory=dict)

    def automorphism(self, X: GraphOfGroups) -> GogAutomorphism:
        base = GogAutomorphism.identity(X)
        gv = {v: X.vertex_groups[v].normal_form(self.gammas.get(v, ())) for v in X.graph.vertices}
        vmaps = {v: GroupMap.inner(X.vertex_groups[v], gv[v]) for v in X.graph.vertices}
        gammas = {e: gv[X.t(e)] for e in X.graph.edges}
        return GogAutomorphism(X, base.vertex_perm, base.edge_perm, vmaps, base.edge_maps, gammas)


def small_modular_generators(X: GraphOfGroups, S: dict) -> list:
    """One Dehn twist per oriented edge ``e`` and ``s`` in ``S[e]``, in edge
    listing order.  Inert twists are not listed."""
    out = []
    for e in X.graph.edges:
        for s in S.get(e, ()):
            d = DehnTwist(e, X.vertex_groups[X.t(e)].normal_form(s))
            bad = d.violations(X)
            if bad:
                raise CertificateError("; ".join(bad))
            out.append(d)
    return out


def auto_centralizers(X: GraphOfGroups, edges=None) -> dict:
    """Centralizer generating sets of the attached edge images, for edges
    whose terminal vertex group has a helper (free or abelian)."""
    out = {}
    for e in (X.graph.edges if edges is None else edges):
        G = X.vertex_groups[X.t(e)]
        gens = G.centralizer_generators(X.attached_images(e))
        if gens is None:
            raise SuspkitError(f"no centralizer helper for the {G.kind} vertex group at t({e})")
        out[e] = [G.normal_form(s) for s in gens]
    return out


def twist_transvection(twist: DehnTwist, splitting: Splitting) -> list:
    """The action of the twist on ``H_1`` in canonical coordinates.

    Row-vector convention: ``bar(D(x)) = bar(x) M``, with
    ``M = I + lambda^T c(h)`` where ``lambda`` reads ``n(., edge)`` and
    ``c(h)`` is the class of the twist element.
    """
    p = splitting.pi1
    h1 = p.h1
    lam = h1.functional(p.edge_functional(twist.edge))
    c = splitting.bar(BassExpression.vertex_element(splitting.gog.t(twist.edge), twist.gamma))
    n = len(lam)
    return [[int(i == j) + lam[i] * c[j] for j in range(n)] for i in range(n)]


def induced_pi1_map(splitting: Splitting, phi: GogAutomorphism) -> tuple:
    """Images and inverse images of the ``pi_1`` generators under ``phi``.

    A generator ``y`` goes to the word of ``phi(s_0(y))`` where ``s_0`` is
    the base loop of ``y``.  When ``Phi_X`` moves the base vertex the
    inverse is corrected by the word of ``phi^-1`` applied to the tree path
    from the base to its image, so both lists describe mutually inverse
    automorphisms of the presented group.
    """
    p = splitting.pi1
    X = splitting.gog
    n = p.alphabet.rank
    inv = inverse_gog(phi)
    images = tuple(p.to_word(phi(p.generator_loop(i))) for i in range(n))
    back = [p.to_word(inv(p.generator_loop(i))) for i in range(n)]
    target = phi.vertex_perm[p.base]
    path = p.tree_path(p.base, target)
    if path:
        elements = [(X.o(path[0]), ())] + [(X.t(e), ()) for e in path]
        c = p.to_word(inv(BassExpression(tuple(path), tuple(elements))))
        back = [reduce(mul(inverse(c), w, c)) for w in back]
    return images, tuple(back)


def exponent_map_matrix(images, rank) -> list:
    return [exponent_vector(w, rank) for w in images]
