"""Graphs of groups, Bass expressions and fundamental groups.

Conventions.  ``injections[e]`` maps the edge group into the vertex group at
the origin ``o(e)``; the map attaching the edge group at the terminal vertex
is therefore ``injections[bar(e)]``.  Path elements are read left to right,
so the Bass relation for an oriented edge ``e`` and an edge-group generator
``g`` is ``e^-1 i_e(g) e = i_{bar e}(g)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .abelian import SuspensionDatum, h1_of_presentation
from .errors import SuspkitError
from .folding import substitute
from .groups import FreeGroup, VertexGroup
from .words import Alphabet, GroupPresentation, Word, exponent_vector, inverse, mul, reduce


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple          # oriented edges, in listing order
    bar: dict
    origin: dict
    terminus: dict

    @classmethod
    def from_pairs(cls, vertices, pairs):
        """``pairs`` is a list of ``(e, ebar, u, v)`` with ``e : u -> v``."""
        edges, bar, o, t = [], {}, {}, {}
        for e, eb, u, v in pairs:
            edges += [e, eb]
            bar[e], bar[eb] = eb, e
            o[e], t[e] = u, v
            o[eb], t[eb] = v, u
        return cls(tuple(vertices), tuple(edges), bar, o, t)

    @property
    def positive(self) -> tuple:
        """The orientation set: the first-listed member of each pair."""
        seen, out = set(), []
        for e in self.edges:
            if e not in seen:
                out.append(e)
                seen.update((e, self.bar.get(e, e)))
        return tuple(out)

    def positive_rep(self, e) -> tuple:
        """``(e+, sign)`` with ``e == e+`` (sign 1) or ``e == bar(e+)`` (sign -1)."""
        if e in self.positive:
            return e, 1
        return self.bar[e], -1

    def violations(self) -> list:
        out = []
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            out.append("duplicate vertex names")
        if len(set(self.edges)) != len(self.edges):
            out.append("duplicate edge names")
        for e in self.edges:
            if e not in self.bar or e not in self.origin or e not in self.terminus:
                out.append(f"edge {e}: missing bar, origin or terminus")
                continue
            b = self.bar[e]
            if b == e:
                out.append(f"edge {e}: inverted edge (bar has a fixed point)")
            if self.bar.get(b) != e:
                out.append(f"edge {e}: bar is not an involution")
            if self.origin.get(b) != self.terminus[e]:
                out.append(f"edge {e}: o(bar e) != t(e)")
            if self.origin[e] not in vs or self.terminus[e] not in vs:
                out.append(f"edge {e}: endpoint is not a vertex")
        return out

    def out_edges(self, v) -> list:
        return [e for e in self.edges if self.origin[e] == v]


@dataclass(frozen=True)
class BassExpression:
    """``g_0 e_1 g_1 ... e_n g_n`` with ``elements[i] = (vertex, word)``."""

    edges: tuple
    elements: tuple

    def __post_init__(self):
        if len(self.elements) != len(self.edges) + 1:
            raise SuspkitError("a Bass expression needs one more element than edges")
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "elements", tuple((v, tuple(w)) for v, w in self.elements))

    @classmethod
    def vertex_element(cls, v, w=()):
        return cls((), ((v, tuple(w)),))

    @property
    def start(self):
        return self.elements[0][0]

    @property
    def end(self):
        return self.elements[-1][0]


@dataclass(frozen=True)
class GraphOfGroups:
    graph: Graph
    vertex_groups: dict
    edge_groups: dict     # keyed by positive edge
    injections: dict      # oriented edge -> tuple of words in the origin vertex group

    # -- structure -------------------------------------------------------
    def edge_group(self, e) -> FreeGroup:
        return self.edge_groups[self.graph.positive_rep(e)[0]]

    def o(self, e):
        return self.graph.origin[e]

    def t(self, e):
        return self.graph.terminus[e]

    def bar(self, e):
        return self.graph.bar[e]

    def inject(self, e, w) -> Word:
        """``i_e(w)`` in ``Gamma_{o(e)}``."""
        return self.vertex_groups[self.o(e)].normal_form(substitute(w, self.injections[e]))

    def attach(self, e, w) -> Word:
        """The edge group attached at the terminal vertex: ``i_{bar e}(w)``."""
        return self.inject(self.bar(e), w)

    def attached_images(self, e) -> list:
        return list(self.injections[self.bar(e)])

    def label_owner(self) -> dict:
        """Vertex-group generator label -> vertex."""
        owner = {}
        for v in self.graph.vertices:
            for name in self.vertex_groups[v].alphabet.names:
                owner.setdefault(name, v)
        return owner

    # -- elements --------------------------------------------------------
    def normalize(self, x: BassExpression) -> BassExpression:
        return BassExpression(x.edges, tuple((v, self.vertex_groups[v].normal_form(w))
                                             for v, w in x.elements))

    def concat(self, *xs: BassExpression) -> BassExpression:
        edges, elements = [], []
        for x in xs:
            if elements:
                v, w = elements[-1]
                u, z = x.elements[0]
                if u != v:
                    raise SuspkitError(f"cannot concatenate: path ends at {v}, next starts at {u}")
                elements[-1] = (v, self.vertex_groups[v].mul(w, z))
                elements.extend(x.elements[1:])
            else:
                elements.extend(x.elements)
            edges.extend(x.edges)
        return BassExpression(tuple(edges), tuple(elements))

    def inverse(self, x: BassExpression) -> BassExpression:
        """Formal inverse: reverse, bar every edge, invert every entry."""
        return BassExpression(tuple(self.bar(e) for e in reversed(x.edges)),
                              tuple((v, inverse(w)) for v, w in reversed(x.elements)))

    def tidy(self, x: BassExpression) -> BassExpression:
        """Cancel backtracking ``e 1 bar(e)`` and normalize entries."""
        edges: list = []
        elements: list = [(x.elements[0][0], self.vertex_groups[x.elements[0][0]].normal_form(x.elements[0][1]))]
        for e, (v, w) in zip(x.edges, x.elements[1:]):
            w = self.vertex_groups[v].normal_form(w)
            if edges and edges[-1] == self.bar(e) and not elements[-1][1]:
                edges.pop()
                elements.pop()
                u, z = elements[-1]
                elements[-1] = (u, self.vertex_groups[u].mul(z, w))
            else:
                edges.append(e)
                elements.append((v, w))
        return BassExpression(tuple(edges), tuple(elements))

    def random_loop(self, base, rng, max_edges=6, max_word=2) -> BassExpression:
        """A random path element from ``base`` to ``base``."""
        v = base
        edges, elements = [], []
        for _ in range(rng.randint(0, max_edges)):
            elements.append((v, self.random_element(v, rng, max_word)))
            e = rng.choice(self.graph.out_edges(v))
            edges.append(e)
            v = self.t(e)
        back = shortest_path(self.graph, v, base)
        for e in back:
            elements.append((v, self.random_element(v, rng, max_word)))
            edges.append(e)
            v = self.t(e)
        elements.append((v, self.random_element(v, rng, max_word)))
        return self.normalize(BassExpression(tuple(edges), tuple(elements)))

    def random_element(self, v, rng, max_word=2) -> Word:
        G = self.vertex_groups[v]
        n = G.rank
        if n == 0:
            return ()
        letters = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, max_word))]
        return G.normal_form(letters)


def shortest_path(graph: Graph, u, v, allowed=None) -> list:
    """Oriented edges of a shortest path from ``u`` to ``v``."""
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for e in graph.out_edges(x):
            if allowed is not None and graph.positive_rep(e)[0] not in allowed:
                continue
            y = graph.terminus[e]
            if y not in prev:
                prev[y] = e
                queue.append(y)
    if v not in prev:
        raise SuspkitError(f"no path from {u} to {v}")
    path = []
    while v != u:
        e = prev[v]
        path.append(e)
        v = graph.origin[e]
    return path[::-1]


def spanning_tree(graph: Graph, root=None) -> tuple:
    """Positive edges of a breadth-first spanning tree."""
    root = graph.vertices[0] if root is None else root
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in graph.out_edges(x):
            y = graph.terminus[e]
            if y not in seen:
                seen.add(y)
                tree.append(graph.positive_rep(e)[0])
                queue.append(y)
    return tuple(tree)


def check_tree(graph: Graph, tree) -> None:
    pos = set(graph.positive)
    tree = [graph.positive_rep(e)[0] if e in graph.bar else e for e in tree]
    for e in tree:
        if e not in pos:
            raise SuspkitError(f"tree edge {e} is not an edge")
    if len(set(tree)) != len(graph.vertices) - 1:
        raise SuspkitError("tree does not have |V| - 1 edges")
    parent = {v: v for v in graph.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in set(tree):
        a, b = find(graph.origin[e]), find(graph.terminus[e])
        if a == b:
            raise SuspkitError("tree contains a cycle")
        parent[a] = b


def validate_gog(X: GraphOfGroups) -> list:
    """Structural violations; an empty list means the datum is valid."""
    out = X.graph.violations()
    if out:
        return out
    for v in X.graph.vertices:
        if v not in X.vertex_groups:
            out.append(f"vertex {v}: no vertex group")
    owners: dict = {}
    for v, G in X.vertex_groups.items():
        for name in G.alphabet.names:
            owners.setdefault(name, []).append(v)
    for name, vs in owners.items():
        if len(vs) > 1:
            out.append(f"generator label {name} used by several vertex groups {vs}")
    for name in owners:
        if name in X.graph.bar:
            out.append(f"generator label {name} clashes with an edge name")
    for e in X.graph.positive:
        if e not in X.edge_groups:
            out.append(f"edge {e}: no edge group")
    if out:
        return out
    for e in X.graph.edges:
        if e not in X.injections:
            out.append(f"edge {e}: no injection")
            continue
        Ge = X.edge_group(e)
        Gv = X.vertex_groups[X.o(e)]
        imgs = X.injections[e]
        if len(imgs) != Ge.rank:
            out.append(f"edge {e}: injection has {len(imgs)} images for an edge group of rank {Ge.rank}")
            continue
        for w in imgs:
            if any(abs(x) > Gv.rank for x in w):
                out.append(f"edge {e}: image is not a word in the origin vertex group")
        if Ge.rank == 1 and Gv.is_identity(imgs[0]):
            out.append(f"edge {e}: cyclic edge generator maps to the identity")
    for v, G in X.vertex_groups.items():
        if G.delta_labels is not None and len(G.delta_labels) != G.rank:
            out.append(f"vertex {v}: expected {G.rank} delta labels")
    return out


def is_path_element(X: GraphOfGroups, x: BassExpression, frm=None, to=None) -> bool:
    for v, w in x.elements:
        if v not in X.vertex_groups or any(abs(l) > X.vertex_groups[v].rank for l in w):
            return False
    for i, e in enumerate(x.edges):
        if e not in X.graph.bar:
            return False
        if x.elements[i][0] != X.o(e) or x.elements[i + 1][0] != X.t(e):
            return False
    if frm is not None and x.start != frm:
        return False
    if to is not None and x.end != to:
        return False
    return True


def signed_edge_count(X: GraphOfGroups, x: BassExpression, e) -> int:
    """Occurrences of ``e`` minus occurrences of ``bar(e)``."""
    b = X.bar(e)
    return sum(1 for f in x.edges if f == e) - sum(1 for f in x.edges if f == b)


class Pi1:
    """Presentation of ``pi_1(X, tree)`` with the dictionaries relating
    presentation words and Bass path elements based at ``base``."""

    def __init__(self, X: GraphOfGroups, tree=None, base=None):
        g = X.graph
        self.gog = X
        self.base = g.vertices[0] if base is None else base
        tree = spanning_tree(g, self.base) if tree is None else tree
        check_tree(g, tree)
        self.tree = tuple(g.positive_rep(e)[0] for e in tree)
        names, self.vertex_offset, self.edge_index = [], {}, {}
        for v in g.vertices:
            self.vertex_offset[v] = len(names)
            names.extend(X.vertex_groups[v].alphabet.names)
        for e in g.positive:
            if e not in self.tree:
                self.edge_index[e] = len(names)
                names.append(e)
        self.alphabet = Alphabet(tuple(names))
        rels = []
        for v in g.vertices:
            for r in X.vertex_groups[v].relators():
                rels.append(self._shift(v, r))
        for e in g.positive:
            for gen in X.edge_group(e).alphabet.gens():
                lhs = mul(self._edge_letter(e, -1), self._shift(X.o(e), X.inject(e, gen)),
                          self._edge_letter(e, 1))
                rels.append(mul(lhs, inverse(self._shift(X.t(e), X.attach(e, gen)))))
        self.presentation = GroupPresentation(self.alphabet, tuple(rels))
        self._h1 = None

    def _shift(self, v, w) -> Word:
        off = self.vertex_offset[v]
        return tuple(x + off if x > 0 else x - off for x in w)

    def _edge_letter(self, e, sign=1) -> Word:
        pos, s = self.gog.graph.positive_rep(e)
        if pos in self.tree:
            return ()
        return ((self.edge_index[pos] + 1) * s * sign,)

    @property
    def h1(self):
        if self._h1 is None:
            self._h1 = h1_of_presentation(self.presentation)
        return self._h1

    def tree_path(self, u, v) -> list:
        return shortest_path(self.gog.graph, u, v, allowed=set(self.tree))

    def to_word(self, x: BassExpression) -> Word:
        """Image in ``pi_1(X, tree)``: drop tree edges, relabel entries."""
        out: list = []
        for i, (v, w) in enumerate(x.elements):
            out.extend(self._shift(v, w))
            if i < len(x.edges):
                out.extend(self._edge_letter(x.edges[i]))
        return reduce(out)

    def _path(self, edges) -> BassExpression:
        X = self.gog
        if not edges:
            raise AssertionError
        elements = [(X.o(edges[0]), ())] + [(X.t(e), ()) for e in edges]
        return BassExpression(tuple(edges), tuple(elements))

    def _loop_through(self, inner: BassExpression) -> BassExpression:
        X = self.gog
        parts = []
        p = self.tree_path(self.base, inner.start)
        if p:
            parts.append(self._path(p))
        parts.append(inner)
        q = self.tree_path(inner.end, self.base)
        if q:
            parts.append(self._path(q))
        return X.concat(*parts)

    def generator_loop(self, index: int) -> BassExpression:
        """The path element at ``base`` representing generator ``index``."""
        X = self.gog
        for v, off in self.vertex_offset.items():
            if off <= index < off + X.vertex_groups[v].rank:
                return self._loop_through(BassExpression.vertex_element(v, (index - off + 1,)))
        for e, i in self.edge_index.items():
            if i == index:
                return self._loop_through(self._path([e]))
        raise SuspkitError(f"no generator with index {index}")

    def to_bass(self, w: Sequence[int]) -> BassExpression:
        X = self.gog
        out = BassExpression.vertex_element(self.base)
        for x in reduce(w, self.alphabet.rank):
            loop = self.generator_loop(abs(x) - 1)
            out = X.concat(out, loop if x > 0 else X.inverse(loop))
        return X.tidy(out)

    def edge_functional(self, e) -> list:
        """``n(., e)`` on closed path elements, as a functional on exponent
        vectors of presentation words."""
        g = self.gog.graph
        pos, sign = g.positive_rep(e)
        lam = [0] * self.alphabet.rank
        if pos not in self.tree:
            lam[self.edge_index[pos]] = sign
            return lam
        for f, i in self.edge_index.items():
            cycle = self.tree_path(self.base, g.origin[f]) + [f] + self.tree_path(g.terminus[f], self.base)
            lam[i] = sign * (cycle.count(pos) - cycle.count(g.bar[pos]))
        return lam

    def exponents(self, x) -> list:
        w = self.to_word(x) if isinstance(x, BassExpression) else x
        return exponent_vector(w, self.alphabet.rank)


@dataclass
class Splitting:
    """A graph of groups with the data that turn it into a splitting of a
    given suspension: a maximal tree, a base vertex, fiber and transverse
    elements, and optionally the dictionaries to and from a presentation."""

    gog: GraphOfGroups
    tree: tuple = None
    base: str = None
    fiber: list = None           # Bass expressions
    transverse: BassExpression = None
    pathdict: dict = field(default_factory=dict)   # presentation generator -> Bass expression
    wordmap: dict = field(default_factory=dict)    # pi_1 generator -> word text in the presentation

    def __post_init__(self):
        g = self.gog.graph
        if self.base is None:
            self.base = g.vertices[0]
        if self.tree is None:
            self.tree = spanning_tree(g, self.base)
        self.tree = tuple(self.tree)
        self._pi1 = None
        self._datum = None

    @property
    def pi1(self) -> Pi1:
        if self._pi1 is None:
            self._pi1 = Pi1(self.gog, self.tree, self.base)
        return self._pi1

    @property
    def datum(self) -> SuspensionDatum:
        if self._datum is None:
            if not self.fiber or self.transverse is None:
                raise SuspkitError("splitting has no fiber/transverse data")
            p = self.pi1
            self._datum = SuspensionDatum(p.presentation, [p.to_word(x) for x in self.fiber],
                                          p.to_word(self.transverse))
        return self._datum

    def word(self, x) -> Word:
        return self.pi1.to_word(x) if isinstance(x, BassExpression) else tuple(x)

    def bar(self, x) -> tuple:
        return self.pi1.h1.coords(exponent_vector(self.word(x), self.pi1.alphabet.rank))

    def delta(self, x) -> int:
        return self.datum.delta(self.word(x))

    def ncount(self, x, e) -> int:
        if isinstance(x, BassExpression):
            return signed_edge_count(self.gog, x, e)
        lam = self.pi1.edge_functional(e)
        return sum(a * b for a, b in zip(lam, exponent_vector(x, self.pi1.alphabet.rank)))

    def delta_label_violations(self) -> list:
        out = []
        for v, G in self.gog.vertex_groups.items():
            if G.delta_labels is None:
                continue
            for gen, label in zip(G.alphabet.gens(), G.delta_labels):
                got = self.delta(BassExpression.vertex_element(v, gen))
                if got != label:
                    out.append(f"vertex {v}: delta({G.format(gen)}) is {got}, label says {label}")
        return out


def pi1_presentation(X: GraphOfGroups, tree=None, base=None) -> GroupPresentation:
    return Pi1(X, tree, base).presentation


def _iso_inverse(X: GraphOfGroups, e):
    """Inverse of ``i_e`` as a map ``Gamma_{o(e)} -> Gamma_e``, or None."""
    Gv = X.vertex_groups[X.o(e)]
    Ge = X.edge_group(e)
    imgs = X.injections[e]
    if Gv.kind == "free":
        if len(imgs) != Gv.rank:
            return None
        from .freeaut import invert_images

        return invert_images([Gv.normal_form(w) for w in imgs], Gv.rank)
    if Gv.kind == "abelian" and Gv.rank == 1 and Gv.orders == (0,) and Ge.rank == 1:
        vec = Gv.vector(imgs[0])
        if vec in ([1], [-1]):
            return ((vec[0],),)
    return None


def collapse_edge(X: GraphOfGroups, e) -> GraphOfGroups:
    """Collapse the unoriented edge ``{e, bar e}``.

    Supported when one injection is an isomorphism onto its vertex group;
    that vertex is absorbed and the other endpoint's group survives.
    """
    g = X.graph
    if e not in g.bar:
        raise SuspkitError(f"unknown edge {e}")
    if g.origin[e] == g.terminus[e]:
        raise SuspkitError(f"edge {e} is a loop and cannot be collapsed")
    for cand in (e, g.bar[e]):
        inv = _iso_inverse(X, cand)
        if inv is not None:
            e = cand
            break
    else:
        raise SuspkitError("unsupported collapse: neither injection is an isomorphism onto its vertex group")
    u, w = X.o(e), X.t(e)
    Gu, Gw = X.vertex_groups[u], X.vertex_groups[w]
    # rho = i_{bar e} o i_e^{-1} : Gamma_u -> Gamma_w
    rho = [Gw.normal_form(substitute(pre, X.injections[g.bar[e]])) for pre in inv]
    drop = {e, g.bar[e]}
    pairs = []
    for f in g.positive:
        if f in drop:
            continue
        fb = g.bar[f]
        a, b = g.origin[f], g.terminus[f]
        pairs.append((f, fb, w if a == u else a, w if b == u else b))
    graph = Graph.from_pairs([v for v in g.vertices if v != u], pairs)
    injections = {}
    for f in graph.edges:
        imgs = X.injections[f]
        if g.origin[f] == u:
            imgs = tuple(Gw.normal_form(substitute(x, rho)) for x in imgs)
        injections[f] = imgs
    vgroups = {v: G for v, G in X.vertex_groups.items() if v != u}
    egroups = {f: G for f, G in X.edge_groups.items() if f in graph.positive}
    # keep the edge-group key aligned with the new orientation set
    for f in graph.positive:
        if f not in egroups:
            egroups[f] = X.edge_group(f)
    return GraphOfGroups(graph, vgroups, egroups, injections)


def reduce_bass(X: GraphOfGroups, x: BassExpression) -> BassExpression:
    """Pinch ``e g bar(e)`` when ``g`` lies in the attached edge image.

    Membership is decided for cyclic edge groups (any vertex kind) and for
    free vertex groups (folding); other pinches are left in place.
    """
    x = X.tidy(x)
    changed = True
    while changed:
        changed = False
        for i in range(len(x.edges) - 1):
            e, f = x.edges[i], x.edges[i + 1]
            if f != X.bar(e):
                continue
            v, gword = x.elements[i + 1]
            pre = _edge_preimage(X, e, gword)
            if pre is None:
                continue
            # e i_{bar e}(h) e^-1 = i_e(h)
            u = X.o(e)
            left, right = x.elements[i], x.elements[i + 2]
            merged = X.vertex_groups[u].mul(left[1], X.inject(e, pre), right[1])
            x = BassExpression(x.edges[:i] + x.edges[i + 2:],
                               x.elements[:i] + ((u, merged),) + x.elements[i + 3:])
            changed = True
            break
    return x


def _edge_preimage(X: GraphOfGroups, e, g) -> Word | None:
    Gt = X.vertex_groups[X.t(e)]
    Ge = X.edge_group(e)
    imgs = X.attached_images(e)
    if Ge.rank == 0:
        return () if Gt.is_identity(g) else None
    if Ge.rank == 1:
        k = Gt.cyclic_preimage(g, imgs[0])
        return None if k is None else (1,) * k if k >= 0 else (-1,) * -k
    if Gt.kind == "free":
        return Gt.preimage(g, [Gt.normal_form(w) for w in imgs])
    return None
