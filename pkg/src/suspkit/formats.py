"""Text formats: automorphisms, presentations, splittings, twists, coset
representatives, centralizer sets, families and certificates.

All formats are line oriented.  ``#`` starts a comment, blank lines are
ignored and ``[name arg]`` opens a section.  Every parser raises
:class:`ParseError` carrying the line and column of the offending token, and
every parsed object can be written back with the matching ``format_*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, SuspkitError
from .freeaut import FreeAutomorphism
from .gog import BassExpression, Graph, GraphOfGroups, Splitting, validate_gog
from .gogaut import DehnTwist, GogAutomorphism, InertTwist
from .groups import FBC, FreeGroup, GroupMap, make_group
from .orbit import Pi1Automorphism
from .suspension import ConjugacyCertificate, IsoCertificate
from .words import LABEL_RE, TRANSVERSE, Alphabet, GroupPresentation

SECTION_RE = re.compile(r"\[\s*([A-Za-z][A-Za-z0-9_-]*)(?:\s+([A-Za-z][A-Za-z0-9_]*))?\s*\]\Z")


@dataclass
class Line:
    number: int
    text: str
    indent: int     # column of the first character of ``text``

    def error(self, message, offset=0) -> ParseError:
        return ParseError(message, self.number, self.indent + offset)


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            yield Line(i, stripped, len(body) - len(stripped) + 1)


def _sections(text: str, allowed=None) -> list:
    """``[(name, arg, header_line, [Line])]``; lines before any header go to
    a section named ``""``."""
    return _group(_lines(text), allowed)


def _group(lines, allowed=None) -> list:
    out = [("", None, None, [])]
    for ln in lines:
        if ln.text.startswith("["):
            m = SECTION_RE.match(ln.text)
            if not m:
                raise ln.error(f"malformed section header {ln.text!r}")
            name = m.group(1)
            if allowed is not None and name not in allowed:
                raise ln.error(f"unknown section [{name}]")
            out.append((name, m.group(2), ln, []))
        else:
            out[-1][3].append(ln)
    return out


def _word(alph: Alphabet, ln: Line, text: str, offset: int):
    try:
        return alph.parse(text)
    except ParseError as exc:
        raise ParseError(exc.message, ln.number, ln.indent + offset + (exc.col or 1) - 1) from None


def _split_arrow(ln: Line, sep="->") -> tuple:
    if sep not in ln.text:
        raise ln.error(f"expected '{sep}'")
    left, right = ln.text.split(sep, 1)
    return left.strip(), right, ln.text.index(sep) + len(sep)


def _label(ln: Line, name: str, offset=0) -> str:
    if not LABEL_RE.match(name):
        raise ln.error(f"invalid label {name!r}", offset)
    return name


def _images_block(lines, alph_src: Alphabet, alph_dst: Alphabet, what: str) -> tuple:
    found = {}
    for ln in lines:
        left, right, off = _split_arrow(ln)
        if left not in alph_src.names:
            raise ln.error(f"unknown generator {left!r} in {what}")
        if left in found:
            raise ln.error(f"generator {left!r} mapped twice in {what}")
        found[left] = _word(alph_dst, ln, right, off)
    missing = [n for n in alph_src.names if n not in found]
    if missing:
        raise ParseError(f"{what}: no image for {missing}")
    return tuple(found[n] for n in alph_src.names)


def _format_images(src: Alphabet, dst: Alphabet, images) -> list:
    return [f"{n} -> {dst.format(w)}" for n, w in zip(src.names, images)]


# -- automorphisms ---------------------------------------------------------

def parse_aut(text: str) -> FreeAutomorphism:
    secs = _sections(text, allowed={"inverse"})
    head = secs[0][3]
    names = []
    for ln in head:
        left, _, _ = _split_arrow(ln)
        names.append(_label(ln, left))
    if not names:
        raise ParseError("automorphism file has no generator lines")
    if TRANSVERSE in names:
        raise head[names.index(TRANSVERSE)].error(f"label {TRANSVERSE!r} is reserved")
    alph = Alphabet(tuple(names))
    images = _images_block(head, alph, alph, "automorphism")
    inv = None
    if len(secs) > 1:
        inv = _images_block(secs[1][3], alph, alph, "[inverse]")
    try:
        return FreeAutomorphism(alph, images, inv)
    except SuspkitError as exc:
        raise ParseError(str(exc)) from None


def format_aut(phi: FreeAutomorphism, with_inverse: bool = True) -> str:
    out = _format_images(phi.domain, phi.domain, phi.images)
    if with_inverse:
        out += ["[inverse]"] + _format_images(phi.domain, phi.domain, phi.inverse_images)
    return "\n".join(out) + "\n"


# -- presentations ---------------------------------------------------------

@dataclass
class GroupFile:
    presentation: GroupPresentation
    fiber: list = None
    transverse: tuple = None


def parse_grp(text: str) -> GroupFile:
    alph = None
    rels, fiber, trans = [], [], None
    for ln in _lines(text):
        key, _, rest = ln.text.partition(" ")
        off = len(key) + 1
        if key == "generators":
            if alph is not None:
                raise ln.error("generators given twice")
            try:
                alph = Alphabet(tuple(rest.split()))
            except SuspkitError as exc:
                raise ln.error(str(exc), off) from None
            continue
        if alph is None:
            raise ln.error("'generators' must come first")
        if key == "relator":
            rels.append(_word(alph, ln, rest, off))
        elif key == "fiber":
            fiber.append(_word(alph, ln, rest, off))
        elif key == "transverse":
            trans = _word(alph, ln, rest, off)
        else:
            raise ln.error(f"unknown keyword {key!r}")
    if alph is None:
        raise ParseError("no generators line")
    return GroupFile(GroupPresentation(alph, tuple(rels)), fiber or None, trans)


def format_grp(g: GroupFile) -> str:
    P = g.presentation
    out = ["generators " + " ".join(P.generators.names)]
    out += [f"relator {P.generators.format(r)}" for r in P.relators]
    out += [f"fiber {P.generators.format(w)}" for w in (g.fiber or [])]
    if g.transverse is not None:
        out.append(f"transverse {P.generators.format(g.transverse)}")
    return "\n".join(out) + "\n"


# -- Bass expressions ------------------------------------------------------

_BASS_TOKEN = re.compile(r"\{[^{}]*\}|[^\s{}]+|\S")


def parse_bass(X: GraphOfGroups, text: str, ln: Line = None, offset: int = 0) -> BassExpression:
    """``{g0} e1 {g1} ... en {gn}``; ``{v: w}`` names the vertex explicitly."""
    ln = ln or Line(None, text, 1)
    owner = X.label_owner()
    entries, edges = [], []
    for m in _BASS_TOKEN.finditer(text):
        tok, col = m.group(0), offset + m.start()
        if tok.startswith("{"):
            if len(entries) != len(edges):
                raise ln.error("two group entries in a row", col)
            entries.append((tok[1:-1], col + 1))
        else:
            if tok not in X.graph.bar:
                raise ln.error(f"unknown edge {tok!r}", col)
            if len(entries) == len(edges):
                entries.append(("", col))
            edges.append(tok)
    if not entries:
        raise ln.error("empty Bass expression", offset)
    if len(entries) == len(edges):
        entries.append(("", offset + len(text)))
    elements = []
    for i, (body, col) in enumerate(entries):
        explicit = None
        if ":" in body:
            head, body = body.split(":", 1)
            col += len(head) + 1
            explicit = head.strip()
            if explicit not in X.vertex_groups:
                raise ln.error(f"unknown vertex {explicit!r}", col)
        labels = [re.match(r"[A-Za-z][A-Za-z0-9_]*", t).group(0) for t in body.split()
                  if re.match(r"[A-Za-z]", t)]
        candidates = set()
        if explicit:
            candidates.add(explicit)
        if i > 0:
            candidates.add(X.t(edges[i - 1]))
        if i < len(edges):
            candidates.add(X.o(edges[i]))
        for lab in labels:
            if lab not in owner:
                raise ln.error(f"unknown label {lab!r}", col)
            candidates.add(owner[lab])
        if len(candidates) != 1:
            if not candidates:
                raise ln.error("cannot infer the vertex of an empty entry; write {v: }", col)
            raise ln.error(f"entry is not in a single vertex group (candidates {sorted(candidates)})", col)
        v = candidates.pop()
        elements.append((v, _word(X.vertex_groups[v].alphabet, ln, body, col)))
    return BassExpression(tuple(edges), tuple(elements))


def format_bass(X: GraphOfGroups, x: BassExpression) -> str:
    parts = []
    for i, (v, w) in enumerate(x.elements):
        body = X.vertex_groups[v].format(w) if w else ""
        if not w and not x.edges:
            body = f"{v}:"
        parts.append("{" + body + "}")
        if i < len(x.edges):
            parts.append(x.edges[i])
    return " ".join(parts)


# -- splittings ------------------------------------------------------------

GOG_SECTIONS = {"graph", "vertexgroup", "edgegroup", "inject", "tree", "fiber", "pathdict", "wordmap"}


def _vertex_group(name, lines, header):
    kind, gens, orders, delta = None, None, None, None
    phi_lines, phiinv_lines, trans = [], [], None
    for ln in lines:
        key, _, rest = ln.text.partition(" ")
        off = len(key) + 1
        if key == "kind":
            kind = rest.strip()
        elif key == "generators":
            gens = rest.split()
        elif key == "orders":
            orders = _ints(ln, rest, off)
        elif key == "delta":
            delta = _ints(ln, rest, off)
        elif key == "transverse":
            trans = rest.strip()
        elif key == "phi":
            phi_lines.append(Line(ln.number, rest, ln.indent + off))
        elif key == "phiinv":
            phiinv_lines.append(Line(ln.number, rest, ln.indent + off))
        else:
            raise ln.error(f"unknown keyword {key!r}")
    if kind is None or gens is None:
        raise header.error(f"vertex group {name}: 'kind' and 'generators' are required")
    try:
        if kind == FBC:
            trans = trans or gens[-1]
            if gens[-1] != trans:
                raise header.error("the transverse generator must be listed last")
            alph = Alphabet(tuple(gens[:-1]))
            images = _images_block(phi_lines, alph, alph, f"phi of vertex {name}")
            inv = _images_block(phiinv_lines, alph, alph, f"phiinv of vertex {name}") if phiinv_lines else None
            phi = _free_aut(alph, images, inv, header)
            return make_group(FBC, gens, phi=phi, transverse=trans, delta_labels=_tup(delta))
        if phi_lines or phiinv_lines:
            raise header.error("'phi' only applies to free-by-cyclic vertex groups")
        return make_group(kind, gens, orders=orders, delta_labels=_tup(delta))
    except ParseError:
        raise
    except SuspkitError as exc:
        raise header.error(str(exc)) from None


def _free_aut(alph, images, inv, header):
    try:
        return FreeAutomorphism(alph, images, inv)
    except SuspkitError as exc:
        raise header.error(str(exc)) from None


def _tup(x):
    return None if x is None else tuple(x)


def _ints(ln, text, off) -> list:
    out = []
    for m in re.finditer(r"\S+", text):
        try:
            out.append(int(m.group(0)))
        except ValueError:
            raise ln.error(f"expected an integer, got {m.group(0)!r}", off + m.start()) from None
    return out


def parse_splitting(text: str) -> Splitting:
    secs = _sections(text, allowed=GOG_SECTIONS)
    if secs[0][3]:
        raise secs[0][3][0].error("content before the first section")
    vertices, pairs = [], []
    vgroups, egroups, injections = {}, {}, {}
    tree, base = None, None
    graph_seen = False
    later = []
    for name, arg, header, lines in secs[1:]:
        if name == "graph":
            graph_seen = True
            for ln in lines:
                parts = ln.text.split()
                if parts[0] == "vertex" and len(parts) == 2:
                    vertices.append(_label(ln, parts[1], 7))
                elif parts[0] == "edge" and len(parts) == 7 and parts[3] == ":" and parts[5] == "->":
                    pairs.append((_label(ln, parts[1]), _label(ln, parts[2]), parts[4], parts[6]))
                else:
                    raise ln.error("expected 'vertex v' or 'edge e ebar : u -> v'")
        elif name == "vertexgroup":
            if arg is None:
                raise header.error("[vertexgroup v] needs a vertex name")
            vgroups[arg] = _vertex_group(arg, lines, header)
        elif name == "edgegroup":
            if arg is None:
                raise header.error("[edgegroup e] needs an edge name")
            gens = []
            for ln in lines:
                key, _, rest = ln.text.partition(" ")
                if key != "generators":
                    raise ln.error(f"unknown keyword {key!r}")
                gens = rest.split()
            try:
                egroups[arg] = FreeGroup(Alphabet(tuple(gens)))
            except SuspkitError as exc:
                raise header.error(str(exc)) from None
        else:
            later.append((name, arg, header, lines))
    if not graph_seen:
        raise ParseError("missing [graph] section")
    for _, _, u, v in pairs:
        for x in (u, v):
            if x not in vertices:
                raise ParseError(f"edge endpoint {x!r} is not a declared vertex")
    graph = Graph.from_pairs(vertices, pairs)
    # edge groups may be declared under either orientation
    eg = {}
    for e, G in egroups.items():
        if e not in graph.bar:
            raise ParseError(f"[edgegroup {e}]: unknown edge")
        eg[graph.positive_rep(e)[0]] = G
    pending_inj = [(a, h, ls) for n, a, h, ls in later if n == "inject"]
    for arg, header, lines in pending_inj:
        if arg not in graph.bar:
            raise header.error(f"[inject {arg}]: unknown edge")
        pos = graph.positive_rep(arg)[0]
        if pos not in eg:
            raise header.error(f"edge {arg} has no [edgegroup]")
        u = graph.origin[arg]
        if u not in vgroups:
            raise header.error(f"vertex {u} has no [vertexgroup]")
        injections[arg] = _images_block(lines, eg[pos].alphabet, vgroups[u].alphabet, f"[inject {arg}]")
    X = GraphOfGroups(graph, vgroups, eg, injections)
    bad = validate_gog(X)
    if bad:
        raise ParseError("invalid graph of groups: " + "; ".join(bad))
    fiber, trans, pathdict, wordmap = None, None, {}, {}
    for name, arg, header, lines in later:
        if name == "tree":
            tree = []
            for ln in lines:
                key, _, rest = ln.text.partition(" ")
                if key == "base":
                    base = rest.strip()
                    if base not in vertices:
                        raise ln.error(f"unknown vertex {base!r}", 5)
                    continue
                for m in re.finditer(r"\S+", ln.text):
                    if m.group(0) not in graph.bar:
                        raise ln.error(f"unknown edge {m.group(0)!r}", m.start())
                    tree.append(m.group(0))
        elif name == "fiber":
            fiber = []
            for ln in lines:
                key, _, rest = ln.text.partition(" ")
                if key == "fiber":
                    fiber.append(parse_bass(X, rest, ln, len(key) + 1))
                elif key == "transverse":
                    trans = parse_bass(X, rest, ln, len(key) + 1)
                else:
                    raise ln.error(f"unknown keyword {key!r}")
        elif name == "pathdict":
            for ln in lines:
                left, right, off = _split_arrow(ln, ":")
                pathdict[_label(ln, left)] = parse_bass(X, right, ln, off)
        elif name == "wordmap":
            for ln in lines:
                left, right, off = _split_arrow(ln, ":")
                wordmap[_label(ln, left)] = " ".join(right.split())
    try:
        sp = Splitting(X, tree, base, fiber or None, trans, pathdict, wordmap)
        sp.pi1
    except ParseError:
        raise
    except SuspkitError as exc:
        raise ParseError(str(exc)) from None
    return sp


def format_splitting(sp: Splitting) -> str:
    X = sp.gog
    g = X.graph
    out = ["[graph]"]
    out += [f"vertex {v}" for v in g.vertices]
    out += [f"edge {e} {g.bar[e]} : {g.origin[e]} -> {g.terminus[e]}" for e in g.positive]
    for v in g.vertices:
        G = X.vertex_groups[v]
        out += ["", f"[vertexgroup {v}]", f"kind {G.kind}", "generators " + " ".join(G.alphabet.names)]
        if G.kind == "abelian":
            out.append("orders " + " ".join(str(d) for d in G.orders))
        if G.kind == FBC:
            A = G.phi.domain
            out += [f"phi {s}" for s in _format_images(A, A, G.phi.images)]
            out += [f"phiinv {s}" for s in _format_images(A, A, G.phi.inverse_images)]
        if G.delta_labels is not None:
            out.append("delta " + " ".join(str(d) for d in G.delta_labels))
    for e in g.positive:
        out += ["", f"[edgegroup {e}]", "generators " + " ".join(X.edge_groups[e].alphabet.names)]
    for e in g.edges:
        out += ["", f"[inject {e}]"]
        out += _format_images(X.edge_group(e).alphabet, X.vertex_groups[g.origin[e]].alphabet,
                              X.injections[e])
    out += ["", "[tree]", f"base {sp.base}"]
    if sp.tree:
        out.append(" ".join(sp.tree))
    if sp.fiber is not None or sp.transverse is not None:
        out += ["", "[fiber]"]
        out += [f"fiber {format_bass(X, x)}" for x in (sp.fiber or [])]
        if sp.transverse is not None:
            out.append(f"transverse {format_bass(X, sp.transverse)}")
    if sp.pathdict:
        out += ["", "[pathdict]"] + [f"{k} : {format_bass(X, x)}" for k, x in sp.pathdict.items()]
    if sp.wordmap:
        out += ["", "[wordmap]"] + [f"{k} : {w}" for k, w in sp.wordmap.items()]
    return "\n".join(out) + "\n"


# -- twists and automorphism tuples -----------------------------------------

TUPLE_SECTIONS = {"graphmap", "vertexmap", "edgemap", "gamma"}


def parse_twists(X: GraphOfGroups, text: str) -> list:
    """``twist e : word`` and ``inert v : word`` lines, or a general tuple
    given by ``[graphmap]``, ``[vertexmap v]``, ``[edgemap e]`` and
    ``[gamma e]`` sections.  Returns a list of twist objects and tuples."""
    secs = _sections(text, allowed=TUPLE_SECTIONS)
    out = []
    inert = {}
    for ln in secs[0][3]:
        key, _, rest = ln.text.partition(" ")
        if key not in ("twist", "inert"):
            raise ln.error(f"unknown keyword {key!r}")
        left, right, off = _split_arrow(Line(ln.number, rest, ln.indent + len(key) + 1), ":")
        if key == "twist":
            if left not in X.graph.bar:
                raise ln.error(f"unknown edge {left!r}", len(key) + 1)
            G = X.vertex_groups[X.t(left)]
            out.append(DehnTwist(left, _word(G.alphabet, ln, right, len(key) + 1 + off)))
        else:
            if left not in X.vertex_groups:
                raise ln.error(f"unknown vertex {left!r}", len(key) + 1)
            inert[left] = _word(X.vertex_groups[left].alphabet, ln, right, len(key) + 1 + off)
    if inert:
        out.append(InertTwist(inert))
    if len(secs) > 1:
        out.append(_parse_tuple(X, secs[1:]))
    return out


def _parse_tuple(X: GraphOfGroups, secs) -> GogAutomorphism:
    g = X.graph
    base = GogAutomorphism.identity(X)
    vperm, eperm = dict(base.vertex_perm), dict(base.edge_perm)
    vlines, elines, glines = {}, {}, {}
    for name, arg, header, lines in secs:
        if name == "graphmap":
            for ln in lines:
                left, right, off = _split_arrow(ln)
                right = right.strip()
                if left in vperm:
                    if right not in vperm:
                        raise ln.error(f"unknown vertex {right!r}", off)
                    vperm[left] = right
                elif left in eperm:
                    if right not in eperm:
                        raise ln.error(f"unknown edge {right!r}", off)
                    eperm[left] = right
                    eperm[g.bar[left]] = g.bar[right]
                else:
                    raise ln.error(f"unknown vertex or edge {left!r}")
        elif arg is None:
            raise header.error(f"[{name}] needs an argument")
        elif name == "vertexmap":
            vlines[arg] = (header, lines)
        elif name == "edgemap":
            elines[arg] = (header, lines)
        else:
            glines[arg] = (header, lines)
    vmaps = {}
    for v in g.vertices:
        src, dst = X.vertex_groups[v], X.vertex_groups[vperm[v]]
        if v in vlines:
            vmaps[v] = _map_block(src, dst, *vlines[v])
        elif vperm[v] == v:
            vmaps[v] = base.vertex_maps[v]
        else:
            raise ParseError(f"vertex {v} is moved but has no [vertexmap]")
    emaps = {}
    for e in g.positive:
        src, dst = X.edge_group(e), X.edge_group(eperm[e])
        key = e if e in elines else (g.bar[e] if g.bar[e] in elines else None)
        if key is not None:
            emaps[e] = _map_block(src, dst, *elines[key])
        elif src.alphabet == dst.alphabet:
            emaps[e] = GroupMap.identity(src) if src is dst else GroupMap(src, dst, tuple(src.alphabet.gens()),
                                                                          tuple(dst.alphabet.gens()))
        else:
            raise ParseError(f"edge {e} needs an [edgemap]")
    gammas = dict(base.gammas)
    for e, (header, lines) in glines.items():
        if e not in eperm:
            raise header.error(f"unknown edge {e!r}")
        G = X.vertex_groups[vperm[g.terminus[e]]]
        text = " ".join(ln.text for ln in lines)
        gammas[e] = _word(G.alphabet, lines[0], text, 0) if lines else ()
    return GogAutomorphism(X, vperm, eperm, vmaps, emaps, gammas)


def _map_block(src, dst, header, lines) -> GroupMap:
    fwd = [ln for ln in lines if not ln.text.startswith("inv ")]
    back = [Line(ln.number, ln.text[4:], ln.indent + 4) for ln in lines if ln.text.startswith("inv ")]
    images = _images_block(fwd, src.alphabet, dst.alphabet, header.text)
    inv = _images_block(back, dst.alphabet, src.alphabet, header.text + " inverse") if back else None
    try:
        return GroupMap(src, dst, images, inv)
    except SuspkitError as exc:
        raise header.error(str(exc)) from None


def format_twists(X: GraphOfGroups, items) -> str:
    out = []
    for it in items:
        if isinstance(it, DehnTwist):
            out.append(f"twist {it.edge} : {X.vertex_groups[X.t(it.edge)].format(it.gamma)}")
        elif isinstance(it, InertTwist):
            out += [f"inert {v} : {X.vertex_groups[v].format(w)}" for v, w in it.gammas.items()]
        else:
            out += format_tuple(it)
    return "\n".join(out) + "\n"


def format_tuple(phi: GogAutomorphism) -> list:
    X = phi.gog
    g = X.graph
    out = ["[graphmap]"]
    out += [f"{v} -> {phi.vertex_perm[v]}" for v in g.vertices]
    out += [f"{e} -> {phi.edge_perm[e]}" for e in g.positive]
    for v in g.vertices:
        m = phi.vertex_maps[v]
        out += [f"[vertexmap {v}]"] + _format_images(m.source.alphabet, m.target.alphabet, m.images)
        if m.inverse_images is not None:
            out += ["inv " + s for s in _format_images(m.target.alphabet, m.source.alphabet, m.inverse_images)]
    for e in g.positive:
        m = phi.edge_maps[e]
        out += [f"[edgemap {e}]"] + _format_images(m.source.alphabet, m.target.alphabet, m.images)
        if m.inverse_images is not None:
            out += ["inv " + s for s in _format_images(m.target.alphabet, m.source.alphabet, m.inverse_images)]
    for e in g.edges:
        w = phi.gamma(e)
        if w:
            out += [f"[gamma {e}]", X.vertex_groups[phi.vertex_perm[g.terminus[e]]].format(w)]
    return out


# -- coset representatives -------------------------------------------------

def parse_cosets(sp: Splitting, text: str) -> list:
    """Blocks opened by ``[rep]`` (a tuple, empty body = identity) or
    ``[presmap]`` (images of the presentation generators, ``inv`` lines for
    the inverse)."""
    chunks = []
    for ln in _lines(text):
        if ln.text in ("[rep]", "[presmap]"):
            chunks.append((ln, []))
        elif not chunks:
            raise ln.error("expected [rep] or [presmap]")
        else:
            chunks[-1][1].append(ln)
    out = []
    for header, lines in chunks:
        if header.text == "[rep]":
            secs = _group(lines, allowed=TUPLE_SECTIONS)
            if secs[0][3]:
                raise secs[0][3][0].error("expected a section inside [rep]")
            out.append(_parse_tuple(sp.gog, secs[1:]) if len(secs) > 1
                       else GogAutomorphism.identity(sp.gog))
        else:
            A = sp.pi1.alphabet
            fwd = [ln for ln in lines if not ln.text.startswith("inv ")]
            back = [Line(ln.number, ln.text[4:], ln.indent + 4) for ln in lines if ln.text.startswith("inv ")]
            out.append(Pi1Automorphism(_images_block(fwd, A, A, "[presmap]"),
                                       _images_block(back, A, A, "[presmap] inverse")))
    return out


def format_cosets(sp: Splitting, reps) -> str:
    out = []
    for r in reps:
        if isinstance(r, Pi1Automorphism):
            A = sp.pi1.alphabet
            out += ["[presmap]"] + _format_images(A, A, r.images)
            out += ["inv " + s for s in _format_images(A, A, r.inverse_images)]
        else:
            out += ["[rep]"] + format_tuple(r)
    return "\n".join(out) + "\n"


# -- centralizers and families ---------------------------------------------

@dataclass
class CentralizerFile:
    sets: dict = field(default_factory=dict)
    auto: list = field(default_factory=list)


def parse_centralizers(X: GraphOfGroups, text: str) -> CentralizerFile:
    cf = CentralizerFile()
    for ln in _lines(text):
        left, right, off = _split_arrow(ln, ":")
        if left not in X.graph.bar:
            raise ln.error(f"unknown edge {left!r}")
        if right.strip() == "auto":
            cf.auto.append(left)
            continue
        G = X.vertex_groups[X.t(left)]
        cf.sets.setdefault(left, []).append(_word(G.alphabet, ln, right, off))
    return cf


def resolve_centralizers(X: GraphOfGroups, cf: CentralizerFile) -> dict:
    from .gogaut import auto_centralizers

    out = {e: list(v) for e, v in cf.sets.items()}
    if cf.auto:
        for e, gens in auto_centralizers(X, cf.auto).items():
            out.setdefault(e, []).extend(gens)
    return out


def format_centralizers(X: GraphOfGroups, cf: CentralizerFile) -> str:
    out = []
    for e, ws in cf.sets.items():
        out += [f"{e} : {X.vertex_groups[X.t(e)].format(w)}" for w in ws]
    out += [f"{e} : auto" for e in cf.auto]
    return "\n".join(out) + "\n"


def parse_family(sp: Splitting, text: str) -> list:
    """One Bass expression per line; ``word ...`` lines give presentation
    words, converted through the base loops.  The last line is ``j0``."""
    out = []
    for ln in _lines(text):
        if ln.text.startswith("word "):
            out.append(sp.pi1.to_bass(_word(sp.pi1.alphabet, ln, ln.text[5:], 5)))
        else:
            out.append(parse_bass(sp.gog, ln.text, ln, 0))
    return out


def format_family(sp: Splitting, family) -> str:
    return "\n".join(format_bass(sp.gog, x) for x in family) + "\n"


# -- certificates ----------------------------------------------------------

def parse_iso(phi1: FreeAutomorphism, phi2: FreeAutomorphism, text: str) -> IsoCertificate:
    secs = _sections(text, allowed={"map", "inverse"})
    if secs[0][3]:
        raise secs[0][3][0].error("content before [map]")
    blocks = {name: lines for name, _, _, lines in secs[1:]}
    if "map" not in blocks or "inverse" not in blocks:
        raise ParseError("isomorphism file needs [map] and [inverse]")
    A = Alphabet(phi1.domain.names + (TRANSVERSE,))
    return IsoCertificate(phi1, phi2, _images_block(blocks["map"], A, A, "[map]"),
                          _images_block(blocks["inverse"], A, A, "[inverse]"))


def format_iso(cert: IsoCertificate) -> str:
    A = Alphabet(cert.phi1.domain.names + (TRANSVERSE,))
    return "\n".join(["[map]"] + _format_images(A, A, cert.images)
                     + ["[inverse]"] + _format_images(A, A, cert.inverse_images)) + "\n"


def parse_conj(domain: Alphabet, text: str) -> ConjugacyCertificate:
    secs = _sections(text, allowed={"psi", "psiinv"})
    f0 = ()
    for ln in secs[0][3]:
        left, right, off = _split_arrow(ln, ":")
        if left != "f0":
            raise ln.error(f"unknown keyword {left!r}")
        f0 = _word(domain, ln, right, off)
    blocks = {name: lines for name, _, _, lines in secs[1:]}
    if "psi" not in blocks:
        raise ParseError("conjugacy file needs [psi]")
    images = _images_block(blocks["psi"], domain, domain, "[psi]")
    inv = _images_block(blocks["psiinv"], domain, domain, "[psiinv]") if "psiinv" in blocks else None
    try:
        psi = FreeAutomorphism(domain, images, inv)
    except SuspkitError as exc:
        raise ParseError(str(exc)) from None
    return ConjugacyCertificate(psi, f0)


def format_conj(c: ConjugacyCertificate) -> str:
    A = c.psi.domain
    return "\n".join([f"f0 : {A.format(c.f0)}", "[psi]"] + _format_images(A, A, c.psi.images)
                     + ["[psiinv]"] + _format_images(A, A, c.psi.inverse_images)) + "\n"
