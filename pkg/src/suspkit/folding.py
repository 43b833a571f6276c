"""Stallings folding for finitely generated subgroups of free groups.

Every edge carries a tag: a word in the free group on the subgroup
generators ``x_1..x_k``.  Folding re-gauges vertices so that the tag product
along any closed path at the base vertex is an expression of the element
read along that path in terms of the generators.  This gives membership
together with an explicit preimage, which is what inverting automorphisms
and pinching Bass expressions need.
"""

from __future__ import annotations

from typing import Sequence

from .words import Word, inverse, mul, reduce

BASE = 0


class SubgroupGraph:
    """Folded graph of the subgroup generated by ``generators``."""

    def __init__(self, generators: Sequence[Sequence[int]], rank: int):
        self.rank = rank
        self.ngens = len(generators)
        self.edges: dict = {}  # id -> [src, letter>0, dst, tag]
        self._next_vertex = 1
        self._next_edge = 0
        for i, u in enumerate(generators):
            self._add_petal(reduce(u, rank), (i + 1,))
        self._fold()

    def _new_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        return v

    def _add_edge(self, src, letter, dst, tag) -> None:
        if letter < 0:
            src, dst, letter, tag = dst, src, -letter, inverse(tag)
        self.edges[self._next_edge] = [src, letter, dst, tuple(tag)]
        self._next_edge += 1

    def _add_petal(self, u: Word, label: Word) -> None:
        if not u:
            return
        cur = BASE
        for k, x in enumerate(u):
            nxt = BASE if k == len(u) - 1 else self._new_vertex()
            self._add_edge(cur, x, nxt, label if k == 0 else ())
            cur = nxt

    def _half_edges(self, v):
        """Yield ``(signed letter, other end, tag, edge id)`` leaving ``v``."""
        for eid, (src, letter, dst, tag) in self.edges.items():
            if src == v:
                yield letter, dst, tag, eid
            if dst == v:
                yield -letter, src, inverse(tag), eid

    def _find_fold(self):
        for v in self.vertices():
            seen = {}
            for letter, other, tag, eid in self._half_edges(v):
                if letter in seen and seen[letter][2] != eid:
                    return seen[letter], (letter, other, tag, eid)
                seen.setdefault(letter, (letter, other, tag, eid))
        return None

    def _gauge(self, v, c: Word) -> None:
        for edge in self.edges.values():
            if edge[0] == v:
                edge[3] = mul(inverse(c), edge[3])
            if edge[2] == v:
                edge[3] = mul(edge[3], c)

    def _merge(self, v, into) -> None:
        for edge in self.edges.values():
            if edge[0] == v:
                edge[0] = into
            if edge[2] == v:
                edge[2] = into

    def _fold(self) -> None:
        while True:
            found = self._find_fold()
            if found is None:
                return
            (_, q1, t1, e1), (_, q2, t2, e2) = found
            if q1 == q2:
                del self.edges[e2]
                continue
            if q2 != BASE:
                self._gauge(q2, mul(inverse(t2), t1))
                self._merge(q2, q1)
                del self.edges[e2]
            else:
                self._gauge(q1, mul(inverse(t1), t2))
                self._merge(q1, q2)
                del self.edges[e1]

    def vertices(self) -> list:
        vs = {BASE}
        for src, _, dst, _ in self.edges.values():
            vs.add(src)
            vs.add(dst)
        return sorted(vs)

    @property
    def subgroup_rank(self) -> int:
        return len(self.edges) - len(self.vertices()) + 1

    def is_whole_group(self) -> bool:
        letters = sorted(e[1] for e in self.edges.values())
        return self.vertices() == [BASE] and letters == list(range(1, self.rank + 1))

    def express(self, w: Sequence[int]) -> Word | None:
        """Word in the generators evaluating to ``w``, or None if ``w`` is
        not in the subgroup."""
        cur = BASE
        acc: list = []
        for x in reduce(w, self.rank):
            for letter, other, tag, _ in self._half_edges(cur):
                if letter == x:
                    acc.extend(tag)
                    cur = other
                    break
            else:
                return None
        if cur != BASE:
            return None
        return reduce(acc)


def substitute(w: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Evaluate a word on a tuple of images."""
    out: list = []
    for x in w:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else inverse(img))
    return reduce(out)
