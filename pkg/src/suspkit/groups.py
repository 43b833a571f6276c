"""Groups with a decidable word problem, used as vertex and edge groups.

Three kinds are supported: free groups, finitely generated abelian groups
and free-by-cyclic groups ``F x|_phi <s>``.  Elements are words over the
group's alphabet; ``normal_form`` returns the canonical word of an element,
so equality is equality of normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import SuspkitError
from .folding import SubgroupGraph, substitute
from .freeaut import FreeAutomorphism, fbc_normal_form, fbc_word
from .words import (Alphabet, GroupPresentation, Word, commutator, exponent_vector,
                    inverse, mul, power, primitive_root, reduce, root_exponent)

FREE = "free"
ABELIAN = "abelian"
FBC = "free-by-cyclic"
KINDS = (FREE, ABELIAN, FBC)


class VertexGroup:
    kind: str
    alphabet: Alphabet
    delta_labels: tuple | None

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def normal_form(self, w: Sequence[int]) -> Word:
        raise NotImplementedError

    def relators(self) -> list:
        raise NotImplementedError

    def mul(self, *ws) -> Word:
        return self.normal_form(mul(*ws))

    def inv(self, w) -> Word:
        return self.normal_form(inverse(w))

    def conj(self, x, g) -> Word:
        """``g^-1 x g``."""
        return self.normal_form(mul(inverse(g), x, g))

    def power(self, w, k: int) -> Word:
        return self.normal_form(power(w, k))

    def is_identity(self, w) -> bool:
        return not self.normal_form(w)

    def equal(self, u, v) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def commute(self, u, v) -> bool:
        return self.equal(mul(u, v), mul(v, u))

    def presentation(self) -> GroupPresentation:
        return GroupPresentation(self.alphabet, tuple(self.relators()))

    def parse(self, text, line=None) -> Word:
        return self.normal_form(self.alphabet.parse(text, line))

    def format(self, w) -> str:
        return self.alphabet.format(w)

    def cyclic_preimage(self, g, image) -> int | None:
        """``k`` with ``g == image^k``, or None (cyclic subgroup membership)."""
        raise NotImplementedError

    def centralizer_generators(self, images) -> list | None:
        """Generators of the centralizer of the subgroup generated by
        ``images``, or None where no helper exists for this kind."""
        return None


@dataclass(frozen=True)
class FreeGroup(VertexGroup):
    alphabet: Alphabet
    delta_labels: tuple | None = None
    kind = FREE

    def normal_form(self, w):
        return reduce(w, self.rank)

    def relators(self):
        return []

    def cyclic_preimage(self, g, image):
        g, image = reduce(g, self.rank), reduce(image, self.rank)
        return root_exponent(g, image)

    def preimage(self, g, images) -> Word | None:
        """Word in ``x_1..x_k`` evaluating to ``g`` on ``images``."""
        return SubgroupGraph(images, self.rank).express(g)

    def centralizer_generators(self, images):
        images = [reduce(w, self.rank) for w in images if w]
        if not images:
            return [g for g in self.alphabet.gens()]
        root = primitive_root(images[0])
        # a set of nontrivial elements commutes iff they share a root
        for w in images[1:]:
            r = primitive_root(w)
            if r != root and r != inverse(root):
                return []
        return [root]


@dataclass(frozen=True)
class AbelianGroup(VertexGroup):
    """Direct sum of cyclic groups; ``orders[i] == 0`` means infinite."""

    alphabet: Alphabet
    orders: tuple = None
    delta_labels: tuple | None = None
    kind = ABELIAN

    def __post_init__(self):
        orders = tuple(self.orders) if self.orders is not None else (0,) * self.alphabet.rank
        if len(orders) != self.alphabet.rank or any(d < 0 for d in orders):
            raise SuspkitError("abelian group needs one nonnegative order per generator")
        object.__setattr__(self, "orders", orders)

    def vector(self, w) -> list:
        vec = exponent_vector(reduce(w, self.rank), self.rank)
        return [x % d if d else x for x, d in zip(vec, self.orders)]

    def from_vector(self, vec) -> Word:
        out: list = []
        for i, x in enumerate(vec):
            out.extend([i + 1 if x > 0 else -(i + 1)] * abs(x))
        return tuple(out)

    def normal_form(self, w):
        return self.from_vector(self.vector(w))

    def relators(self):
        gens = self.alphabet.gens()
        rels = [g * d for g, d in zip(gens, self.orders) if d]
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                rels.append(commutator(gens[i], gens[j]))
        return rels

    def cyclic_preimage(self, g, image):
        from .abelian import solve_linear_system

        # k * image == g modulo the orders: unknowns k and one slack per torsion coordinate
        gv, iv = self.vector(g), self.vector(image)
        torsion = [i for i, d in enumerate(self.orders) if d]
        rows = []
        for i in range(self.rank):
            row = [iv[i]] + [(-self.orders[i] if i == j else 0) for j in torsion]
            rows.append(row)
        sol = solve_linear_system(rows, gv)
        return None if sol is None else sol[0]

    def centralizer_generators(self, images):
        return [g for g in self.alphabet.gens()]


@dataclass(frozen=True)
class FreeByCyclicGroup(VertexGroup):
    """``F x|_phi <s>`` with ``s^-1 f s = phi(f)``; ``s`` is the last letter."""

    phi: FreeAutomorphism
    transverse: str = "t"
    delta_labels: tuple | None = None
    kind = FBC

    @cached_property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.phi.domain.names + (self.transverse,))

    @property
    def fiber_rank(self) -> int:
        return self.phi.rank

    def split(self, w) -> tuple:
        return fbc_normal_form(reduce(w, self.rank), self.phi)

    def normal_form(self, w):
        k, f = self.split(w)
        return fbc_word(k, f, self.fiber_rank)

    def relators(self):
        s = (self.rank,)
        return [mul(inverse(s), f, s, inverse(img))
                for f, img in zip(self.phi.domain.gens(), self.phi.images)]

    def cyclic_preimage(self, g, image):
        kg, wg = self.split(g)
        ki, wi = self.split(image)
        if ki == 0:
            if kg != 0:
                return None
            return root_exponent(wg, wi) if wi else (0 if not wg else None)
        if kg % ki:
            return None
        k = kg // ki
        return k if self.equal(g, self.power(image, k)) else None


def make_group(kind: str, names, *, orders=None, phi=None, transverse="t", delta_labels=None):
    if kind == FREE:
        return FreeGroup(Alphabet(tuple(names)), delta_labels)
    if kind == ABELIAN:
        return AbelianGroup(Alphabet(tuple(names)), orders, delta_labels)
    if kind == FBC:
        return FreeByCyclicGroup(phi, transverse, delta_labels)
    raise SuspkitError(f"unknown vertex group kind {kind!r}")


@dataclass(frozen=True)
class GroupMap:
    """Homomorphism given by generator images, with an optional inverse
    certificate (images of the target generators in the source)."""

    source: VertexGroup
    target: VertexGroup
    images: tuple
    inverse_images: tuple | None = None

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise SuspkitError(f"expected {self.source.rank} images, got {len(self.images)}")
        object.__setattr__(self, "images", tuple(self.target.normal_form(w) for w in self.images))
        if self.inverse_images is not None:
            if len(self.inverse_images) != self.target.rank:
                raise SuspkitError(f"expected {self.target.rank} inverse images")
            object.__setattr__(self, "inverse_images",
                               tuple(self.source.normal_form(w) for w in self.inverse_images))

    @classmethod
    def identity(cls, group: VertexGroup):
        gens = tuple(group.alphabet.gens())
        return cls(group, group, gens, gens)

    @classmethod
    def inner(cls, group: VertexGroup, g):
        """``ad_g : x -> g^-1 x g``."""
        imgs = tuple(group.conj(x, g) for x in group.alphabet.gens())
        inv = tuple(group.conj(x, inverse(g)) for x in group.alphabet.gens())
        return cls(group, group, imgs, inv)

    def __call__(self, w) -> Word:
        return self.target.normal_form(substitute(reduce(w, self.source.rank), self.images))

    def inverse(self) -> "GroupMap":
        if self.inverse_images is None:
            raise SuspkitError("map has no inverse certificate")
        return GroupMap(self.target, self.source, self.inverse_images, self.images)

    def apply_inverse(self, w) -> Word:
        return self.inverse()(w)

    def then(self, other: "GroupMap") -> "GroupMap":
        """``other o self``."""
        imgs = tuple(other(w) for w in self.images)
        inv = None
        if self.inverse_images is not None and other.inverse_images is not None:
            inv = tuple(self.inverse()(other.inverse()(g)) for g in other.target.alphabet.gens())
        return GroupMap(self.source, other.target, imgs, inv)

    def violations(self, name="map") -> list:
        out = []
        for r in self.source.relators():
            if not self.target.is_identity(substitute(r, self.images)):
                out.append(f"{name}: relator {self.source.format(r)} does not map to 1")
        if self.inverse_images is None:
            out.append(f"{name}: missing inverse certificate")
            return out
        for r in self.target.relators():
            if not self.source.is_identity(substitute(r, self.inverse_images)):
                out.append(f"{name}: inverse does not kill relator {self.target.format(r)}")
        for g in self.source.alphabet.gens():
            if not self.source.equal(substitute(self.images[abs(g[0]) - 1], self.inverse_images), g):
                out.append(f"{name}: inverse o map is not the identity on {self.source.format(g)}")
        for g in self.target.alphabet.gens():
            back = self.source.normal_form(self.inverse_images[g[0] - 1])
            if not self.target.equal(substitute(back, self.images), g):
                out.append(f"{name}: map o inverse is not the identity on {self.target.format(g)}")
        return out

    def equals(self, other: "GroupMap") -> bool:
        return all(self.target.equal(a, b) for a, b in zip(self.images, other.images))
