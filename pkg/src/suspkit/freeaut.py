"""Automorphisms of free groups given by images of a basis."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import CertificateError, SuspkitError
from .folding import SubgroupGraph, substitute
from .words import TRANSVERSE, Alphabet, Word, conj, inverse, mul, reduce


@dataclass(frozen=True)
class FreeAutomorphism:
    """An automorphism of the free group on ``domain``.

    ``inverse_images`` is a certificate: the constructor checks that the two
    maps compose to the identity on every generator.  When it is omitted the
    inverse is computed by Stallings folding of the images.
    """

    domain: Alphabet
    images: tuple
    inverse_images: tuple = None

    def __post_init__(self):
        n = self.domain.rank
        if TRANSVERSE in self.domain.names:
            raise SuspkitError(f"label {TRANSVERSE!r} is reserved for the transverse letter")
        if len(self.images) != n:
            raise SuspkitError(f"expected {n} images, got {len(self.images)}")
        images = tuple(reduce(w, n) for w in self.images)
        object.__setattr__(self, "images", images)
        if self.inverse_images is None:
            inv = invert_images(images, n)
            if inv is None:
                raise CertificateError("images do not form a basis; not an automorphism")
        else:
            if len(self.inverse_images) != n:
                raise SuspkitError(f"expected {n} inverse images")
            inv = tuple(reduce(w, n) for w in self.inverse_images)
        object.__setattr__(self, "inverse_images", inv)
        for i in range(n):
            gen = (i + 1,)
            if substitute(substitute(gen, inv), images) != gen:
                raise CertificateError(f"inverse certificate fails on {self.domain.names[i]}")
            if substitute(substitute(gen, images), inv) != gen:
                raise CertificateError(f"inverse certificate fails on {self.domain.names[i]}")

    @classmethod
    def from_strings(cls, names, images, inverse_images=None):
        alph = names if isinstance(names, Alphabet) else Alphabet(tuple(names))
        imgs = tuple(alph.parse(s) for s in images)
        inv = None if inverse_images is None else tuple(alph.parse(s) for s in inverse_images)
        return cls(alph, imgs, inv)

    @classmethod
    def identity(cls, domain: Alphabet):
        gens = tuple(domain.gens())
        return cls(domain, gens, gens)

    @classmethod
    def inner(cls, domain: Alphabet, g: Sequence[int]):
        """``ad_g : x -> g^-1 x g``."""
        g = reduce(g, domain.rank)
        imgs = tuple(conj(x, g) for x in domain.gens())
        inv = tuple(conj(x, inverse(g)) for x in domain.gens())
        return cls(domain, imgs, inv)

    @property
    def rank(self) -> int:
        return self.domain.rank

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_aut(self, w)

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(self.domain, self.inverse_images, self.images)

    def power(self, k: int) -> "FreeAutomorphism":
        base = self if k >= 0 else self.inverse()
        out = FreeAutomorphism.identity(self.domain)
        for _ in range(abs(k)):
            out = compose(base, out)
        return out

    def format(self) -> list:
        return [f"{name} -> {self.domain.format(img)}"
                for name, img in zip(self.domain.names, self.images)]

    def __eq__(self, other):
        if not isinstance(other, FreeAutomorphism):
            return NotImplemented
        return self.domain == other.domain and self.images == other.images

    def __hash__(self):
        return hash((self.domain, self.images))


def invert_images(images: Sequence[Sequence[int]], rank: int) -> tuple | None:
    """Inverse images of a basis, or None if ``images`` is not a basis."""
    if len(images) != rank:
        return None
    graph = SubgroupGraph(images, rank)
    if not graph.is_whole_group():
        return None
    return tuple(graph.express((i + 1,)) for i in range(rank))


def _check_same(phi: FreeAutomorphism, psi: FreeAutomorphism) -> None:
    if phi.domain != psi.domain:
        raise SuspkitError("alphabet mismatch")


def apply_aut(phi: FreeAutomorphism, w: Sequence[int]) -> Word:
    w = tuple(w)
    if any(abs(x) > phi.rank or x == 0 for x in w):
        raise SuspkitError("word is not over the automorphism's alphabet")
    return substitute(w, phi.images)


def compose(phi: FreeAutomorphism, psi: FreeAutomorphism) -> FreeAutomorphism:
    """``phi o psi``: first ``psi``, then ``phi``."""
    _check_same(phi, psi)
    images = tuple(substitute(img, phi.images) for img in psi.images)
    inv = tuple(substitute(img, psi.inverse_images) for img in phi.inverse_images)
    return FreeAutomorphism(phi.domain, images, inv)


def fbc_normal_form(g: Sequence[int], phi: FreeAutomorphism) -> tuple:
    """Normal form ``t^k w`` in ``F x|_phi <t>``.

    ``g`` is a word over the fiber generators followed by ``t`` (index
    ``rank + 1``).  Uses ``f t = t phi(f)`` and ``f t^-1 = t^-1 phi^-1(f)``.
    """
    n = phi.rank
    k = 0
    w: Word = ()
    for x in g:
        if abs(x) == n + 1:
            if x > 0:
                w, k = substitute(w, phi.images), k + 1
            else:
                w, k = substitute(w, phi.inverse_images), k - 1
        elif 0 < abs(x) <= n:
            w = mul(w, (x,))
        else:
            raise SuspkitError(f"invalid generator index {x}")
    return k, w


def fbc_word(k: int, w: Sequence[int], rank: int) -> Word:
    t = rank + 1
    return tuple([t] * k if k >= 0 else [-t] * -k) + tuple(w)


def fbc_multiply(a: tuple, b: tuple, phi: FreeAutomorphism) -> tuple:
    """``(k1, w1)(k2, w2) = (k1 + k2, phi^k2(w1) w2)``."""
    (k1, w1), (k2, w2) = a, b
    return k1 + k2, mul(phi.power(k2)(w1), w2)


def elementary_nielsen(rank: int, rng: random.Random) -> tuple:
    """A random elementary Nielsen move as ``(images, inverse_images)``."""
    gens = [(i + 1,) for i in range(rank)]
    kind = rng.choice(["invert", "swap", "mult"] if rank > 1 else ["invert"])
    images, inv = list(gens), list(gens)
    if kind == "invert":
        i = rng.randrange(rank)
        images[i] = inv[i] = (-(i + 1),)
    elif kind == "swap":
        i, j = rng.sample(range(rank), 2)
        images[i], images[j] = gens[j], gens[i]
        inv[i], inv[j] = gens[j], gens[i]
    else:
        i, j = rng.sample(range(rank), 2)
        s = rng.choice([1, -1])
        if rng.random() < 0.5:
            images[i] = mul(gens[i], (s * (j + 1),))
            inv[i] = mul(gens[i], (-s * (j + 1),))
        else:
            images[i] = mul((s * (j + 1),), gens[i])
            inv[i] = mul((-s * (j + 1),), gens[i])
    return tuple(images), tuple(inv)


def random_automorphism(domain: Alphabet, rng: random.Random, moves: int = 4) -> FreeAutomorphism:
    phi = FreeAutomorphism.identity(domain)
    for _ in range(moves):
        imgs, inv = elementary_nielsen(domain.rank, rng)
        phi = compose(FreeAutomorphism(domain, imgs, inv), phi)
    return phi
