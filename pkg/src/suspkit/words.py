"""Words in free groups.

A word is a tuple of nonzero integers in Tietze form: ``i + 1`` stands for
the ``i``-th generator and ``-(i + 1)`` for its inverse.  The empty tuple is
the identity.  Labels only enter through :class:`Alphabet`, which parses and
prints words in the ``a b^-1 c^2`` syntax used by every file format.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, SuspkitError

Word = tuple  # tuple[int, ...]

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
TOKEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")
TRANSVERSE = "t"


@dataclass(frozen=True)
class Alphabet:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise SuspkitError(f"duplicate generator labels in {names}")
        for name in names:
            if not LABEL_RE.match(name):
                raise SuspkitError(f"invalid generator label {name!r}")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SuspkitError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> Word:
        return (self.index(name) + 1,)

    def gens(self) -> list:
        return [(i + 1,) for i in range(self.rank)]

    def parse(self, text: str, line: int | None = None) -> Word:
        """Parse ``a b^-1 c^2``; ``1`` or the empty string is the identity."""
        letters = []
        col = 1
        for match in re.finditer(r"\S+", text):
            token = match.group(0)
            col = match.start() + 1
            if token == "1":
                continue
            m = TOKEN_RE.match(token)
            if not m or m.group(1) not in self.names:
                raise ParseError(f"bad letter {token!r}", line, col)
            i = self.names.index(m.group(1)) + 1
            power = int(m.group(2)) if m.group(2) is not None else 1
            letters.extend([i if power > 0 else -i] * abs(power))
        return reduce(letters)

    def format(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        out = []
        for letter, group in itertools.groupby(w):
            n = len(list(group))
            name = self.names[abs(letter) - 1]
            exp = n if letter > 0 else -n
            out.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(out)


def reduce(letters: Iterable[int], rank: int | None = None) -> Word:
    """Freely reduce a letter sequence."""
    out: list = []
    for x in letters:
        if x == 0 or (rank is not None and abs(x) > rank):
            raise SuspkitError(f"invalid generator index {x}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def mul(*words: Sequence[int]) -> Word:
    return reduce(itertools.chain.from_iterable(words))


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        w, k = inverse(w), -k
    return reduce(tuple(w) * k)


def conj(x: Sequence[int], g: Sequence[int]) -> Word:
    """Right conjugation ``g^-1 x g`` (the action of ad_g)."""
    return mul(inverse(g), x, g)


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """``x y x^-1 y^-1``."""
    return mul(x, y, inverse(x), inverse(y))


def cyclic_reduce(w: Sequence[int]) -> tuple:
    """Return ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``."""
    w = tuple(w)
    i = 0
    while i < len(w) - 1 - i and w[i] == -w[len(w) - 1 - i]:
        i += 1
    return w[i:len(w) - i], w[:i]


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return len(w) < 2 or w[0] != -w[-1]


def rotation_offset(u: Sequence[int], v: Sequence[int]) -> int | None:
    """Smallest ``k`` with ``v == u[k:] + u[:k]``, or None."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return None
    if not u:
        return 0
    doubled = u + u
    for k in range(len(u)):
        if doubled[k:k + len(u)] == v:
            return k
    return None


def free_conjugate(u: Sequence[int], v: Sequence[int]) -> tuple:
    """Decide conjugacy in a free group.

    Returns ``(True, c)`` with ``c^-1 u c == v`` or ``(False, None)``.
    """
    cu, pu = cyclic_reduce(reduce(u))
    cv, pv = cyclic_reduce(reduce(v))
    k = rotation_offset(cu, cv)
    if k is None:
        return False, None
    return True, mul(pu, cu[:k], inverse(pv))


def letter_key(x: int) -> tuple:
    # a < a^-1 < b < b^-1 < ...
    return (abs(x), x < 0)


def word_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


def necklace(w: Sequence[int]) -> Word:
    """Least rotation of a cyclically reduced word (no inversion)."""
    w = tuple(w)
    if not w:
        return w
    return min((w[k:] + w[:k] for k in range(len(w))), key=word_key)


def cyclic_words(rank: int, length: int) -> Iterator[Word]:
    """Canonical representatives of nontrivial conjugacy classes of a given
    cyclically reduced length, in increasing :func:`word_key` order."""
    letters = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
                     key=letter_key)

    def extend(prefix):
        if len(prefix) == length:
            if is_cyclically_reduced(prefix) and necklace(prefix) == prefix:
                yield prefix
            return
        for x in letters:
            if prefix and prefix[-1] == -x:
                continue
            yield from extend(prefix + (x,))

    yield from extend(())


def primitive_root(w: Sequence[int]) -> Word:
    """The unique root ``r`` with ``w = r^k``, ``k >= 1`` maximal."""
    w = reduce(w)
    if not w:
        return w
    core, c = cyclic_reduce(w)
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and core[:d] * (n // d) == core:
            return mul(c, core[:d], inverse(c))
    raise AssertionError("unreachable")


def root_exponent(w: Sequence[int], root: Sequence[int]) -> int | None:
    """``k`` with ``w == root^k``, or None."""
    w, root = reduce(w), reduce(root)
    if not root:
        return 0 if not w else None
    core, _ = cyclic_reduce(root)
    wcore, _ = cyclic_reduce(w)
    k = len(wcore) // len(core) if core else 0
    for cand in (k, -k):
        if power(root, cand) == w:
            return cand
    return None


def commute(u: Sequence[int], v: Sequence[int]) -> bool:
    return mul(u, v) == mul(v, u)


def exponent_vector(w: Sequence[int], rank: int) -> list:
    vec = [0] * rank
    for x in w:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return vec


@dataclass(frozen=True)
class GroupPresentation:
    generators: Alphabet
    relators: tuple = ()

    def __post_init__(self):
        rels = []
        for r in self.relators:
            core, _ = cyclic_reduce(reduce(r, self.generators.rank))
            if core:
                rels.append(core)
        object.__setattr__(self, "relators", tuple(rels))

    def format(self) -> str:
        gens = ", ".join(self.generators.names)
        rels = ", ".join(self.generators.format(r) for r in self.relators)
        return f"< {gens} | {rels} >"
