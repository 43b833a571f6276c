"""Bundled example files and seeded random generators.

``SUSPKIT_SEED`` fixes the seed used when no explicit seed is passed.
"""

from __future__ import annotations

import os
import random
from importlib import resources

from .freeaut import FreeAutomorphism, random_automorphism
from .words import Alphabet, reduce

SPLITTINGS = ("hnn_z", "klein", "trefoil", "fbc_hnn", "theta")
ALL_SPLITTINGS = SPLITTINGS + ("fib_loop", "parity")


def seed(default: int = 0) -> int:
    return int(os.environ.get("SUSPKIT_SEED", default))


def rng(s: int | None = None) -> random.Random:
    return random.Random(seed() if s is None else s)


def data_path(name: str):
    return resources.files("suspkit") / "data" / name


def read(name: str) -> str:
    return data_path(name).read_text()


def bundled_names() -> list:
    return sorted(p.name for p in (resources.files("suspkit") / "data").iterdir()
                  if not p.name.startswith("_") and p.name != "schema.json")


def load_splitting(name: str):
    from .formats import parse_splitting

    return parse_splitting(read(name + ".gog"))


def load_centralizers(sp, name: str) -> dict:
    from .formats import parse_centralizers, resolve_centralizers

    return resolve_centralizers(sp.gog, parse_centralizers(sp.gog, read(name + ".cent")))


def random_word(r: random.Random, rank: int, max_len: int):
    n = r.randint(0, max_len)
    return reduce([r.choice([1, -1]) * r.randint(1, rank) for _ in range(n)])


def random_aut(r: random.Random, rank: int, moves: int = 4) -> FreeAutomorphism:
    names = "abcdefgh"[:rank]
    return random_automorphism(Alphabet(tuple(names)), r, moves)


def random_conjugacy(r: random.Random, max_rank: int = 3, max_f0: int = 4):
    """``(phi1, phi2, certificate)`` with ``phi2 = psi phi1 psi^-1 ad_{f0}^-1``
    chosen so that the certificate relation holds by construction."""
    from .freeaut import compose
    from .suspension import ConjugacyCertificate

    rank = r.randint(1, max_rank)
    phi1 = random_aut(r, rank)
    psi = random_aut(r, rank)
    f0 = random_word(r, rank, max_f0)
    dom = phi1.domain
    # phi2 o ad_f0 o psi = psi o phi1  =>  phi2 = psi phi1 psi^-1 ad_{f0^-1}
    ad_inv = FreeAutomorphism.inner(dom, tuple(-x for x in reversed(f0)))
    phi2 = compose(compose(compose(psi, phi1), psi.inverse()), ad_inv)
    return phi1, phi2, ConjugacyCertificate(psi, f0)


def random_system(r: random.Random, max_dim: int = 4, bound: int = 5, solvable: bool | None = None):
    m, n = r.randint(1, max_dim), r.randint(1, max_dim)
    A = [[r.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
    if solvable is None:
        solvable = r.random() < 0.5
    if solvable:
        x = [r.randint(-3, 3) for _ in range(n)]
        b = [sum(a * y for a, y in zip(row, x)) for row in A]
    else:
        b = [r.randint(-bound, bound) for _ in range(m)]
    return A, b
