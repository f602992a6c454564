"""Registry of the shipped test groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .io import parse_group
from .perm import PermGroup


@dataclass(frozen=True)
class Entry:
    name: str
    primes: tuple[int, ...]
    facts: dict = field(default_factory=dict)  # name -> (value, provenance tag)

    @property
    def filename(self) -> str:
        return f"{self.name}.grp"

    def text(self) -> str:
        return resources.files("fusionkit").joinpath("data/corpus", self.filename).read_text()

    def path(self):
        return resources.files("fusionkit").joinpath("data/corpus", self.filename)

    def group(self) -> PermGroup:
        return load(self.name)


def _e(name, primes, order, **facts):
    facts = {k: (v, "derived-oracle") for k, v in facts.items()}
    facts["order"] = (order, "trivial")
    return Entry(name, tuple(primes), facts)


ENTRIES = [
    _e("c2", [2], 2),
    _e("c3", [3], 3),
    _e("c5", [5], 5),
    _e("c3xc3", [3], 9),
    _e("c4", [2], 4),
    _e("v4", [2], 4, aut_order=6),
    _e("d8", [2], 8, aut_order=8, subgroups=10),
    _e("q8", [2], 8, aut_order=24),
    _e("c9", [3], 9, aut_order=6),
    _e("extraspecial27plus", [3], 27, aut_order=432),
    _e("extraspecial27minus", [3], 27),
    _e("s3", [2, 3], 6),
    _e("s4", [2, 3], 24, subgroups=30),
    _e("a4", [2, 3], 12),
    _e("a5", [2, 3, 5], 60),
    _e("s7", [2, 3, 5, 7], 5040),
    _e("gl2_3", [2, 3], 48),
    _e("sl2_3", [2, 3], 24),
    _e("gl3_2", [2, 3, 7], 168),
    _e("psl3_3", [2, 3, 13], 5616),
    _e("c5sq_s3", [5], 150),
]

BY_NAME = {e.name: e for e in ENTRIES}


@lru_cache(maxsize=None)
def load(name: str) -> PermGroup:
    G, _ = parse_group(BY_NAME[name].text())
    G.name = name
    return G


def p_groups() -> list[Entry]:
    """Entries whose group is a nontrivial p-group for its listed prime."""
    out = []
    for e in ENTRIES:
        n = e.facts["order"][0]
        p = e.primes[0]
        while n % p == 0:
            n //= p
        if n == 1 and len(e.primes) == 1:
            out.append(e)
    return out


def fusion_pairs(max_sylow: int = 243) -> list[tuple[str, int]]:
    """(group, prime) pairs whose Sylow subgroup is nontrivial and within ``max_sylow``."""
    out = []
    for e in ENTRIES:
        n = e.facts["order"][0]
        for p in e.primes:
            q = 1
            while n % (q * p) == 0:
                q *= p
            if 1 < q <= max_sylow:
                out.append((e.name, p))
    return out
