"""Permutations and permutation groups with a stabilizer chain.

Points are 0-based internally and 1-based in every text format.  A
permutation acts on the right: ``x^(gh) = (x^g)^h`` and ``(g*h)[x] ==
h[g[x]]``.  Element order everywhere is the lexicographic order of image
tuples, which :class:`Perm` inherits from ``tuple``.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Sequence

from .config import CAPS
from .errors import CapExceeded, DegreeMismatch, ParseError


class Perm(tuple):
    """A permutation of ``range(len(self))`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return tuple.__new__(cls, range(degree))

    @classmethod
    def checked(cls, images: Iterable[int]) -> Perm:
        p = tuple.__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)}")
        return p

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other) != len(self):
            raise DegreeMismatch(f"cannot compose degree {len(self)} with {len(other)}")
        return tuple.__new__(Perm, map(other.__getitem__, self))

    __rmul__ = None  # tuple repetition must not leak through

    def __invert__(self) -> Perm:
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Perm, inv)

    inverse = __invert__

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return (~self) ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: Perm) -> Perm:
        """Return ``g^-1 * self * g``."""
        return (~g) * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def moved(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def order(self) -> int:
        from math import lcm

        seen = [False] * len(self)
        result = 1
        for i in range(len(self)):
            if seen[i]:
                continue
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self[j]
                n += 1
            result = lcm(result, n)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return perm_print(self)

    def __repr__(self) -> str:
        return f"Perm({perm_print(self)!r}, {len(self)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def perm_parse(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation with 1-based points, e.g. ``"(1,2)(3,4)"``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty permutation text")
    pos = 0
    images = list(range(degree))
    seen: set[int] = set()
    while pos < len(s):
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise ParseError(f"malformed cycle notation {text!r}")
        body = m.group(1)
        pos = m.end()
        if body == "":
            continue
        try:
            pts = [int(x) for x in body.split(",")]
        except ValueError:
            raise ParseError(f"malformed cycle {m.group(0)!r}") from None
        for x in pts:
            if x < 1 or x > degree:
                raise ParseError(f"point {x} outside 1..{degree}")
            if x in seen:
                raise ParseError(f"repeated point {x} in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return Perm(images)


def perm_print(p: Perm) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


# ---------------------------------------------------------------------------
# stabilizer chain


class _Level:
    __slots__ = ("base", "gens", "trans", "trans_inv")

    def __init__(self, base: int, gens: list[Perm]):
        self.base = base
        self.gens = gens
        self.trans: dict[int, Perm] = {}
        self.trans_inv: dict[int, Perm] = {}
        self.rebuild()

    def rebuild(self):
        ident = Perm.identity(len(self.gens[0])) if self.gens else None
        trans = {self.base: ident}
        queue = [self.base]
        for pt in queue:
            u = trans[pt]
            for g in self.gens:
                q = g[pt]
                if q not in trans:
                    trans[q] = u * g
                    queue.append(q)
        self.trans = trans
        self.trans_inv = {}

    def inv(self, pt: int) -> Perm:
        u = self.trans_inv.get(pt)
        if u is None:
            u = self.trans_inv[pt] = ~self.trans[pt]
        return u


def _sift(levels: Sequence[_Level], g: Perm, start: int = 0) -> tuple[Perm, int]:
    for i in range(start, len(levels)):
        lvl = levels[i]
        pt = g[lvl.base]
        if pt not in lvl.trans:
            return g, i
        if pt != lvl.base:
            g = g * lvl.inv(pt)
    return g, len(levels)


def _first_moved(g: Perm) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def _build_chain(gens: Sequence[Perm], degree: int) -> list[_Level]:
    """Deterministic Schreier-Sims; base points are smallest moved points."""
    strong = [g for g in gens if not g.is_identity()]
    if not strong:
        return []
    base: list[int] = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))

    def level_gens(i):
        return [g for g in strong if all(g[b] == b for b in base[:i])]

    levels = [_Level(base[i], level_gens(i)) for i in range(len(base))]
    i = len(base) - 1
    while i >= 0:
        lvl = levels[i]
        lvl.gens = level_gens(i)
        lvl.rebuild()
        added = False
        for pt, u in list(lvl.trans.items()):
            for s in lvl.gens:
                q = s[pt]
                sch = u * s * lvl.inv(q)
                if sch.is_identity():
                    continue
                h, j = _sift(levels, sch, i + 1)
                if j < len(levels) or not h.is_identity():
                    strong.append(h)
                    if j == len(levels):
                        base.append(_first_moved(h))
                        levels.append(_Level(base[-1], [h]))
                    for k in range(i + 1, j + 1):
                        levels[k].gens = level_gens(k)
                        levels[k].rebuild()
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    return levels


class PermGroup:
    """A finite permutation group given by generators.

    The stabilizer chain is built on construction; the sorted element table
    is materialized lazily and only when ``order <= element_cap``.
    """

    def __init__(self, gens: Iterable[Perm] = (), degree: int | None = None,
                 element_cap: int | None = None, name: str | None = None,
                 _elements: list[Perm] | None = None):
        gens = tuple(g if isinstance(g, Perm) else Perm.checked(g) for g in gens)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a degree-{degree} group")
        self.degree = degree
        self.gens = gens
        self.name = name
        self.element_cap = element_cap
        self._levels = _build_chain(gens, degree)
        self.order = 1
        for lvl in self._levels:
            self.order *= len(lvl.trans)
        self._elements = None
        self._element_set = None
        self._index = None
        if _elements is not None and len(_elements) == self.order:
            self._elements = sorted(_elements)

    @property
    def cap(self) -> int:
        return self.element_cap if self.element_cap is not None else CAPS.element

    @property
    def under_cap(self) -> bool:
        return self.order <= self.cap

    @property
    def base(self) -> list[int]:
        return [lvl.base for lvl in self._levels]

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def transversal_sizes(self) -> list[int]:
        return [len(lvl.trans) for lvl in self._levels]

    def _check_degree(self, g: Perm):
        if len(g) != self.degree:
            raise DegreeMismatch(f"degree {len(g)} element against degree-{self.degree} group")

    def contains(self, g: Perm) -> bool:
        self._check_degree(g)
        if self._element_set is not None:
            return g in self._element_set
        h, j = _sift(self._levels, g)
        return j == len(self._levels) and h.is_identity()

    __contains__ = contains

    def elements(self) -> list[Perm]:
        """All elements in lexicographic order of image tuples."""
        if self._elements is None:
            if self.order > self.cap:
                raise CapExceeded("element table", self.order, self.cap)
            current = [self.identity]
            for lvl in reversed(self._levels):
                reps = list(lvl.trans.values())
                current = [h * u for h in current for u in reps]
            self._elements = sorted(current)
        return self._elements

    def element_set(self) -> frozenset[Perm]:
        if self._element_set is None:
            self._element_set = frozenset(self.elements())
        return self._element_set

    def index_of(self, g: Perm) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements())}
        return self._index[g]

    def orbit(self, pt: int) -> list[int]:
        seen = {pt}
        queue = [pt]
        for x in queue:
            for g in self.gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_trivial(self) -> bool:
        return self.order == 1

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements())

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<PermGroup {label}degree={self.degree} order={self.order}>"


def group_from_gens(gens: Sequence[Perm], degree: int | None = None, **kw) -> PermGroup:
    return PermGroup(gens, degree=degree, **kw)


def contains(G: PermGroup, g: Perm) -> bool:
    return G.contains(g)


def elements(G: PermGroup) -> list[Perm]:
    return G.elements()


# ---------------------------------------------------------------------------
# backtrack search over the stabilizer chain


def _leaves(levels: Sequence[_Level], i: int, suffix: Perm, known: dict[int, int],
            prefix_ok: Callable[[dict[int, int]], bool]):
    """Yield elements ``h * suffix`` with ``h`` in the level-``i`` stabilizer.

    ``known`` holds base-point images of the partial element; branches whose
    partial images fail ``prefix_ok`` are cut.
    """
    if i == len(levels):
        yield suffix
        return
    lvl = levels[i]
    for pt in sorted(lvl.trans):
        u = lvl.trans[pt]
        img = suffix[pt]
        known[lvl.base] = img
        if prefix_ok(known):
            yield from _leaves(levels, i + 1, u * suffix, known, prefix_ok)
        del known[lvl.base]


def subgroup_search(G: PermGroup, prop: Callable[[Perm], bool],
                    prefix_ok: Callable[[dict[int, int]], bool] | None = None) -> PermGroup:
    """The subgroup ``{g in G : prop(g)}``, where ``prop`` must define a subgroup.

    Levels are processed bottom-up; at level ``i`` an orbit point already
    reached by the subgroup found so far is skipped, so the search visits one
    coset per missing orbit point only.
    """
    if prefix_ok is None:
        prefix_ok = lambda known: True  # noqa: E731
    levels = G._levels
    found: list[Perm] = []
    ident = G.identity
    for i in reversed(range(len(levels))):
        lvl = levels[i]
        fixed = {lvl2.base: lvl2.base for lvl2 in levels[:i]}
        for pt in sorted(lvl.trans):
            if pt == lvl.base:
                continue
            reached = _orbit_under(lvl.base, found)
            if pt in reached:
                continue
            known = dict(fixed)
            known[lvl.base] = pt
            if not prefix_ok(known):
                continue
            u = lvl.trans[pt]
            for g in _leaves(levels, i + 1, u, known, prefix_ok):
                if prop(g):
                    found.append(g)
                    break
    return PermGroup(found or [ident], degree=G.degree)


def coset_search(G: PermGroup, prop: Callable[[Perm], bool],
                 prefix_ok: Callable[[dict[int, int]], bool] | None = None) -> Perm | None:
    """First element of ``G`` (in chain order) satisfying ``prop``, or None."""
    if prefix_ok is None:
        prefix_ok = lambda known: True  # noqa: E731
    for g in _leaves(G._levels, 0, G.identity, {}, prefix_ok):
        if prop(g):
            return g
    return None


def _orbit_under(pt: int, gens: Sequence[Perm]) -> set[int]:
    seen = {pt}
    queue = [pt]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
