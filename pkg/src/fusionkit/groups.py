"""Subgroups and the characteristic-subgroup toolbox.

Below the element cap every operation here is a filter over the element
table; above it, centralizers and normalizers fall back to a backtrack
search over the stabilizer chain (:func:`fusionkit.perm.subgroup_search`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence, Union

from .config import CAPS
from .errors import CapExceeded, DegreeMismatch, NotASubgroup
from .perm import Perm, PermGroup, coset_search, subgroup_search
from .table import GroupTable


def conj_by(h: Perm, g: Perm) -> Perm:
    """``g^-1 h g`` without forming the inverse."""
    out = [0] * len(h)
    for i, x in enumerate(h):
        out[g[i]] = g[x]
    return Perm(out)


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def generate(gens: Sequence[Perm], degree: int) -> frozenset[Perm]:
    """Element set of ``<gens>`` by closure (no chain)."""
    ident = Perm.identity(degree)
    gens = [g for g in gens if not g.is_identity()]
    seen = {ident}
    queue = [ident]
    for a in queue:
        for g in gens:
            b = a * g
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def greedy_gens(elements: Iterable[Perm], degree: int) -> list[Perm]:
    """Generators for a subgroup given by its elements, scanning in canonical order."""
    elems = sorted(elements)
    target = len(elems)
    gens: list[Perm] = []
    current: frozenset[Perm] = frozenset([Perm.identity(degree)])
    for x in elems:
        if len(current) == target:
            break
        if x not in current:
            gens.append(x)
            current = generate(gens, degree)
    return gens


class Subgrp:
    """A subgroup of ``parent``.

    Equality is equality of subgroups of the symmetric group (same element
    set); ``key`` is the sorted element tuple when under the element cap.
    """

    def __init__(self, parent: PermGroup, gens: Iterable[Perm] = (), *,
                 group: PermGroup | None = None, elements: Iterable[Perm] | None = None,
                 check: bool = False):
        self.parent = parent
        gens = tuple(gens)
        for g in gens:
            if len(g) != parent.degree:
                raise DegreeMismatch("subgroup generator degree differs from parent")
        if check:
            for g in gens:
                if not parent.contains(g):
                    raise NotASubgroup(f"{g} not in parent group")
        self._gens = gens
        self._group = group
        self._elements = sorted(elements) if elements is not None else None

    @classmethod
    def whole(cls, G: PermGroup) -> Subgrp:
        return cls(G, G.gens, group=G)

    @classmethod
    def from_elements(cls, parent: PermGroup, elements: Iterable[Perm]) -> Subgrp:
        elems = list(elements)
        return cls(parent, greedy_gens(elems, parent.degree), elements=elems)

    @property
    def gens(self) -> tuple[Perm, ...]:
        return self._gens

    @property
    def degree(self) -> int:
        return self.parent.degree

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            self._group = PermGroup(self._gens, degree=self.parent.degree,
                                    _elements=self._elements)
        return self._group

    @cached_property
    def order(self) -> int:
        if self._elements is not None:
            return len(self._elements)
        return self.group.order

    def elements(self) -> list[Perm]:
        if self._elements is None:
            self._elements = self.group.elements()
        return self._elements

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements())

    def contains(self, g: Perm) -> bool:
        if self._elements is not None:
            return g in self.element_set
        return self.group.contains(g)

    __contains__ = contains

    @cached_property
    def key(self) -> tuple:
        if self.order <= CAPS.element:
            return tuple(self.elements())
        return (self.order,) + tuple(sorted(self._gens))

    def sort_key(self):
        return (self.order, self.key)

    def issubgroup(self, other: Subgrp | PermGroup) -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Subgrp):
            return NotImplemented
        if self.degree != other.degree or self.order != other.order:
            return False
        if self.order <= CAPS.element and other.order <= CAPS.element:
            return self.key == other.key
        return self.issubgroup(other)

    def __hash__(self):
        if self.order <= CAPS.element:
            return hash(self.key)
        return hash((self.degree, self.order))

    def __iter__(self):
        return iter(self.elements())

    def __len__(self):
        return self.order

    def __repr__(self):
        gens = ", ".join(map(str, self.gens)) or "()"
        return f"<Subgrp order={self.order} gens=[{gens}]>"


GroupLike = Union[PermGroup, Subgrp]


def as_group(X: GroupLike) -> PermGroup:
    return X.group if isinstance(X, Subgrp) else X


def as_subgrp(G: PermGroup, X) -> Subgrp:
    if isinstance(X, Subgrp):
        return X
    if isinstance(X, Perm):
        return Subgrp(G, [X])
    if isinstance(X, PermGroup):
        return Subgrp(G, X.gens, group=X)
    return Subgrp(G, list(X))


def elements_of(X: GroupLike) -> list[Perm]:
    return X.elements()


def element_set(X: GroupLike) -> frozenset[Perm]:
    return X.element_set if isinstance(X, Subgrp) else X.element_set()


def is_normal(G: GroupLike, H: GroupLike) -> bool:
    return all(H.contains(conj_by(h, g)) for h in H.gens for g in G.gens)


def is_p_group(G: GroupLike, p: int) -> bool:
    return is_p_power(G.order, p)


# ---------------------------------------------------------------------------
# centralizers, normalizers, conjugacy


def _gens_of(X) -> list[Perm]:
    if isinstance(X, Perm):
        return [X]
    return list(X.gens)


def _cycle_lengths(g: Perm) -> list[int]:
    out = [0] * len(g)
    for cyc in g.cycles():
        for x in cyc:
            out[x] = len(cyc)
    for i, x in enumerate(g):
        if x == i:
            out[i] = 1
    return out


def centralizer(G: GroupLike, X, brute: bool | None = None) -> Subgrp:
    """``C_G(X)`` for an element or subgroup ``X``."""
    Gg = as_group(G)
    xs = [x for x in _gens_of(X) if not x.is_identity()]
    for x in xs:
        if len(x) != Gg.degree:
            raise DegreeMismatch("centralizer argument has the wrong degree")
    if brute is None:
        brute = Gg.under_cap
    if brute:
        elems = [g for g in Gg.elements() if all(x * g == g * x for x in xs)]
        return Subgrp.from_elements(Gg, elems)
    lens = [_cycle_lengths(x) for x in xs]

    def prefix_ok(known):
        for x, ln in zip(xs, lens):
            for b, img in known.items():
                if ln[b] != ln[img]:
                    return False
                bx = x[b]
                if bx in known and known[bx] != x[img]:
                    return False
        return True

    H = subgroup_search(Gg, lambda g: all(x * g == g * x for x in xs), prefix_ok)
    return Subgrp(Gg, H.gens, group=H)


def normalizer(G: GroupLike, H: GroupLike, brute: bool | None = None) -> Subgrp:
    """``N_G(H)``; ``H`` must lie in ``G``."""
    Gg = as_group(G)
    if not all(Gg.contains(h) for h in H.gens):
        raise NotASubgroup("H is not contained in G")
    if brute is None:
        brute = Gg.under_cap
    hg = [h for h in H.gens if not h.is_identity()]
    if brute:
        Hset = element_set(H) if H.order <= CAPS.element else None
        mem = Hset.__contains__ if Hset is not None else H.contains
        elems = [g for g in Gg.elements() if all(mem(conj_by(h, g)) for h in hg)]
        return Subgrp.from_elements(Gg, elems)
    Hgrp = as_group(H)
    orbit_len = {}
    for pt in range(Gg.degree):
        if pt not in orbit_len:
            orb = Hgrp.orbit(pt)
            for q in orb:
                orbit_len[q] = len(orb)

    def prefix_ok(known):
        return all(orbit_len[b] == orbit_len[img] for b, img in known.items())

    N = subgroup_search(Gg, lambda g: all(Hgrp.contains(conj_by(h, g)) for h in hg), prefix_ok)
    return Subgrp(Gg, N.gens, group=N)


def conjugate(H: GroupLike, g: Perm, parent: PermGroup | None = None) -> Subgrp:
    parent = parent or (H.parent if isinstance(H, Subgrp) else H)
    if H.order <= CAPS.element:
        return Subgrp(parent, [conj_by(h, g) for h in H.gens],
                      elements=[conj_by(h, g) for h in H.elements()])
    return Subgrp(parent, [conj_by(h, g) for h in H.gens])


def is_conjugate(G: GroupLike, A: GroupLike, B: GroupLike) -> tuple[bool, Perm | None]:
    """Return ``(True, g)`` with ``A^g = B``, or ``(False, None)``."""
    Gg = as_group(G)
    if A.order != B.order:
        return False, None
    ag = [a for a in A.gens if not a.is_identity()]
    if not ag:
        return True, Gg.identity
    Bset = element_set(B) if B.order <= CAPS.element else None
    mem = Bset.__contains__ if Bset is not None else B.contains
    prop = lambda g: all(mem(conj_by(a, g)) for a in ag)  # noqa: E731
    if Gg.under_cap:
        for g in Gg.elements():
            if prop(g):
                return True, g
        return False, None
    g = coset_search(Gg, prop)
    return (g is not None), g


# ---------------------------------------------------------------------------
# series


def derived_subgroup(G: GroupLike) -> Subgrp:
    Gg = as_group(G)
    gens = list(Gg.gens)
    seeds = [(~a) * (~b) * a * b for a in gens for b in gens]
    return normal_closure(Gg, seeds)


def normal_closure(G: GroupLike, X: Iterable[Perm]) -> Subgrp:
    """Smallest normal subgroup of ``G`` containing ``X``."""
    Gg = as_group(G)
    gens: list[Perm] = []
    H = PermGroup([], degree=Gg.degree)
    queue = [x for x in X if not x.is_identity()]
    while queue:
        x = queue.pop()
        if H.contains(x):
            continue
        gens.append(x)
        H = PermGroup(gens, degree=Gg.degree)
        queue.extend(conj_by(x, g) for g in Gg.gens)
    return Subgrp(Gg, gens, group=H)


def center(G: GroupLike) -> Subgrp:
    Gg = as_group(G)
    return Subgrp.from_elements(Gg, [g for g in Gg.elements()
                                     if all(g * x == x * g for x in Gg.gens)])


def upper_central_series(G: GroupLike) -> list[Subgrp]:
    """``Z_1 <= Z_2 <= ...``, stopping when the series stabilizes."""
    Gg = as_group(G)
    out: list[Subgrp] = []
    cur: frozenset[Perm] = frozenset([Gg.identity])
    while True:
        nxt = [x for x in Gg.elements()
               if all((~x) * (~g) * x * g in cur for g in Gg.gens)]
        if len(nxt) == len(cur):
            return out
        cur = frozenset(nxt)
        out.append(Subgrp.from_elements(Gg, nxt))
        if len(cur) == Gg.order:
            return out


@dataclass(frozen=True)
class CharSeries:
    center: Subgrp
    derived: Subgrp
    frattini: Subgrp
    omega: Subgrp
    agemo: Subgrp
    upper_central: list


def omega(P: GroupLike, p: int) -> Subgrp:
    Pg = as_group(P)
    xs = [x for x in Pg.elements() if (x ** p).is_identity()]
    elems = generate(greedy_gens(xs, Pg.degree), Pg.degree)
    return Subgrp(Pg, greedy_gens(elems, Pg.degree), elements=elems)


def agemo(P: GroupLike, p: int) -> Subgrp:
    Pg = as_group(P)
    xs = {x ** p for x in Pg.elements()}
    elems = generate(greedy_gens(xs, Pg.degree), Pg.degree)
    return Subgrp(Pg, greedy_gens(elems, Pg.degree), elements=elems)


def frattini(P: GroupLike, p: int) -> Subgrp:
    """``Phi(P) = P' P^p`` for a p-group ``P``."""
    Pg = as_group(P)
    _require_p_group(Pg, p)
    d, a = derived_subgroup(Pg), agemo(Pg, p)
    elems = generate(list(d.gens) + list(a.gens), Pg.degree)
    return Subgrp(Pg, greedy_gens(elems, Pg.degree), elements=elems)


def _require_p_group(P: PermGroup, p: int):
    if not is_p_power(P.order, p):
        raise ValueError(f"group of order {P.order} is not a {p}-group")


def char_series(P: GroupLike, p: int) -> CharSeries:
    Pg = as_group(P)
    _require_p_group(Pg, p)
    if Pg.order > CAPS.element:
        raise CapExceeded("char_series", Pg.order, CAPS.element)
    return CharSeries(center=center(Pg), derived=derived_subgroup(Pg),
                      frattini=frattini(Pg, p), omega=omega(Pg, p), agemo=agemo(Pg, p),
                      upper_central=upper_central_series(Pg))


# ---------------------------------------------------------------------------
# subgroup enumeration (bitmask engine)


_TABLES: dict[int, GroupTable] = {}


def table_of(G: GroupLike) -> GroupTable:
    """Cached multiplication table for a small group."""
    Gg = as_group(G)
    t = _TABLES.get(id(Gg))
    if t is None or t.group is not Gg:
        t = GroupTable(Gg)
        _TABLES[id(Gg)] = t
    return t


def subgrp_from_mask(G: PermGroup, table: GroupTable, mask: int) -> Subgrp:
    return Subgrp(G, [table.elems[i] for i in table.gens_of(mask)],
                  elements=table.perms(mask))


def subgroup_masks(table: GroupTable, p: int | None = None) -> list[int]:
    """All subgroup masks sorted by (order, key).

    For a p-group every subgroup of order ``p^(k+1)`` contains a normal
    subgroup of index p, so extending by elements ``x`` that normalize ``M``
    with ``x^p in M`` reaches everything.  Other groups use plain cyclic
    extension ``<M, x>``.
    """
    n = table.n
    found = {1}
    frontier = [1]
    pgroup = p is not None and is_p_power(n, p)
    while frontier:
        nxt = []
        for m in frontier:
            covered = m
            gens = table.gens_of(m)
            for x in range(n):
                if (covered >> x) & 1:
                    continue
                if pgroup:
                    if not table.normalizes(x, m, gens):
                        continue
                    if not (m >> table.power(x, p)) & 1:
                        continue
                h = table.generate(gens + [x])
                if pgroup:
                    covered |= h
                if h not in found:
                    found.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(found, key=lambda m: (table.size(m), table.key(m)))


def all_subgroups(P: GroupLike, p: int | None = None) -> list[Subgrp]:
    """Every subgroup exactly once, sorted by (order, key)."""
    Pg = as_group(P)
    if Pg.order > CAPS.subgroup:
        raise CapExceeded("subgroup enumeration", Pg.order, CAPS.subgroup)
    if p is None:
        p = _prime_if_p_group(Pg.order)
    t = table_of(Pg)
    return [subgrp_from_mask(Pg, t, m) for m in subgroup_masks(t, p)]


def _prime_if_p_group(n: int) -> int | None:
    if n == 1:
        return None
    q = 2
    while n % q:
        q += 1
    return q if is_p_power(n, q) else None


def subgroup_label(subgroups: Sequence[Subgrp], H: Subgrp) -> str:
    """``#<order>:<index>`` with the index counted among subgroups of that order."""
    same = [K for K in subgroups if K.order == H.order]
    return f"#{H.order}:{same.index(H)}"


# ---------------------------------------------------------------------------
# Thompson subgroup


@dataclass(frozen=True)
class ThompsonData:
    max_rank: int
    witnesses: list
    j: Subgrp
    core_omega: Subgrp


def elementary_abelian_masks(table: GroupTable, p: int) -> list[list[int]]:
    """Elementary abelian subgroups by rank: ``levels[k]`` has rank ``k``."""
    orders = table.orders
    involutive = [x for x in range(1, table.n) if orders[x] == p]
    levels = [[1]]
    while True:
        nxt: set[int] = set()
        for e in levels[-1]:
            gens = table.gens_of(e)
            for x in involutive:
                if (e >> x) & 1:
                    continue
                if all(table.mul[x][g] == table.mul[g][x] for g in gens):
                    nxt.add(table.generate(gens + [x]))
        if not nxt:
            return levels
        levels.append(sorted(nxt, key=table.key))


def thompson(P: GroupLike, p: int) -> ThompsonData:
    Pg = as_group(P)
    _require_p_group(Pg, p)
    if Pg.order == 1:
        raise ValueError("Thompson subgroup of the trivial group is undefined here")
    if Pg.order > CAPS.element:
        raise CapExceeded("thompson", Pg.order, CAPS.element)
    t = table_of(Pg)
    levels = elementary_abelian_masks(t, p)
    top = levels[-1]
    j = t.generate([g for m in top for g in t.gens_of(m)])
    core = t.full
    for m in top:
        core &= m
    # Omega(Z(J)) must equal the intersection of the witnesses
    zj = t.center(j)
    om = t.generate([x for x in t.members(zj) if t.orders[x] in (1, p)])
    if om != core:
        raise RuntimeError("Omega(Z(J(S))) differs from the intersection of A(S)")
    return ThompsonData(max_rank=len(levels) - 1,
                        witnesses=[subgrp_from_mask(Pg, t, m) for m in top],
                        j=subgrp_from_mask(Pg, t, j),
                        core_omega=subgrp_from_mask(Pg, t, core))


# ---------------------------------------------------------------------------
# Sylow subgroups and cores


def sylow(G: GroupLike, p: int) -> Subgrp:
    """A Sylow p-subgroup grown one step at a time inside normalizers."""
    Gg = as_group(G)
    if not Gg.under_cap:
        raise CapExceeded("sylow", Gg.order, Gg.cap)
    target = p_part(Gg.order, p)
    elems = Gg.elements()
    gens: list[Perm] = []
    pset: frozenset[Perm] = frozenset([Gg.identity])
    while len(pset) < target:
        for x in elems:
            if x in pset:
                continue
            if (x ** p) not in pset:
                continue
            if all(conj_by(h, x) in pset for h in gens):
                gens.append(x)
                pset = generate(gens, Gg.degree)
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise RuntimeError("Sylow search stalled")
    return Subgrp(Gg, greedy_gens(pset, Gg.degree), elements=pset)


def sylow_subgroups(G: GroupLike, p: int) -> list[Subgrp]:
    """All Sylow p-subgroups, sorted by key."""
    Gg = as_group(G)
    P = sylow(Gg, p)
    seen = {P.key: P}
    queue = [P]
    for Q in queue:
        for g in Gg.gens:
            R = conjugate(Q, g, Gg)
            if R.key not in seen:
                seen[R.key] = R
                queue.append(R)
    return [seen[k] for k in sorted(seen)]


def normal_core(G: GroupLike, H: Subgrp) -> Subgrp:
    """Largest normal subgroup of ``G`` inside ``H``."""
    Gg = as_group(G)
    core = set(H.elements())
    while True:
        new = set(core)
        gens = greedy_gens(core, Gg.degree)
        for g in Gg.gens:
            conj = generate([conj_by(h, g) for h in gens], Gg.degree)
            new &= conj
        if len(new) == len(core):
            return Subgrp.from_elements(Gg, core)
        core = generate(greedy_gens(new, Gg.degree), Gg.degree)
        core = set(core)


def o_p(G: GroupLike, p: int) -> Subgrp:
    """``O_p(G)``, the intersection of all Sylow p-subgroups."""
    Gg = as_group(G)
    if Gg.order % p:
        return Subgrp(Gg, [], elements=[Gg.identity])
    return normal_core(Gg, sylow(Gg, p))


def o_upper_pprime(G: GroupLike, p: int) -> Subgrp:
    """``O^{p'}(G)``: the subgroup generated by the p-elements."""
    Gg = as_group(G)
    return normal_closure(Gg, [x for x in Gg.elements() if is_p_power(x.order(), p)
                               and not x.is_identity()])


def o_upper_p(G: GroupLike, p: int) -> Subgrp:
    """``O^p(G)``: the subgroup generated by the p'-elements."""
    Gg = as_group(G)
    return normal_closure(Gg, [x for x in Gg.elements() if gcd(x.order(), p) == 1
                               and not x.is_identity()])


def quotient_action(G: GroupLike, N: GroupLike):
    """Regular action of ``G/N`` on right cosets ``Nx``.

    Returns ``(Q, project)`` where ``project(g)`` is the image of ``g`` in
    the permutation group ``Q``; cosets are ordered by their least element.
    """
    Gg = as_group(G)
    nset = element_set(N)
    if not is_normal(Gg, N):
        raise NotASubgroup("quotient by a non-normal subgroup")
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for x in Gg.elements():
        if x in coset_of:
            continue
        c = len(reps)
        reps.append(x)
        for n in nset:
            coset_of[n * x] = c
    k = len(reps)

    def project(g: Perm) -> Perm:
        return Perm(coset_of[r * g] for r in reps)

    Q = PermGroup([project(g) for g in Gg.gens], degree=k)
    return Q, project


def is_characteristic(P: GroupLike, Q: GroupLike) -> bool:
    """True iff every automorphism of ``P`` maps ``Q`` onto itself."""
    from .morphisms import automorphism_group

    aut = automorphism_group(as_group(P))
    qmask = aut.table.mask_of(Q.elements())
    return all(aut.image_mask(a, qmask) == qmask for a in aut.perm_model.gens)
