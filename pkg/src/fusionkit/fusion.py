"""Fusion systems on a finite p-group, generated by automizer assignments.

Morphisms are never stored wholesale.  Every subgroup of ``S`` is a bitmask
over the element table of ``S``; an F-class is a connected component of the
graph whose edges are restrictions of the generating automorphisms, and
``Aut_F(R)`` at the class representative ``R`` is generated by the Schreier
generators of a spanning tree.  ``Hom_F(P, Q)`` is then read off as
``t_P^-1 Aut_F(R) t_Y`` over members ``Y <= Q`` of the class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .config import CAPS, pmap
from .errors import CapExceeded, FusionKitError, NotASubgroup
from .groups import (
    Subgrp,
    as_group,
    normalizer,
    o_p,
    p_part,
    quotient_action,
    subgroup_masks,
    subgrp_from_mask,
    sylow,
    table_of,
)
from .morphisms import GroupMap, has_strongly_p_embedded
from .perm import Perm, PermGroup
from .table import GroupTable

PROVENANCES = ("from-group", "from-data", "pruned", "extended", "subsystem")


@dataclass(frozen=True)
class Assignment:
    """Generators of an automizer at ``rep``; inner automorphisms are implicit."""

    rep: Subgrp
    gens: tuple[GroupMap, ...]


class FusionSys:
    """The fusion system on ``s`` generated by ``Inn(s)`` and the assignments."""

    def __init__(self, p: int, s: PermGroup, assignments: Sequence[Assignment],
                 provenance: str = "from-data", ambient: PermGroup | None = None):
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.p = p
        self.s = s
        self.provenance = provenance
        self.ambient = ambient
        self.meta: dict = {}
        sset = s.element_set()
        for a in assignments:
            if not a.rep.element_set <= sset:
                raise NotASubgroup("assignment representative is not inside S")
            for g in a.gens:
                if g.dom != a.rep or not g.is_automorphism_of(a.rep):
                    raise ValueError(f"{g!r} is not an automorphism of its representative")
        ordered = sorted(assignments, key=lambda a: a.rep.sort_key())
        if not ordered or ordered[-1].rep.order != s.order:
            ordered.append(Assignment(Subgrp.whole(s), ()))
        self.assignments: tuple[Assignment, ...] = tuple(ordered)

    # -- engine -------------------------------------------------------------

    @cached_property
    def engine(self) -> "_Engine":
        return _Engine(self)

    @property
    def table(self) -> GroupTable:
        return self.engine.t

    def subgroups(self) -> list[Subgrp]:
        e = self.engine
        return [e.sub(m) for m in e.subs]

    def mask(self, P: Subgrp | Iterable[Perm]) -> int:
        t = self.engine.t
        elems = P.elements() if isinstance(P, Subgrp) else P
        try:
            return t.mask_of(elems)
        except KeyError:
            raise NotASubgroup("subgroup does not lie in S") from None

    def label(self, P: Subgrp | int) -> str:
        e = self.engine
        m = P if isinstance(P, int) else self.mask(P)
        return e.label(m)

    # -- equality -------------------------------------------------------------

    @cached_property
    def signature(self) -> tuple:
        """Complete invariant of the generated system for a fixed ``S``."""
        e = self.engine
        out = []
        for c in e.classes:
            aut = tuple(sorted(c.aut.elements()))
            cosets = []
            for X in c.masks:
                tX = c.trans[X]
                cosets.append((X, min(tuple(tX[k] for k in a) for a in aut)))
            out.append((c.rep_mask, aut, tuple(cosets)))
        return (self.p, tuple(sorted(self.s.elements())), tuple(out))

    def __eq__(self, other):
        if not isinstance(other, FusionSys):
            return NotImplemented
        return self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return (f"<FusionSys p={self.p} |S|={self.s.order} "
                f"assignments={len(self.assignments)} {self.provenance}>")


# ---------------------------------------------------------------------------
# engine


def smap_of(t: GroupTable, phi: GroupMap) -> tuple[int, ...]:
    arr = [-1] * t.n
    for x, y in phi.table.items():
        arr[t.index[x]] = t.index[y]
    return tuple(arr)


def groupmap_of(F: FusionSys, dom_mask: int, cod_mask: int, images: dict[int, int]) -> GroupMap:
    e = F.engine
    t = e.t
    dom, cod = e.sub(dom_mask), e.sub(cod_mask)
    table = {t.elems[i]: t.elems[j] for i, j in images.items()}
    return GroupMap(dom, cod, [table[g] for g in dom.gens], table)


@dataclass
class _Class:
    index: int
    masks: list[int]
    rep_mask: int
    rep_elems: list[int]
    trans: dict[int, tuple[int, ...]]
    trans_inv: dict[int, dict[int, int]]
    aut: PermGroup
    nsize: dict[int, int]
    csize: dict[int, int]


class _Engine:
    def __init__(self, F: FusionSys):
        S = F.s
        if S.order > CAPS.subgroup:
            raise CapExceeded("subgroup enumeration", S.order, CAPS.subgroup)
        self.F = F
        self.p = F.p
        self.t = t = table_of(S)
        self.subs = subgroup_masks(t, F.p)
        self.sub_index = {m: i for i, m in enumerate(self.subs)}
        self._order_rank: dict[int, int] = {}
        counts: dict[int, int] = {}
        for m in self.subs:
            k = t.size(m)
            self._order_rank[m] = counts.get(k, 0)
            counts[k] = counts.get(k, 0) + 1
        self._subgrp_cache: dict[int, Subgrp] = {}
        gens: list[tuple[int, tuple[int, ...]]] = []
        for a in F.assignments:
            m = t.mask_of(a.rep.elements())
            for g in a.gens:
                gens.append((m, smap_of(t, g)))
        for gi in t.gen_idx:
            gens.append((t.full, tuple(t.conj(i, gi) for i in range(t.n))))
        self.gens = gens
        self._build_classes()

    # subgroup helpers
    def sub(self, mask: int) -> Subgrp:
        s = self._subgrp_cache.get(mask)
        if s is None:
            s = self._subgrp_cache[mask] = subgrp_from_mask(self.F.s, self.t, mask)
        return s

    def label(self, mask: int) -> str:
        if mask not in self._order_rank:
            raise NotASubgroup("not a subgroup of S")
        return f"#{self.t.size(mask)}:{self._order_rank[mask]}"

    def image(self, smap: Sequence[int], mask: int) -> int:
        out = 0
        for i in self.t.members(mask):
            out |= 1 << smap[i]
        return out

    def _build_classes(self):
        t = self.t
        adj: dict[int, list[tuple[int, int]]] = {}
        for m in self.subs:
            edges = []
            for gi, (dom, smap) in enumerate(self.gens):
                if m & ~dom == 0:
                    edges.append((gi, self.image(smap, m)))
            adj[m] = edges
        self.adj = adj
        seen: set[int] = set()
        comps: list[list[int]] = []
        for m in self.subs:
            if m in seen:
                continue
            comp = [m]
            seen.add(m)
            for x in comp:
                for _, y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
            comps.append(sorted(comp, key=lambda k: self.sub_index[k]))
        classes = []
        self.class_of: dict[int, int] = {}
        for comp in comps:
            nsize = {X: t.size(t.normalizer(X)) for X in comp}
            csize = {X: t.size(t.centralizer(X)) for X in comp}
            best = max(nsize.values())
            rep = next(X for X in comp if nsize[X] == best)
            classes.append(self._class_data(len(classes), comp, rep, nsize, csize))
            for X in comp:
                self.class_of[X] = len(classes) - 1
        self.classes: list[_Class] = classes

    def _class_data(self, index, comp, rep, nsize, csize) -> _Class:
        t = self.t
        rep_elems = t.members(rep)
        m = len(rep_elems)
        trans = {rep: tuple(rep_elems)}
        queue = [rep]
        tree_edges = set()
        for X in queue:
            tX = trans[X]
            for gi, Y in self.adj[X]:
                if Y in trans:
                    continue
                smap = self.gens[gi][1]
                trans[Y] = tuple(smap[x] for x in tX)
                tree_edges.add((X, gi))
                queue.append(Y)
        trans_inv = {X: {x: k for k, x in enumerate(tX)} for X, tX in trans.items()}
        gens: list[Perm] = []
        group = PermGroup([], degree=m)
        for X in comp:
            tX = trans[X]
            for gi, Y in self.adj[X]:
                if (X, gi) in tree_edges:
                    continue
                smap = self.gens[gi][1]
                inv = trans_inv[Y]
                s = Perm(inv[smap[x]] for x in tX)
                if s.is_identity() or group.contains(s):
                    continue
                gens.append(s)
                group = PermGroup(gens, degree=m)
        return _Class(index, comp, rep, rep_elems, trans, trans_inv, group, nsize, csize)

    # morphisms
    def class_for(self, mask: int) -> _Class:
        try:
            return self.classes[self.class_of[mask]]
        except KeyError:
            raise NotASubgroup("not a subgroup of S") from None

    def homs(self, P: int, Q: int | None = None) -> list[tuple[int, ...]]:
        """``Hom_F(P, Q)`` as image tuples over the members of ``P``, sorted."""
        c = self.class_for(P)
        inv = c.trans_inv[P]
        pos = [inv[x] for x in self.t.members(P)]
        targets = [Y for Y in c.masks if Q is None or Y & ~Q == 0]
        out = set()
        for a in c.aut.elements():
            for Y in targets:
                tY = c.trans[Y]
                out.add(tuple(tY[a[k]] for k in pos))
        return sorted(out)

    def automizer(self, X: int) -> PermGroup:
        """``Aut_F(X)`` on the positions of the sorted members of ``X``."""
        c = self.class_for(X)
        if X == c.rep_mask:
            return c.aut
        tX, inv = c.trans[X], c.trans_inv[X]
        members = self.t.members(X)
        where = {x: i for i, x in enumerate(members)}
        gens = [Perm(where[tX[a[inv[x]]]] for x in members) for a in c.aut.gens]
        return PermGroup(gens, degree=len(members))

    def inner_on(self, X: int, g_mask: int | None = None) -> list[Perm]:
        """Conjugation maps on ``X`` by generators of ``N`` (default ``X``), as position perms."""
        t = self.t
        members = t.members(X)
        where = {x: i for i, x in enumerate(members)}
        acting = t.gens_of(X if g_mask is None else g_mask)
        return [Perm(where[t.conj(x, g)] for x in members) for g in acting]


# ---------------------------------------------------------------------------
# construction


def _automorphism_maps(P: Subgrp, perms: Iterable[Perm]) -> tuple[GroupMap, ...]:
    elems = P.elements()
    out = []
    for a in perms:
        table = {elems[i]: elems[a[i]] for i in range(len(elems))}
        out.append(GroupMap(P, P, [table[g] for g in P.gens], table))
    return tuple(out)


def fusion_from_data(s: PermGroup, p: int, assignments: Sequence[tuple[Subgrp, Sequence[GroupMap]]],
                     provenance: str = "from-data") -> FusionSys:
    """Fusion system generated by explicit automizer generators.

    Every map is verified to be an automorphism of its subgroup.  An
    assignment at ``S`` itself is required.
    """
    items = [Assignment(rep, tuple(gens)) for rep, gens in assignments]
    if not any(a.rep.order == s.order for a in items):
        raise ValueError("missing assignment at S")
    return FusionSys(p, s, items, provenance)


def fusion_from_group(G: PermGroup, p: int) -> FusionSys:
    """``F_S(G)`` with ``S = sylow(G, p)``.

    Automizers ``Aut_G(P)`` are assigned at one representative of each
    S-conjugacy class, keeping only classes where ``G`` adds fusion beyond
    ``S``, plus ``S`` itself.
    """
    Gg = as_group(G)
    if Gg.order % p:
        raise ValueError(f"{p} does not divide |G| = {Gg.order}")
    if not Gg.under_cap:
        raise CapExceeded("fusion_from_group", Gg.order, Gg.cap)
    Ssub = sylow(Gg, p)
    S = PermGroup(Ssub.gens, degree=Gg.degree, _elements=Ssub.elements())
    if S.order > CAPS.subgroup:
        raise CapExceeded("subgroup enumeration", S.order, CAPS.subgroup)
    t = table_of(S)
    masks = subgroup_masks(t, p)
    done: set[int] = set()
    assignments = []
    for m in masks:
        if m in done:
            continue
        orbit = {m}
        queue = [m]
        for X in queue:
            for g in t.gen_idx:
                Y = t.image(X, g)
                if Y not in orbit:
                    orbit.add(Y)
                    queue.append(Y)
        done |= orbit
        P = subgrp_from_mask(S, t, m)
        members = P.elements()
        where = {x: i for i, x in enumerate(members)}
        inner = [Perm(where[t.elems[t.conj(t.index[x], g)]] for x in members)
                 for g in t.gens_of(t.normalizer(m))]
        H = PermGroup(inner, degree=len(members))
        extra: list[Perm] = []
        for g in normalizer(Gg, P).gens:
            a = Perm(where[(~g) * x * g] for x in members)
            if not H.contains(a):
                extra.append(a)
                H = PermGroup(inner + extra, degree=len(members))
        if extra or m == t.full:
            assignments.append(Assignment(P, _automorphism_maps(P, extra)))
    F = FusionSys(p, S, assignments, "from-group", ambient=Gg)
    if getattr(Gg, "name", None):
        F.meta["ambient_name"] = Gg.name
    return F


def system_from_automizers(p: int, S: PermGroup, autos: dict[int, Iterable[Perm]],
                           provenance: str) -> FusionSys:
    """Fusion system from position-perm automizer generators keyed by subgroup mask."""
    t = table_of(S)
    assignments = []
    for m in sorted(autos, key=lambda k: (t.size(k), t.key(k))):
        gens = [a for a in autos[m] if not a.is_identity()]
        if not gens and m != t.full:
            continue
        P = subgrp_from_mask(S, t, m)
        assignments.append(Assignment(P, _automorphism_maps(P, _dedup(gens))))
    return FusionSys(p, S, assignments, provenance)


def _dedup(perms: Iterable[Perm]) -> list[Perm]:
    out: list[Perm] = []
    group = None
    for a in perms:
        if group is not None and group.contains(a):
            continue
        out.append(a)
        group = PermGroup(out)
    return out


# ---------------------------------------------------------------------------
# classes and morphisms


@dataclass(frozen=True)
class FClass:
    members: tuple[Subgrp, ...]
    rep: Subgrp
    fully_normalized: tuple[bool, ...]
    fully_centralized: tuple[bool, ...]
    labels: tuple[str, ...] = field(default=())

    @property
    def rep_label(self) -> str:
        return self.labels[self.members.index(self.rep)]


def f_classes(F: FusionSys) -> list[FClass]:
    e = F.engine
    out = []
    for c in e.classes:
        nmax = max(c.nsize.values())
        cmax = max(c.csize.values())
        out.append(FClass(
            tuple(e.sub(X) for X in c.masks), e.sub(c.rep_mask),
            tuple(c.nsize[X] == nmax for X in c.masks),
            tuple(c.csize[X] == cmax for X in c.masks),
            tuple(e.label(X) for X in c.masks)))
    return out


def hom_set(F: FusionSys, P: Subgrp, Q: Subgrp) -> list[GroupMap]:
    """All F-morphisms ``P -> Q``, sorted by image tuple."""
    e = F.engine
    pm, qm = F.mask(P), F.mask(Q)
    e.class_for(pm), e.class_for(qm)
    members = e.t.members(pm)
    return [groupmap_of(F, pm, qm, dict(zip(members, imgs))) for imgs in e.homs(pm, qm)]


def automizer(F: FusionSys, P: Subgrp) -> PermGroup:
    """``Aut_F(P)`` as a permutation group on the positions of ``P.elements()``."""
    return F.engine.automizer(F.mask(P))


def automizer_maps(F: FusionSys, P: Subgrp) -> list[GroupMap]:
    A = automizer(F, P)
    return list(_automorphism_maps(P, A.gens))


def inn_positions(F: FusionSys, P: Subgrp) -> PermGroup:
    e = F.engine
    m = F.mask(P)
    return PermGroup([a for a in e.inner_on(m)], degree=P.order)


def out_group(F: FusionSys, P: Subgrp):
    """``Out_F(P)`` as a regular permutation group, with the projection from ``Aut_F(P)``."""
    A = automizer(F, P)
    inn = Subgrp(A, inn_positions(F, P).gens)
    return quotient_action(A, inn)


def aut_s_order(F: FusionSys, mask: int) -> int:
    t = F.engine.t
    return t.size(t.normalizer(mask)) // t.size(t.centralizer(mask))


# ---------------------------------------------------------------------------
# status flags and essentials


@dataclass(frozen=True)
class StatusFlags:
    centric: bool
    radical: bool
    fully_normalized: bool
    essential: bool
    out_order: int
    spe_components: int


def _class_flags(F: FusionSys, c: _Class) -> tuple[bool, bool, int, int]:
    cache = F.__dict__.setdefault("_flag_cache", {})
    hit = cache.get(c.index)
    if hit is not None:
        return hit
    e = F.engine
    t = e.t
    centric = all(t.centralizer(X) & ~X == 0 for X in c.masks)
    A = c.aut
    inn_order = t.size(c.rep_mask) // t.size(t.center(c.rep_mask))
    radical = o_p(A, F.p).order == inn_order
    out_order = A.order // inn_order
    comps = 1
    if c.rep_mask != t.full and centric and out_order % F.p == 0:
        Q, _ = quotient_action(A, Subgrp(A, e.inner_on(c.rep_mask)))
        _, comps = has_strongly_p_embedded(Q, F.p)
    hit = (centric, radical, out_order, comps)
    cache[c.index] = hit
    return hit


def status_flags(F: FusionSys, P: Subgrp) -> StatusFlags:
    e = F.engine
    m = F.mask(P)
    c = e.class_for(m)
    centric, radical, out_order, comps = _class_flags(F, c)
    fully = c.nsize[m] == max(c.nsize.values())
    essential = centric and fully and m != e.t.full and comps > 1
    return StatusFlags(centric, radical, fully, essential, out_order, comps)


@dataclass(frozen=True)
class EssentialClass:
    fclass: FClass
    out_order: int
    spe_components: int


def essentials(F: FusionSys) -> list[EssentialClass]:
    e = F.engine
    classes = f_classes(F)
    out = []
    for c, fc in zip(e.classes, classes):
        centric, radical, out_order, comps = _class_flags(F, c)
        if centric and c.rep_mask != e.t.full and comps > 1:
            out.append(EssentialClass(fc, out_order, comps))
    return out


def _essential_masks(F: FusionSys) -> list[int]:
    """Fully normalized members of essential classes."""
    e = F.engine
    out = []
    for c in e.classes:
        centric, _, _, comps = _class_flags(F, c)
        if centric and c.rep_mask != e.t.full and comps > 1:
            nmax = max(c.nsize.values())
            out.extend(X for X in c.masks if c.nsize[X] == nmax)
    return out


def centric_radical_masks(F: FusionSys) -> list[int]:
    e = F.engine
    out = []
    for c in e.classes:
        centric, radical, _, _ = _class_flags(F, c)
        if centric and radical:
            out.extend(c.masks)
    return out


# ---------------------------------------------------------------------------
# saturation


@dataclass(frozen=True)
class SaturationResult:
    saturated: bool
    witness: dict | None = None

    def __bool__(self):
        return self.saturated


def _check_class(F: FusionSys, c: _Class) -> dict | None:
    e = F.engine
    t = e.t
    p = F.p
    R = c.rep_mask
    A = c.aut
    aut_s = aut_s_order(F, R)
    if p_part(A.order, p) != aut_s:
        return {"axiom": "fully-automized", "subgroup": e.label(R),
                "aut_s_order": aut_s, "aut_f_order": A.order}
    # Aut_S(R) on rep positions
    rep_inv = c.trans_inv[R]
    aut_s_set = set()
    for g in t.members(t.normalizer(R)):
        aut_s_set.add(Perm(rep_inv[t.conj(x, g)] for x in c.rep_elems))
    restrictions: dict[tuple[int, int], set] = {}
    a_elems = A.elements()
    for P in c.masks:
        u, uinv = c.trans[P], c.trans_inv[P]
        nP = t.normalizer(P)
        sigmas = [(g, Perm(uinv[t.conj(x, g)] for x in u)) for g in t.members(nP)]
        members = t.members(P)
        for a in a_elems:
            ainv = ~a
            nphi = 0
            for g, sg in sigmas:
                if (ainv * sg * a) in aut_s_set:
                    nphi |= 1 << g
            if nphi == P:
                continue
            key = (P, nphi)
            rs = restrictions.get(key)
            if rs is None:
                nmem = t.members(nphi)
                idx = [nmem.index(x) for x in members]
                rs = {tuple(h[i] for i in idx) for h in e.homs(nphi)}
                restrictions[key] = rs
            phi = tuple(c.rep_elems[a[uinv[x]]] for x in members)
            if phi not in rs:
                return {"axiom": "receptive", "subgroup": e.label(P), "target": e.label(R),
                        "extension_control": e.label(nphi),
                        "map": {str(t.elems[x]): str(t.elems[y]) for x, y in zip(members, phi)}}
    return None


def is_saturated(F: FusionSys) -> SaturationResult:
    """Fully automized and receptive at the fully normalized representative of every class."""
    cached = F.__dict__.get("_saturation")
    if cached is not None:
        return cached
    e = F.engine
    results = pmap(lambda c: _check_class(F, c), e.classes)
    res = SaturationResult(True)
    for w in results:
        if w is not None:
            res = SaturationResult(False, w)
            break
    F._saturation = res
    return res


# ---------------------------------------------------------------------------
# strongly closed subgroups and O_p(F)


def _normal_in_s(e: _Engine) -> list[int]:
    t = e.t
    out = []
    for m in e.subs:
        if all(t.image(m, g) == m for g in t.gen_idx):
            out.append(m)
    return out


def _is_strongly_closed(e: _Engine, T: int) -> bool:
    for dom, smap in e.gens:
        if e.image(smap, T & dom) & ~T:
            return False
    return True


def strongly_closed_list(F: FusionSys) -> list[Subgrp]:
    """Subgroups ``T`` with ``(T ∩ Q)α <= T`` for every generating ``α ∈ Aut(Q)``."""
    e = F.engine
    return [e.sub(T) for T in strongly_closed_masks(F)]


def strongly_closed_masks(F: FusionSys) -> list[int]:
    e = F.engine
    return [T for T in _normal_in_s(e) if _is_strongly_closed(e, T)]


def element_classes(F: FusionSys) -> list[int]:
    """F-conjugacy classes of elements, as masks, via ``Hom_F(<x>, S)``."""
    e = F.engine
    t = e.t
    seen = 0
    out = []
    for x in range(t.n):
        if (seen >> x) & 1:
            continue
        cyc = t.generate([x])
        members = t.members(cyc)
        k = members.index(x)
        cls = 0
        for h in e.homs(cyc):
            cls |= 1 << h[k]
        seen |= cls
        out.append(cls)
    return out


def strongly_closed_oracle(F: FusionSys) -> list[int]:
    """Definitional check: unions of element F-classes that are subgroups."""
    e = F.engine
    classes = element_classes(F)
    return [T for T in e.subs if all((cl & T) == 0 or (cl & ~T) == 0 for cl in classes)]


def op_core(F: FusionSys, verify: bool = True) -> Subgrp:
    """Largest subgroup contained in every essential subgroup and invariant
    under their automizers and ``Aut_F(S)``.

    With ``verify`` the result is compared with the largest strongly closed
    subgroup inside every centric radical subgroup; a disagreement on a
    saturated system raises.
    """
    e = F.engine
    core = op_core_mask(F)
    if verify:
        other = op_core_oracle_mask(F)
        if other != core and is_saturated(F):
            raise FusionKitError(
                f"O_p(F) criteria disagree: {e.label(core)} vs {e.label(other)}")
    return e.sub(core)


def op_core_mask(F: FusionSys) -> int:
    e = F.engine
    t = e.t
    ess = _essential_masks(F)
    core = t.full
    for E in ess:
        core &= E
    actors = [(E, e.automizer(E)) for E in ess + [t.full]]
    while True:
        new = core
        for E, A in actors:
            members = t.members(E)
            for a in A.gens:
                img = 0
                for i, x in enumerate(members):
                    if (new >> x) & 1:
                        img |= 1 << members[a[i]]
                new &= img
        if new == core:
            return core
        core = new


def op_core_oracle_mask(F: FusionSys) -> int:
    e = F.engine
    bound = e.t.full
    for m in centric_radical_masks(F):
        bound &= m
    best = 1
    for T in strongly_closed_masks(F):
        if T & ~bound == 0 and e.t.size(T) > e.t.size(best):
            best = T
    return best


# ---------------------------------------------------------------------------
# normalizer subsystems


def normalizer_subsystem(F: FusionSys, Q: Subgrp) -> FusionSys:
    """``N_F(Q)`` on ``N_S(Q)``, generated by ``{α in Aut_F(X) : Qα = Q}`` for ``Q <= X <= N_S(Q)``.

    The result carries its own saturation verdict in ``meta["saturation"]``.
    """
    e = F.engine
    t = e.t
    qm = F.mask(Q)
    c = e.class_for(qm)
    if c.nsize[qm] != max(c.nsize.values()):
        raise ValueError("Q is not fully normalized")
    N = t.normalizer(qm)
    Nsub = e.sub(N)
    Ng = PermGroup(Nsub.gens, degree=F.s.degree, _elements=Nsub.elements())
    nt = table_of(Ng)
    autos: dict[int, list[Perm]] = {}
    for X in e.subs:
        if X & ~N or qm & ~X:
            continue
        members = t.members(X)
        qpos = [i for i, x in enumerate(members) if (qm >> x) & 1]
        qset = set(qpos)
        A = e.automizer(X)
        stab = [a for a in A.elements() if all(a[i] in qset for i in qpos)]
        xm = nt.mask_of(t.elems[x] for x in members)
        autos[xm] = _dedup(stab)
    H = system_from_automizers(F.p, Ng, autos, "subsystem")
    H.meta["saturation"] = is_saturated(H)
    return H


def restrict_maps(F: FusionSys, X: int, perms: Iterable[Perm]) -> list[GroupMap]:
    P = F.engine.sub(X)
    return list(_automorphism_maps(P, perms))
