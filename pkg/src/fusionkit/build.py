"""Saturation-preserving constructions on fusion systems and the exotic screen.

Every construction rebuilds its output from automizer generators and then
runs the saturation checker on it; an unsaturated result raises
:class:`SaturationError` instead of being returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import pmap
from .errors import CapExceeded, PremiseError, SaturationError
from .fusion import (
    Assignment,
    EssentialClass,
    FusionSys,
    _class_flags,
    _essential_masks,
    essentials,
    is_saturated,
    op_core_mask,
    strongly_closed_masks,
    system_from_automizers,
)
from .groups import Subgrp, all_subgroups, o_upper_pprime, quotient_action, table_of
from .morphisms import GroupMap, automorphism_group, is_strongly_p_embedded_in
from .perm import Perm, PermGroup


def _require_saturated(F: FusionSys, what: str):
    res = is_saturated(F)
    if not res:
        raise PremiseError("saturated", f"{what} needs a saturated input; witness {res.witness}")


def _checked(F: FusionSys) -> FusionSys:
    res = is_saturated(F)
    F.meta["saturation"] = res
    if not res:
        raise SaturationError(res.witness)
    return F


def _positions(P: Subgrp, phi: GroupMap) -> Perm:
    elems = P.elements()
    where = {x: i for i, x in enumerate(elems)}
    return Perm(where[phi(x)] for x in elems)


def _current_autos(F: FusionSys, masks) -> dict[int, list[Perm]]:
    e = F.engine
    return {m: list(e.automizer(m).gens) for m in masks}


# ---------------------------------------------------------------------------
# pruning


def extendable_automizer(F: FusionSys, P: Subgrp) -> PermGroup:
    """``H_F(P)``: automorphisms of ``P`` that are restrictions of F-maps on larger subgroups.

    Overgroups of order ``p|P|`` inside ``N_S(P)`` suffice: an extension to
    any ``X > P`` restricts to ``N_X(P) > P``.
    """
    e = F.engine
    t = e.t
    pm = F.mask(P)
    members = t.members(pm)
    where = {x: i for i, x in enumerate(members)}
    npm = t.normalizer(pm)
    gens: list[Perm] = list(e.inner_on(pm, npm))
    H = PermGroup(gens, degree=len(members))
    for X in e.subs:
        if t.size(X) != F.p * t.size(pm) or pm & ~X or X & ~npm:
            continue
        xm = t.members(X)
        idx = [xm.index(x) for x in members]
        for h in e.homs(X):
            img = [h[i] for i in idx]
            if any(not (pm >> y) & 1 for y in img):
                continue
            a = Perm(where[y] for y in img)
            if not H.contains(a):
                gens.append(a)
                H = PermGroup(gens, degree=len(members))
    return H


def _target_mask(F: FusionSys, target) -> int:
    if isinstance(target, EssentialClass):
        return F.mask(target.fclass.rep)
    if isinstance(target, int):
        return target
    return F.mask(target)


def prune(F: FusionSys, target, K: list[GroupMap] | PermGroup | None = None) -> FusionSys:
    """Replace ``Aut_F(P)`` on the class of ``target`` by ``K`` (default ``H_F(P)``).

    The result is generated by ``Aut_F(S)``, ``K`` at ``P`` and the automizers
    of the remaining essential classes.
    """
    _require_saturated(F, "prune")
    e = F.engine
    t = e.t
    pm = _target_mask(F, target)
    c = e.class_for(pm)
    pm = c.rep_mask
    centric, _, _, comps = _class_flags(F, c)
    if not (centric and comps > 1 and pm != t.full):
        raise PremiseError("essential", f"{e.label(pm)} is not an essential class")
    for Q in e.subs:
        if Q != pm and Q & ~pm == 0 and t.centralizer(Q) & ~Q == 0:
            raise PremiseError("no-proper-s-centric",
                               f"{e.label(Q)} < {e.label(pm)} is S-centric")
    P = e.sub(pm)
    H = extendable_automizer(F, P)
    A = e.automizer(pm)
    if K is None:
        kgens = list(H.gens)
    else:
        kgens = list(K.gens) if isinstance(K, PermGroup) else [_positions(P, k) for k in K]
        Kg = PermGroup(kgens, degree=P.order)
        if not all(Kg.contains(h) for h in H.gens):
            raise PremiseError("K-contains-H", "K does not contain the extendable automizer")
        if not all(A.contains(k) for k in kgens):
            raise PremiseError("K-inside-automizer", "K is not inside Aut_F(P)")
    others = [E.fclass.rep for E in essentials(F)]
    autos = _current_autos(F, [t.full] + [F.mask(R) for R in others if F.mask(R) != pm])
    autos[pm] = kgens
    out = system_from_automizers(F.p, F.s, autos, "pruned")
    return _checked(out)


# ---------------------------------------------------------------------------
# extension by a new automizer


def extend_with_automizer(F0: FusionSys, V: Subgrp, delta_gens: list[GroupMap]) -> FusionSys:
    """``<F0, Δ>`` where ``Δ = <Aut_F0(V), delta_gens>``, after checking four premises."""
    e = F0.engine
    p = F0.p
    vm = F0.mask(V)
    V = e.sub(vm)
    c = e.class_for(vm)
    if c.nsize[vm] != max(c.nsize.values()):
        raise PremiseError("fully-normalized", f"{e.label(vm)} is not fully F0-normalized")
    centric, _, _, _ = _class_flags(F0, c)
    if not centric:
        raise PremiseError("centric", f"{e.label(vm)} is not F0-centric")
    base = list(e.automizer(vm).gens)
    old = PermGroup(base, degree=V.order)
    extra = [_positions(V, d) for d in delta_gens]
    delta = PermGroup(base + extra, degree=V.order)
    if delta.order == old.order:
        return F0
    inn = Subgrp(delta, e.inner_on(vm))
    Q, project = quotient_action(delta, inn)
    M = Subgrp(Q, [project(a) for a in base])
    if not is_strongly_p_embedded_in(M, Q, p):
        raise PremiseError("strongly-p-embedded",
                           "Out_F0(V) is not strongly p-embedded in the extended Out-group")
    for E in _essential_masks(F0):
        if E != vm and E & ~vm == 0:
            raise PremiseError("no-essential-below", f"{e.label(E)} < V is F0-essential")
    autos: dict[int, list[Perm]] = {}
    for a in F0.assignments:
        autos[F0.mask(a.rep)] = [_positions(a.rep, g) for g in a.gens]
    autos[vm] = autos.get(vm, []) + extra
    F = system_from_automizers(p, F0.s, autos, "extended")
    fe = F.engine
    for Q2 in fe.subs:
        if Q2 != vm and Q2 & ~vm == 0:
            if _class_flags(F, fe.class_for(Q2))[0]:
                raise PremiseError("minimal-centric", f"{fe.label(Q2)} < V is F-centric")
    return _checked(F)


# ---------------------------------------------------------------------------
# subsystems of index prime to p


def _hyperfocal_autos(F: FusionSys) -> dict[int, list[Perm]]:
    """Generators of ``O^{p'}(Aut_F(X))`` for every ``X``, keyed by mask."""
    e = F.engine
    t = e.t
    out: dict[int, list[Perm]] = {}
    for c in e.classes:
        core = o_upper_pprime(c.aut, F.p).gens
        for X in c.masks:
            tX, inv = c.trans[X], c.trans_inv[X]
            members = t.members(X)
            where = {x: i for i, x in enumerate(members)}
            gens = [Perm(where[tX[a[inv[x]]]] for x in members) for a in core]
            if gens:
                out[X] = gens
    return out


@dataclass
class PPrimeData:
    """``O^{p'}_*(F)`` generators, ``Aut^0_F(S)`` and ``Γ = Aut_F(S)/Aut^0_F(S)``."""

    star: dict[int, list[Perm]]
    aut_f_s: PermGroup
    aut0: PermGroup
    gamma: PermGroup
    project: object
    lifts: dict[Perm, Perm] = field(default_factory=dict)


def pprime_data(F: FusionSys) -> PPrimeData:
    cached = F.meta.get("_pprime")
    if cached is not None:
        return cached
    _require_saturated(F, "o_pprime")
    e = F.engine
    t = e.t
    star = _hyperfocal_autos(F)
    S_star = system_from_automizers(F.p, F.s, star, "subsystem")
    se = S_star.engine
    centric = [X for c in e.classes if _class_flags(F, c)[0] for X in c.masks]
    A = e.automizer(t.full)
    gens: list[Perm] = list(star.get(t.full, [])) + list(e.inner_on(t.full))
    aut0 = PermGroup(gens, degree=t.n)
    homs_cache: dict[int, set] = {}
    for a in A.elements():
        if aut0.contains(a):
            continue
        for X in centric:
            hs = homs_cache.get(X)
            if hs is None:
                hs = homs_cache[X] = set(se.homs(X))
            if tuple(a[x] for x in t.members(X)) in hs:
                gens.append(a)
                aut0 = PermGroup(gens, degree=t.n)
                break
    Q, project = quotient_action(A, Subgrp(A, aut0.gens))
    lifts: dict[Perm, Perm] = {}
    for a in A.elements():
        lifts.setdefault(project(a), a)
    data = PPrimeData(star, A, aut0, Q, project, lifts)
    F.meta["_pprime"] = data
    return data


def _subsystem_for(F: FusionSys, data: PPrimeData, H: Subgrp) -> FusionSys:
    t = F.engine.t
    autos = {m: list(g) for m, g in data.star.items()}
    autos[t.full] = autos.get(t.full, []) + list(data.aut0.gens) + [data.lifts[h] for h in H.gens]
    return system_from_automizers(F.p, F.s, autos, "subsystem")


def o_pprime(F: FusionSys) -> FusionSys:
    """``O^{p'}(F)``; ``meta["index"]`` holds ``|Γ|``, a p'-number."""
    data = pprime_data(F)
    H = _subsystem_for(F, data, Subgrp(data.gamma, []))
    H.meta["index"] = data.gamma.order
    return _checked(H)


def pprime_interval(F: FusionSys) -> list[FusionSys]:
    """All subsystems of index prime to p, one per subgroup of ``Γ``, smallest first.

    Each member carries ``meta["gamma_subgroup"]`` (its subgroup of ``Γ``)
    and ``meta["index"]``; use :func:`interval_lattice` for inclusions.
    """
    data = pprime_data(F)
    subs = all_subgroups(data.gamma)

    def build(H):
        sys = _subsystem_for(F, data, H)
        sys.meta["gamma_subgroup"] = H
        sys.meta["index"] = data.gamma.order // H.order
        return _checked(sys)

    return pmap(build, subs)


def interval_lattice(members: list[FusionSys]) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with member ``i`` properly inside member ``j``."""
    out = []
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if i != j and a.meta["gamma_subgroup"].issubgroup(b.meta["gamma_subgroup"].group) \
                    and a.meta["gamma_subgroup"].order < b.meta["gamma_subgroup"].order:
                out.append((i, j))
    return out


def is_subsystem(H: FusionSys, F: FusionSys) -> bool:
    """Every generating morphism of ``H`` lies in ``F`` (same ``S``)."""
    fe = F.engine
    for dom, smap in H.engine.gens:
        if tuple(smap[x] for x in fe.t.members(dom)) not in set(fe.homs(dom)):
            return False
    return True


def pprime_criteria(F: FusionSys, H: FusionSys) -> dict[str, bool]:
    """Direct check of the two index-prime-to-p criteria on centric subgroups.

    ``contains-hyperfocal``: ``Aut_H(P) >= O^{p'}(Aut_F(P))`` for every
    F-centric ``P``.  ``restriction-closed``: for centric ``P <= Q`` and
    ``φ ∈ Hom_F(Q, S)`` with ``φ|_P ∈ Hom_H(P, S)``, also ``φ ∈ Hom_H(Q, S)``.
    """
    fe, he = F.engine, H.engine
    t = fe.t
    centric = [X for c in fe.classes if _class_flags(F, c)[0] for X in c.masks]
    first = True
    for X in centric:
        AH = he.automizer(X)
        if not all(AH.contains(a) for a in o_upper_pprime(fe.automizer(X), F.p).gens):
            first = False
            break
    second = True
    hhoms: dict[int, set] = {}

    def hh(X):
        if X not in hhoms:
            hhoms[X] = set(he.homs(X))
        return hhoms[X]

    for Q in centric:
        qm = t.members(Q)
        for P in centric:
            if P == Q or P & ~Q:
                continue
            idx = [qm.index(x) for x in t.members(P)]
            for phi in fe.homs(Q):
                if tuple(phi[i] for i in idx) in hh(P) and phi not in hh(Q):
                    second = False
                    break
            if not second:
                break
        if not second:
            break
    return {"contains-hyperfocal": first, "restriction-closed": second}


# ---------------------------------------------------------------------------
# transport and isomorphism


def transport(F: FusionSys, alpha: GroupMap) -> FusionSys:
    """``F^α``: every generating map ``φ`` becomes ``α^-1 φ α`` on ``Pα``."""
    S = F.s
    if not alpha.is_automorphism_of(S) or not alpha.injective:
        raise ValueError("transport needs an automorphism of S")
    new = []
    for a in F.assignments:
        rep = Subgrp(S, [alpha(g) for g in a.rep.gens],
                     elements=[alpha(x) for x in a.rep.elements()])
        maps = []
        for phi in a.gens:
            table = {alpha(x): alpha(y) for x, y in phi.table.items()}
            maps.append(GroupMap(rep, rep, [table[g] for g in rep.gens], table))
        new.append(Assignment(rep, tuple(maps)))
    return FusionSys(F.p, S, new, F.provenance)


def _invariants(F: FusionSys) -> tuple:
    e = F.engine
    t = e.t
    classes = sorted((t.size(c.rep_mask), len(c.masks), c.aut.order) for c in e.classes)
    ess = sorted((E.fclass.rep.order, E.out_order) for E in essentials(F))
    return (tuple(classes), tuple(ess))


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: GroupMap | None
    reason: str

    def __bool__(self):
        return self.isomorphic


def outer_coset_reps(S: PermGroup) -> list[Perm]:
    """Least element of each coset ``α Inn(S)`` in the automorphism permutation model."""
    aut = automorphism_group(S)
    inn = aut.inn.elements()
    covered: set[Perm] = set()
    reps = []
    for a in aut.perm_model.elements():
        if a in covered:
            continue
        reps.append(a)
        covered.update(a * i for i in inn)
    return reps


def is_isomorphic(F1: FusionSys, F2: FusionSys) -> IsoResult:
    """Search ``α`` over outer-coset representatives of ``Aut(S)`` with ``F1^α = F2``.

    Cheap invariants (class shapes, essential Out orders) are compared
    first and may answer ``False`` even when the two Sylow groups differ.

    The least passing representative is returned, so the witness does not
    depend on thread count or seed.
    """
    if F1.p != F2.p or _invariants(F1) != _invariants(F2):
        return IsoResult(False, None, "invariants differ")
    if F1.s.element_set() != F2.s.element_set():
        raise ValueError("is_isomorphic compares systems on the same S")
    S = F1.s
    aut = automorphism_group(S)
    target = F2.signature
    reps = outer_coset_reps(S)

    def test(a):
        alpha = aut.to_map(a)
        return transport(F1, alpha).signature == target

    hits = pmap(test, reps)
    for a, ok in zip(reps, hits):
        if ok:
            return IsoResult(True, aut.to_map(a), "transport")
    return IsoResult(False, None, "no automorphism of S transports one onto the other")


# ---------------------------------------------------------------------------
# exotic screen


VERDICTS = ("exotic-modulo-CFSG", "realizable-witness", "inconclusive")


@dataclass
class ScreenReport:
    strongly_closed: list[Subgrp]
    minimal_sc: Subgrp | None
    abelian_flag: bool
    op_core: Subgrp
    normal_support_check: str
    verdict: str
    abelian_normal: bool | None = None
    family: list[str] = field(default_factory=list)
    failures: dict[str, str] = field(default_factory=dict)


def derive_verdict(minimal_sc: Subgrp | None, check: str, ambient: str | None) -> str:
    """Verdict from the screen's fields.

    ``check`` is ``verified-none``, ``found(<name>)`` or ``undecided``.
    """
    if minimal_sc is None:
        return "inconclusive"
    if ambient is not None:
        return f"realizable-witness({ambient})"
    if check == "verified-none":
        return "exotic-modulo-CFSG"
    return "inconclusive"


def _subsystem_on(F: FusionSys, A: int, autos: dict[int, list[Perm]]) -> FusionSys:
    e = F.engine
    t = e.t
    Asub = e.sub(A)
    Ag = PermGroup(Asub.gens, degree=F.s.degree, _elements=Asub.elements())
    at = table_of(Ag)
    moved = {at.mask_of(t.elems[x] for x in t.members(m)): g for m, g in autos.items()}
    moved.setdefault(at.full, [])
    return system_from_automizers(F.p, Ag, moved, "subsystem")


def candidate_family(F: FusionSys, A: int) -> dict[str, FusionSys]:
    """Subsystems on ``A`` built from restrictions of F-automizers."""
    e = F.engine
    below = [X for X in e.subs if X & ~A == 0]
    ess = [E for E in _essential_masks(F) if E & ~A == 0]
    core = {E: list(o_upper_pprime(e.automizer(E), F.p).gens) for E in ess}
    fam = {
        "inner": {},
        "automizers": {X: list(e.automizer(X).gens) for X in below},
        "essential-core": dict(core),
        "essential-core+A": {**core, A: core.get(A, []) + list(
            o_upper_pprime(e.automizer(A), F.p).gens)},
    }
    out: dict[str, FusionSys] = {}
    seen = set()
    for name, autos in fam.items():
        E = _subsystem_on(F, A, autos)
        if E.signature in seen:
            continue
        seen.add(E.signature)
        out[name] = E
    return out


def normality_failure(F: FusionSys, A: int, E: FusionSys) -> str | None:
    """First failed normality condition of ``E`` (on ``A``) in ``F``, or None."""
    fe, ee = F.engine, E.engine
    t, at = fe.t, ee.t
    to_s = [t.index[x] for x in at.elems]
    if not is_saturated(E):
        return "saturated"
    # invariance under Aut_F(A)
    AF = fe.automizer(A)
    Asub = E.s
    aut_elems = at.elems
    for a in AF.gens:
        table = {aut_elems[i]: aut_elems[a[i]] for i in range(at.n)}
        alpha = GroupMap(Subgrp.whole(Asub), Subgrp.whole(Asub),
                         [table[g] for g in Asub.gens], table)
        if transport(E, alpha).signature != E.signature:
            return "aut-invariant"
    # Frattini condition: Hom_F(P, A) = Hom_E(P, A) Aut_F(A)
    af = AF.elements()
    for P in ee.subs:
        ps = 0
        for i in at.members(P):
            ps |= 1 << to_s[i]
        want = set(fe.homs(ps, A))
        got = set()
        for h in ee.homs(P):
            for a in af:
                got.add(tuple(to_s[a[h_i]] for h_i in h))
        if not want <= got:
            return "frattini"
    # extension condition
    C = t.centralizer(A)
    AC = t.product(A, C)
    Z = t.center(A)
    acm = t.members(AC)
    a_pos = [acm.index(x) for x in t.members(A)]
    c_pos = [(acm.index(x), x) for x in t.members(C)]
    autos_ac = [h for h in fe.homs(AC) if sum(1 << y for y in h) == AC]
    for g in ee.automizer(at.full).gens:
        want = tuple(to_s[g[i]] for i in range(at.n))
        ok = False
        for h in autos_ac:
            if tuple(h[i] for i in a_pos) != want:
                continue
            if all((Z >> t.mul[t.inv[x]][h[k]]) & 1 for k, x in c_pos):
                ok = True
                break
        if not ok:
            return "extension"
    return None


def exotic_screen(F: FusionSys) -> ScreenReport:
    _require_saturated(F, "exotic_screen")
    e = F.engine
    t = e.t
    sc = strongly_closed_masks(F)
    proper = [T for T in sc if T not in (1, t.full)]
    minimal = [T for T in proper if not any(U != T and U & ~T == 0 for U in proper)]
    A = min(minimal, key=lambda m: (t.size(m), t.key(m))) if minimal else None
    core = op_core_mask(F)
    report = ScreenReport(
        strongly_closed=[e.sub(T) for T in sc],
        minimal_sc=e.sub(A) if A is not None else None,
        abelian_flag=bool(A is not None and t.is_abelian(A)),
        op_core=e.sub(core),
        normal_support_check="undecided",
        verdict="inconclusive",
    )
    if A is not None and report.abelian_flag:
        report.abelian_normal = A & ~core == 0
    if A is not None:
        try:
            fam = candidate_family(F, A)
            report.family = list(fam)
            found = None
            for name, E in fam.items():
                why = normality_failure(F, A, E)
                if why is None:
                    found = name
                    break
                report.failures[name] = why
            report.normal_support_check = f"found({found})" if found else "verified-none"
        except CapExceeded:
            report.normal_support_check = "undecided"
    ambient = None
    if F.ambient is not None:
        ambient = F.meta.get("ambient_name", f"order-{F.ambient.order}")
    report.verdict = derive_verdict(report.minimal_sc, report.normal_support_check, ambient)
    return report
