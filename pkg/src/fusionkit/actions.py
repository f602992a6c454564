"""Groups of automorphisms acting on a small p-group, on its element table.

These helpers back the property suites for coprime action, the A×B lemma,
Burnside's lemma on ``Aut(S)`` and automorphisms centralizing an invariant
chain.  An action is a subgroup of the permutation model of ``Aut(P)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import frattini, is_p_power, subgroup_masks, upper_central_series
from .morphisms import AutGrp, automorphism_group
from .perm import Perm, PermGroup
from .table import GroupTable


@dataclass(frozen=True)
class Action:
    name: str
    p: int
    aut: AutGrp
    group: PermGroup

    @property
    def table(self) -> GroupTable:
        return self.aut.table


def fixed_mask(t: GroupTable, acting) -> int:
    out = 0
    for x in range(t.n):
        if all(a[x] == x for a in acting):
            out |= 1 << x
    return out


def commutator_mask(t: GroupTable, mask: int, acting) -> int:
    """``[X, G]``: generated by ``x^-1 x^g`` for ``x`` in ``X`` and ``g`` in ``acting``."""
    return t.generate([t.mul[t.inv[x]][a[x]] for x in t.members(mask) for a in acting])


def invariant(mask: int, acting) -> bool:
    return all(sum(1 << a[x] for x in _bits(mask)) == mask for a in acting)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def coprime_checks(act: Action) -> dict[str, bool]:
    """The four coprime-action conclusions for ``act.group`` acting on ``P``."""
    t = act.table
    G = act.group.elements()
    full = t.full
    fixed = fixed_mask(t, G)
    AG = commutator_mask(t, full, G)
    out = {"commutator-stable": commutator_mask(t, AG, G) == AG}
    prod = 0
    for x in t.members(AG):
        for y in t.members(fixed):
            prod |= 1 << t.mul[x][y]
    factor = prod == full
    if t.is_abelian(full):
        factor = factor and AG & fixed == 1
    out["factorization"] = factor
    phi = t.mask_of(frattini(t.group, act.p).elements())
    trivial_mod_phi = all((phi >> t.mul[t.inv[x]][a[x]]) & 1 for x in range(t.n) for a in G)
    out["frattini-trivial"] = (not trivial_mod_phi) or all(a.is_identity() for a in G)
    quotients = True
    for B in subgroup_masks(t, act.p):
        if not invariant(B, act.group.gens) or not all(t.image(B, g) == B for g in t.gen_idx):
            continue
        seen = 0
        for x in range(t.n):
            if (seen >> x) & 1:
                continue
            coset = 0
            for b in t.members(B):
                coset |= 1 << t.mul[b][x]
            seen |= coset
            stable = all((coset >> a[x]) & 1 for a in G)
            if stable and not coset & fixed:
                quotients = False
        if not quotients:
            break
    out["quotient-fixed-points"] = quotients
    return out


def p_prime_cyclics(aut: AutGrp, p: int, limit: int) -> list[PermGroup]:
    """Distinct cyclic subgroups of p'-order, taken in canonical element order."""
    seen: set[frozenset] = set()
    out = []
    for a in aut.perm_model.elements():
        k = a.order()
        if k == 1 or k % p == 0:
            continue
        C = PermGroup([a], degree=a.degree)
        key = C.element_set()
        if key in seen:
            continue
        seen.add(key)
        out.append(C)
        if len(out) >= limit:
            break
    return out


def coprime_instances(groups: list[tuple[str, PermGroup, int]], per_group: int = 4) -> list[Action]:
    """Cyclic p'-subgroups of ``Aut(P)`` plus one noncyclic p'-subgroup where found."""
    out = []
    for name, P, p in groups:
        aut = automorphism_group(P)
        cyc = p_prime_cyclics(aut, p, per_group * 4)
        for C in cyc[:per_group]:
            out.append(Action(f"{name}:<{C.gens[0].order()}>", p, aut, C))
        for i, A in enumerate(cyc):
            done = False
            for B in cyc[i + 1:]:
                H = PermGroup(list(A.gens) + list(B.gens), degree=A.degree)
                if H.order % p and H.order > max(A.order, B.order):
                    out.append(Action(f"{name}:pair{H.order}", p, aut, H))
                    done = True
                    break
            if done:
                break
    return out


@dataclass(frozen=True)
class AxBInstance:
    """``A = <a>`` of p'-order and a p-group ``B = <b>`` commuting with it, on an invariant ``V``."""

    name: str
    p: int
    aut: AutGrp
    a: Perm
    b: Perm
    v: int

    def hypothesis(self) -> bool:
        """``[A, C_V(B)] = 1``; ``[A, B] = 1`` holds by construction."""
        t = self.aut.table
        cb = fixed_mask(t, [self.b]) & self.v
        return all(self.a[x] == x for x in t.members(cb))

    def conclusion(self) -> bool:
        return all(self.a[x] == x for x in self.aut.table.members(self.v))


def axb_instances(groups: list[tuple[str, PermGroup, int]], per_group: int = 4) -> list[AxBInstance]:
    """Every ``<a, b>``-invariant subgroup ``V`` for a few commuting pairs per group."""
    out = []
    for name, P, p in groups:
        aut = automorphism_group(P)
        t = aut.table
        subs = subgroup_masks(t, p)
        for C in p_prime_cyclics(aut, p, per_group):
            a = C.gens[0]
            bs = [b for b in aut.perm_model.elements()
                  if is_p_power(b.order(), p) and a * b == b * a]
            for b in bs[:per_group]:
                for V in subs:
                    if V != 1 and invariant(V, [a, b]):
                        out.append(AxBInstance(f"{name}:a{a.order()}b{b.order()}:V{t.size(V)}",
                                               p, aut, a, b, V))
    return out


def frattini_kernel(aut: AutGrp, p: int) -> PermGroup:
    """Automorphisms acting trivially on ``P/Φ(P)``."""
    t = aut.table
    phi = t.mask_of(frattini(t.group, p).elements())
    gens = t.gen_idx
    keep = [a for a in aut.perm_model.elements()
            if all((phi >> t.mul[t.inv[x]][a[x]]) & 1 for x in gens)]
    return PermGroup(keep, degree=t.n)


def chain_centralizer(aut: AutGrp, chain: list[int]) -> PermGroup:
    """Automorphisms centralizing every factor ``E_i / E_{i-1}`` of an invariant chain of masks."""
    t = aut.table
    keep = []
    for a in aut.perm_model.elements():
        ok = True
        for lower, upper in zip(chain, chain[1:]):
            if any(not (lower >> t.mul[t.inv[x]][a[x]]) & 1 for x in t.members(upper)):
                ok = False
                break
        if ok:
            keep.append(a)
    return PermGroup(keep, degree=t.n)


def characteristic_chains(aut: AutGrp, p: int) -> dict[str, list[int]]:
    """A few Aut-invariant chains from 1 to P."""
    t = aut.table
    P = t.group
    phi = t.mask_of(frattini(P, p).elements())
    chains = {"frattini": sorted({1, phi, t.full}, key=t.size)}
    zs = [t.mask_of(Z.elements()) for Z in upper_central_series(P)]
    chains["upper-central"] = [1] + [z for z in zs if z != 1]
    if chains["upper-central"][-1] != t.full:
        chains["upper-central"].append(t.full)
    return chains
