"""Brute-force reference computations, independent of the package's algorithms.

Everything here works on explicit element sets and is only meant for groups
of a few hundred elements at most.
"""

from __future__ import annotations

import itertools

from fusionkit.perm import Perm


def closure(gens, degree) -> frozenset:
    ident = Perm.identity(degree)
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def subgroups(elements, degree) -> set[frozenset]:
    """All subgroups, by joining cyclic subgroups until nothing new appears."""
    cyclic = {closure([g], degree) for g in elements}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = closure(list(H) + list(C), degree)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return found


def centralizer(elements, X):
    return frozenset(g for g in elements if all(g * x == x * g for x in X))


def normalizer(elements, H):
    H = frozenset(H)
    return frozenset(g for g in elements if frozenset(~g * h * g for h in H) == H)


def conj_map(g):
    return lambda x: ~g * x * g


def is_elem_abelian(H, p):
    return all(a * b == b * a for a in H for b in H) and all((x ** p).is_identity() for x in H)


def rank(H, p):
    n, r = len(H), 0
    while n > 1:
        n //= p
        r += 1
    return r


def extend_hom(gens, images, degree):
    """Element table of the homomorphism given by generator images, or None."""
    ident = Perm.identity(degree)
    table = {ident: Perm.identity(len(images[0])) if images else ident}
    queue = [ident]
    for x in queue:
        for g, w in zip(gens, images):
            y, v = x * g, table[x] * w
            if y in table:
                if table[y] != v:
                    return None
            else:
                table[y] = v
                queue.append(y)
    return table


def automorphisms(elements, gens, degree) -> list[dict]:
    """Every automorphism, by trying all generator images of matching order."""
    els = sorted(elements)
    by_order: dict[int, list] = {}
    for x in els:
        by_order.setdefault(x.order(), []).append(x)
    out = []
    for imgs in itertools.product(*(by_order[g.order()] for g in gens)):
        tab = extend_hom(gens, list(imgs), degree)
        if tab is not None and len(set(tab.values())) == len(els):
            out.append(tab)
    return out


def strongly_p_embedded(elements, degree, p) -> bool:
    """Definition: a proper M with p | |M| and p not dividing |M ∩ M^h| for h outside M."""
    G = frozenset(elements)
    for M in subgroups(elements, degree):
        if M == G or len(M) % p:
            continue
        if all(len(M & frozenset(~h * m * h for m in M)) % p
               for h in G if h not in M):
            return True
    return False


def double_cosets(aut_elems, x1, x2) -> list[frozenset]:
    """Orbits of ``X1 x X2`` on ``Aut(B)`` acting by ``a -> x^-1 a y``."""
    left = set(aut_elems)
    out = []
    while left:
        a = min(left)
        orbit = frozenset(~x * a * y for x in x1 for y in x2)
        out.append(orbit)
        left -= orbit
    return out


# ---------------------------------------------------------------------------
# fusion data straight from an ambient group


def _coset_action(A: frozenset, I: frozenset):
    """The regular permutation action of ``A/I`` on right cosets, as a list of perms."""
    cosets: list[frozenset] = []
    where: dict = {}
    for a in sorted(A):
        if a in where:
            continue
        c = frozenset(i * a for i in I)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    return [Perm(where[r * a] for r in reps) for a in sorted(A)], len(cosets)


def ambient_essentials(G_elements, S_elements, p, degree) -> list[tuple[int, int]]:
    """``(|P|, |Out_G(P)|)`` for each G-class of essential subgroups of ``S``, sorted.

    Every quantity is recomputed by filtering the elements of ``G``.
    """
    S = frozenset(S_elements)
    subs = subgroups(S_elements, degree)
    done: set = set()
    out = []
    for P in sorted(subs, key=lambda H: (len(H), sorted(H))):
        if P in done or len(P) == len(S):
            continue
        conjugates = {frozenset(~g * x * g for x in P) for g in G_elements}
        in_s = [Q for Q in conjugates if Q <= S]
        done.update(in_s)
        if any(not centralizer(S, Q) <= Q for Q in in_s):
            continue
        best = max(len(normalizer(S, Q)) for Q in in_s)
        R = min((Q for Q in in_s if len(normalizer(S, Q)) == best), key=sorted)
        elems = sorted(R)
        pos = {x: i for i, x in enumerate(elems)}
        N = normalizer(G_elements, R)
        aut = frozenset(Perm(pos[~g * x * g] for x in elems) for g in N)
        inn = frozenset(Perm(pos[~g * x * g] for x in elems) for g in R)
        if (len(aut) // len(inn)) % p:
            continue
        gens, k = _coset_action(aut, inn)
        out_elems = closure(gens, k)
        if strongly_p_embedded(sorted(out_elems), k, p):
            out.append((len(R), len(out_elems)))
    return sorted(out)


def ambient_normal_core(G_elements, S_elements, degree) -> frozenset:
    """Largest ``Q <= S`` such that every G-conjugation map ``P -> S`` extends to
    one on ``PQ`` that leaves ``Q`` invariant (the definition of ``Q`` normal in F)."""
    S = frozenset(S_elements)
    subs = sorted(subgroups(S_elements, degree), key=len, reverse=True)
    for Q in subs:
        if normalizer(S, Q) != S:
            continue
        ok = True
        for P in subs:
            PQ = closure(list(P) + list(Q), degree)
            for g in G_elements:
                if not all(~g * x * g in S for x in P):
                    continue
                target = {x: ~g * x * g for x in P}
                if not any(all(~h * x * h == y for x, y in target.items())
                           and all(~h * x * h in Q for x in Q)
                           and all(~h * x * h in S for x in PQ)
                           for h in G_elements):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return Q
    return frozenset([min(S)])
