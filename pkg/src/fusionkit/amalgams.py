"""Isomorphism classes of amalgams ``G1 > B < G2`` via double cosets in ``Aut(B)``.

With ``X_i`` the restriction to ``B`` of the automorphisms of ``G_i`` that
stabilize ``B``, the classes of amalgams with the given vertex and edge
groups are the double cosets ``X1 \\ Aut(B) / X2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAHomomorphism, NotASubgroup
from .groups import Subgrp, as_group
from .morphisms import GroupMap, automorphism_group
from .perm import Perm, PermGroup


def _edge_data(gi: PermGroup, b: PermGroup, emb: GroupMap | None):
    """Image of ``b`` in ``gi`` and the element correspondence ``b -> gi``."""
    if emb is None:
        if b.degree != gi.degree or not all(gi.contains(g) for g in b.gens):
            raise NotASubgroup("edge group is not a subgroup; pass an embedding")
        return {x: x for x in b.elements()}
    if not emb.injective:
        raise NotAHomomorphism("embedding is not injective")
    if set(emb.table) != set(b.elements()):
        raise ValueError("embedding domain is not the edge group")
    return dict(emb.table)


def edge_restriction(gi, b, emb: GroupMap | None = None) -> Subgrp:
    """``{α|_B : α ∈ Aut(G_i), Bα = B}`` inside the permutation model of ``Aut(B)``.

    ``b`` is the abstract edge group; without ``emb`` it must literally be a
    subgroup of ``gi``.
    """
    G = as_group(gi)
    B = as_group(b)
    corr = _edge_data(G, B, emb)
    autG = automorphism_group(G)
    autB = automorphism_group(B)
    gt, bt = autG.table, autB.table
    bmask = gt.mask_of(corr[x] for x in bt.elems)
    back = {gt.index[corr[x]]: i for i, x in enumerate(bt.elems)}
    fwd = [gt.index[corr[x]] for x in bt.elems]
    gens: list[Perm] = []
    X = PermGroup([], degree=bt.n)
    for a in autG.perm_model.elements():
        if autG.image_mask(a, bmask) != bmask:
            continue
        r = Perm(back[a[i]] for i in fwd)
        if not X.contains(r):
            gens.append(r)
            X = PermGroup(gens, degree=bt.n)
    return Subgrp(autB.perm_model, gens, group=X)


@dataclass(frozen=True)
class AmalgamSpec:
    g1: PermGroup
    g2: PermGroup
    b: PermGroup
    x1: Subgrp
    x2: Subgrp


def amalgam_spec(g1, g2, b, emb1: GroupMap | None = None,
                 emb2: GroupMap | None = None) -> AmalgamSpec:
    B = as_group(b)
    return AmalgamSpec(as_group(g1), as_group(g2), B,
                       edge_restriction(g1, B, emb1), edge_restriction(g2, B, emb2))


@dataclass(frozen=True)
class AmalgamClasses:
    count: int
    reps: tuple[Perm, ...]
    sizes: tuple[int, ...]
    aut_order: int


def amalgam_classes(spec: AmalgamSpec) -> AmalgamClasses:
    """Double cosets ``X1 a X2``; each representative is the least element of its coset."""
    autB = automorphism_group(spec.b)
    x1 = spec.x1.elements()
    x2 = spec.x2.elements()
    covered: set[Perm] = set()
    reps, sizes = [], []
    for a in autB.perm_model.elements():
        if a in covered:
            continue
        coset = {x * a * y for x in x1 for y in x2}
        covered |= coset
        reps.append(a)
        sizes.append(len(coset))
    return AmalgamClasses(len(reps), tuple(reps), tuple(sizes), autB.order)


def double_coset_oracle(spec: AmalgamSpec) -> int:
    """Count classes of ``a ~ b  <=>  b ∈ X1 a X2`` by pairwise tests and union-find."""
    elems = automorphism_group(spec.b).perm_model.elements()
    x1 = spec.x1.elements()
    x2 = set(spec.x2.elements())
    parent = list(range(len(elems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(elems):
        ainv = ~a
        for j in range(i + 1, len(elems)):
            b = elems[j]
            if any((ainv * ~x * b) in x2 for x in x1):
                parent[find(j)] = find(i)
    return len({find(i) for i in range(len(elems))})


def amalgam_report(spec: AmalgamSpec) -> dict:
    res = amalgam_classes(spec)
    autB = automorphism_group(spec.b)
    bt = autB.table
    gens = spec.b.gens

    def show(a):
        return "; ".join(f"{g} -> {bt.elems[a[bt.index[g]]]}" for g in gens)

    return {
        "aut_b_order": res.aut_order,
        "x1_order": spec.x1.order,
        "x2_order": spec.x2.order,
        "count": res.count,
        "representatives": [{"map": show(a), "coset_size": s}
                            for a, s in zip(res.reps, res.sizes)],
    }


def embedding_from_images(b: PermGroup, gi: PermGroup, images) -> GroupMap:
    B, G = as_group(b), as_group(gi)
    return GroupMap(Subgrp.whole(B), Subgrp.whole(G), list(images))

