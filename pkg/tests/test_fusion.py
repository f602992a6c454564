import pytest

import mutilated
from conftest import system
from fusionkit import corpus
from fusionkit.fusion import (
    automizer,
    automizer_maps,
    centric_radical_masks,
    essentials,
    f_classes,
    fusion_from_data,
    fusion_from_group,
    hom_set,
    is_saturated,
    normalizer_subsystem,
    op_core,
    op_core_mask,
    status_flags,
    strongly_closed_list,
    strongly_closed_masks,
    strongly_closed_oracle,
    system_from_automizers,
)
from fusionkit.groups import Subgrp, all_subgroups, is_normal
from fusionkit.morphisms import map_from_images
from fusionkit.perm import PermGroup, perm_parse

PAIRS = corpus.fusion_pairs()
SMALL_PAIRS = [("s4", 2), ("gl3_2", 2), ("a4", 2), ("s3", 3), ("gl2_3", 3), ("sl2_3", 2),
               ("a5", 2), ("gl2_3", 2), ("extraspecial27plus", 3)]


def P(text, n):
    return perm_parse(text, n)


def ambient_homs(G, A, B):
    """Tables of ``x -> x^g`` for ``g`` in ``G`` with ``A^g <= B``."""
    bset = set(B.elements())
    out = set()
    for g in G.elements():
        img = {x: ~g * x * g for x in A.elements()}
        if all(y in bset for y in img.values()):
            out.add(frozenset(img.items()))
    return out


@pytest.mark.parametrize("name,p", PAIRS)
def test_realizable_systems_saturated(name, p):
    assert is_saturated(system(name, p))


@pytest.mark.parametrize("name,p", SMALL_PAIRS)
def test_hom_sets_match_ambient_conjugation(name, p):
    F = system(name, p)
    G = corpus.load(name)
    subs = F.subgroups()
    for A in subs:
        for B in subs:
            if B.order < A.order:
                continue
            ours = {frozenset(phi.table.items()) for phi in hom_set(F, A, B)}
            assert ours == ambient_homs(G, A, B), (F.label(A), F.label(B))


@pytest.mark.parametrize("name,p", [("psl3_3", 3), ("s7", 2), ("psl3_3", 2)])
def test_hom_sets_into_s_match_ambient(name, p):
    F = system(name, p)
    G = corpus.load(name)
    S = Subgrp.whole(F.s)
    for c in f_classes(F):
        A = c.rep
        ours = {frozenset(phi.table.items()) for phi in hom_set(F, A, S)}
        assert ours == ambient_homs(G, A, S)


@pytest.mark.parametrize("name,p", SMALL_PAIRS + [("psl3_3", 3)])
def test_f_classes_are_ambient_classes(name, p):
    F = system(name, p)
    G = corpus.load(name)
    for c in f_classes(F):
        keys = {M.element_set for M in c.members}
        R = c.rep.elements()
        conj = {frozenset(~g * x * g for x in R) for g in G.elements()}
        assert keys == {k for k in conj if all(F.s.contains(x) for x in k)}
        assert sum(c.fully_normalized) >= 1
        assert c.fully_normalized[c.members.index(c.rep)]


def _sigma4_parts(F):
    """The normal V4, the center and C4 inside the chosen Sylow 2-subgroup of Σ4."""
    from fusionkit.groups import center, o_p
    V = Subgrp.from_elements(F.s, o_p(F.ambient, 2).elements())
    Z = center(F.s)
    C4 = next(H for H in all_subgroups(F.s)
              if H.order == 4 and any(x.order() == 4 for x in H.elements()))
    return V, Z, C4


def test_sigma4_classes():
    F = system("s4", 2)
    V, Z, _ = _sigma4_parts(F)
    cls = {M.element_set: i for i, c in enumerate(f_classes(F)) for M in c.members}
    z = Z.gens[0]
    a = next(x for x in V.elements() if x != z and not x.is_identity())
    t = next(x for x in F.s.elements() if x.order() == 2 and not V.contains(x))
    assert len(a.moved()) == 4 and len(t.moved()) == 2
    assert cls[Subgrp(F.s, [a]).element_set] == cls[Z.element_set]
    assert cls[Subgrp(F.s, [t]).element_set] != cls[Z.element_set]
    assert automizer(F, V).order == 6


def test_p_group_system_classes_are_s_classes():
    for name in ("d8", "q8", "extraspecial27minus"):
        F = system(name, corpus.BY_NAME[name].primes[0])
        S = F.s
        for c in f_classes(F):
            R = c.rep.elements()
            conj = {frozenset(~g * x * g for x in R) for g in S.elements()}
            assert {M.element_set for M in c.members} == conj


def test_c3_in_s3():
    F = system("s3", 3)
    S = Subgrp.whole(F.s)
    assert len(hom_set(F, S, S)) == 2
    cls = [c for c in f_classes(F) if c.rep.order == 3]
    assert len(cls) == 1 and len(cls[0].members) == 1
    C = system("c3", 3)
    assert len(hom_set(C, Subgrp.whole(C.s), Subgrp.whole(C.s))) == 1


def test_homs_are_injective():
    F = system("gl3_2", 2)
    for A in F.subgroups():
        for phi in hom_set(F, A, Subgrp.whole(F.s)):
            assert phi.injective


def test_status_flag_examples():
    F = system("s4", 2)
    S = Subgrp.whole(F.s)
    fs = status_flags(F, S)
    assert fs.centric and not fs.essential
    f4 = status_flags(F, _sigma4_parts(F)[2])
    assert f4.centric and not f4.radical and f4.out_order == 2
    G = system("gl3_2", 2)
    for E in essentials(G):
        fl = status_flags(G, E.fclass.rep)
        assert fl.essential and fl.centric and fl.radical and fl.out_order == 6


@pytest.mark.parametrize("name,p,count,shape", [
    ("s4", 2, 1, [(4, 6)]),
    ("gl3_2", 2, 2, [(4, 6), (4, 6)]),
    ("psl3_3", 3, 2, [(9, 48), (9, 48)]),
])
def test_essential_examples(name, p, count, shape):
    ess = essentials(system(name, p))
    assert len(ess) == count
    assert sorted((E.fclass.rep.order, E.out_order) for E in ess) == shape
    assert all(E.spe_components >= 2 for E in ess)


@pytest.mark.parametrize("name,p", PAIRS)
def test_essentials_are_centric_radical(name, p):
    F = system(name, p)
    frc = set(centric_radical_masks(F))
    for E in essentials(F):
        assert F.mask(E.fclass.rep) in frc


@pytest.mark.parametrize("name,p", PAIRS)
def test_alperin_goldschmidt_generation(name, p):
    F = system(name, p)
    t = F.table
    masks = [t.full] + [F.mask(E.fclass.rep) for E in essentials(F)]
    autos = {m: list(F.engine.automizer(m).gens) for m in masks}
    assert system_from_automizers(p, F.s, autos, "subsystem") == F


def test_op_core_examples():
    F = system("s4", 2)
    assert op_core(F) == _sigma4_parts(F)[0]
    assert op_core(system("gl3_2", 2)).order == 1
    D = system("d8", 2)
    assert op_core(D).order == 8


@pytest.mark.parametrize("name,p", PAIRS)
def test_op_core_inside_frc(name, p):
    F = system(name, p)
    core = op_core_mask(F)
    for m in centric_radical_masks(F):
        assert core & ~m == 0
    if F.ambient is not None:
        # a normal p-subgroup of G inside S lies in O_p(F)
        from fusionkit.groups import o_p
        opg = F.mask(o_p(F.ambient, p).elements())
        assert opg & ~core == 0


def test_strongly_closed_examples():
    G = system("gl3_2", 2)
    assert sorted(T.order for T in strongly_closed_list(G)) == [1, 8]
    F = system("s4", 2)
    V, Z, _ = _sigma4_parts(F)
    got = {T.element_set for T in strongly_closed_list(F)}
    # Z(S) is not strongly closed: its involution is Σ4-conjugate into V \ Z
    want = {frozenset([F.s.identity]), V.element_set, F.s.element_set()}
    assert got == want
    assert set(strongly_closed_oracle(F)) == {F.mask(T) for T in strongly_closed_list(F)}
    D = system("d8", 2)
    normal = [H for H in all_subgroups(D.s) if is_normal(D.s, H)]
    assert {T.element_set for T in strongly_closed_list(D)} == {H.element_set for H in normal}


@pytest.mark.parametrize("name,p", PAIRS)
def test_strongly_closed_vs_oracle_and_abelian_normal(name, p):
    F = system(name, p)
    sc = strongly_closed_masks(F)
    assert sc == strongly_closed_oracle(F)
    core = op_core_mask(F)
    for T in sc:
        if F.table.is_abelian(T):
            assert T & ~core == 0


def test_normalizer_subsystems():
    G = system("gl3_2", 2)
    S = Subgrp.whole(G.s)
    NS = normalizer_subsystem(G, S)
    assert NS.meta["saturation"]
    assert len(essentials(NS)) == 0
    V = essentials(G)[0].fclass.rep
    NV = normalizer_subsystem(G, V)
    assert NV.meta["saturation"] and len(essentials(NV)) == 1
    F = system("s4", 2)
    assert normalizer_subsystem(F, op_core(F)) == F


def test_from_data_inner_only_is_trivial_system():
    D8 = corpus.load("d8")
    S = PermGroup(D8.gens, degree=4)
    F = fusion_from_data(S, 2, [(Subgrp.whole(S), [])])
    assert F == fusion_from_group(D8, 2)
    assert is_saturated(F)


def test_from_data_one_v4_equals_pruned_gl32():
    from fusionkit.build import prune
    G = system("gl3_2", 2)
    E1, E2 = essentials(G)
    V = E1.fclass.rep
    F = fusion_from_data(G.s, 2, [(Subgrp.whole(G.s), []), (V, automizer_maps(G, V))])
    assert F == prune(G, E2)


def test_from_data_rejects_non_automorphism():
    D8 = corpus.load("d8")
    S = Subgrp.whole(D8)
    r = P("(1,2,3,4)", 4)
    with pytest.raises(ValueError):
        phi = map_from_images(S, S, [r * r for _ in S.gens])
        fusion_from_data(D8, 2, [(S, [phi])])


# ---------------------------------------------------------------------------
# hand-mutilated systems


@pytest.mark.parametrize("name", sorted(mutilated.SYSTEMS))
def test_mutilated_system_fails_named_axiom(name):
    build, axiom = mutilated.SYSTEMS[name]
    res = is_saturated(build())
    assert not res and res.witness["axiom"] == axiom


def test_mutilated_d8_reports_automizer_order():
    res = is_saturated(mutilated.full_aut_of_d8())
    assert res.witness["aut_f_order"] == 8
