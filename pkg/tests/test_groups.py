import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fusionkit import corpus
from fusionkit.groups import (
    Subgrp,
    agemo,
    all_subgroups,
    center,
    centralizer,
    char_series,
    derived_subgroup,
    frattini,
    is_characteristic,
    is_conjugate,
    normalizer,
    o_p,
    omega,
    sylow,
    sylow_subgroups,
    thompson,
    upper_central_series,
)
from fusionkit.perm import PermGroup, perm_parse


def P(text, n):
    return perm_parse(text, n)


def sub(G, *gens):
    return Subgrp(G, [P(g, G.degree) for g in gens])


SMALL = ["s3", "d8", "q8", "s4", "a4", "c3xc3", "extraspecial27plus", "sl2_3", "gl2_3"]


def test_centralizer_examples(load):
    D8, S3 = load("d8"), load("s3")
    assert centralizer(D8, P("(1,3)(2,4)", 4)).order == 8
    assert centralizer(S3, P("(1,2)", 3)).element_set == {S3.identity, P("(1,2)", 3)}
    V = sub(D8, "(1,3)", "(2,4)")
    assert centralizer(D8, V) == V


def test_normalizer_examples(load):
    S4, D8 = load("s4"), load("d8")
    assert normalizer(S4, sub(S4, "(1,2)(3,4)", "(1,3)(2,4)")).order == 24
    N = normalizer(S4, sub(S4, "(1,2)"))
    assert N == sub(S4, "(1,2)", "(3,4)")
    assert normalizer(D8, sub(D8, "(1,2,3,4)")).order == 8


@pytest.mark.parametrize("name", SMALL)
def test_centralizer_normalizer_vs_brute(name, load):
    G = load(name)
    els = G.elements()
    for H in all_subgroups(G)[:40]:
        assert centralizer(G, H).element_set == oracles.centralizer(els, H.elements())
        assert normalizer(G, H).element_set == oracles.normalizer(els, H.elements())


@pytest.mark.parametrize("name", ["s4", "gl3_2", "a5"])
def test_chain_search_agrees_with_filter(name, load):
    G = load(name)
    for H in all_subgroups(G)[:25] if G.order <= 60 else [sylow(G, 2), sylow(G, 3)]:
        assert centralizer(G, H, brute=False) == centralizer(G, H, brute=True)
        assert normalizer(G, H, brute=False) == normalizer(G, H, brute=True)


@pytest.mark.parametrize("name,expected", [("v4", 5), ("d8", 10), ("s4", 30), ("c3", 2)])
def test_subgroup_counts(name, expected, load):
    G = load(name)
    assert len(all_subgroups(G)) == expected
    assert len(oracles.subgroups(G.elements(), G.degree)) == expected


@pytest.mark.parametrize("name", ["q8", "a4", "c3xc3", "extraspecial27minus", "sl2_3"])
def test_subgroups_vs_brute(name, load):
    G = load(name)
    ours = {H.element_set for H in all_subgroups(G)}
    assert ours == oracles.subgroups(G.elements(), G.degree)


def test_sylow_orders(load):
    assert sylow(load("s4"), 2).order == 8
    assert sylow(load("s4"), 3).order == 3
    assert sylow(load("psl3_3"), 3).order == 27
    assert len(sylow_subgroups(load("s4"), 3)) == 4
    assert len(sylow_subgroups(load("a5"), 5)) == 6


def test_sylow_subgroups_conjugate(load):
    G = load("gl3_2")
    S = sylow(G, 2)
    for T in sylow_subgroups(G, 2):
        ok, g = is_conjugate(G, S, T)
        assert ok and {~g * x * g for x in S.elements()} == T.element_set


def test_char_series_examples(load):
    D8, Q8 = load("d8"), load("q8")
    cs = char_series(D8, 2)
    assert cs.center.order == 2 and cs.frattini.order == 2 and cs.omega.order == 8
    assert cs.agemo == cs.center
    assert cs.upper_central[-1].order == 8
    e = char_series(load("c3xc3"), 3)
    assert e.frattini.order == 1 and e.omega.order == 9
    q = omega(Q8, 2)
    assert q.order == 2 and q == center(Q8)


@pytest.mark.parametrize("entry", corpus.p_groups(), ids=lambda e: e.name)
def test_char_series_containments(entry):
    G, p = entry.group(), entry.primes[0]
    phi = frattini(G, p).element_set
    assert derived_subgroup(G).element_set <= phi
    assert agemo(G, p).element_set <= phi
    assert upper_central_series(G)[-1].order == G.order


def test_thompson_examples(load):
    t = thompson(load("d8"), 2)
    assert t.max_rank == 2 and len(t.witnesses) == 2 and t.j.order == 8
    assert t.core_omega == center(load("d8"))
    q = thompson(load("q8"), 2)
    assert q.max_rank == 1 and q.j == center(load("q8"))
    c = thompson(load("c9"), 3)
    assert c.max_rank == 1 and c.j.order == 3


@pytest.mark.parametrize("entry", corpus.p_groups(), ids=lambda e: e.name)
def test_thompson_vs_brute(entry):
    G, p = entry.group(), entry.primes[0]
    if G.order == 1:
        return
    subs = oracles.subgroups(G.elements(), G.degree)
    ea = [H for H in subs if oracles.is_elem_abelian(H, p)]
    top = max(oracles.rank(H, p) for H in ea)
    wit = [H for H in ea if oracles.rank(H, p) == top]
    td = thompson(G, p)
    assert td.max_rank == top
    assert {W.element_set for W in td.witnesses} == set(wit)
    J = oracles.closure([x for W in wit for x in W], G.degree)
    assert td.j.element_set == J


def test_is_conjugate(load):
    S4, D8 = load("s4"), load("d8")
    ok, g = is_conjugate(S4, sub(S4, "(1,2)"), sub(S4, "(3,4)"))
    assert ok and ~g * P("(1,2)", 4) * g == P("(3,4)", 4)
    ok, _ = is_conjugate(D8, sub(D8, "(1,3)", "(2,4)"), sub(D8, "(1,2)(3,4)", "(1,4)(2,3)"))
    assert not ok
    A = sub(S4, "(1,2,3)")
    ok, g = is_conjugate(S4, A, A)
    assert ok and g.is_identity()


def test_is_characteristic(load):
    D8 = load("d8")
    assert is_characteristic(D8, center(D8))
    assert not is_characteristic(D8, sub(D8, "(1,3)", "(2,4)"))


def test_op(load):
    assert o_p(load("s4"), 2).order == 4
    assert o_p(load("gl3_2"), 2).order == 1


@given(st.sampled_from(SMALL), st.data())
def test_subgroup_key_equality(name, data):
    G = corpus.load(name)
    subs = all_subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = Subgrp.from_elements(G, H.elements())
    assert K == H and K.key == H.key and hash(K) == hash(H)
    assert PermGroup(H.gens, degree=G.degree).order == H.order
