import pytest

from fusionkit import corpus
from fusionkit.actions import (
    axb_instances,
    chain_centralizer,
    characteristic_chains,
    coprime_checks,
    coprime_instances,
    frattini_kernel,
)
from fusionkit.groups import is_normal, is_p_power
from fusionkit.morphisms import automorphism_group

P_GROUPS = [(e.name, e.group(), e.primes[0]) for e in corpus.p_groups()]


@pytest.fixture(scope="module")
def coprime():
    return coprime_instances(P_GROUPS)


@pytest.fixture(scope="module")
def axb():
    return axb_instances(P_GROUPS)


def test_enough_coprime_instances(coprime):
    assert len(coprime) >= 20
    assert all(a.group.order % a.p for a in coprime)


def test_coprime_conclusions(coprime):
    failures = [(a.name, k) for a in coprime for k, ok in coprime_checks(a).items() if not ok]
    assert failures == []


def test_axb_nonvacuous(axb):
    live = [x for x in axb if x.hypothesis()]
    assert len(live) >= 20
    assert all(x.conclusion() for x in live)


def test_axb_hypothesis_can_fail(axb):
    # the suite is not trivially true: some pairs move C_V(B)
    assert any(not x.hypothesis() for x in axb)


@pytest.mark.parametrize("name,order,kernel", [("d8", 8, 4), ("q8", 24, 4), ("c9", 6, 3),
                                               ("c3xc3", 48, 1), ("extraspecial27plus", 432, 9)])
def test_frattini_kernel_orders(name, order, kernel):
    aut = automorphism_group(corpus.load(name))
    assert aut.order == order
    assert frattini_kernel(aut, corpus.BY_NAME[name].primes[0]).order == kernel


@pytest.mark.parametrize("name,P,p", P_GROUPS, ids=[g[0] for g in P_GROUPS])
def test_burnside_normal_p_subgroup(name, P, p):
    aut = automorphism_group(P)
    K = frattini_kernel(aut, p)
    assert is_p_power(K.order, p)
    assert is_normal(aut.perm_model, K)


@pytest.mark.parametrize("name,P,p", P_GROUPS, ids=[g[0] for g in P_GROUPS])
def test_chain_centralizer_is_p_group(name, P, p):
    aut = automorphism_group(P)
    for chain in characteristic_chains(aut, p).values():
        assert is_p_power(chain_centralizer(aut, chain).order, p)
