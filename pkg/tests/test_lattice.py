import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcat_lab import catalog
from pcat_lab.lattice import (
    NotComparable,
    enumerate_p_subgroups,
    lattice_mobius,
    mobius,
    mobius_table,
)
from pcat_lab.perm import o_p

# number of p-subgroups, counted by hand from the subgroup structure
COUNTS = {("s4", 2): 20, ("s4", 3): 5, ("a4", 2): 5, ("a4", 3): 5, ("d8", 2): 10, ("q8", 2): 6,
          ("s3", 2): 4, ("s3", 3): 2, ("c2xc2", 2): 5, ("c3xc3", 3): 6, ("c8", 2): 4}


@pytest.mark.parametrize("key,count", sorted(COUNTS.items()))
def test_subgroup_counts(key, count):
    name, p = key
    assert len(enumerate_p_subgroups(catalog.get(name), p)) == count


# Moebius value of the whole p-group: (-1)^r p^(r choose 2) when elementary abelian of rank r, else 0
MU = {"c2": -1, "c3": -1, "c4": 0, "c8": 0, "c9": 0, "c2xc2": 2, "c3xc3": 3, "d8": 0, "q8": 0}


@pytest.mark.parametrize("name", catalog.P_GROUPS)
def test_mobius_of_p_groups(name):
    G = catalog.get(name)
    p = catalog.primes_dividing(G.order)[0]
    L = enumerate_p_subgroups(G, p)
    assert lattice_mobius(L, 0, L.index(G.whole())) == MU[name]


def test_mobius_requires_comparable():
    L = enumerate_p_subgroups(catalog.get("c2xc2"), 2)
    with pytest.raises(NotComparable):
        mobius(L.leq, len(L), 1, 2)


def test_radical_classes_s4():
    L = enumerate_p_subgroups(catalog.get("s4"), 2)
    radical_orders = sorted(L.subgroups[c[0]].order for c in L.conj_classes if L.attrs[c[0]].is_G_radical)
    assert radical_orders == [4, 8]
    sfc_orders = sorted(L.subgroups[c[0]].order for c in L.conj_classes if L.attrs[c[0]].is_G_selfcentralizing)
    assert sfc_orders == [4, 4, 4, 8]


def test_conjugacy_classes_partition():
    L = enumerate_p_subgroups(catalog.get("s4"), 2)
    seen = sorted(i for c in L.conj_classes for i in c)
    assert seen == list(range(len(L)))
    assert sorted(len(c) for c in L.conj_classes) == [1, 1, 3, 3, 3, 3, 6]


def test_lattice_json_round_trip():
    import json

    L = enumerate_p_subgroups(catalog.get("d8"), 2)
    doc = json.loads(L.to_json())
    assert doc["version"] == 1 and len(doc["subgroups"]) == 10
    assert all(isinstance(s["generators"], list) for s in doc["subgroups"])
    assert len(doc["hasse_edges"]) == 15


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(COUNTS)), st.data())
def test_mobius_sums_vanish(key, data):
    name, p = key
    L = enumerate_p_subgroups(catalog.get(name), p)
    a = data.draw(st.integers(0, len(L) - 1))
    mu = mobius_table(L.leq, len(L), a)
    for b in mu:
        total = sum(mu[c] for c in mu if L.leq(c, b))
        assert total == (1 if b == a else 0)


@pytest.mark.parametrize("name", catalog.names())
def test_radicals_contain_op(name):
    G = catalog.get(name)
    for p in catalog.primes_dividing(G.order):
        L = enumerate_p_subgroups(G, p)
        O = o_p(G, p)
        assert all(O <= H for H, a in zip(L.subgroups, L.attrs) if a.is_G_radical)
