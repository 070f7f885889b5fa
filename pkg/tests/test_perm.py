import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcat_lab import catalog
from pcat_lab.perm import (
    CapExceeded,
    InvalidPermutation,
    center,
    centralizer,
    compose,
    enumerate_group,
    format_cycles,
    frattini,
    invert,
    is_cyclic,
    normalizer,
    o_p,
    o_upper_p,
    parse_group_text,
    parse_permutation,
    quotient_group,
    sylow,
    sylow_subgroups,
    transporter,
)

from conftest import permutations

ORDERS = {"c2": 2, "c3": 3, "c4": 4, "c8": 8, "c9": 9, "c2xc2": 4, "c3xc3": 9, "d8": 8, "q8": 8,
          "s3": 6, "s4": 24, "a4": 12, "c2xs3": 12, "sl23": 24}


@pytest.mark.parametrize("name,order", sorted(ORDERS.items()))
def test_catalog_orders(name, order):
    assert catalog.get(name).order == order


def test_catalog_matches_listed_generators():
    G = catalog.get("s4")
    assert G.degree == 4
    assert [format_cycles(g) for g in G.generators] == ["(0 1 2 3)", "(0 1)"]
    assert catalog.get("q8").degree == 8
    assert center(catalog.get("c2xs3").whole()).order == 2


def test_parse_permutation_forms():
    assert parse_permutation("(0 1)(2 3)", 4) == (1, 0, 3, 2)
    assert parse_permutation("[1,2,0]", 3) == (1, 2, 0)
    assert parse_permutation("()", 2) == (0, 1)
    for bad in ("(0 4)", "(0 1)(1 2)", "[0,0,1]", "0 1"):
        with pytest.raises(InvalidPermutation):
            parse_permutation(bad, 3)


def test_group_file_format():
    degree, gens = parse_group_text("# S3\ndegree: 3\n(0 1)\n(0 1 2)\n")
    assert degree == 3 and len(gens) == 2
    with pytest.raises(InvalidPermutation):
        parse_group_text("(0 1)\n")


def test_element_cap():
    with pytest.raises(CapExceeded):
        enumerate_group([(1, 2, 3, 0), (1, 0, 2, 3)], 4, cap=10)


def test_subgroup_operators_s4():
    G = catalog.get("s4")
    t = G.index[parse_permutation("(0 1)", 4)]
    H = G.generate([t])
    assert centralizer(G, H).order == 4
    assert normalizer(G, H).order == 4
    V = o_p(G, 2)
    assert V.order == 4 and normalizer(G, V).order == 24
    assert o_upper_p(G, 2).order == 12
    assert o_p(G, 3).order == 1
    assert len(sylow_subgroups(G, 2)) == 3
    assert len(sylow_subgroups(G, 3)) == 4
    assert sylow(G, 2).order == 8 and sylow(G, 3).order == 3
    # transporter of a transposition into the Sylow 2-subgroup
    P = sylow(G, 2)
    assert len(transporter(G, H, P)) in (8, 16)


def test_p_group_invariants():
    assert frattini(catalog.get("d8").whole()).order == 2
    assert frattini(catalog.get("q8").whole()).order == 2
    assert frattini(catalog.get("c2xc2").whole()).order == 1
    assert center(catalog.get("q8").whole()).order == 2
    assert is_cyclic(catalog.get("c8").whole())
    assert not is_cyclic(catalog.get("q8").whole())


def test_quotient_group():
    G = catalog.get("s4")
    Q, proj = quotient_group(G.whole(), o_p(G, 2))
    assert Q.order == 6
    assert all(proj[G.mul(a, b)] == Q.mul(proj[a], proj[b]) for a in range(24) for b in range(24))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_groups_satisfy_group_axioms(data):
    n = data.draw(st.integers(2, 5))
    gens = data.draw(st.lists(permutations(n), min_size=1, max_size=2))
    G = enumerate_group(gens, n)
    assert 120 % G.order == 0
    e = G.index[tuple(range(n))]
    assert e == 0
    x, y, z = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inv(x)) == 0
    assert G.order % G.element_order(x) == 0
    assert G.elements[G.mul(x, y)] == compose(G.elements[x], G.elements[y])
    assert invert(invert(G.elements[x])) == G.elements[x]
    for p in (2, 3, 5):
        P = sylow(G, p)
        part = 1
        while G.order % (part * p) == 0:
            part *= p
        assert P.order == part
