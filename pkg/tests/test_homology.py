import pytest
from hypothesis import given, settings

from pcat_lab import catalog
from pcat_lab.category import group_category, poset_category
from pcat_lab.homology import (
    BudgetExceeded,
    Nerve,
    betti,
    betti_from_complex,
    chain_budget,
    euler_from_nerve,
    induced_map,
    nerve_complex,
    verify_inclusion,
)
from pcat_lab.euler import euler_characteristic
from pcat_lab.subcats import build, inclusion

from conftest import posets


def crown():
    # a, b < c, d: the order complex is a circle
    return poset_category("abcd", lambda x, y: x == y or (x < 2 <= y))


def octahedron():
    # three levels of two incomparable points: a suspension of a suspension of S^0
    level = {0: 0, 1: 0, 2: 1, 3: 1, 4: 2, 5: 2}
    return poset_category(range(6), lambda x, y: x == y or level[x] < level[y])


def test_sphere_oracles():
    assert betti(crown(), 2, ["Q"])["Q"].betti == [1, 1, 0]
    assert betti(octahedron(), 3, ["Q", "F2"])["F2"].betti == [1, 0, 1, 0]
    assert betti(poset_category("ab", lambda x, y: x == y), 1)["Q"].betti == [2, 0]


def test_group_homology_of_cyclic_groups():
    C2 = group_category(catalog.get("c2"))
    assert betti(C2, 4, ["F2"])["F2"].betti == [1, 1, 1, 1, 1]
    assert betti(C2, 4, ["Q"])["Q"].betti == [1, 0, 0, 0, 0]
    C3 = group_category(catalog.get("c3"))
    assert betti(C3, 3, ["F3"])["F3"].betti == [1, 1, 1, 1]
    assert betti(C3, 3, ["F2"])["F2"].betti == [1, 0, 0, 0]
    # H_1(C2 x C2; F2) has dimension 2, H_2 dimension 3
    V = group_category(catalog.get("c2xc2"))
    assert betti(V, 2, ["F2"])["F2"].betti == [1, 2, 3]


def test_klein_orbit_category():
    O = build(catalog.get("c2xc2"), 2, "O", "interval:[1..P)")
    t = betti(O, 4, ["F2", "Q"])
    assert t["F2"].betti == [1, 0, 1, 3, 5]
    assert t["Q"].betti == [1, 0, 0, 0, 0]


def test_shortcut_and_empty():
    C = build(catalog.get("s4"), 2, "S", "all")
    t = betti(C, 3)["Q"]
    assert t.shortcut == "initial object" and t.betti == [1, 0, 0, 0]
    assert betti(build(catalog.get("c2"), 2, "S", "star-rad"), 2)["Q"].betti == [1, 0, 0]


def test_budget(monkeypatch):
    monkeypatch.setenv("PCAT_BUDGET_CHAINS", "10")
    assert chain_budget() == 10
    O = build(catalog.get("c2xc2"), 2, "O", "interval:[1..P)")
    with pytest.raises(BudgetExceeded):
        Nerve(O, 3)
    assert chain_budget(99) == 99


def test_inclusion_verdicts():
    G = catalog.get("c2xs3")
    small, big = build(G, 2, "S", "sfc"), build(G, 2, "S", "star")
    v = verify_inclusion(inclusion(small, big), 2, ["Q", "F2"])
    assert v.verdict == "refuted-at-degree-0"
    assert v.maps[0].source_betti[0] == 3 and v.maps[0].target_betti[0] == 1
    G = catalog.get("s4")
    small, big = build(G, 2, "S", "star-rad"), build(G, 2, "S", "star")
    v = verify_inclusion(inclusion(small, big), 3, ["Q", "F2"])
    assert v.verdict == "consistent-with-equivalence"
    assert "not a proof" in v.as_dict()["note"]


def test_induced_map_ranks_identity():
    C = octahedron()
    from pcat_lab.category import identity_functor

    m = induced_map(identity_functor(C), 2, "Q")
    assert m.ranks == m.source_betti == [1, 0, 1]
    assert m.first_failure is None


@pytest.mark.parametrize("name,p", [("s3", 2), ("a4", 2), ("d8", 2), ("s4", 3)])
@pytest.mark.parametrize("flavor", ["T", "O", "F", "FTilde", "L"])
def test_dd_zero_and_reference_betti(name, p, flavor):
    C = build(catalog.get(name), p, flavor, "star", skeletal=True)
    if C.n_objects == 0:
        return
    for fld in ("Q", f"F{p}"):
        cx = nerve_complex(C, 2, fld)
        assert cx.check_dd_zero()
        assert betti_from_complex(cx) == betti(C, 2, [fld], shortcut=False)[fld].betti


@settings(max_examples=60, deadline=None)
@given(posets())
def test_random_posets_cohomology_matches_reference(C):
    d = C.n_objects
    for fld in ("Q", "F2"):
        cx = nerve_complex(C, d, fld)
        assert cx.check_dd_zero()
        assert betti_from_complex(cx) == betti(C, d, [fld], shortcut=False)[fld].betti
    assert euler_from_nerve(C) == euler_characteristic(C).chi
    b = betti(C, d, ["Q"], shortcut=False)["Q"].betti
    assert sum((-1) ** k * x for k, x in enumerate(b)) == euler_characteristic(C).chi
