from fractions import Fraction

import pytest
from hypothesis import given, settings

from pcat_lab import catalog
from pcat_lab.category import empty_category, from_table, group_category, opposite, poset_category
from pcat_lab.euler import (
    NoWeighting,
    check_weighting,
    class_matrix,
    coweighting,
    coweighting_via_slices,
    euler_characteristic,
    fmt,
    pgroup_values,
    poset_local_sum,
    solve_exact,
    NonUniqueWeighting,
    weighting,
    weighting_via_slices,
)
from pcat_lab.subcats import FLAVORS, build

from conftest import posets


def test_fmt():
    assert fmt(Fraction(-1, 2)) == "-1/2" and fmt(3) == "3"


def test_basic_values():
    assert euler_characteristic(group_category(catalog.get("s4"))).chi == Fraction(1, 24)
    assert euler_characteristic(poset_category("abc", lambda x, y: x == y)).chi == 3
    assert euler_characteristic(empty_category()).chi == 0


def test_non_ei_uses_general_solve():
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    M = from_table(["*"], [(0, 0, "1"), (0, 0, "e")], [0], lambda f, g: table[(f, g)])
    w = weighting(M)
    assert w.method == "general-solve" and w.values == [Fraction(1, 2)]
    with pytest.raises(NoWeighting):
        weighting(M, method="triangular-EI")


def test_solver_errors():
    with pytest.raises(NonUniqueWeighting):
        solve_exact([[1, 1], [1, 1]], [1, 1])
    with pytest.raises(NoWeighting):
        solve_exact([[1, 1], [1, 1]], [1, 2])


def test_klein_orbit_data():
    O = build(catalog.get("c2xc2"), 2, "O", "interval:[1..P)")
    assert class_matrix(O) == [[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    assert coweighting(O).values == [Fraction(1, 4)] * 4
    assert weighting(O).values == [Fraction(-1, 2)] + [Fraction(1, 2)] * 3
    assert euler_characteristic(O).chi == 1


@pytest.mark.parametrize("name", catalog.P_GROUPS)
def test_pgroup_closed_forms(name):
    P = catalog.get(name)
    v = pgroup_values(P, catalog.primes_dividing(P.order)[0])
    assert v.agree, v.as_dict()


@pytest.mark.parametrize("name,p", [("s3", 2), ("s4", 2), ("a4", 2), ("sl23", 3), ("c2xs3", 2)])
@pytest.mark.parametrize("flavor", FLAVORS)
def test_slices_match_solve(name, p, flavor):
    for filt in ("all", "star", "sfc"):
        C = build(catalog.get(name), p, flavor, filt)
        if not C.n_objects:
            continue
        assert weighting_via_slices(C).values == weighting(C).values
        assert coweighting_via_slices(C).values == coweighting(C).values
        assert check_weighting(C, weighting(C)) and check_weighting(C, coweighting(C))


@settings(max_examples=80, deadline=None)
@given(posets())
def test_random_posets(C):
    w, cw = weighting(C), coweighting(C)
    assert w.total == cw.total == poset_local_sum(C)
    assert weighting_via_slices(C).values == w.values
    assert weighting(opposite(C)).values == cw.values
