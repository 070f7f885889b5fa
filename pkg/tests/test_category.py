import pytest
from hypothesis import given, settings

from pcat_lab import catalog
from pcat_lab.category import (
    CycleDetected,
    FiniteCategory,
    NotComposable,
    coslice,
    from_table,
    group_category,
    heights,
    initial_objects,
    is_EI,
    is_thin,
    opposite,
    poset_category,
    skeleton,
    slice_,
    terminal_objects,
    validate,
)

from conftest import posets


def idempotent_monoid():
    # {1, e} with e;e = e: not EI
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    return from_table(["*"], [(0, 0, "1"), (0, 0, "e")], [0], lambda f, g: table[(f, g)])


def test_group_category_is_valid():
    C = group_category(catalog.get("s3"))
    assert validate(C) == []
    assert is_EI(C) and C.n_morphisms == 6
    assert len(C.iso_classes) == 1


def test_broken_associativity_is_reported():
    # a "monoid" on {1, a, b} whose table fails associativity
    t = {(0, x): x for x in range(3)} | {(x, 0): x for x in range(3)}
    t |= {(1, 1): 2, (1, 2): 0, (2, 1): 1, (2, 2): 0}
    C = from_table(["*"], [(0, 0, "1"), (0, 0, "a"), (0, 0, "b")], [0], lambda f, g: t[(f, g)])
    problems = validate(C)
    assert any("associativ" in p for p in problems)


def test_not_ei():
    M = idempotent_monoid()
    assert validate(M) == []
    assert not is_EI(M)


def test_compose_errors():
    C = poset_category([0, 1, 2], lambda a, b: a <= b)
    f = C.hom(1, 2)[0]
    g = C.hom(0, 1)[0]
    with pytest.raises(NotComposable):
        C.compose(f, g)
    assert C.compose(g, f) == C.hom(0, 2)[0]


def test_json_round_trip():
    C = group_category(catalog.get("c4"))
    D = FiniteCategory.from_json(C.to_json())
    assert D.to_json() == C.to_json()
    assert validate(D) == []


def test_heights_and_cycles():
    C = poset_category([0, 1, 2], lambda a, b: a <= b)
    assert heights(C) == [0, 1, 2]
    with pytest.raises(CycleDetected):
        heights(_two_cycle())


def _two_cycle():
    # objects 0, 1 with f: 0 -> 1 and g: 1 -> 0 that are not inverse (idempotent composites)
    mors = [(0, 0, "1a"), (1, 1, "1b"), (0, 1, "f"), (1, 0, "g"), (0, 0, "gf"), (1, 1, "fg")]
    def comp(x, y):
        names = [m[2] for m in mors]
        a, b = names[x], names[y]
        if a.startswith("1"):
            return y
        if b.startswith("1"):
            return x
        word = {("f", "g"): "gf", ("g", "f"): "fg", ("gf", "f"): "f", ("f", "fg"): "f",
                ("fg", "g"): "g", ("g", "gf"): "g", ("gf", "gf"): "gf", ("fg", "fg"): "fg"}[(a, b)]
        return names.index(word)

    return from_table(["0", "1"], mors, [0, 1], comp)


def test_two_cycle_is_a_category():
    assert validate(_two_cycle()) == []


def test_initial_terminal_slices():
    C = poset_category([0, 1, 2, 3], lambda a, b: a == b or a == 0 or b == 3)
    assert initial_objects(C) == [0] and terminal_objects(C) == [3]
    assert coslice(C, None, 0).n_objects == 4
    assert coslice(C, None, 0, strict=True).n_objects == 3
    assert slice_(C, None, 3, strict=True).n_objects == 3
    assert opposite(opposite(C)).to_json() == C.to_json()


@settings(max_examples=60, deadline=None)
@given(posets())
def test_random_posets(C):
    assert validate(C) == []
    assert is_EI(C) and is_thin(C)
    sk, F = skeleton(C)
    assert sk.n_objects == C.n_objects
    O = opposite(C)
    assert validate(O) == []
    for a in range(C.n_objects):
        assert coslice(C, None, a).n_objects == len(C.out[a])
        assert initial_objects(coslice(C, None, a)) != []
