"""Acceptance criteria, each at its stated limit; every test prints one PASS/FAIL line."""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from pcat_lab import catalog
from pcat_lab.euler import (
    class_matrix,
    coweighting,
    coweighting_via_slices,
    euler_characteristic,
    pgroup_values,
    weighting,
    weighting_via_slices,
)
from pcat_lab.homology import betti
from pcat_lab.lattice import enumerate_p_subgroups
from pcat_lab.subcats import FLAVORS, build
from pcat_lab.suite import FILTERS, SuiteConfig, run_suite

ALL_CASES = [(n, p) for n in catalog.names() for p in catalog.primes_dividing(catalog.get(n).order)]


@pytest.fixture
def criterion(request, capsys):
    @contextmanager
    def run(number, title, limit):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            ok = ok and dt < limit
            with capsys.disabled():
                print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}  ({dt:.2f}s, limit {limit}s)")
        assert dt < limit, f"took {dt:.1f}s, limit {limit}s"

    return run


def statuses(groups, suites):
    rep = run_suite(SuiteConfig.from_dict({"groups": groups, "suites": suites}))
    return rep, {c.id: c.status for c in rep.checks}


def test_01_klein_orbit_exact_data(criterion):
    with criterion(1, "Klein orbit category: zeta matrix, coweighting, chi = 1", 1):
        O = build(catalog.get("c2xc2"), 2, "O", "interval:[1..P)")
        assert class_matrix(O) == [[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
        assert coweighting(O).values == [Fraction(1, 4)] * 4
        assert euler_characteristic(O).chi == 1


def test_02_pgroup_closed_forms(criterion):
    with criterion(2, "p-group closed forms on the nine catalog p-groups", 5):
        for name in ("c2", "c4", "c8", "c2xc2", "c3", "c9", "c3xc3", "d8", "q8"):
            P = catalog.get(name)
            v = pgroup_values(P, catalog.primes_dividing(P.order)[0])
            assert v.agree, (name, v.as_dict())


def test_03_klein_betti_lower_bound(criterion):
    with criterion(3, "Klein orbit category: b_{t+1} >= 2t-1 over F2 for t = 1, 2, 3", 120):
        O = build(catalog.get("c2xc2"), 2, "O", "interval:[1..P)")
        b = betti(O, 4, ["F2"])["F2"].betti
        assert b[2] >= 1 and b[3] >= 3 and b[4] >= 5


def test_04_weighting_by_slices(criterion):
    with criterion(4, "weighting by solve equals weighting by slices on every catalog category", 300):
        count = 0
        filters = FILTERS + ("interval:(1..P)", "interval:[1..P)")
        for name, p in ALL_CASES:
            G = catalog.get(name)
            L = enumerate_p_subgroups(G, p)
            for fl in FLAVORS:
                for filt in filters:
                    C = build(G, p, fl, filt, L)
                    if not C.n_objects:
                        continue
                    assert weighting_via_slices(C).values == weighting(C).values, (name, p, fl, filt)
                    assert coweighting_via_slices(C).values == coweighting(C).values, (name, p, fl, filt)
                    count += 1
        assert count > 500


def test_05_inclusions_consistent(criterion):
    with criterion(5, "equivalence inclusions and the quotient functor: chi and truncated homology", 1800):
        rep, st = statuses(["s3", "d8", "q8", "a4", "s4", "c2xs3"], ["inclusions"])
        assert len(st) == 15 * 10  # 14 inclusions plus the quotient functor, on ten (group, prime) pairs
        assert set(st.values()) == {"consistent"}, {k: v for k, v in st.items() if v != "consistent"}
        for c in rep.checks:
            assert c.data["chi_equal"] and "not a proof" in c.data["note"]
            assert {m["field"] for m in c.data["maps"]} == {"Q", "F" + c.id.split("/")[1][1:]}


def test_06_selfcentralizing_counterexample(criterion):
    with criterion(6, "C2 x S3 at p=2: S_sfc -> S_* refuted, b0 = 3 vs 1", 10):
        rep, st = statuses([{"group": "c2xs3", "primes": [2]}], ["sfc-counterexample"])
        (c,) = rep.checks
        assert c.status == "refuted"
        for m in c.data["maps"]:
            assert m["source_betti"][0] == 3 and m["target_betti"][0] == 1


def test_07_radicals_contain_op(criterion):
    with criterion(7, "every G-radical p-subgroup contains O_p(G), whole catalog", 10):
        rep, st = statuses(catalog.names(), ["radical-contains-op"])
        assert len(st) == len(ALL_CASES) and set(st.values()) == {"pass"}


def test_08_radical_detection(criterion):
    with criterion(8, "noncontractible automizer posets only at radical subgroups", 300):
        rep, st = statuses(catalog.names(), ["radical-detection"])
        assert len(st) == 2 * len(ALL_CASES) and set(st.values()) == {"pass"}


def test_09_support_facts(criterion):
    with criterion(9, "weighting and coweighting supports on the catalog", 300):
        rep, st = statuses(catalog.names(), ["supports"])
        wanted = ("fusion-coweighting-eab", "orbit-weighting-radical", "orbit-coweighting-cyclic",
                  "linking-weighting-F-radical")
        named = [k for k in st if k.split("/")[-1] in wanted]
        assert len(named) == 4 * len(ALL_CASES)
        assert set(st.values()) == {"pass"}


def test_10_spectral_degeneration(criterion):
    with criterion(10, "rank-two spectral sequence degenerates at E2; conjecture scan reported", 600):
        rep, st = statuses([], ["spectral", "conjecture-scan"])
        assert st["spectral/abutment/r2-p2"] == st["spectral/abutment/r2-p3"] == "pass"
        assert st["spectral/bottom-row"] == "pass"
        assert st["conjecture-scan/e2-off-last-column"] == "reported"
        scan = next(c for c in rep.checks if c.id.startswith("conjecture-scan")).data["rows"]
        assert {(r["rank"], r["p"]) for r in scan} == {(2, 2), (2, 3), (3, 2)}
        assert all(r["s"] < r["rank"] - 1 and r["t"] <= 3 for r in scan)


def test_11_property_suites(criterion):
    with criterion(11, "dd = 0, Moebius recursion, poset chi from nerve, extension criterion", 600):
        rep, st = statuses(catalog.names(), ["lattice", "nerve-checks", "extension"])
        needed = ("boundary-squared-zero", "mobius-identity", "poset-euler-from-nerve", "extension")
        for tail in needed:
            hits = [k for k in st if k.endswith(tail)]
            assert len(hits) == len(ALL_CASES), tail
        assert set(st.values()) == {"pass"}, {k: v for k, v in st.items() if v != "pass"}
