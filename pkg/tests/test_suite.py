import pytest

from pcat_lab.suite import ALL_SUITES, OK_STATUSES, SuiteConfig, run_suite


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig.from_dict({"groups": [{"group": "s3", "primes": [1]}], "suites": []})
    with pytest.raises(ValueError):
        SuiteConfig.from_dict({"budgets": {"elements": -1}})
    cfg = SuiteConfig.from_dict({"groups": ["s3"], "suites": "all", "dmax": {"o": 2}})
    assert cfg.suites == list(ALL_SUITES) and cfg.dmax["O"] == 2


def test_empty_suite_list():
    rep = run_suite(SuiteConfig.from_dict({"groups": ["s3"], "suites": []}))
    assert rep.checks == [] and rep.exit_code == 0


def test_sigma3_all_suites():
    rep = run_suite(SuiteConfig.from_dict({"groups": ["s3"], "suites": "all"}))
    assert rep.exit_code == 0
    assert all(c.status in OK_STATUSES for c in rep.checks)
    ids = [c.id for c in rep.checks]
    assert len(ids) == len(set(ids))
    # the only refutation is the intended Klein example; Sigma_3 itself raises none
    assert {c.id for c in rep.checks if c.status == "refuted"} == {"klein-orbit/cyclic-inclusion"}


def test_counterexample_refuted():
    rep = run_suite(SuiteConfig.from_dict({"groups": [{"group": "c2xs3", "primes": [2]}],
                                          "suites": ["sfc-counterexample"]}))
    (c,) = rep.checks
    assert c.status == "refuted" and rep.exit_code == 0
    assert c.data["maps"][0]["source_betti"][0] == 3


def test_element_cap_skips():
    rep = run_suite(SuiteConfig.from_dict({"groups": ["s4"], "suites": ["lattice"], "budgets": {"elements": 10}}))
    assert {c.status for c in rep.checks} == {"skipped-budget"}


def test_failures_set_exit_code():
    from pcat_lab.suite import CheckResult, SuiteReport

    assert SuiteReport([CheckResult("x", "c", "fail")]).exit_code == 1
