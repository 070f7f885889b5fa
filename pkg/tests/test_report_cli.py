import csv
import io
import json
import os
import subprocess
import sys

import pytest

from pcat_lab.cli import main
from pcat_lab.report import UnknownFormat, parse_format, render_records, render_suite
from pcat_lab.suite import CheckResult, SuiteConfig, SuiteReport, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_empty_report_json():
    assert render_suite(SuiteReport(), "json") == '{"version":1,"checks":[]}\n'


def test_unknown_format():
    with pytest.raises(UnknownFormat):
        parse_format("xml")
    assert parse_format("text") == "text-table"


def test_formats_agree_on_rows():
    rep = SuiteReport([CheckResult("a/x", "claim", "pass", {}, 0.5),
                       CheckResult("b/y", "claim", "refuted", {"verdict": "refuted-at-degree-0"})])
    rows = list(csv.reader(io.StringIO(render_suite(rep, "csv"))))
    assert rows[0] == ["id", "status", "summary", "wall_time"]
    assert [r[:3] for r in rows[1:]] == [["a/x", "pass", ""], ["b/y", "refuted", "refuted-at-degree-0"]]
    text = render_suite(rep, "text-table")
    assert "refuted-at-degree-0" in text and "2 checks" in text
    doc = json.loads(render_suite(rep, "json", timing=False))
    assert "wall_time" not in doc["checks"][0]


def test_records_csv():
    out = render_records(["category", "field", "degree", "betti"], [["C", "Q", 0, 1], ["C", "Q", 1, 0]], "csv")
    assert out.splitlines() == ["category,field,degree,betti", "C,Q,0,1", "C,Q,1,0"]


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "json")
    rows = {r["name"]: r for r in json.loads(out)["rows"]}
    assert code == 0 and rows["s4"]["order"] == 24 and rows["s4"]["generators"] == "(0 1 2 3); (0 1)"
    assert rows["q8"]["degree"] == 8 and rows["c2xs3"]["order"] == 12


def test_euler_command(capsys):
    code, out, _ = run(capsys, "euler", "--group", "c2xc2", "--prime", "2", "--flavor", "o",
                       "--filter", "interval:[1..P)", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["chi"] == "1"
    assert doc["zeta"] == [[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    assert [r["coweighting"] for r in doc["rows"]] == ["1/4"] * 4
    code, out, _ = run(capsys, "euler", "--group", "c2xc2", "--prime", "2", "--flavor", "o",
                       "--filter", "interval:[1..P)", "--format", "text")
    assert "chi: 1" in out


def test_homology_command(capsys, tmp_path):
    g = tmp_path / "g.grp"
    g.write_text("degree: 4\n(0 1 2 3)\n(0 1)\n")
    code, out, _ = run(capsys, "homology", "--flavor", "f", "--filter", "star-eab", "--group", str(g),
                       "--prime", "2", "--dmax", "2", "--fields", "q,f2", "--against", "star")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "consistent-with-equivalence"
    assert {(r["field"], r["degree"]) for r in doc["rows"]} == {(f, d) for f in ("Q", "F2") for d in range(3)}


def test_spectral_command(capsys):
    code, out, _ = run(capsys, "spectral", "--rank", "2", "--prime", "2", "--tmax", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [int(r["E2"]) for r in rows if r["s"] == "1"] == [0, 1, 3, 5, 7]


def test_lattice_and_category_export(capsys):
    from pcat_lab.category import FiniteCategory, validate

    code, out, _ = run(capsys, "lattice", "--group", "d8", "--prime", "2")
    assert code == 0 and len(json.loads(out)["subgroups"]) == 10
    code, out, _ = run(capsys, "category", "--group", "s3", "--prime", "2", "--flavor", "f", "--filter", "star")
    C = FiniteCategory.from_json(out)
    assert validate(C) == [] and C.n_morphisms == 9


@pytest.mark.parametrize("argv", [
    ["euler", "--group", "nosuchgroup"],
    ["euler", "--group", "s3", "--prime", "4"],
    ["euler", "--group", "s3", "--filter", "bogus"],
    ["euler", "--group", "s3", "--format", "xml"],
    ["spectral", "--prime", "6"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("pcat-lab:")


def test_suite_exit_codes(capsys, tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"groups": [], "suites": []}))
    code, out, _ = run(capsys, "suite", "--config", str(cfg))
    assert code == 0 and out == '{"version":1,"checks":[]}\n'
    cfg.write_text(json.dumps({"groups": [{"group": "s3", "primes": [4]}], "suites": ["lattice"]}))
    assert run(capsys, "suite", "--config", str(cfg))[0] == 2
    cfg.write_text(json.dumps({"groups": ["s3"], "suites": ["nope"]}))
    assert run(capsys, "suite", "--config", str(cfg))[0] == 2
    cfg.write_text(json.dumps({"groups": ["s3"], "suites": ["lattice"], "budgets": {"chains": 0}}))
    assert run(capsys, "suite", "--config", str(cfg))[0] == 2


def test_env_budget_downgrades_checks(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"groups": [{"group": "c2xs3", "primes": [2]}], "suites": ["inclusions"]}))
    env = dict(os.environ, PCAT_BUDGET_CHAINS="50")
    proc = subprocess.run([sys.executable, "-m", "pcat_lab.cli", "suite", "--config", str(cfg)],
                          capture_output=True, text=True, env=env)
    statuses = {c["status"] for c in json.loads(proc.stdout)["checks"]}
    assert "skipped-budget" in statuses and proc.returncode == 0


def test_determinism():
    cfg = SuiteConfig.from_dict({"groups": ["s3", "c2xc2"], "suites": ["euler-slices", "supports", "klein-orbit"]})
    a = render_suite(run_suite(cfg), "json", timing=False)
    cfg.workers = 2
    b = render_suite(run_suite(cfg), "json", timing=False)
    assert a == b


def test_klein_text_row_shows_zeta_and_chi():
    rep = run_suite(SuiteConfig.from_dict({"suites": ["klein-orbit"]}))
    row = next(line for line in render_suite(rep, "text").splitlines() if line.startswith("klein-orbit/exact-data"))
    assert "[[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]" in row and "chi=1" in row
