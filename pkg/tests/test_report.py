import csv
import io
import json

import jsonschema
import pytest

from dgcyclic.checkreport import FAIL, CheckReport
from dgcyclic.report import Report, check_from_dict, emit_report, gs_relabel, schema


def sample(gs=False):
    rep = Report(engine_version="0.1.0", input_hash="abc", gs_grading=gs)
    c = CheckReport("homotopy", {"degrees": [0, 3], "weights": [0, 2]})
    c.add(CheckReport("child", {"n": 1}))
    rep.checks.append(c)
    rep.homology = [{"complex": "CC", "d": 1, "w": 2, "n": None, "r": None, "dim": 0},
                    {"complex": "CC", "d": 0, "w": 2, "n": None, "r": None, "dim": 1},
                    {"complex": "CC", "d": 0, "w": 1, "n": None, "r": None, "dim": 1}]
    rep.cells = [{"complex": "Xtot", "d": -3, "w": 2, "r": 1, "s": 2, "dim": 2}]
    return rep


def test_empty_report_is_valid():
    doc = json.loads(emit_report(Report(), "json"))
    jsonschema.validate(doc, schema())
    assert doc["passed"] and doc["checks"] == [] and doc["homology"] == []
    for fmt in ("md", "csv"):
        assert emit_report(Report(), fmt)


@pytest.mark.parametrize("fmt", ["md", "csv", "json"])
def test_emission_is_deterministic(fmt):
    assert emit_report(sample(), fmt) == emit_report(sample(), fmt)


def test_json_matches_schema_and_sorts_tables():
    doc = json.loads(emit_report(sample(), "json"))
    jsonschema.validate(doc, schema())
    assert [(r["w"], r["d"]) for r in doc["homology"]] == [(1, 0), (2, 0), (2, 1)]


def test_markdown_table_order():
    md = emit_report(sample(), "md").decode()
    rows = [l for l in md.splitlines() if l.startswith("| CC")]
    assert rows == ["| CC | 1 | 0 |  |  | 1 |", "| CC | 2 | 0 |  |  | 1 |", "| CC | 2 | 1 |  |  | 0 |"]


def test_gs_grading_relabels_cells():
    assert gs_relabel(1, 2) == (2, 1)
    doc = json.loads(emit_report(sample(gs=True), "json"))
    assert doc["grading"] == "pq"
    assert doc["cells"] == [{"complex": "Xtot", "d": -3, "w": 2, "p": 2, "q": 1, "dim": 2}]
    rows = list(csv.reader(io.StringIO(emit_report(sample(gs=True), "csv").decode())))
    assert rows[0][6:8] == ["cell_p", "cell_q"]
    assert ["cell", "Xtot", "-3", "2", "", "", "2", "1", "2"] in rows


def test_failures_section():
    rep = sample()
    rep.checks.append(CheckReport("sbi", verdict=FAIL, witnesses=["(1,2): not exact"]))
    doc = json.loads(emit_report(rep, "json"))
    assert not doc["passed"]
    assert doc["failures"] == [{"check": "sbi", "witnesses": ["(1,2): not exact"]}]
    assert "## Failures" in emit_report(rep, "md").decode()


def test_timings_only_when_requested():
    assert "timings" not in json.loads(emit_report(sample(), "json"))
    rep = sample()
    rep.timings = {"parse": 0.25}
    assert json.loads(emit_report(rep, "json"))["timings"] == {"parse": 0.25}


def test_check_round_trip_through_dict():
    c = sample().checks[0]
    assert check_from_dict(c.to_dict()).to_dict() == c.to_dict()


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(Report(), "xml")
