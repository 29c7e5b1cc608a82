import json
import subprocess
import sys

import jsonschema
import pytest

from dgcyclic.cli import main, run_command
from dgcyclic.report import emit_report, schema

from .conftest import INPUTS
from .oracles import free_algebra


def inp(name):
    return str(INPUTS / f"{name}.dg")


def rows(rep, complex_name):
    return {(r["d"], r["w"]): r["dim"] for r in rep.homology if r["complex"] == complex_name}


def test_check_homotopy_on_free_algebra(cache_dir):
    code, rep = run_command(["check", "homotopy", inp("F"), "--n-max", "3", "--weights", "0..3", "--degrees", "0..8"])
    assert code == 0 and rep.passed


def test_reduced_cyclic_homology_table(cache_dir):
    code, rep = run_command(["homology", inp("F"), "--complex", "CC", "--reduced", "--weights", "1..4",
                             "--degrees", "-2..4"])
    assert code == 0
    got = rows(rep, "CC reduced")
    for w in range(1, 5):
        expect = free_algebra.cyclic_dims(w, 4)
        for d in range(-2, 5):
            assert got[(d, w)] == (expect[d] if d >= 0 else 0)
        assert got[(0, w)] == 1


@pytest.mark.xfail(strict=True, reason="the two-cell input is not quasi-isomorphic to the dual numbers; see README")
def test_hodge_on_two_cell_dual_pair(cache_dir):
    code, _ = run_command(["check", "hodge", inp("Q"), "--target", inp("D"), "--hodge-r", "1",
                           "--weights", "0..3", "--degrees", "-8..8"])
    assert code == 0


def test_hodge_on_three_cell_dual_pair(cache_dir):
    code, rep = run_command(["check", "hodge", inp("Q3"), "--target", inp("D"), "--hodge-r", "1",
                             "--weights", "0..3", "--degrees", "-8..8"])
    assert code == 0, emit_report(rep, "md").decode()


def test_validate(cache_dir):
    code, rep = run_command(["validate", inp("A2")])
    assert code == 0 and rep.checks[0].check == "validate_presentation"


def test_validation_failure_exits_nonzero(tmp_path, cache_dir):
    p = tmp_path / "bad.dg"
    p.write_text("objects: pt\nx: pt->pt deg=0 wt=1\ny: pt->pt deg=1 wt=2 d=x*x\nz: pt->pt deg=2 wt=2 d=y\n")
    code, rep = run_command(["validate", str(p)])
    assert code == 1 and rep.failures()


def test_parse_error_report(tmp_path, cache_dir):
    p = tmp_path / "bad.dg"
    p.write_text("objects: pt\nx: pt->pt deg=0 wt=1 d=q\n")
    code, rep = run_command(["homology", str(p), "--complex", "CH", "--weights", "0..1", "--degrees", "0..2"])
    assert code == 2
    doc = json.loads(emit_report(rep, "json"))
    jsonschema.validate(doc, schema())
    assert "line 2, column 24" in doc["failures"][0]["witnesses"][0]


@pytest.mark.parametrize("argv", [
    ["homology", "IN", "--complex", "CH", "--weights", "0..1"],
    ["homology", "IN", "--complex", "CH", "--degrees", "0..1"],
    ["homology", "IN", "--complex", "Y", "--weights", "0..1", "--degrees", "0..2"],
    ["homology", "IN", "--complex", "X", "--weights", "0..1", "--degrees", "0..2"],
    ["check", "nonsense", "IN", "--weights", "0..1", "--degrees", "0..2"],
    ["homology", "IN", "--complex", "CH", "--weights", "3..1", "--degrees", "0..2"],
])
def test_usage_errors(argv, capsys):
    argv = [inp("F") if a == "IN" else a for a in argv]
    code, rep = run_command(argv)
    assert code == 2 and rep is None


def test_hodge_r_only_for_filtered_complexes(cache_dir):
    code, rep = run_command(["homology", inp("F"), "--complex", "CH", "--hodge-r", "1", "--weights", "0..1",
                             "--degrees", "0..2"])
    assert code == 2 and "hodge-r" in rep.failures()[0]["witnesses"][0]


@pytest.mark.parametrize("spec", ["CH", "CC", "Clambda", "CN", "CP", "X:2", "scX:2", "Xtot"])
def test_every_complex_kind(spec, cache_dir):
    code, rep = run_command(["homology", inp("Q"), "--complex", spec, "--weights", "0..2", "--degrees", "-2..3"])
    assert code == 0 and len(rep.homology) == 3 * 6


def test_filtered_and_reduced_totals(cache_dir):
    code, rep = run_command(["homology", inp("F"), "--complex", "Xtot", "--hodge-r", "1", "--reduced",
                             "--weights", "0..2", "--degrees", "-4..2"])
    assert code == 0 and rep.homology[0]["r"] == 1


def test_finite_dim_checks_are_skipped_not_failed(cache_dir):
    code, rep = run_command(["check", "homotopy", "pi-qiso", inp("D"), "--weights", "0..2", "--degrees", "0..4"])
    assert code == 0
    assert {c.verdict for c in rep.checks} == {"skipped"}


def test_report_is_byte_identical_across_cache_and_jobs(tmp_path, monkeypatch):
    outs = []
    for i, extra in enumerate(([], ["--no-cache"], ["--jobs", "2"], [])):
        monkeypatch.setenv("DGCYCLIC_CACHE", str(tmp_path / "c"))
        out = tmp_path / f"r{i}.json"
        code = main(["report", inp("F"), "--format", "json", "--weights", "0..2", "--degrees", "-4..4",
                     "--n-max", "2", "-o", str(out)] + extra)
        assert code == 0
        outs.append(out.read_bytes())
    assert len(set(outs)) == 1
    jsonschema.validate(json.loads(outs[0]), schema())


def test_timings_flag(cache_dir):
    code, rep = run_command(["check", "sbi", inp("F"), "--weights", "0..1", "--degrees", "-2..2", "--timings"])
    assert code == 0 and "check:sbi" in rep.timings


def test_gs_grading_cells(cache_dir):
    code, rep = run_command(["homology", inp("F"), "--complex", "Xtot", "--gs-grading", "--weights", "0..2",
                             "--degrees", "-3..0"])
    doc = json.loads(emit_report(rep, "json"))
    assert doc["grading"] == "pq" and doc["cells"]
    assert all(set(c) == {"complex", "d", "w", "p", "q", "dim"} for c in doc["cells"])


def test_console_script(tmp_path):
    env_cache = tmp_path / "c"
    proc = subprocess.run([sys.executable, "-m", "dgcyclic.cli", "check", "cone-iso", inp("F"), "--weights", "0..2",
                           "--degrees", "0..4", "--format", "csv"], capture_output=True, text=True,
                          env={"DGCYCLIC_CACHE": str(env_cache), "PATH": ""})
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.splitlines()[1] == "check,cone-iso,,,,,,,pass"
