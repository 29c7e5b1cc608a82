"""Deterministic report assembly and emission (markdown, CSV, JSON)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .checkreport import FAIL, CheckReport

SCHEMA_VERSION = "dgcyclic-report/1"
FORMATS = ("md", "csv", "json")


@dataclass
class Report:
    engine_version: str = ""
    input_hash: str = ""
    checks: list = field(default_factory=list)      # CheckReport
    homology: list = field(default_factory=list)    # {complex, d, w, n, r, dim}
    cells: list = field(default_factory=list)       # {complex, d, w, r, s, dim}
    timings: dict | None = None
    gs_grading: bool = False

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [{"check": c.check, "witnesses": [str(w) for w in c.witnesses]}
                for c in self.checks if c.verdict == FAIL]

    def _homology_rows(self):
        key = lambda r: (r["complex"], r["w"], r["d"], _nk(r.get("n")), _nk(r.get("r")))
        return sorted(self.homology, key=key)

    def _cell_rows(self):
        rows = sorted(self.cells, key=lambda r: (r["complex"], r["w"], r["d"], r["r"], r["s"]))
        if not self.gs_grading:
            return rows
        return [{"complex": r["complex"], "d": r["d"], "w": r["w"], "p": 2 * r["r"], "q": r["s"] - r["r"],
                 "dim": r["dim"]} for r in rows]

    def to_dict(self):
        out = {
            "schema": SCHEMA_VERSION,
            "engine_version": self.engine_version,
            "input_hash": self.input_hash,
            "passed": self.passed,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.check)],
            "homology": self._homology_rows(),
            "cells": self._cell_rows(),
            "grading": "pq" if self.gs_grading else "rs",
            "failures": self.failures(),
        }
        if self.timings is not None:
            out["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out


def _nk(v):
    return (0, 0) if v is None else (1, v)


def gs_relabel(r, s):
    """(equivariant, Hodge) -> (p, q)."""
    return 2 * r, s - r


def _md(rep: Report):
    d = rep.to_dict()
    out = ["# dgcyclic report", "",
           f"- engine: {d['engine_version']}",
           f"- input: {d['input_hash'] or '-'}",
           f"- verdict: {'pass' if d['passed'] else 'fail'}", ""]
    if rep.checks:
        out += ["## Checks", ""]
        for c in sorted(rep.checks, key=lambda c: c.check):
            out += c.lines()
        out.append("")
    if d["homology"]:
        out += ["## Homology", "", "| complex | w | d | n | r | dim |", "|---|---|---|---|---|---|"]
        for r in d["homology"]:
            n = "" if r.get("n") is None else r["n"]
            rr = "" if r.get("r") is None else r["r"]
            out.append(f"| {r['complex']} | {r['w']} | {r['d']} | {n} | {rr} | {r['dim']} |")
        out.append("")
    if d["cells"]:
        a, b = ("p", "q") if rep.gs_grading else ("r", "s")
        out += ["## Chain cells", "", f"| complex | w | d | {a} | {b} | dim |", "|---|---|---|---|---|---|"]
        for r in d["cells"]:
            out.append(f"| {r['complex']} | {r['w']} | {r['d']} | {r[a]} | {r[b]} | {r['dim']} |")
        out.append("")
    if d["failures"]:
        out += ["## Failures", ""]
        for f in d["failures"]:
            out.append(f"- {f['check']}: {'; '.join(f['witnesses'][:3])}")
        out.append("")
    if "timings" in d:
        out += ["## Timings (s)", ""] + [f"- {k}: {v}" for k, v in d["timings"].items()] + [""]
    return "\n".join(out)


def _csv(rep: Report):
    d = rep.to_dict()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    a, b = ("p", "q") if rep.gs_grading else ("r", "s")
    w.writerow(["section", "name", "d", "w", "n", "r", f"cell_{a}", f"cell_{b}", "value"])
    for c in d["checks"]:
        w.writerow(["check", c["check"], "", "", "", "", "", "", c["verdict"]])
    for r in d["homology"]:
        w.writerow(["homology", r["complex"], r["d"], r["w"], _s(r.get("n")), _s(r.get("r")), "", "", r["dim"]])
    for r in d["cells"]:
        w.writerow(["cell", r["complex"], r["d"], r["w"], "", "", r[a], r[b], r["dim"]])
    for k, v in d.get("timings", {}).items():
        w.writerow(["timing", k, "", "", "", "", "", "", v])
    return buf.getvalue()


def _s(v):
    return "" if v is None else v


def emit_report(rep: Report, fmt: str = "md") -> bytes:
    if fmt == "json":
        text = json.dumps(rep.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    elif fmt == "csv":
        text = _csv(rep)
    elif fmt == "md":
        text = _md(rep)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return text.encode("utf-8")


def check_from_dict(d) -> CheckReport:
    """Rebuild a CheckReport from its to_dict form (used by the cache)."""
    c = CheckReport(d["check"], dict(d.get("window", {})), d["verdict"], list(d.get("witnesses", [])),
                    dict(d.get("tables", {})), d.get("reason", ""))
    c.children = [check_from_dict(x) for x in d.get("children", [])]
    return c


def schema():
    from importlib import resources
    return json.loads(resources.files("dgcyclic").joinpath("report_schema.json").read_text())
