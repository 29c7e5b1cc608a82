"""Structured verdicts shared by validation and the theorem checks."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"
INFO = "info"


@dataclass
class CheckReport:
    check: str
    window: dict = field(default_factory=dict)
    verdict: str = PASS
    witnesses: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    reason: str = ""
    children: list = field(default_factory=list)

    def fail(self, witness):
        self.verdict = FAIL
        self.witnesses.append(witness)

    def add(self, child: "CheckReport"):
        self.children.append(child)
        if child.verdict == FAIL:
            self.verdict = FAIL
            self.witnesses.append(f"{child.check}: {child.witnesses[0] if child.witnesses else 'failed'}")
        return child

    @property
    def passed(self):
        return self.verdict != FAIL

    def to_dict(self):
        d = {
            "check": self.check,
            "verdict": self.verdict,
            "window": {k: self.window[k] for k in sorted(self.window)},
            "witnesses": [str(w) for w in self.witnesses],
        }
        if self.reason:
            d["reason"] = self.reason
        if self.tables:
            d["tables"] = {k: self.tables[k] for k in sorted(self.tables)}
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def lines(self, indent=0):
        pad = "  " * indent
        extra = f" ({self.reason})" if self.reason else ""
        out = [f"{pad}[{self.verdict.upper()}] {self.check}{extra}"]
        for w in self.witnesses[:3]:
            out.append(f"{pad}    witness: {w}")
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def __str__(self):
        return "\n".join(self.lines())
