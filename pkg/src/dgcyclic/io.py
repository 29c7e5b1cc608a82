"""Line-oriented text format for presentations.

    # dual numbers, resolved
    name: Q
    objects: pt
    kind: semifree
    cofibrant: auto
    x: pt->pt deg=0 wt=1
    y: pt->pt deg=1 wt=2 d=x*x

Finite-dimensional inputs use ``kind: finitedim`` with lines
``basis e: pt->pt deg=0 wt=1``, ``mult e*e = 0`` and ``diff a = 2*b``.
Expressions are sums of rational multiples of words (``3/2*x*y - y*x``,
``1`` for the identity).
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .presentation import FiniteDim, GeneratorDecl, PresentationError, SemiFree


class ParseError(ValueError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


class ValidationError(ValueError):
    def __init__(self, report):
        super().__init__(f"presentation failed validation: {report.witnesses[:1]}")
        self.report = report


@dataclass(frozen=True)
class Decl:
    name: str
    src: str
    tgt: str
    degree: int
    weight: int
    diff: tuple = ()  # ((word, coeff), ...), word = tuple of names, () for identity


@dataclass
class InputDocument:
    objects: tuple
    kind: str = "semifree"
    cofibrant: str = "auto"  # yes | no | auto (auto: triangular semi-free)
    name: str = ""
    decls: tuple = ()
    mult: tuple = ()  # (((a, b), terms), ...)
    diff: tuple = ()  # ((a, terms), ...) for finitedim

    def __eq__(self, other):
        return isinstance(other, InputDocument) and serialize(self) == serialize(other)

    def to_presentation(self, validate=True):
        if self.kind == "semifree":
            gens = [GeneratorDecl(d.name, d.src, d.tgt, d.degree, d.weight) for d in self.decls]
            difs = {d.name: {(w if w else "1"): c for w, c in d.diff} for d in self.decls if d.diff}
            A = SemiFree(self.objects, gens, difs, name=self.name)
            A.cofibrant = self.cofibrant == "yes" or (self.cofibrant == "auto" and A.is_triangular())
        else:
            gens = [GeneratorDecl(d.name, d.src, d.tgt, d.degree, d.weight) for d in self.decls]
            mult = {ab: {w[0]: c for w, c in terms} for ab, terms in self.mult}
            diff = {a: {w[0]: c for w, c in terms} for a, terms in self.diff}
            A = FiniteDim(self.objects, gens, mult, diff, cofibrant=self.cofibrant == "yes", name=self.name)
        if validate:
            rep = A.validate()
            if not rep.passed:
                raise ValidationError(rep)
        return A

    def digest(self):
        return hashlib.sha256(serialize(self).encode()).hexdigest()


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_DECL = re.compile(rf"^({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s+(.*)$")
_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_NUM = re.compile(r"^\d+(/\d+)?$")


def _expr(text, line, col0, names):
    """Parse a sum of rational multiples of words; returns ((word, coeff), ...)."""
    s = text.rstrip()
    if not s.strip():
        raise ParseError("empty expression", line, col0)
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or not m.group(2).strip():
            raise ParseError("expected a term", line, col0 + pos)
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) is None and not first:
            raise ParseError("expected + or -", line, col0 + m.start(2))
        first = False
        body = m.group(2).strip()
        bstart = col0 + m.start(2) + (len(m.group(2)) - len(m.group(2).lstrip()))
        coeff = Fraction(1)
        factors = [f.strip() for f in body.split("*")]
        word = []
        off = 0
        for i, f in enumerate(factors):
            fcol = bstart + off
            off += len(body.split("*")[i]) + 1
            if not f:
                raise ParseError("empty factor", line, fcol)
            if _NUM.match(f):
                if word or i > 0 and coeff != 1:
                    raise ParseError("coefficient must come first", line, fcol)
                coeff *= Fraction(f)
            elif re.fullmatch(_NAME, f):
                if names is not None and f not in names:
                    raise ParseError(f"unknown generator {f!r}", line, fcol)
                word.append(f)
            else:
                raise ParseError(f"bad factor {f!r}", line, fcol)
        key = tuple(word)
        out[key] = out.get(key, 0) + sign * coeff
        if not out[key]:
            del out[key]
        pos = m.end()
    return tuple(sorted(out.items()))


def _opts(rest, line, col0):
    """deg=.. wt=.. [d=expr]; returns (deg, wt, expr_text, expr_col)."""
    vals = {}
    expr = None
    pos = 0
    while pos < len(rest):
        if rest[pos].isspace():
            pos += 1
            continue
        m = re.compile(r"(\w+)=").match(rest, pos)
        if not m:
            raise ParseError("expected key=value", line, col0 + pos)
        key = m.group(1)
        if key == "d":
            expr = (rest[m.end():], col0 + m.end())
            break
        end = rest.find(" ", m.end())
        end = len(rest) if end < 0 else end
        val = rest[m.end():end]
        if key not in ("deg", "wt"):
            raise ParseError(f"unknown key {key!r}", line, col0 + pos)
        if not re.fullmatch(r"-?\d+", val):
            raise ParseError(f"{key} must be an integer", line, col0 + m.end())
        vals[key] = int(val)
        pos = end
    for k in ("deg", "wt"):
        if k not in vals:
            raise ParseError(f"missing {k}=", line, col0 + len(rest))
    return vals["deg"], vals["wt"], expr


def parse_input(text: str) -> InputDocument:
    objects = None
    kind = "semifree"
    cofib = "auto"
    name = ""
    decls = []
    pending = []  # (decl index, expr text, line, col) resolved after all names are known
    mult = []
    diffs = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        ind = len(line) - len(line.lstrip())
        body = line.strip()
        head, _, tail = body.partition(":")
        hcol = ind + 1
        if head in ("objects", "kind", "cofibrant", "name"):
            val = tail.strip()
            vcol = ind + len(head) + 2 + (len(tail) - len(tail.lstrip()))
            if head == "objects":
                objs = [o.strip() for o in val.split(",")]
                for o in objs:
                    if not re.fullmatch(_NAME, o):
                        raise ParseError(f"bad object name {o!r}", ln, vcol)
                if len(set(objs)) != len(objs):
                    raise ParseError("duplicate object name", ln, vcol)
                objects = tuple(objs)
            elif head == "kind":
                if val not in ("semifree", "finitedim"):
                    raise ParseError(f"kind must be semifree or finitedim, got {val!r}", ln, vcol)
                kind = val
            elif head == "cofibrant":
                if val not in ("yes", "no", "auto"):
                    raise ParseError("cofibrant must be yes, no or auto", ln, vcol)
                cofib = val
            else:
                name = val
            continue
        if objects is None:
            raise ParseError("'objects:' must come first", ln, hcol)
        if body.startswith("mult ") or body.startswith("diff "):
            if kind != "finitedim":
                raise ParseError(f"{body.split()[0]} lines need kind: finitedim", ln, hcol)
            lhs, eq, rhs = body[5:].partition("=")
            if not eq:
                raise ParseError("expected '='", ln, hcol + len(body))
            rcol = ind + 5 + len(lhs) + 2
            pending.append((body[:4], lhs.strip(), rhs, ln, ind + 6, rcol))
            continue
        if body.startswith("basis "):
            if kind != "finitedim":
                raise ParseError("basis lines need kind: finitedim", ln, hcol)
            body2 = body[6:]
            off = ind + 6
        else:
            if kind == "finitedim":
                raise ParseError("finitedim inputs declare 'basis' lines", ln, hcol)
            body2 = body
            off = ind
        m = _DECL.match(body2)
        if not m:
            raise ParseError("expected 'name: src->tgt deg=.. wt=..'", ln, off + 1)
        gname, src, tgt, rest = m.groups()
        for o, g in ((src, 2), (tgt, 3)):
            if o not in objects:
                raise ParseError(f"unknown object {o!r}", ln, off + m.start(g) + 1)
        if any(d.name == gname for d in decls):
            raise ParseError(f"duplicate generator {gname!r}", ln, off + 1)
        deg, wt, expr = _opts(rest, ln, off + m.start(4) + 1)
        if expr is not None:
            if kind == "finitedim":
                raise ParseError("finitedim differentials use 'diff' lines", ln, expr[1])
            pending.append(("d", len(decls), expr[0], ln, expr[1], None))
        decls.append(Decl(gname, src, tgt, deg, wt))
    if objects is None:
        raise ParseError("missing 'objects:' line", 1, 1)
    names = {d.name for d in decls}
    for item in pending:
        tag = item[0]
        if tag == "d":
            _, i, etext, ln, col, _ = item
            decls[i] = Decl(**{**decls[i].__dict__, "diff": _expr(etext, ln, col, names)})
        else:
            _, lhs, rhs, ln, lcol, rcol = item
            terms = _expr(rhs, ln, rcol, names) if rhs.strip() != "0" else ()
            for w, _c in terms:
                if len(w) != 1:
                    raise ParseError("structure constants must be single basis names", ln, rcol)
            if tag == "mult":
                parts = [p.strip() for p in lhs.split("*")]
                if len(parts) != 2 or not all(p in names for p in parts):
                    raise ParseError("expected 'mult a*b = ...' with basis names", ln, lcol)
                if terms:
                    mult.append((tuple(parts), terms))
            else:
                if lhs not in names:
                    raise ParseError(f"unknown basis element {lhs!r}", ln, lcol)
                if terms:
                    diffs.append((lhs, terms))
    return InputDocument(objects, kind, cofib, name, tuple(decls), tuple(sorted(mult)), tuple(sorted(diffs)))


def _fmt_expr(terms):
    if not terms:
        return "0"
    parts = []
    for i, (w, c) in enumerate(terms):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        word = "*".join(w) if w else ""
        if not word:
            body = str(a)
        elif a == 1:
            body = word
        else:
            body = f"{a}*{word}"
        parts.append(("-" if sign == "-" else "") + body if i == 0 else f" {sign} {body}")
    return "".join(parts)


def serialize(doc: InputDocument) -> str:
    out = []
    if doc.name:
        out.append(f"name: {doc.name}")
    out.append("objects: " + ", ".join(doc.objects))
    out.append(f"kind: {doc.kind}")
    out.append(f"cofibrant: {doc.cofibrant}")
    for d in doc.decls:
        pre = "basis " if doc.kind == "finitedim" else ""
        line = f"{pre}{d.name}: {d.src}->{d.tgt} deg={d.degree} wt={d.weight}"
        if d.diff:
            line += " d=" + _fmt_expr(d.diff)
        out.append(line)
    for (a, b), terms in doc.mult:
        out.append(f"mult {a}*{b} = {_fmt_expr(terms)}")
    for a, terms in doc.diff:
        out.append(f"diff {a} = {_fmt_expr(terms)}")
    return "\n".join(out) + "\n"


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_input(fh.read())


def document_from_presentation(A) -> InputDocument:
    """Inverse of to_presentation for hand-built presentations."""
    objs = tuple(A.objects.objects)
    cof = "yes" if A.cofibrant else "no"
    if isinstance(A, SemiFree):
        decls = []
        for i, g in enumerate(A.generators):
            terms = tuple(sorted((tuple(A.generators[j].name for j in w), c) for (s, w), c in A._gdiff[i].items()))
            decls.append(Decl(g.name, g.src, g.tgt, g.degree, g.weight, terms))
        return InputDocument(objs, "semifree", cof, A.name, tuple(decls))
    decls = tuple(Decl(b.name, b.src, b.tgt, b.degree, b.weight) for b in A.basis_decl)
    mult = tuple(sorted((ab, tuple(sorted(((c,), Fraction(v)) for c, v in t.items() if v))) for ab, t in A.mult.items()))
    diff = tuple(sorted((a, tuple(sorted(((c,), Fraction(v)) for c, v in t.items() if v))) for a, t in A.diff_table.items()))
    return InputDocument(objs, "finitedim", cof, A.name, decls, mult, diff)


__all__ = ["Decl", "InputDocument", "ParseError", "ValidationError", "parse_input", "serialize",
           "load", "document_from_presentation", "PresentationError"]
