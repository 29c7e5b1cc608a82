"""Command-line driver: ``dgcyclic {validate,homology,check,report}``."""
from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .cache import DiskCache
from .checkreport import FAIL, CheckReport
from .complexes import Builders
from .io import ParseError, load, parse_input, serialize
from .presentation import PresentationError, k_objects, validate_presentation
from .report import FORMATS, Report, check_from_dict, emit_report
from .theorems import (check_cone_iso, check_feigin_tsygan, check_hodge_theorem, check_homotopy,
                       check_master_diagram, check_pi_qiso, check_sbi, reduced)

CHECKS = ("feigin-tsygan", "pi-qiso", "homotopy", "master-diagram", "cone-iso", "hodge", "sbi")
COMPLEXES = ("CH", "CC", "Clambda", "CN", "CP", "X:n", "scX:n", "Xtot")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def window(text):
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return a, b


def complex_spec(text):
    name, _, n = text.partition(":")
    if name in ("X", "scX"):
        if not n.isdigit():
            raise argparse.ArgumentTypeError(f"{name} needs an index, e.g. {name}:2")
        return name, int(n)
    if n or name not in COMPLEXES:
        raise argparse.ArgumentTypeError(f"unknown complex {text!r}; choose from {', '.join(COMPLEXES)}")
    return name, None


def _parser():
    p = argparse.ArgumentParser(prog="dgcyclic", description="Exact cyclic-homology checks for dg categories.")
    p.add_argument("--version", action="version", version=f"dgcyclic {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="md")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    common.add_argument("--timings", action="store_true", help="record wall-clock per stage (breaks byte identity)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--gs-grading", action="store_true", help="show (r,s) cells as (p,q) = (2r, s-r)")
    win = argparse.ArgumentParser(add_help=False)
    win.add_argument("--weights", type=window, required=True, metavar="a..b")
    win.add_argument("--degrees", type=window, required=True, metavar="a..b")
    chk = argparse.ArgumentParser(add_help=False)
    chk.add_argument("--n-max", type=int, default=3)
    chk.add_argument("--target", help="presentation the input is claimed to resolve (hodge)")
    chk.add_argument("--hodge-r", type=int, action="append", help="filtration index; repeatable")

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common], help="validate an input presentation")
    s.add_argument("input")
    s = sub.add_parser("homology", parents=[common, win], help="homology dimension table")
    s.add_argument("input")
    s.add_argument("--complex", type=complex_spec, required=True, metavar="|".join(COMPLEXES))
    s.add_argument("--reduced", action="store_true", help="cone over the unit inclusion")
    s.add_argument("--hodge-r", type=int, help="F^r piece for CN, CP and Xtot")
    s = sub.add_parser("check", parents=[common, win, chk], help="run named checks")
    s.add_argument("name", choices=CHECKS, nargs="+")
    s.add_argument("input")
    s = sub.add_parser("report", parents=[common, win, chk], help="run every check and tabulate homology")
    s.add_argument("input")
    s.add_argument("--checks", nargs="+", choices=CHECKS, default=list(CHECKS))
    return p


def parse_args(argv):
    # "-8..8" looks like an option to argparse; glue window values to their flag
    out, it = [], iter(argv)
    for a in it:
        if a in ("--degrees", "--weights"):
            out.append(f"{a}={next(it, '')}")
        else:
            out.append(a)
    return _parser().parse_args(out)


# -- work units (top level so worker processes can import them) ------------------------

def run_check(name, text, target_text, degrees, weights, n_max=3, r_values=(1,)):
    A = parse_input(text).to_presentation()
    if name == "feigin-tsygan":
        rep = check_feigin_tsygan(A, degrees, weights)
    elif name == "pi-qiso":
        rep = check_pi_qiso(A, range(1, n_max + 1), degrees, weights)
    elif name == "homotopy":
        rep = check_homotopy(A, n_max, degrees, weights)
    elif name == "master-diagram":
        rep = check_master_diagram(A, n_max, degrees, weights)
    elif name == "cone-iso":
        rep = check_cone_iso(A, degrees, weights)
    elif name == "hodge":
        T = parse_input(target_text).to_presentation() if target_text else None
        rep = check_hodge_theorem(A, T, tuple(r_values), degrees, weights)
    elif name == "sbi":
        rep = check_sbi(A, degrees, weights)
    else:
        raise ValueError(name)
    return rep.to_dict()


def _make(b: Builders, kind, n, r):
    if kind == "CH":
        return b.hochschild(True)
    if kind == "CC":
        return b.CC()
    if kind == "Clambda":
        return b.clambda()
    if kind == "CN":
        return b.CP_F(r) if r else b.CN()
    if kind == "CP":
        return b.CP_F(r) if r is not None else b.CP()
    if kind == "X":
        return b.X(n)
    if kind == "scX":
        return b.scX(n)
    return b.Xtot(r or 0)


def homology_rows(A, kind, n, degrees, weights, is_reduced=False, r=None):
    if r is not None and kind not in ("CN", "CP", "Xtot"):
        raise ValueError(f"--hodge-r applies to CN, CP and Xtot, not {kind}")
    cx = _make(Builders(A), kind, n, r)
    if is_reduced:
        cx = reduced(_make(Builders(k_objects(A)), kind, n, r), cx)
    label = (f"{kind}:{n}" if n is not None else kind) + (" reduced" if is_reduced else "")
    rows = []
    for w in range(weights[0], weights[1] + 1):
        for d in range(degrees[0], degrees[1] + 1):
            rows.append({"complex": label, "d": d, "w": w, "n": n, "r": r, "dim": cx.homology(d, w)})
    return rows


def xtot_cells(A, degrees, weights, r=None):
    """Chain dimensions of Xtot split by (equivariant r = E-count, Hodge s = tensor index)."""
    cx = Builders(A).Xtot(r or 0)
    counts = {}
    for w in range(weights[0], weights[1] + 1):
        for d in range(degrees[0], degrees[1] + 1):
            for key in cx.basis(d, w):
                cell = (d, w, cx.e_count(key), key[0])
                counts[cell] = counts.get(cell, 0) + 1
    return [{"complex": "Xtot", "d": d, "w": w, "r": rr, "s": s, "dim": v}
            for (d, w, rr, s), v in sorted(counts.items())]


# -- driver ------------------------------------------------------------------------------

class _Clock:
    def __init__(self, on):
        self.on = on
        self.t = {} if on else None

    def __call__(self, stage, fn, *a, **k):
        t0 = time.perf_counter()
        out = fn(*a, **k)
        if self.on:
            self.t[stage] = self.t.get(stage, 0.0) + time.perf_counter() - t0
        return out


def _read(path):
    doc = load(path)
    return doc, serialize(doc)


def _error_report(msg, what="input"):
    rep = Report(engine_version=__version__)
    rep.checks.append(CheckReport(what, verdict=FAIL, witnesses=[msg]))
    return rep


def _checks(args, text, target_text, digest, cache, clock):
    names = sorted(set(args.name if args.command == "check" else args.checks))
    r_values = tuple(args.hodge_r or (1,))
    win = {"degrees": list(args.degrees), "weights": list(args.weights), "n_max": args.n_max,
           "r": list(r_values), "target": target_text}
    todo, done = [], {}
    for nm in names:
        hit = cache.get(digest, f"check:{nm}", win)
        if hit is not None:
            done[nm] = hit
        else:
            todo.append(nm)
    jobargs = [(nm, text, target_text, args.degrees, args.weights, args.n_max, r_values) for nm in todo]
    if args.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            futs = {a[0]: ex.submit(run_check, *a) for a in jobargs}
            results = {nm: clock(f"check:{nm}", f.result) for nm, f in futs.items()}
    else:
        results = {a[0]: clock(f"check:{a[0]}", run_check, *a) for a in jobargs}
    for nm, d in results.items():
        cache.put(digest, f"check:{nm}", win, d)
        done[nm] = d
    return [check_from_dict(done[nm]) for nm in names]


def run_command(argv):
    """Parse argv, run, and return (exit code, Report)."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return (EXIT_OK if e.code == 0 else EXIT_USAGE), None
    return execute(args)


def execute(args):
    clock = _Clock(args.timings)
    try:
        doc, text = clock("parse", _read, args.input)
        target_text = None
        if getattr(args, "target", None):
            target_text = clock("parse", _read, args.target)[1]
    except ParseError as e:
        return EXIT_USAGE, _error_report(f"parse error: {e}")
    except OSError as e:
        return EXIT_USAGE, _error_report(f"cannot read input: {e}")
    digest = doc.digest()
    rep = Report(engine_version=__version__, input_hash=digest, gs_grading=args.gs_grading)
    try:
        A = clock("validate", doc.to_presentation, validate=False)
        val = clock("validate", validate_presentation, A)
        if args.command == "validate" or not val.passed:
            rep.checks.append(val)
        if not val.passed:
            return _finish(rep, clock, EXIT_FAIL)
        if target_text is not None:
            tv = validate_presentation(parse_input(target_text).to_presentation(validate=False))
            if not tv.passed:
                tv.check = "validate target"
                rep.checks.append(tv)
                return _finish(rep, clock, EXIT_FAIL)
    except PresentationError as e:
        return EXIT_USAGE, _error_report(f"invalid presentation: {e}")
    cache = DiskCache(enabled=not args.no_cache, version=__version__)

    if args.command == "homology":
        kind, n = args.complex
        win = {"degrees": list(args.degrees), "weights": list(args.weights), "n": n,
               "reduced": args.reduced, "r": args.hodge_r}
        try:
            rows = clock("homology", cache.memo, digest, f"homology:{kind}", win,
                         lambda: homology_rows(A, kind, n, args.degrees, args.weights, args.reduced, args.hodge_r))
            if kind == "Xtot" and args.gs_grading:
                rep.cells = clock("cells", xtot_cells, A, args.degrees, args.weights, args.hodge_r)
        except (ValueError, PresentationError) as e:
            return EXIT_USAGE, _error_report(str(e), "homology")
        rep.homology = rows
    elif args.command in ("check", "report"):
        rep.checks.extend(_checks(args, text, target_text, digest, cache, clock))
        if args.command == "report":
            for kind in ("CH", "CC", "CP"):
                win = {"degrees": list(args.degrees), "weights": list(args.weights), "n": None,
                       "reduced": False, "r": None}
                rep.homology.extend(clock("homology", cache.memo, digest, f"homology:{kind}", win,
                                          lambda k=kind: homology_rows(A, k, None, args.degrees, args.weights)))
    return _finish(rep, clock, EXIT_OK if rep.passed else EXIT_FAIL)


def _finish(rep, clock, code):
    rep.timings = clock.t
    return code, rep


def main(argv=None):
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    code, rep = execute(args)
    data = emit_report(rep, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
