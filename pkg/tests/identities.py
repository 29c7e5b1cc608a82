"""Exhaustive structural-identity sweeps shared by unit and acceptance tests.

Each sweep returns a list of human-readable violations (empty on success)
plus a count of basis elements examined, so tests can assert both that
nothing failed and that something was actually checked.
"""
from functools import lru_cache

from dgcyclic.complexes import Builders, XFamilies
from dgcyclic.presentation import SemiFree, add_into, k_objects
from dgcyclic.tensor import IdentityViolated, TensorCalculus, e_specials, sD_commutator, sd_specials
from dgcyclic.theorems import reduced


def _cells(degrees, weights):
    for w in range(weights[0], weights[1] + 1):
        for d in range(degrees[0], degrees[1] + 1):
            yield d, w


def _apply(fn, elem):
    out = {}
    for k, c in elem.items():
        add_into(out, fn(k), c)
    return out


def constructed_complexes(A, n_max):
    """(name, complex) for every complex the engine builds from A."""
    b = Builders(A)
    out = [("A_nat", b.natural()), ("CH", b.hochschild(True)), ("CH_u", b.hochschild(False)),
           ("Clambda", b.clambda()), ("CC", b.CC()), ("CC_n", b.CC(True)), ("CN", b.CN()),
           ("CP", b.CP()), ("F1CP", b.CP_F(1)), ("F2CP", b.CP_F(2))]
    bk = Builders(k_objects(A))
    out.append(("red_CC", reduced(bk.CC(), b.CC())))
    if isinstance(A, SemiFree):
        for n in range(1, n_max + 1):
            out += [(f"X{n}", b.X(n)), (f"scX{n}", b.scX(n))]
        out += [("Xtot", b.Xtot()), ("F1Xtot", b.Xtot(1)), ("F2Xtot", b.Xtot(2)),
                ("red_Xtot", reduced(bk.Xtot(), b.Xtot()))]
    return out


def d_squared(A, n_max, degrees, weights):
    bad, seen = [], 0
    for name, cx in constructed_complexes(A, n_max):
        for d, w in _cells(degrees, weights):
            seen += len(cx.basis(d, w))
            for k in cx.d_squared_witnesses(d, w):
                bad.append(f"{name} d^2 != 0 at ({d},{w}) on {cx.label(k)}")
    return bad, seen


def mixed_laws(A, degrees, weights):
    """b^2 = 0, B^2 = 0, bB + Bb = 0 on normalized and unnormalized Hochschild chains."""
    bad, seen = [], 0
    b = Builders(A)
    for H in (b.hochschild(True), b.hochschild(False)):
        HB = lru_cache(maxsize=None)(H.B)
        for d, w in _cells(degrees, weights):
            for k in H.basis(d, w):
                seen += 1
                Bk = HB(k)
                if H.diff_elem(H.diff(k)):
                    bad.append(f"{H.name} b^2 on {H.label(k)}")
                if _apply(HB, Bk):
                    bad.append(f"{H.name} B^2 on {H.label(k)}")
                s = H.diff_elem(Bk)
                add_into(s, _apply(HB, H.diff(k)))
                if s:
                    bad.append(f"{H.name} bB+Bb on {H.label(k)}")
    if isinstance(A, SemiFree):
        xf = XFamilies(A)
        for n in range(0, 4):
            S, S1 = xf.scX(n), xf.scX(n + 1)
            for d, w in _cells(degrees, weights):
                for k in S.basis(d, w):
                    seen += 1
                    e = xf.B_scX(n, k)
                    if _apply(lambda r: xf.B_scX(n + 1, r), e):
                        bad.append(f"scX{n} B^2 on {S.label(k)}")
                    s = S1.diff_elem(e)
                    add_into(s, _apply(lambda r: xf.B_scX(n, r), S.diff(k)))
                    if s:
                        bad.append(f"scX{n} bB+Bb on {S.label(k)}")
    return bad, seen


def tensor_words(A, n_max, degrees, weights):
    """Words of T_A(S(A)) with up to n_max specials (identity-terminated)."""
    tc = TensorCalculus(A)
    specials = e_specials(A) + sd_specials(A)
    out = []
    for d, w in _cells(degrees, weights):
        if d < 0:
            continue
        nobj = len(A.objects)
        for x in range(nobj):
            for y in range(nobj):
                out.extend((key,) for key in A.basis(x, y, d, w))
        for k in range(1, n_max + 1):
            out.extend(tc.enumerate_canonical(specials, k, d, w))
    return tc, out


def derivation_laws(A, n_max, degrees, weights):
    """sD~^2 = 0 and [sD~, d] = [-, E] on words of T_A(S(A))."""
    if not isinstance(A, SemiFree):
        return None, 0
    bad = []
    tc, words = tensor_words(A, n_max, degrees, weights)
    for word in words:
        once = tc.derive(word, "sD")
        if tc.derive_elem(once, "sD"):
            bad.append(f"sD~^2 on {tc.label(word)}")
        try:
            sD_commutator(A, {word: 1}, tc)
        except IdentityViolated as e:
            bad.append(str(e))
    return bad, len(words)


def tau_orders(A, n_max, degrees, weights):
    """tau^n = id on naturalized n-fold tensor words and on X^(n)."""
    if not isinstance(A, SemiFree):
        return None, 0
    bad, seen = [], 0
    xf = XFamilies(A)
    for n in range(1, n_max + 1):
        X = xf.X(n)
        for d, w in _cells(degrees, weights):
            for k in X.basis(d, w):
                seen += 1
                cur = {k: 1}
                for _ in range(n):
                    cur = _apply(X.tau, cur)
                if cur != {k: 1}:
                    bad.append(f"tau^{n} != id on {X.label(k)}")
    return bad, seen
