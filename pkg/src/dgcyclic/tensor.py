"""Tensor words over A with special bimodule letters.

A tensor word is a tuple ``(a0, m1, a1, ..., mk, ak)`` alternating basis
keys ``ai`` of A with special letters ``mi``. Specials are tuples:

``('E', x)``   basis element E_x of A (x)_O A, degree 0, weight 0
``('sD', g)``  shifted differential of generator g, degree |g| + 1
``('D', g)``   unshifted differential Dg in Omega^1, degree |g|
``('t', x)``   the adjoined t_x (degree 1, weight 0, d t_x = 1_x)
``('|', x)``   bar separator of R_n(A), degree 0

Words compose like morphisms (left factor applied last). With E and sD
this is T_A(S(A)); with t alone it is A<t_O>; with '|' it is the bar
construction.

Naturalized words are kept in canonical form: the trailing segment is an
identity (the trailing A-factor has been rotated to the front, with its
Koszul sign). The cyclic operator ``tau`` rotates the last block
``(a_{k-1}, m_k)`` to the front.
"""
from __future__ import annotations

from .presentation import FiniteDim, NotSemiFree, Presentation, SemiFree, add_into


class TensorCalculus:
    def __init__(self, A: Presentation):
        self.A = A
        self._diff_cache = {}
        self._canon_cache = {}
        self._sd_cache = {}

    # -- special letters -----------------------------------------------------
    def sp_src(self, m):
        kind, v = m
        if kind in ("sD", "D"):
            return self.A._gsrc[v]
        return v

    def sp_tgt(self, m):
        kind, v = m
        if kind in ("sD", "D"):
            return self.A._gtgt[v]
        return v

    def sp_deg(self, m):
        kind, v = m
        if kind == "sD":
            return self.A._gdeg[v] + 1
        if kind == "D":
            return self.A._gdeg[v]
        if kind == "t":
            return 1
        return 0

    def sp_wt(self, m):
        kind, v = m
        if kind in ("sD", "D"):
            return self.A._gwt[v]
        return 0

    def sp_label(self, m):
        kind, v = m
        if kind in ("sD", "D"):
            return f"{kind}{self.A.generators[v].name}"
        return f"{kind}_{self.A.objects.objects[v]}" if kind != "|" else "|"

    # -- word bookkeeping ----------------------------------------------------
    def deg(self, word):
        A = self.A
        s = 0
        for i, p in enumerate(word):
            s += self.sp_deg(p) if i % 2 else A.deg(p)
        return s

    def wt(self, word):
        A = self.A
        s = 0
        for i, p in enumerate(word):
            s += self.sp_wt(p) if i % 2 else A.wt(p)
        return s

    def src(self, word):
        return word[-1][0]

    def tgt(self, word):
        return self.A.tgt(word[0])

    def count(self, word, kind):
        return sum(1 for m in word[1::2] if m[0] == kind)

    def label(self, word):
        A = self.A
        parts = []
        for i, p in enumerate(word):
            if i % 2:
                parts.append(self.sp_label(p))
            elif p[1] or len(word) == 1:
                parts.append(A.label(p))
        return "*".join(parts)

    def label_elem(self, elem):
        if not elem:
            return "0"
        return " + ".join(f"{c}*{self.label(w)}" for w, c in sorted(elem.items()))

    def letter(self, m):
        """The special letter m as a one-special word."""
        return (self.A.identity(self.sp_tgt(m)), m, self.A.identity(self.sp_src(m)))

    def segment(self, key):
        return (key,)

    # -- products ------------------------------------------------------------
    def concat(self, w1, w2, c=1):
        """w1 o w2 as {word: coeff}."""
        out = {}
        for k, v in self.A.mul(w1[-1], w2[0]).items():
            add_into(out, {w1[:-1] + (k,) + w2[1:]: c * v})
        return out

    def mul(self, e1, e2):
        out = {}
        for w1, c1 in e1.items():
            for w2, c2 in e2.items():
                add_into(out, self.concat(w1, w2, c1 * c2))
        return out

    def _splice(self, word, i, elem, c, out):
        """Replace the special at position i by elem (coefficient c)."""
        left, right = word[:i], word[i + 1:]
        for u, cu in elem.items():
            for mid, cm in self.concat(left, u, c * cu).items():
                add_into(out, self.concat(mid, right, cm))

    def _split_segment(self, key):
        """Segment key as letters with their key prefixes (semi-free only)."""
        A = self.A
        letters = key[1]
        for j, g in enumerate(letters):
            left = letters[:j]
            right = letters[j + 1:]
            lk = (A._gtgt[g], left) if not left else (A._gsrc[left[-1]], left)
            rk = (key[0], right)
            yield g, lk, rk

    # -- derivations ---------------------------------------------------------
    def special_diff(self, m):
        kind, v = m
        A = self.A
        if kind == "t":
            return {(A.identity(v),): 1}
        if kind in ("E", "|"):
            return {}
        if kind == "D":
            # d(Dg) = D(dg)
            out = {}
            for k, c in A._gdiff[v].items():
                add_into(out, self.derive((k,), "D"), c)
            return out
        if kind == "sD":
            x, y = A._gsrc[v], A._gtgt[v]
            g = A.gen_key(v)
            out = {(g, ("E", x), A.identity(x)): 1}
            add_into(out, {(A.identity(y), ("E", y), g): -1})
            for k, c in A._gdiff[v].items():
                add_into(out, self.derive((k,), "sD"), -c)
            return out
        raise ValueError(f"unknown special {m}")

    def diff(self, word):
        r = self._diff_cache.get(word)
        if r is not None:
            return r
        A = self.A
        out = {}
        sign = 1
        for i, p in enumerate(word):
            if i % 2:
                self._splice(word, i, self.special_diff(p), sign, out)
                if self.sp_deg(p) % 2:
                    sign = -sign
            else:
                for k, c in A.diff(p).items():
                    add_into(out, {word[:i] + (k,) + word[i + 1:]: sign * c})
                if A.deg(p) % 2:
                    sign = -sign
        self._diff_cache[word] = out
        return out

    def diff_elem(self, elem):
        out = {}
        for w, c in elem.items():
            add_into(out, self.diff(w), c)
        return out

    def derive(self, word, kind):
        """Apply the derivation f -> sDf (kind 'sD', degree +1) or the
        universal derivation f -> Df (kind 'D', degree 0).

        Both kill identities, E_x and previously created sD/D letters.
        """
        if kind == "sD":
            ck = word
            r = self._sd_cache.get(ck)
            if r is not None:
                return r
        A = self.A
        if not isinstance(A, SemiFree):
            raise NotSemiFree("sD and D need a semi-free presentation")
        odd = kind == "sD"
        out = {}
        sign = 1
        for i, p in enumerate(word):
            if i % 2:
                if p[0] == "t":
                    raise ValueError("sD is not defined on t")
                if odd and self.sp_deg(p) % 2:
                    sign = -sign
                continue
            inner_sign = sign
            for g, lk, rk in self._split_segment(p):
                piece = (lk, (kind, g), rk)
                add_into(out, {word[:i] + piece + word[i + 1:]: inner_sign})
                if odd and A._gdeg[g] % 2:
                    inner_sign = -inner_sign
            if odd and A.deg(p) % 2:
                sign = -sign
        if kind == "sD":
            self._sd_cache[word] = out
        return out

    def derive_elem(self, elem, kind="sD"):
        out = {}
        for w, c in elem.items():
            add_into(out, self.derive(w, kind), c)
        return out

    # -- naturalization over A -------------------------------------------------
    def canon(self, word):
        """Canonical form in (.)_natural over A of a diagonal word with at
        least one special: rotate the trailing segment to the front."""
        r = self._canon_cache.get(word)
        if r is not None:
            return r
        A = self.A
        last = word[-1]
        if len(word) == 1:
            raise ValueError("canon needs at least one special letter")
        if not last[1]:
            r = {word: 1}
        else:
            dl = A.deg(last)
            sign = -1 if dl % 2 and (self.deg(word) - dl) % 2 else 1
            ident = A.identity(self.sp_src(word[-2]))
            r = {}
            for k, v in A.mul(last, word[0]).items():
                add_into(r, {(k,) + word[1:-1] + (ident,): sign * v})
        self._canon_cache[word] = r
        return r

    def canon_elem(self, elem):
        out = {}
        for w, c in elem.items():
            if len(w) == 1:
                raise ValueError("word without special letters")
            add_into(out, self.canon(w), c)
        return out

    def tau(self, word):
        """Rotate the last block (a_{k-1}, m_k) of a canonical word to the front."""
        k = len(word) // 2
        if k <= 1:
            return 1, word
        block = word[-3:-1]
        rest = word[:-3]
        db = self.A.deg(block[0]) + self.sp_deg(block[1])
        dr = self.deg(rest)
        sign = -1 if db % 2 and dr % 2 else 1
        ident = self.A.identity(self.sp_src(rest[-1]))
        return sign, block + rest + (ident,)

    def orbit(self, word):
        """Signed tau-orbit of a canonical word: ({word: sign rel. start}, killed)."""
        seen = {word: 1}
        cur, s = word, 1
        while True:
            t, cur = self.tau(cur)
            s *= t
            if cur in seen:
                return seen, seen[cur] != s
            seen[cur] = s

    def apply_tau(self, elem, power=1):
        out = elem
        for _ in range(power):
            nxt = {}
            for w, c in out.items():
                s, w2 = self.tau(w)
                add_into(nxt, {w2: s * c})
            out = nxt
        return out

    # -- enumeration -----------------------------------------------------------
    def enumerate_canonical(self, specials, k, d, w, nonid=False, objects=None):
        """All canonical diagonal words with k specials from ``specials`` in
        bidegree (d, w). With ``nonid`` the segments a_1..a_{k-1} must not be
        identities (normalized Hochschild chains)."""
        A = self.A
        nobj = len(A.objects)
        by_tgt = {}
        for m in specials:
            by_tgt.setdefault(self.sp_tgt(m), []).append(m)
        out = []

        def segs(x, y, dmax, wmax, allow_id):
            for ww in range(wmax + 1):
                for dd in range(min(dmax, A.max_degree(ww)) + 1):
                    for key in A.basis(x, y, dd, ww):
                        if not allow_id and not key[1]:
                            continue
                        yield key, dd, ww

        def rec(prefix, cur_tgt, x0, left, dr, wr):
            # prefix ends with a special whose source is cur_tgt; next a segment into cur_tgt
            if left == 0:
                if cur_tgt == x0 and dr == 0 and wr == 0:
                    out.append(prefix + (A.identity(x0),))
                return
            first = not prefix
            for y in range(nobj):
                for key, dd, ww in segs(y, cur_tgt, dr, wr, first or not nonid):
                    for m in by_tgt.get(y, ()):
                        md, mw = self.sp_deg(m), self.sp_wt(m)
                        if md > dr - dd or mw > wr - ww:
                            continue
                        rec(prefix + (key, m), self.sp_src(m), x0, left - 1, dr - dd - md, wr - ww - mw)

        targets = range(nobj) if objects is None else objects
        for x0 in targets:
            rec((), x0, x0, k, d, w)
        out.sort()
        return out


# -- bimodule layer -------------------------------------------------------------

def _require_semifree(A):
    if not isinstance(A, SemiFree):
        raise NotSemiFree(f"{A.kind} presentations have no generator calculus; "
                          "use a semi-free model")


def e_specials(A):
    return [("E", x) for x in range(len(A.objects))]


def sd_specials(A):
    return [("sD", i) for i in range(len(A.generators))]


class Bimodule:
    """A bimodule spanned by words with exactly one special letter."""

    def __init__(self, A, kind, specials):
        self.A = A
        self.kind = kind
        self.specials = list(specials)
        self.tc = TensorCalculus(A)

    def basis(self, x, y, d, w):
        """Words a*m*b in Hom(x, y) of bidegree (d, w)."""
        A, tc = self.A, self.tc
        out = []
        nobj = len(A.objects)
        for m in self.specials:
            md, mw = tc.sp_deg(m), tc.sp_wt(m)
            if md > d or mw > w:
                continue
            for w1 in range(w - mw + 1):
                for d1 in range(d - md + 1):
                    for a in A.basis(tc.sp_tgt(m), y, d1, w1):
                        for b in A.basis(x, tc.sp_src(m), d - md - d1, w - mw - w1):
                            out.append((a, m, b))
        out.sort()
        return out

    def diff(self, word):
        return self.tc.diff(word)


def build_omega1(A):
    """Omega^1(A): free bimodule on Dg, g a generator."""
    _require_semifree(A)
    return Bimodule(A, "Omega1", [("D", i) for i in range(len(A.generators))])


def universal_derivation(A, f):
    """D(f) for f a MorElement; expands by D(fg) = f.Dg + Df.g."""
    tc = TensorCalculus(A)
    return tc.derive_elem({(k,): c for k, c in f.terms.items()}, "D")


def alpha(A, omega):
    """alpha: Omega^1 -> A (x)_O A, Dg -> g.E_x - E_y.g (bimodule map)."""
    tc = TensorCalculus(A)
    out = {}
    for (a, m, b), c in omega.items():
        if m[0] != "D":
            raise ValueError("alpha is defined on Omega^1 words")
        v = m[1]
        x, y = A._gsrc[v], A._gtgt[v]
        g = A.gen_key(v)
        img = {(g, ("E", x), A.identity(x)): 1, (A.identity(y), ("E", y), g): -1}
        add_into(out, tc.mul(tc.mul({(a,): 1}, img), {(b,): 1}), c)
    return out


def build_short_resolution(A):
    """S(A) = cone(alpha): spanned by a*E_x*b and a*sDg*b."""
    _require_semifree(A)
    return Bimodule(A, "S", e_specials(A) + sd_specials(A))


def resolution_map(A, elem):
    """pi_S: S(A) -> A, E_x -> 1_x, sDf -> 0 (applied factor-wise to any word)."""
    out = {}
    for word, c in elem.items():
        if any(m[0] == "sD" for m in word[1::2]):
            continue
        cur = {(word[0],): c}
        for i in range(2, len(word), 2):
            nxt = {}
            for w, cc in cur.items():
                for k, v in A.mul(w[0], word[i]).items():
                    add_into(nxt, {(k,): cc * v})
            cur = nxt
        for w, cc in cur.items():
            add_into(out, {w[0]: cc})
    return out


class BarColumn:
    """R_n(A) = A (x)_O ... (x)_O A (n + 2 factors) with simplicial faces."""

    def __init__(self, A, n):
        self.A = A
        self.n = n
        self.tc = TensorCalculus(A)

    def basis(self, x, y, d, w):
        A = self.A
        out = []
        nobj = len(A.objects)

        def rec(prefix, cur_tgt, left, dr, wr):
            if left == 0:
                for key in A.basis(x, cur_tgt, dr, wr):
                    out.append(prefix + (key,))
                return
            for z in range(nobj):
                for ww in range(wr + 1):
                    for dd in range(min(dr, A.max_degree(ww)) + 1):
                        for key in A.basis(z, cur_tgt, dd, ww):
                            rec(prefix + (key, ("|", z)), z, left - 1, dr - dd, wr - ww)

        rec((), y, self.n + 1, d, w)
        out.sort()
        return out

    def face(self, word, i):
        """Multiply factors i and i+1 (0-based)."""
        pos = 2 * i + 1
        left, right = word[:pos], word[pos + 1:]
        return self.tc.concat(left, right)

    def simplicial_diff(self, word):
        out = {}
        for i in range(self.n + 1):
            add_into(out, self.face(word, i), (-1) ** i)
        return out

    def augmentation(self, word):
        """m: R_0 -> A, f (x) g -> fg."""
        if self.n != 0:
            raise ValueError("augmentation is defined on R_0")
        return self.A.mul(word[0], word[2])

    def extra_degeneracy(self, word):
        """Insert 1_x on the right: R_n -> R_{n+1}."""
        x = word[-1][0]
        return word + (("|", x), self.A.identity(x))


def build_bar_column(A, n):
    if n < 0:
        raise ValueError("n must be >= 0")
    return BarColumn(A, n)


def sD_apply(A, elem):
    """sD~ on T_A(S(A)) words; degree +1 square-zero derivation."""
    _require_semifree(A)
    return TensorCalculus(A).derive_elem(elem, "sD")


class IdentityViolated(AssertionError):
    pass


def sD_commutator(A, elem, tc=None):
    """(sD~ d + d sD~)(xi); raises IdentityViolated unless it equals
    xi.E_x - E_y.xi for xi: x -> y."""
    _require_semifree(A)
    tc = tc or TensorCalculus(A)
    lhs = tc.derive_elem(tc.diff_elem(elem), "sD")
    add_into(lhs, tc.diff_elem(tc.derive_elem(elem, "sD")))
    rhs = {}
    for w, c in elem.items():
        x, y = tc.src(w), tc.tgt(w)
        add_into(rhs, tc.concat(w, tc.letter(("E", x)), c))
        add_into(rhs, tc.concat(tc.letter(("E", y)), w, -c))
    if lhs != rhs:
        raise IdentityViolated(f"[sD,d]({tc.label_elem(elem)}) = {tc.label_elem(lhs)}, "
                               f"expected {tc.label_elem(rhs)}")
    return lhs


class TensorPowerNatural:
    """(S(A)^{(x)_A n})_natural with the cyclic action tau."""

    def __init__(self, A, n, tc=None):
        _require_semifree(A)
        if n < 1:
            raise ValueError("n must be >= 1")
        self.A = A
        self.n = n
        self.tc = tc or TensorCalculus(A)
        self.specials = e_specials(A) + sd_specials(A)

    def basis(self, d, w):
        return self.tc.enumerate_canonical(self.specials, self.n, d, w)

    def tau(self, word):
        s, w2 = self.tc.tau(word)
        return {w2: s}


def tensor_power_natural(A, n):
    return TensorPowerNatural(A, n)
