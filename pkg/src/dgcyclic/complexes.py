"""Chain-level objects: Hochschild mixed complex, CC, C^lambda, CN, CP,
X^(n), scX^(n), the Hodge-completed total and their structure maps.

Every complex is bigraded by (homological degree, Adams weight); pieces are
finite and built lazily per (d, w). Elements are ``{key: coeff}`` dicts.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor

from .linalg import GradedDims, LinalgError, SparseMatrix, homology_dim, kernel_basis, rank
from .presentation import NaturalizedSpace, NotSemiFree, SemiFree, add_into
from .tensor import TensorCalculus, e_specials, sd_specials


class WindowTooSmall(ValueError):
    pass


class BasisError(LinalgError):
    """A map produced a key outside the target basis (a construction bug)."""


def interior(degrees):
    lo, hi = degrees
    if hi - lo < 2:
        raise WindowTooSmall(f"degree window {lo}..{hi} has no interior degree")
    return range(lo + 1, hi)


class BigradedComplex:
    name = "complex"

    def __init__(self, name=None):
        if name:
            self.name = name
        self._bcache = {}
        self._icache = {}
        self._dcache = {}
        self._mcache = {}

    # subclasses implement _basis(d, w) and _diff(key)
    def basis(self, d, w):
        b = self._bcache.get((d, w))
        if b is None:
            b = tuple(self._basis(d, w)) if w >= 0 else ()
            self._bcache[(d, w)] = b
        return b

    def index(self, d, w):
        i = self._icache.get((d, w))
        if i is None:
            i = {k: j for j, k in enumerate(self.basis(d, w))}
            self._icache[(d, w)] = i
        return i

    def diff(self, key):
        r = self._dcache.get(key)
        if r is None:
            r = self._diff(key)
            self._dcache[key] = r
        return r

    def diff_elem(self, elem):
        out = {}
        for k, c in elem.items():
            add_into(out, self.diff(k), c)
        return out

    def degree_bound(self, w):
        """Largest degree with a possibly nonzero piece at weight w (None: unknown)."""
        return None

    def matrix(self, d, w):
        m = self._mcache.get((d, w))
        if m is None:
            m = matrix_of(self.diff, self.basis(d, w), self.basis(d - 1, w),
                          self.index(d - 1, w), f"{self.name} d at ({d},{w})")
            self._mcache[(d, w)] = m
        return m

    def homology(self, d, w):
        return homology_dim(self.matrix(d + 1, w), self.matrix(d, w), check=False)

    def homology_table(self, degrees, weights):
        t = GradedDims()
        for w in range(weights[0], weights[1] + 1):
            for d in interior(degrees):
                t[(d, w)] = self.homology(d, w)
        return t

    def dims(self, degrees, weights):
        return GradedDims({(d, w): len(self.basis(d, w))
                           for w in range(weights[0], weights[1] + 1)
                           for d in range(degrees[0], degrees[1] + 1)})

    def d_squared_witnesses(self, d, w, limit=3):
        bad = []
        for k in self.basis(d, w):
            if self.diff_elem(self.diff(k)):
                bad.append(k)
                if len(bad) >= limit:
                    break
        return bad

    def label(self, key):
        return str(key)


def matrix_of(fn, src_basis, tgt_basis, tgt_index, what=""):
    cols = []
    for k in src_basis:
        col = {}
        for t, c in fn(k).items():
            j = tgt_index.get(t)
            if j is None:
                raise BasisError(f"{what}: image term {t} of {k} not in target basis")
            col[j] = c
        cols.append(col)
    return SparseMatrix.from_columns(len(tgt_basis), cols)


# -- basic complexes -----------------------------------------------------------

class NaturalizedComplex(BigradedComplex):
    """A_natural with the induced differential; equals X^(0) and scX^(0)."""

    def __init__(self, A, name="A_nat"):
        super().__init__(name)
        self.A = A
        self.nat = NaturalizedSpace(A)
        self.tc = TensorCalculus(A)
        # weight-0 generators (the adjoined t_x) leave degrees unbounded per weight
        self._bounded = all(g.weight > 0 for g in getattr(A, "generators", ()))

    def _basis(self, d, w):
        if d < 0 or (self._bounded and d > self.A.max_degree(w)):
            return ()
        return self.nat.basis(d, w)

    def _diff(self, key):
        return self.nat.project(self.A.diff(key))

    def degree_bound(self, w):
        return self.A.max_degree(w) if self._bounded else None

    def project(self, terms):
        return self.nat.project(terms)

    def e_count(self, key):
        return 0

    def label(self, key):
        return self.A.label(key)


def _dgr_bound(A, w):
    return int(floor((A.degree_ratio + 1) * w))


class HochschildComplex(BigradedComplex):
    """C^H(A) as canonical words a0 t a1 t ... an t in A<t_O>.

    The chain (a0, ..., an) has Hochschild degree sum|ai| + n. With
    ``normalized`` the entries a1..an are non-identities.
    """

    def __init__(self, A, normalized=True, tc=None):
        super().__init__("CH" if normalized else "CH_u")
        self.A = A
        self.normalized = normalized
        self.tc = tc or TensorCalculus(A)
        self.specials = [("t", x) for x in range(len(A.objects))]
        self.b_sign = 1

    def degree_bound(self, w):
        return _dgr_bound(self.A, w) if self.normalized else None

    def _basis(self, d, w):
        if d < 0:
            return ()
        if self.normalized and d > _dgr_bound(self.A, w):
            return ()
        out = []
        for k in range(1, d + 2):
            if self.normalized and k - 1 > w:
                break
            out.extend(self.tc.enumerate_canonical(self.specials, k, d + 1, w, nonid=self.normalized))
        out.sort(key=lambda t: (len(t), t))
        return out

    @staticmethod
    def degenerate(word):
        return any(not seg[1] for seg in word[2:-1:2])

    def chains(self, elem):
        """Keep words with >= 1 t, canonicalize, drop degenerate words."""
        tc = self.tc
        out = {}
        for w, c in elem.items():
            if len(w) == 1:
                continue
            for w2, c2 in tc.canon(w).items():
                if self.normalized and self.degenerate(w2):
                    continue
                add_into(out, {w2: c * c2})
        return out

    def _diff(self, key):
        return self.chains(self.tc.diff(key))

    def column(self, key):
        return len(key) // 2 - 1

    def N(self, key):
        k = len(key) // 2
        out = {}
        cur = {key: 1}
        for _ in range(k):
            add_into(out, cur)
            cur = self.tc.apply_tau(cur)
        return out

    def s(self, word):
        x0 = self.A.tgt(word[0])
        return (self.A.identity(x0), ("t", x0)) + word

    def B(self, key):
        """Connes operator: sN (normalized) or (1 - tau)sN."""
        sn = {}
        for w, c in self.N(key).items():
            add_into(sn, {self.s(w): c})
        if self.normalized:
            return {w: self.b_sign * c for w, c in sn.items() if not self.degenerate(w)}
        out = dict(sn)
        add_into(out, self.tc.apply_tau(sn), -1)
        return {w: self.b_sign * c for w, c in out.items()}

    def label(self, key):
        return self.tc.label(key)


class CoinvariantComplex(BigradedComplex):
    """Coinvariants of the signed cyclic action tau on a complex of
    canonical words (C^lambda from C^H, scX^(n) from X^(n))."""

    def __init__(self, parent, name):
        super().__init__(name)
        self.parent = parent
        self.tc = parent.tc
        self.A = parent.A
        self._orb = {}

    def orbit_class(self, word):
        """(sign, rep) with class(word) = sign * class(rep); sign 0 if killed."""
        r = self._orb.get(word)
        if r is not None:
            return r
        seen, killed = self.tc.orbit(word)
        if killed:
            for w in seen:
                self._orb[w] = (0, None)
        else:
            rep = min(seen)
            sr = seen[rep]
            for w, s in seen.items():
                self._orb[w] = (s * sr, rep)
        return self._orb[word]

    def coinv(self, elem):
        out = {}
        for w, c in elem.items():
            s, r = self.orbit_class(w)
            if s:
                add_into(out, {r: s * c})
        return out

    def rho(self, rep):
        """Sum of cyclic rotations: the section scX -> X."""
        k = len(rep) // 2
        out = {}
        cur = {rep: 1}
        for _ in range(k):
            add_into(out, cur)
            cur = self.tc.apply_tau(cur)
        return out

    def degree_bound(self, w):
        return self.parent.degree_bound(w)

    def _basis(self, d, w):
        reps = set()
        for k in self.parent.basis(d, w):
            s, r = self.orbit_class(k)
            if s:
                reps.add(r)
        return sorted(reps, key=lambda t: (len(t), t))

    def _diff(self, key):
        return self.coinv(self.parent.diff(key))

    def e_count(self, key):
        return self.tc.count(key, "E")

    def label(self, key):
        return self.tc.label(key)


class XComplex(BigradedComplex):
    """X^(n)(A) = (S(A)^{(x)_A n})_natural for n >= 1."""

    def __init__(self, A, n, tc=None):
        if not isinstance(A, SemiFree):
            raise NotSemiFree("X-complexes need a semi-free presentation")
        if n < 1:
            raise ValueError("use NaturalizedComplex for n = 0")
        super().__init__(f"X{n}")
        self.A = A
        self.n = n
        self.tc = tc or TensorCalculus(A)
        self.specials = e_specials(A) + sd_specials(A)

    def degree_bound(self, w):
        return _dgr_bound(self.A, w)

    def _basis(self, d, w):
        if d < 0 or d > _dgr_bound(self.A, w):
            return ()
        return self.tc.enumerate_canonical(self.specials, self.n, d, w)

    def _diff(self, key):
        return self.tc.canon_elem(self.tc.diff(key))

    def tau(self, key):
        s, w = self.tc.tau(key)
        return {w: s}

    def e_count(self, key):
        return self.tc.count(key, "E")

    def label(self, key):
        return self.tc.label(key)


class Family:
    """An N-graded (or Z-graded) mixed complex: complexes C(n) with B: C(n) -> C(n+1)."""

    n_min = None

    def complex(self, n):
        raise NotImplementedError

    def B(self, n, key):
        raise NotImplementedError

    def degree_bound(self, w):
        return None


class HochschildFamily(Family):
    """The constant family (C^H, b, B) indexed by n in Z."""

    def __init__(self, H):
        self.H = H
        self.A = H.A
        self.name = H.name

    def complex(self, n):
        return self.H

    def B(self, n, key):
        return self.H.B(key)

    def degree_bound(self, w):
        return self.H.degree_bound(w)


class XFamilies:
    """Shared construction of X^(n), scX^(n) and their B operators."""

    def __init__(self, A):
        if not isinstance(A, SemiFree):
            raise NotSemiFree("X-complexes need a semi-free presentation")
        self.A = A
        self.tc = TensorCalculus(A)
        self.nat = NaturalizedComplex(A)
        self.nat.tc = self.tc
        self._X = {}
        self._scX = {}

    def X(self, n):
        if n == 0:
            return self.nat
        c = self._X.get(n)
        if c is None:
            c = self._X[n] = XComplex(self.A, n, self.tc)
        return c

    def scX(self, n):
        if n == 0:
            return self.nat
        c = self._scX.get(n)
        if c is None:
            c = self._scX[n] = CoinvariantComplex(self.X(n), f"scX{n}")
        return c

    def pi(self, n, key):
        if n == 0:
            return {key: 1}
        return self.scX(n).coinv({key: 1})

    def rho(self, n, rep):
        if n == 0:
            return {rep: 1}
        return self.scX(n).rho(rep)

    def B_scX(self, n, rep):
        """scX^(n) -> scX^(n+1): class(w) -> class(sD~ w)."""
        tc = self.tc
        if n == 0:
            words = tc.derive((rep,), "sD")
        else:
            words = tc.derive(rep, "sD")
        return self.scX(n + 1).coinv(tc.canon_elem(words))

    def B_X(self, n, key):
        """X^(n) -> X^(n+1) as rho . B . pi."""
        out = {}
        for r, c in self.pi(n, key).items():
            for r2, c2 in self.B_scX(n, r).items():
                add_into(out, self.rho(n + 1, r2), c * c2)
        return out

    def B_bar(self, key):
        """A_natural -> X: f -> sDf."""
        return self.tc.canon_elem(self.tc.derive((key,), "sD"))

    def to_natural(self, key):
        """X = X^(1) -> A_natural: E -> 1, sD -> 0."""
        if key[1][0] != "E":
            return {}
        return self.nat.project({key[0]: 1})

    def B_on_X(self, key):
        out = {}
        for k, c in self.to_natural(key).items():
            add_into(out, self.B_bar(k), c)
        return out

    def h(self, n, key):
        """Homotopy on X^(n): sD~(xi_x) on words ending in E_x, zero otherwise."""
        if key[-2][0] != "E":
            return {}
        return self.tc.canon_elem(self.tc.derive(key[:-2], "sD"))


class ScXFamily(Family):
    n_min = 0

    def __init__(self, xf: XFamilies):
        self.xf = xf
        self.A = xf.A
        self.name = "scX"

    def complex(self, n):
        return self.xf.scX(n)

    def B(self, n, key):
        return self.xf.B_scX(n, key)

    def degree_bound(self, w):
        return _dgr_bound(self.A, w)


class XFamily(Family):
    n_min = 0

    def __init__(self, xf: XFamilies):
        self.xf = xf
        self.A = xf.A
        self.name = "X"

    def complex(self, n):
        return self.xf.X(n)

    def B(self, n, key):
        return self.xf.B_X(n, key)

    def degree_bound(self, w):
        return _dgr_bound(self.A, w)


class UTotal(BigradedComplex):
    """Total complex of prod/sum_n C(n) u^n with d = b + uB, n in [lo, hi].

    Keys are (n, c); (n, c) has degree deg(c) - 2n. ``None`` bounds are
    infinite; each (d, w) piece is still finite because the family has a
    degree bound per weight (or the other bound closes the range).
    """

    def __init__(self, family, lo=None, hi=None, name=None):
        super().__init__(name or f"{family.name}_tot[{lo},{hi}]")
        self.family = family
        self.A = family.A
        if family.n_min is not None and (lo is None or lo < family.n_min):
            lo = family.n_min
        self.lo, self.hi = lo, hi

    def n_range(self, d, w):
        M = self.family.degree_bound(w)
        n_lo = -(d // 2)  # smallest n with d + 2n >= 0
        if self.lo is not None:
            n_lo = max(n_lo, self.lo)
        if M is not None:
            n_hi = (M - d) // 2
            if self.hi is not None:
                n_hi = min(n_hi, self.hi)
        elif self.hi is not None:
            n_hi = self.hi
        else:
            raise ValueError(f"{self.name}: unbounded piece at ({d},{w})")
        return range(n_lo, n_hi + 1)

    def _basis(self, d, w):
        out = []
        for n in self.n_range(d, w):
            out.extend((n, c) for c in self.family.complex(n).basis(d + 2 * n, w))
        return out

    def _diff(self, key):
        n, c = key
        out = {(n, k): v for k, v in self.family.complex(n).diff(c).items()}
        if self.hi is None or n + 1 <= self.hi:
            for k, v in self.family.B(n, c).items():
                add_into(out, {(n + 1, k): v})
        return out

    def degree_bound(self, w):
        M = self.family.degree_bound(w)
        if M is None:
            return None
        lo = self.lo if self.lo is not None else None
        if lo is None:
            return None
        return M - 2 * lo

    def e_count(self, key):
        n, c = key
        cx = self.family.complex(n)
        return cx.e_count(c) if hasattr(cx, "e_count") else 0

    def label(self, key):
        n, c = key
        return f"{self.family.complex(n).label(c)}*u^{n}"


# -- derived complexes ------------------------------------------------------------

class PartialDifferential(BigradedComplex):
    """Same basis as ``parent``, differential restricted to terms accepted by
    ``keep(src_key, tgt_key)``. Used for the equivariant split."""

    def __init__(self, parent, keep, name):
        super().__init__(name)
        self.parent = parent
        self.keep = keep

    def _basis(self, d, w):
        return self.parent.basis(d, w)

    def _diff(self, key):
        return {k: c for k, c in self.parent.diff(key).items() if self.keep(key, k)}


def equivariant_split(cx):
    """(b0, b1): the parts of the differential of equivariant degree 0 and 1
    (change of the number of E letters)."""
    if not hasattr(cx, "e_count"):
        raise TypeError(f"{cx.name} carries no equivariant grading")
    ec = cx.e_count
    b0 = PartialDifferential(cx, lambda s, t: ec(t) == ec(s), f"{cx.name}.b0")
    b1 = PartialDifferential(cx, lambda s, t: ec(t) == ec(s) + 1, f"{cx.name}.b1")
    return b0, b1


def split_identities(cx, d, w):
    """Witnesses against b0^2 = 0, b1^2 = 0, b0 b1 + b1 b0 = 0 and
    b0 + b1 = d on the piece (d, w)."""
    b0, b1 = equivariant_split(cx)
    bad = []
    for k in cx.basis(d, w):
        x0, x1 = b0.diff(k), b1.diff(k)
        full = dict(x0)
        add_into(full, x1)
        if full != cx.diff(k):
            bad.append(("b0+b1!=d", k))
        if b0.diff_elem(x0):
            bad.append(("b0^2", k))
        if b1.diff_elem(x1):
            bad.append(("b1^2", k))
        m = b0.diff_elem(x1)
        add_into(m, b1.diff_elem(x0))
        if m:
            bad.append(("b0b1+b1b0", k))
    return bad


class Cone(BigradedComplex):
    """cone(f: S -> T) = T + S[1]; d(t, k) = (t, dk), d(s, k) = (t, f k) - (s, dk)."""

    def __init__(self, f, name=None):
        super().__init__(name or f"cone({f.name})")
        if f.shift != 0:
            raise ValueError("cone needs a degree-preserving map")
        self.f = f
        self.S, self.T = f.source, f.target
        self.A = getattr(self.T, "A", None)

    def _basis(self, d, w):
        return [("t", k) for k in self.T.basis(d, w)] + [("s", k) for k in self.S.basis(d - 1, w)]

    def _diff(self, key):
        side, k = key
        if side == "t":
            return {("t", x): c for x, c in self.T.diff(k).items()}
        out = {("t", x): c for x, c in self.f(k).items()}
        for x, c in self.S.diff(k).items():
            add_into(out, {("s", x): -c})
        return out

    def degree_bound(self, w):
        a, b = self.T.degree_bound(w), self.S.degree_bound(w)
        if a is None or b is None:
            return None
        return max(a, b + 1)

    def e_count(self, key):
        side, k = key
        cx = self.T if side == "t" else self.S
        return cx.e_count(k)

    def label(self, key):
        side, k = key
        cx = self.T if side == "t" else self.S
        return f"{side}:{cx.label(k)}"


class LinearMap:
    """A linear map of bigraded spaces given on basis keys; degree ``shift``."""

    def __init__(self, source, target, fn, shift=0, name="map"):
        self.source = source
        self.target = target
        self.fn = fn
        self.shift = shift
        self.name = name
        self._cache = {}

    def __call__(self, key):
        r = self._cache.get(key)
        if r is None:
            r = self.fn(key)
            self._cache[key] = r
        return r

    def apply(self, elem):
        out = {}
        for k, c in elem.items():
            add_into(out, self(k), c)
        return out

    def matrix(self, d, w):
        return matrix_of(self, self.source.basis(d, w), self.target.basis(d + self.shift, w),
                         self.target.index(d + self.shift, w), f"{self.name} at ({d},{w})")

    def scaled(self, c, name=None):
        c = Fraction(c)
        return LinearMap(self.source, self.target,
                         lambda k: {x: c * v for x, v in self(k).items()},
                         self.shift, name or f"{c}*{self.name}")

    def then(self, g, name=None):
        """g . self"""
        return LinearMap(self.source, g.target, lambda k: g.apply(self(k)),
                         self.shift + g.shift, name or f"{g.name}.{self.name}")


def chain_law_witnesses(f, d, w, limit=3):
    """Keys k of source(d, w) with f(dk) != (-1)^shift d f(k)."""
    bad = []
    sgn = -1 if f.shift % 2 else 1
    for k in f.source.basis(d, w):
        lhs = f.apply(f.source.diff(k))
        rhs = f.target.diff_elem(f(k))
        add_into(lhs, rhs, -sgn)
        if lhs:
            bad.append((k, lhs))
            if len(bad) >= limit:
                break
    return bad


def maps_equal_witnesses(f, g, d, w, limit=3):
    bad = []
    for k in f.source.basis(d, w):
        a = dict(f(k))
        add_into(a, g(k), -1)
        if a:
            bad.append((k, a))
            if len(bad) >= limit:
                break
    return bad


def homology_rank(f, d, w):
    """Rank of the map induced by a chain map f on H_(d, w)."""
    S, T = f.source, f.target
    dt = T.matrix(d + f.shift + 1, w)
    ds = S.matrix(d, w)
    z = kernel_basis(ds)
    if not z:
        return 0
    cols = dt.col_dicts()
    base = rank(dt)
    src = S.basis(d, w)
    tidx = T.index(d + f.shift, w)
    for v in z:
        img = {}
        for i, c in enumerate(v):
            if c:
                for t, x in f(src[i]).items():
                    j = tidx[t]
                    img[j] = img.get(j, 0) + c * x
        cols.append({j: x for j, x in img.items() if x})
    m = SparseMatrix.from_columns(len(T.basis(d + f.shift, w)), cols)
    return rank(m) - base


def identity_map(cx):
    return LinearMap(cx, cx, lambda k: {k: 1}, 0, f"id_{cx.name}")


def u_action(total: UTotal):
    """u: (n, c) -> (n + 1, c), of degree -2."""
    return LinearMap(total, total, lambda k: {(k[0] + 1, k[1]): 1}, -2, "u")


# -- constructors ---------------------------------------------------------------

class Builders:
    """Cached complexes of one presentation."""

    def __init__(self, A):
        self.A = A
        self.tc = TensorCalculus(A)
        self._c = {}
        self._xf = None

    def _get(self, key, make):
        c = self._c.get(key)
        if c is None:
            c = self._c[key] = make()
        return c

    @property
    def xf(self):
        if self._xf is None:
            self._xf = XFamilies(self.A)
        return self._xf

    def natural(self):
        if isinstance(self.A, SemiFree):
            return self.xf.nat
        return self._get("nat", lambda: NaturalizedComplex(self.A))

    def hochschild(self, normalized=True):
        return self._get(("CH", normalized), lambda: HochschildComplex(self.A, normalized, self.tc))

    def clambda(self):
        return self._get("Clambda", lambda: CoinvariantComplex(self.hochschild(False), "Clambda"))

    def CC(self, normalized=False):
        return self._get(("CC", normalized), lambda: UTotal(
            HochschildFamily(self.hochschild(normalized)), None, 0, "CC" if not normalized else "CC_n"))

    def CN(self):
        return self._get("CN", lambda: UTotal(HochschildFamily(self.hochschild(True)), 0, None, "CN"))

    def CP(self):
        return self._get("CP", lambda: UTotal(HochschildFamily(self.hochschild(True)), None, None, "CP"))

    def CP_F(self, r):
        """F^r CP = CN u^r."""
        return self._get(("FCP", r), lambda: UTotal(HochschildFamily(self.hochschild(True)), r, None, f"F{r}CP"))

    def X(self, n):
        return self.xf.X(n)

    def scX(self, n):
        return self.xf.scX(n)

    def Xtot(self, r=0):
        return self._get(("Xtot", r), lambda: UTotal(ScXFamily(self.xf), r, None, "Xtot" if r == 0 else f"F{r}Xtot"))

    def Xtot_quotient(self):
        """Xtot / F^1 = A_natural placed at u^0."""
        return self._get("Xtot/F1", lambda: UTotal(ScXFamily(self.xf), 0, 0, "Xtot/F1"))

    def CP_quotient(self):
        """CP / F^1 = normalized CC."""
        return self.CC(normalized=True)


def hochschild(A, normalized=True):
    return HochschildComplex(A, normalized)


def cyclic_CC(A, normalized=False):
    return Builders(A).CC(normalized)


def connes_Clambda(A):
    return Builders(A).clambda()


def negative_CN(A):
    return Builders(A).CN()


def periodic_CP(A):
    return Builders(A).CP()


def X_complex(A, n):
    return XFamilies(A).X(n)


def scX_complex(A, n):
    return XFamilies(A).scX(n)


def hodge_total(A, r=0):
    return Builders(A).Xtot(r)
