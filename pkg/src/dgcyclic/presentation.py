"""Weight-graded dg categories over Q with a fixed finite object set.

Two kinds of presentation are supported:

* :class:`SemiFree` -- free on generators with a differential on each
  generator. Basis elements are composable generator words.
* :class:`FiniteDim` -- a finite basis with structure constants.

Every basis element is keyed by ``(src, letters)`` where ``src`` is the
index of the source object and ``letters`` a tuple (generator indices in
composition order for words, ``(i,)`` for a FiniteDim basis element).
The identity of object ``x`` is ``(x, ())`` for both kinds, which lets the
unit inclusion ``kO -> A`` act as the identity on keys.

Words are written in composition order: ``(g1, g2)`` means ``g1 o g2``,
so ``g2`` is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checkreport import CheckReport

Q = Fraction


class PresentationError(Exception):
    pass


class ObjectMismatch(PresentationError):
    pass


class NotSemiFree(PresentationError):
    pass


def add_into(acc, terms, c=1):
    """acc += c * terms, dropping zeros."""
    for k, v in terms.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    src: str
    tgt: str
    degree: int
    weight: int
    adjoined: bool = False  # engine-adjoined t_x


@dataclass(frozen=True)
class ObjectSet:
    objects: tuple

    def __post_init__(self):
        if not self.objects:
            raise PresentationError("object set must be nonempty")
        if len(set(self.objects)) != len(self.objects):
            raise PresentationError("object names must be unique")

    def index(self, name):
        try:
            return self.objects.index(name)
        except ValueError:
            raise PresentationError(f"unknown object {name!r}") from None

    def __len__(self):
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)


class Presentation:
    """Common interface; subclasses fill in the basis and structure maps."""

    kind = "abstract"

    def __init__(self, objects, cofibrant=False, name=""):
        self.objects = objects if isinstance(objects, ObjectSet) else ObjectSet(tuple(objects))
        self.cofibrant = cofibrant
        self.name = name
        self._basis_cache = {}

    # -- keys ------------------------------------------------------------
    def identity(self, x):
        return (x, ())

    @staticmethod
    def is_identity(key):
        return not key[1]

    def src(self, key):
        return key[0]

    def tgt(self, key):  # pragma: no cover - abstract
        raise NotImplementedError

    def deg(self, key):  # pragma: no cover - abstract
        raise NotImplementedError

    def wt(self, key):  # pragma: no cover - abstract
        raise NotImplementedError

    def basis(self, x, y, d, w):
        """Deterministically ordered basis of A(x, y) in bidegree (d, w)."""
        ck = (x, y, d, w)
        b = self._basis_cache.get(ck)
        if b is None:
            b = tuple(self._enumerate(x, y, d, w))
            self._basis_cache[ck] = b
        return b

    def bidegrees(self, x, y, dmax, wmax):
        return [(d, w) for w in range(wmax + 1) for d in range(dmax + 1)
                if self.basis(x, y, d, w)]

    @property
    def degree_ratio(self):
        """Upper bound for degree/weight over non-identity basis elements."""
        raise NotImplementedError  # pragma: no cover

    def max_degree(self, w):
        return int(self.degree_ratio * w)

    def label(self, key):  # pragma: no cover - abstract
        raise NotImplementedError

    def element(self, terms):
        return MorElement(self, terms)

    def gen(self, name):  # pragma: no cover - overridden
        raise NotImplementedError


class SemiFree(Presentation):
    """Semi-free dg category: free on ``generators`` with ``differential``.

    ``differential`` maps a generator name to ``{word: coeff}`` where a
    word is a tuple of generator names (composition order) or the string
    ``"1"`` for the identity of the generator's source.
    """

    kind = "semifree"

    def __init__(self, objects, generators=(), differential=None, cofibrant=False, name=""):
        super().__init__(objects, cofibrant=cofibrant, name=name)
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be unique")
        self.gindex = {g.name: i for i, g in enumerate(self.generators)}
        self._gsrc = [self.objects.index(g.src) for g in self.generators]
        self._gtgt = [self.objects.index(g.tgt) for g in self.generators]
        self._gdeg = [g.degree for g in self.generators]
        self._gwt = [g.weight for g in self.generators]
        self.differential = dict(differential or {})
        for n in self.differential:
            if n not in self.gindex:
                raise PresentationError(f"differential of unknown generator {n!r}")
        self._gdiff = []
        for g in self.generators:
            terms = {}
            for word, c in self.differential.get(g.name, {}).items():
                add_into(terms, {self._word_key(word, g): Q(c)})
            self._gdiff.append(terms)
        self._diff_cache = {}

    def _word_key(self, word, g):
        if word == "1" or word == ():
            return (self.objects.index(g.src), ())
        letters = tuple(self.gindex[n] if isinstance(n, str) else n for n in word)
        for a, b in zip(letters, letters[1:]):
            if self._gsrc[a] != self._gtgt[b]:
                raise ObjectMismatch(f"word {word} in d({g.name}) is not composable")
        return (self._gsrc[letters[-1]], letters)

    def tgt(self, key):
        return self._gtgt[key[1][0]] if key[1] else key[0]

    def deg(self, key):
        return sum(self._gdeg[g] for g in key[1])

    def wt(self, key):
        return sum(self._gwt[g] for g in key[1])

    def gen(self, name):
        i = self.gindex[name]
        return MorElement(self, {(self._gsrc[i], (i,)): Q(1)})

    def gen_key(self, i):
        return (self._gsrc[i], (i,))

    def word(self, *names):
        letters = tuple(self.gindex[n] for n in names)
        if not letters:
            raise PresentationError("use identity() for the empty word")
        return MorElement(self, {self._word_key(letters, self.generators[letters[0]]): Q(1)})

    @property
    def degree_ratio(self):
        r = Q(0)
        for g in self.generators:
            if g.weight > 0:
                r = max(r, Q(g.degree, g.weight))
        return r

    def label(self, key):
        if not key[1]:
            return f"1_{self.objects.objects[key[0]]}"
        return "*".join(self.generators[g].name for g in key[1])

    def _enumerate(self, x, y, d, w):
        out = list(self._words(x, y, d, w))
        out.sort(key=lambda k: (len(k[1]), k[1]))
        return out

    def _words(self, x, y, d, w):
        if d < 0 or w < 0:
            return
        if x == y and d == 0 and w == 0:
            yield (x, ())
        for i in range(len(self.generators)):
            if self._gsrc[i] != x:
                continue
            gd, gw = self._gdeg[i], self._gwt[i]
            if gd > d or gw > w or (gd == 0 and gw == 0):
                continue
            for rest in self.basis(self._gtgt[i], y, d - gd, w - gw):
                yield (x, rest[1] + (i,))

    def mul(self, k1, k2):
        if k1[0] != self.tgt(k2):
            raise ObjectMismatch(f"cannot compose {self.label(k1)} after {self.label(k2)}")
        return {(k2[0], k1[1] + k2[1]): 1}

    def diff(self, key):
        r = self._diff_cache.get(key)
        if r is not None:
            return r
        letters = key[1]
        out = {}
        sign = 1
        for pos, g in enumerate(letters):
            left, right = letters[:pos], letters[pos + 1:]
            for (_, mid), c in self._gdiff[g].items():
                w = left + mid + right
                k = (self._gsrc[w[-1]], w) if w else (key[0], ())
                add_into(out, {k: sign * c})
            if self._gdeg[g] % 2:
                sign = -sign
        self._diff_cache[key] = out
        return out

    def is_triangular(self):
        for i, terms in enumerate(self._gdiff):
            for (_, w) in terms:
                if any(g >= i for g in w):
                    return False
        return True

    def validate(self, window=None):
        rep = CheckReport("validate_presentation", window={"kind": self.kind})
        for i, g in enumerate(self.generators):
            if g.adjoined:
                if (g.degree, g.weight) != (1, 0):
                    rep.fail(f"adjoined generator {g.name} must have (deg, wt) = (1, 0)")
            else:
                if g.degree < 0:
                    rep.fail(f"generator {g.name} has negative degree")
                if g.weight < 1:
                    rep.fail(f"generator {g.name} has weight {g.weight} < 1")
            for k, c in self._gdiff[i].items():
                lab = self.label(k)
                if k[0] != self._gsrc[i] or self.tgt(k) != self._gtgt[i]:
                    rep.fail(f"d({g.name}) term {lab} has wrong source/target")
                if self.deg(k) != g.degree - 1:
                    rep.fail(f"d({g.name}) term {lab} has degree {self.deg(k)}, expected {g.degree - 1}")
                if self.wt(k) != g.weight:
                    rep.fail(f"d({g.name}) term {lab} has weight {self.wt(k)}, expected {g.weight}")
            dd = {}
            for k, c in self._gdiff[i].items():
                add_into(dd, self.diff(k), c)
            if dd:
                rep.fail(f"d^2({g.name}) = {self.element(dd)} != 0")
        rep.tables["triangular"] = self.is_triangular()
        rep.tables["generators"] = len(self.generators)
        return rep


class FiniteDim(Presentation):
    """Finite-dimensional weight-graded dg category given by structure constants.

    ``basis_decl``: list of GeneratorDecl-like records for the non-identity
    basis elements. ``mult``: ``{(a, b): {c: coeff}}`` by basis names for
    ``a o b``; unlisted composable pairs multiply to zero. ``diff``:
    ``{a: {c: coeff}}``.
    """

    kind = "finitedim"

    def __init__(self, objects, basis_decl=(), mult=None, diff=None, cofibrant=False, name=""):
        super().__init__(objects, cofibrant=cofibrant, name=name)
        self.basis_decl = tuple(basis_decl)
        self.bindex = {b.name: i for i, b in enumerate(self.basis_decl)}
        if len(self.bindex) != len(self.basis_decl):
            raise PresentationError("basis names must be unique")
        self._bsrc = [self.objects.index(b.src) for b in self.basis_decl]
        self._btgt = [self.objects.index(b.tgt) for b in self.basis_decl]
        self.mult = {tuple(k): dict(v) for k, v in (mult or {}).items()}
        self.diff_table = dict(diff or {})
        self._mul = {}
        for (a, b), terms in self.mult.items():
            ia, ib = self.bindex[a], self.bindex[b]
            self._mul[(ia, ib)] = {self._bkey(self.bindex[c]): Q(v) for c, v in terms.items() if v}
        self._diff = {}
        for a, terms in self.diff_table.items():
            self._diff[self.bindex[a]] = {self._bkey(self.bindex[c]): Q(v) for c, v in terms.items() if v}

    def _bkey(self, i):
        return (self._bsrc[i], (i,))

    def tgt(self, key):
        return self._btgt[key[1][0]] if key[1] else key[0]

    def deg(self, key):
        return self.basis_decl[key[1][0]].degree if key[1] else 0

    def wt(self, key):
        return self.basis_decl[key[1][0]].weight if key[1] else 0

    def gen(self, name):
        return MorElement(self, {self._bkey(self.bindex[name]): Q(1)})

    @property
    def degree_ratio(self):
        r = Q(0)
        for b in self.basis_decl:
            if b.weight > 0:
                r = max(r, Q(b.degree, b.weight))
        return r

    def label(self, key):
        if not key[1]:
            return f"1_{self.objects.objects[key[0]]}"
        return self.basis_decl[key[1][0]].name

    def _enumerate(self, x, y, d, w):
        out = []
        if x == y and d == 0 and w == 0:
            out.append((x, ()))
        for i, b in enumerate(self.basis_decl):
            if self._bsrc[i] == x and self._btgt[i] == y and b.degree == d and b.weight == w:
                out.append((x, (i,)))
        return out

    def mul(self, k1, k2):
        if k1[0] != self.tgt(k2):
            raise ObjectMismatch(f"cannot compose {self.label(k1)} after {self.label(k2)}")
        if not k1[1]:
            return {k2: 1}
        if not k2[1]:
            return {k1: 1}
        return self._mul.get((k1[1][0], k2[1][0]), {})

    def diff(self, key):
        if not key[1]:
            return {}
        return self._diff.get(key[1][0], {})

    def validate(self, window=None):
        rep = CheckReport("validate_presentation", window={"kind": self.kind})
        n = len(self.basis_decl)
        for i, b in enumerate(self.basis_decl):
            if b.degree < 0:
                rep.fail(f"basis element {b.name} has negative degree")
            if b.weight < 1:
                rep.fail(f"basis element {b.name} has weight {b.weight} < 1 (not weight-connected)")
        keys = [self._bkey(i) for i in range(n)]
        for (ia, ib), terms in self._mul.items():
            ka, kb = keys[ia], keys[ib]
            if ka[0] != self.tgt(kb):
                rep.fail(f"structure constant for non-composable pair {self.label(ka)}*{self.label(kb)}")
                continue
            for kc in terms:
                if kc[0] != kb[0] or self.tgt(kc) != self.tgt(ka) or \
                        self.deg(kc) != self.deg(ka) + self.deg(kb) or \
                        self.wt(kc) != self.wt(ka) + self.wt(kb):
                    rep.fail(f"{self.label(ka)}*{self.label(kb)} -> {self.label(kc)} breaks the grading")
        for i, terms in self._diff.items():
            ka = keys[i]
            for kc in terms:
                if kc[0] != ka[0] or self.tgt(kc) != self.tgt(ka) or \
                        self.deg(kc) != self.deg(ka) - 1 or self.wt(kc) != self.wt(ka):
                    rep.fail(f"d({self.label(ka)}) term {self.label(kc)} breaks the grading")
        # associativity, d^2, Leibniz on all composable basis triples/pairs
        for ka in keys:
            dd = {}
            for k, c in self.diff(ka).items():
                add_into(dd, self.diff(k), c)
            if dd:
                rep.fail(f"d^2({self.label(ka)}) != 0")
        for ka in keys:
            for kb in keys:
                if ka[0] != self.tgt(kb):
                    continue
                ab = self.mul(ka, kb)
                lhs = {}
                for k, c in ab.items():
                    add_into(lhs, self.diff(k), c)
                rhs = {}
                for k, c in self.diff(ka).items():
                    for k2, c2 in self.mul(k, kb).items():
                        add_into(rhs, {k2: c * c2})
                s = -1 if self.deg(ka) % 2 else 1
                for k, c in self.diff(kb).items():
                    for k2, c2 in self.mul(ka, k).items():
                        add_into(rhs, {k2: s * c * c2})
                if lhs != rhs:
                    rep.fail(f"Leibniz fails on {self.label(ka)}*{self.label(kb)}")
                for kc in keys:
                    if kb[0] != self.tgt(kc):
                        continue
                    left, right = {}, {}
                    for k, c in ab.items():
                        add_into(left, self.mul(k, kc), c)
                    for k, c in self.mul(kb, kc).items():
                        add_into(right, self.mul(ka, k), c)
                    if left != right:
                        rep.fail(f"associativity fails on ({self.label(ka)},{self.label(kb)},{self.label(kc)})")
        rep.tables["basis"] = n
        return rep


def validate_presentation(A: Presentation) -> CheckReport:
    return A.validate()


def enumerate_basis(A: Presentation, x, y, d, w):
    """Basis keys of A(x, y) in bidegree (d, w); objects by name or index."""
    xi = x if isinstance(x, int) else A.objects.index(x)
    yi = y if isinstance(y, int) else A.objects.index(y)
    return list(A.basis(xi, yi, d, w))


class MorElement:
    """A Q-linear combination of basis morphisms with common (src, tgt, d, w)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: Q(v) for k, v in terms.items() if v}
        keys = list(self.terms)
        if keys:
            k0 = keys[0]
            sig = (alg.src(k0), alg.tgt(k0), alg.deg(k0), alg.wt(k0))
            for k in keys[1:]:
                if (alg.src(k), alg.tgt(k), alg.deg(k), alg.wt(k)) != sig:
                    raise PresentationError("MorElement terms must share src, tgt, degree and weight")

    def _sig(self, i):
        if not self.terms:
            return None
        k = next(iter(self.terms))
        return (self.alg.src, self.alg.tgt, self.alg.deg, self.alg.wt)[i](k)

    src = property(lambda self: self._sig(0))
    tgt = property(lambda self: self._sig(1))
    degree = property(lambda self: self._sig(2))
    weight = property(lambda self: self._sig(3))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, MorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        return MorElement(self.alg, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        return MorElement(self.alg, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return MorElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return MorElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (len(k[1]), k[1], k[0])):
            c = self.terms[k]
            parts.append(f"{c}*{self.alg.label(k)}" if c != 1 else self.alg.label(k))
        return " + ".join(parts)


def identity(A: Presentation, x) -> MorElement:
    xi = x if isinstance(x, int) else A.objects.index(x)
    return MorElement(A, {A.identity(xi): 1})


def compose(f: MorElement, g: MorElement) -> MorElement:
    """f o g (g first)."""
    A = f.alg
    out = {}
    for kf, cf in f.terms.items():
        for kg, cg in g.terms.items():
            if kf[0] != A.tgt(kg):
                raise ObjectMismatch(f"source of {A.label(kf)} is not the target of {A.label(kg)}")
            add_into(out, A.mul(kf, kg), cf * cg)
    return MorElement(A, out)


def differential(f: MorElement) -> MorElement:
    out = {}
    for k, c in f.terms.items():
        add_into(out, f.alg.diff(k), c)
    return MorElement(f.alg, out)


def adjoin_t(A: Presentation) -> SemiFree:
    """A<t_O>: adjoin t_x of degree 1, weight 0 with d(t_x) = 1_x."""
    if not isinstance(A, SemiFree):
        raise NotSemiFree("adjoin_t needs a semi-free presentation")
    gens = list(A.generators)
    diff = {g.name: {tuple(A.generators[i].name for i in w) if w else "1": c
                     for (s, w), c in A._gdiff[j].items()}
            for j, g in enumerate(A.generators)}
    taken = {g.name for g in gens}
    for x in A.objects:
        name = f"t_{x}"
        while name in taken:
            name += "'"
        taken.add(name)
        gens.append(GeneratorDecl(name, x, x, 1, 0, adjoined=True))
        diff[name] = {"1": 1}
    return SemiFree(A.objects, gens, diff, cofibrant=A.cofibrant, name=f"{A.name}<t>")


def k_objects(A_or_objects) -> SemiFree:
    """kO: the presentation with no generators on the same object set."""
    objs = A_or_objects.objects if isinstance(A_or_objects, Presentation) else A_or_objects
    return SemiFree(objs, (), {}, cofibrant=True, name="kO")


# -- naturalization -----------------------------------------------------------

class NaturalizedSpace:
    """A_natural: diagonal morphisms modulo graded commutators.

    ``project`` sends ``{key: coeff}`` (keys in A(x, x)) to coordinates on
    ``basis(d, w)``. Semi-free presentations use signed rotation orbits of
    cyclic words; FiniteDim presentations use an exact linear quotient.
    """

    def __init__(self, A: Presentation):
        self.A = A
        self._rep = {}
        self._lin = {}
        self._basis = {}

    # semi-free: rotate the last letter to the front
    def _orbit_rep(self, key):
        r = self._rep.get(key)
        if r is not None:
            return r
        A = self.A
        letters = key[1]
        if not letters:
            self._rep[key] = (1, key)
            return self._rep[key]
        degs = [A._gdeg[g] for g in letters]
        total = sum(degs)
        cur, sign = letters, 1
        seen = {cur: 1}
        while True:
            last = cur[-1]
            dl = A._gdeg[last]
            if dl % 2 and (total - dl) % 2:
                sign = -sign
            cur = (last,) + cur[:-1]
            if cur in seen:
                killed = seen[cur] != sign
                break
            seen[cur] = sign
        if killed:
            for w in seen:
                self._rep[(A._gsrc[w[-1]], w)] = (0, None)
        else:
            rep = min(seen)
            srep = seen[rep]
            for w, s in seen.items():
                # class(w) = s_w * class(start) and class(rep) = s_rep * class(start)
                self._rep[(A._gsrc[w[-1]], w)] = (s * srep, (A._gsrc[rep[-1]], rep))
        return self._rep[key]

    def _linear(self, d, w):
        q = self._lin.get((d, w))
        if q is not None:
            return q
        from .linalg import rref
        A = self.A
        n = len(A.objects)
        space = [k for x in range(n) for k in A.basis(x, x, d, w)]
        index = {k: i for i, k in enumerate(space)}
        rels = []
        for x in range(n):
            for y in range(n):
                for d1 in range(d + 1):
                    for w1 in range(w + 1):
                        for f in A.basis(x, y, d1, w1):
                            for xi in A.basis(y, x, d - d1, w - w1):
                                s = -1 if (A.deg(f) * A.deg(xi)) % 2 else 1
                                rel = {}
                                add_into(rel, A.mul(xi, f))
                                add_into(rel, A.mul(f, xi), -s)
                                if rel:
                                    # pivot on the largest index so that small keys survive as representatives
                                    rels.append({len(space) - 1 - index[k]: c for k, c in rel.items()})
        prows, pcols = rref(rels, len(space))
        pivset = {len(space) - 1 - c for c in pcols}
        reps = [k for i, k in enumerate(space) if i not in pivset]
        q = (space, index, prows, pcols, reps)
        self._lin[(d, w)] = q
        return q

    def basis(self, d, w):
        b = self._basis.get((d, w))
        if b is not None:
            return b
        A = self.A
        if isinstance(A, SemiFree):
            reps = set()
            for x in range(len(A.objects)):
                for k in A.basis(x, x, d, w):
                    s, r = self._orbit_rep(k)
                    if s:
                        reps.add(r)
            b = tuple(sorted(reps, key=lambda k: (len(k[1]), k[1], k[0])))
        else:
            b = tuple(self._linear(d, w)[4])
        self._basis[(d, w)] = b
        return b

    def project(self, terms):
        A = self.A
        out = {}
        if isinstance(A, SemiFree):
            for k, c in terms.items():
                s, r = self._orbit_rep(k)
                if s:
                    add_into(out, {r: s * c})
            return out
        bydeg = {}
        for k, c in terms.items():
            bydeg.setdefault((A.deg(k), A.wt(k)), {})[k] = c
        for (d, w), part in bydeg.items():
            space, index, prows, pcols, reps = self._linear(d, w)
            n = len(space)
            vec = {n - 1 - index[k]: Q(c) for k, c in part.items()}
            for prow, pc in zip(prows, pcols):
                if pc in vec:
                    f = vec[pc]
                    add_into(vec, prow, -f)
            for i, c in vec.items():
                add_into(out, {space[n - 1 - i]: c})
        return out

    def quotient_map(self, f: MorElement):
        return self.project(f.terms)


def naturalize(A: Presentation) -> NaturalizedSpace:
    return NaturalizedSpace(A)
