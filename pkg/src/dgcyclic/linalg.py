"""Exact sparse linear algebra over Q.

Ranks go through an integer elimination kernel (compiled when available,
see ``KERNEL``); kernels and quotient reductions use Fraction row echelon
forms. Nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

try:
    from ._ckernels import rank_int_rows as _rank_int_rows
    KERNEL = "cython"
except ImportError:  # pragma: no cover - depends on build
    from ._pykernels import rank_int_rows as _rank_int_rows
    KERNEL = "python"

from ._pykernels import rank_int_rows as _py_rank_int_rows


class LinalgError(Exception):
    pass


class DimensionMismatch(LinalgError):
    pass


class CompositionNotZero(LinalgError):
    pass


def _q(v):
    return v if isinstance(v, Fraction) else Fraction(v)


class SparseMatrix:
    """Immutable sparse matrix with rational entries.

    ``entries`` maps (row, col) to a nonzero Fraction. Zero values passed
    to the constructor are dropped.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"entry ({i},{j}) outside {rows}x{cols}")
            if v:
                clean[(i, j)] = _q(v)
        self.entries = clean
        self._hash = None

    @classmethod
    def from_dense(cls, data, cols=None):
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        ent = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(len(data), ncols, ent)

    @classmethod
    def from_columns(cls, rows, columns):
        """Build from a list of sparse columns ({row: value})."""
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = v
        return cls(rows, len(columns), ent)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self.entries.items())))
        return self._hash

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + v
        return SparseMatrix(self.rows, self.cols, ent)

    def __neg__(self):
        return SparseMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _q(c)
        return SparseMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        orows = other.row_dicts()
        ent = {}
        for (i, k), v in self.entries.items():
            for j, w in orows[k].items():
                ent[(i, j)] = ent.get((i, j), 0) + v * w
        return SparseMatrix(self.rows, other.cols, ent)

    def apply(self, vec):
        """Multiply by a sparse column vector ({index: value})."""
        out = {}
        cols = self.col_dicts()
        for j, x in vec.items():
            for i, v in cols[j].items():
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}


def _integer_rows(m: SparseMatrix):
    rows = []
    for r in m.row_dicts():
        if not r:
            continue
        den = 1
        for v in r.values():
            den = lcm(den, v.denominator)
        rows.append({j: int(v * den) for j, v in r.items()})
    return rows


def rank(m: SparseMatrix, kernel=None) -> int:
    """Rank over Q. ``kernel`` overrides the elimination routine."""
    if not m.entries:
        return 0
    # eliminate along the shorter side
    src = m if m.rows <= m.cols else m.transpose()
    fn = kernel or _rank_int_rows
    return fn(_integer_rows(src))


def rank_python(m: SparseMatrix) -> int:
    return rank(m, kernel=_py_rank_int_rows)


def rref(rows, ncols):
    """Reduced row echelon form of sparse Fraction rows.

    Returns (pivot_rows, pivot_cols) where pivot_rows[k] has a 1 at
    pivot_cols[k] and zeros in every other pivot column.
    """
    pivots = {}  # col -> row dict
    order = []
    for r in rows:
        r = {c: _q(v) for c, v in r.items() if v}
        for c, prow in pivots.items():
            if c in r:
                f = r[c]
                for cc, vv in prow.items():
                    nv = r.get(cc, 0) - f * vv
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for c, prow in pivots.items():
            if pc in prow:
                f = prow[pc]
                for cc, vv in r.items():
                    nv = prow.get(cc, 0) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[pc] = r
        order.append(pc)
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def kernel_basis(m: SparseMatrix):
    """Basis of the right kernel, as dense lists of Fractions."""
    prows, pcols = rref(m.row_dicts(), m.cols)
    pset = set(pcols)
    basis = []
    for free in range(m.cols):
        if free in pset:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in zip(prows, pcols):
            if free in r:
                v[pc] = -r[free]
        basis.append(v)
    return basis


def in_span(rows, vec) -> bool:
    """Exact membership of a sparse vector in the row span of ``rows``."""
    prows, pcols = rref(rows, None)
    r = {c: _q(v) for c, v in vec.items() if v}
    for prow, pc in zip(prows, pcols):
        if pc in r:
            f = r[pc]
            for cc, vv in prow.items():
                nv = r.get(cc, 0) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
    return not r


def homology_dim(d_in: SparseMatrix, d_out: SparseMatrix, check=True) -> int:
    """dim ker(d_out) - rank(d_in) for  . -d_in-> V -d_out-> .  ."""
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(
            f"d_in targets a {d_in.rows}-dim space but d_out starts from {d_out.cols}")
    if check and d_in.entries and d_out.entries and not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out . d_in != 0")
    return d_out.cols - rank(d_out) - rank(d_in)


class GradedDims(dict):
    """Map (degree, weight) -> dimension; missing keys read as zero."""

    def __missing__(self, key):
        return 0

    def nonzero(self):
        return {k: v for k, v in sorted(self.items()) if v}
