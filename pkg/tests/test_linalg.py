from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dgcyclic import linalg
from dgcyclic.linalg import (CompositionNotZero, DimensionMismatch, GradedDims, SparseMatrix, homology_dim,
                             in_span, kernel_basis, rank, rank_python)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=7):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    ent = draw(st.dictionaries(st.tuples(st.integers(0, max(r - 1, 0)), st.integers(0, max(c - 1, 0))),
                               fractions, max_size=r * c))
    return SparseMatrix(r, c, ent if r and c else {})


def sym(m):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m.entries.get((i, j), 0)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    expect = sym(m).rank() if m.rows and m.cols else 0
    assert rank(m) == expect
    assert rank_python(m) == expect


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == m.cols
    for v in ker:
        assert m.apply({j: x for j, x in enumerate(v) if x}) == {}


@settings(max_examples=60, deadline=None)
@given(matrices(5), matrices(5))
def test_product_rank_bound(a, b):
    if a.cols != b.rows:
        with pytest.raises(DimensionMismatch):
            a @ b
        return
    assert rank(a @ b) <= min(rank(a), rank(b))


@settings(max_examples=80, deadline=None)
@given(matrices(6), st.lists(fractions, min_size=6, max_size=6))
def test_in_span_of_combination(m, coeffs):
    rows = m.row_dicts()
    vec = {}
    for r, c in zip(rows, coeffs):
        for j, v in r.items():
            vec[j] = vec.get(j, 0) + c * v
    assert in_span(rows, vec)


def test_in_span_negative():
    assert not in_span([{0: 1, 1: 1}], {0: 1})
    assert in_span([], {})


def test_entries_are_exact_and_zero_free():
    m = SparseMatrix(2, 2, {(0, 0): Fraction(1, 3), (1, 1): 0})
    assert m.entries == {(0, 0): Fraction(1, 3)}
    assert m.scale(3).entries == {(0, 0): 1}
    with pytest.raises(DimensionMismatch):
        SparseMatrix(1, 1, {(1, 0): 1})


def test_homology_dim_of_circle():
    # simplicial circle: 3 vertices, 3 edges
    d1 = SparseMatrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    assert homology_dim(d1, SparseMatrix.zero(0, 3)) == 1
    assert homology_dim(SparseMatrix.zero(3, 0), d1) == 1


def test_homology_dim_errors():
    with pytest.raises(DimensionMismatch):
        homology_dim(SparseMatrix.zero(2, 1), SparseMatrix.zero(1, 3))
    d = SparseMatrix.identity(2)
    with pytest.raises(CompositionNotZero):
        homology_dim(d, d)


def test_graded_dims_defaults():
    g = GradedDims({(0, 1): 2, (1, 1): 0})
    assert g[(5, 5)] == 0
    assert g.nonzero() == {(0, 1): 2}


def test_kernel_choice_is_reported():
    assert linalg.KERNEL in ("cython", "python")
