"""Engine output against the standalone brute-force scripts in tests/oracles."""
import pytest

from dgcyclic.complexes import Builders
from dgcyclic.presentation import k_objects, naturalize
from dgcyclic.theorems import reduced

from .oracles import free_algebra


@pytest.mark.parametrize("w", range(0, 5))
def test_hochschild_of_free_algebra(F, w):
    H = Builders(F).hochschild()
    assert [H.homology(d, w) for d in range(0, 5)] == free_algebra.hochschild_dims(w, 4)


@pytest.mark.parametrize("w", range(0, 5))
def test_cyclic_of_free_algebra(F, w):
    b = Builders(F)
    expect = free_algebra.cyclic_dims(w, 4)
    assert [b.CC().homology(d, w) for d in range(0, 5)] == expect
    assert [b.clambda().homology(d, w) for d in range(0, 5)] == expect


@pytest.mark.parametrize("w", range(0, 5))
def test_cone_over_unit_of_natural(F, w):
    rhs = reduced(Builders(k_objects(F)).natural(), Builders(F).natural())
    assert {d: rhs.homology(d, w) for d in range(-1, 3)} == free_algebra.cone_unit_natural_dims(w, -1, 2)


def test_naturalization_counts(F):
    assert [len(naturalize(F).basis(0, w)) for w in range(5)] == [free_algebra.natural_dim(w) for w in range(5)]


def test_oracle_closed_forms():
    # the scripts themselves reproduce the textbook answers
    for w in range(1, 5):
        assert free_algebra.hochschild_dims(w, 3) == [1, 1, 0, 0]
        assert free_algebra.cyclic_dims(w, 3) == [1, 0, 0, 0]
    assert free_algebra.cyclic_dims(0, 4) == [1, 0, 1, 0, 1]
