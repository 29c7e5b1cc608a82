from fractions import Fraction

import pytest

from dgcyclic.presentation import (FiniteDim, GeneratorDecl, NotSemiFree, ObjectMismatch, PresentationError,
                                   SemiFree, adjoin_t, compose, differential, enumerate_basis, identity,
                                   k_objects, naturalize, validate_presentation)


def gen(name, deg, wt, src="pt", tgt="pt"):
    return GeneratorDecl(name, src, tgt, deg, wt)


def test_curated_models_validate(K, F, Q, Q3, D, A2):
    for A in (K, F, Q, Q3, D, A2):
        rep = validate_presentation(A)
        assert rep.passed, rep.witnesses


def test_triangular_inputs_are_cofibrant(Q, Q3, D):
    assert Q.is_triangular() and Q.cofibrant
    assert Q3.cofibrant
    assert not D.cofibrant


def test_free_algebra_basis_counts(F, Q):
    assert [len(F.basis(0, 0, 0, w)) for w in range(5)] == [1, 1, 1, 1, 1]
    # weight 4 of Q: xxxx (d=0), three words with one y (d=1), yy (d=2)
    assert [len(Q.basis(0, 0, d, 4)) for d in range(3)] == [1, 3, 1]
    assert enumerate_basis(Q, "pt", "pt", 1, 2) == [(0, (1,))]


def test_leibniz_signs_in_free_algebra(Q3):
    x, y, z = Q3.gen("x"), Q3.gen("y"), Q3.gen("z")
    assert differential(y) == compose(x, x)
    # d(yy) = x x y - y x x (y is odd)
    yy = compose(y, y)
    assert differential(yy) == compose(compose(x, x), y) - compose(y, compose(x, x))
    assert differential(differential(compose(z, y))) == 0


def test_composition_checks_objects(A2):
    f, g = A2.gen("f"), A2.gen("g")
    assert compose(g, f).src == A2.objects.index("a")
    with pytest.raises(ObjectMismatch):
        compose(f, f)
    assert compose(identity(A2, "b"), f) == f


def test_validation_catches_bad_differential():
    bad_deg = SemiFree(["pt"], [gen("x", 0, 1), gen("y", 2, 1)], {"y": {("x",): 1}})
    assert not validate_presentation(bad_deg).passed
    not_square_zero = SemiFree(["pt"], [gen("x", 0, 1), gen("y", 1, 2), gen("z", 2, 2)],
                               {"y": {("x", "x"): 1}, "z": {("y",): 1}})
    rep = validate_presentation(not_square_zero)
    assert not rep.passed and any("d^2(z)" in w for w in rep.witnesses)
    weightless = SemiFree(["pt"], [gen("x", 0, 0)])
    assert not validate_presentation(weightless).passed


def test_validation_catches_nonassociative_finitedim():
    B = FiniteDim(["pt"], [gen("e", 0, 1), gen("f", 0, 2), gen("g", 0, 3)],
                  {("e", "e"): {"f": 1}, ("e", "f"): {"g": 1}})
    rep = validate_presentation(B)
    assert not rep.passed and any("associativity" in w for w in rep.witnesses)


def test_unknown_names_raise():
    with pytest.raises(PresentationError):
        SemiFree(["pt"], [gen("x", 0, 1)], {"q": {("x",): 1}})
    with pytest.raises(PresentationError):
        SemiFree(["pt"], [gen("x", 0, 1), gen("x", 1, 1)])


def test_naturalization_dimensions(F, Q, D, A2):
    assert [len(naturalize(F).basis(0, w)) for w in range(5)] == [1] * 5
    nq = naturalize(Q)
    # yy is killed by its signed rotation
    assert [len(nq.basis(d, 4)) for d in range(3)] == [1, 1, 0]
    assert len(naturalize(D).basis(0, 1)) == 1
    na = naturalize(A2)
    assert len(na.basis(0, 0)) == 2  # one identity per object
    assert len(na.basis(0, 2)) == 1  # gf ~ fg


def test_naturalization_identifies_rotations(Q):
    nq = naturalize(Q)
    x, y = Q.gen("x"), Q.gen("y")
    xxy = compose(compose(x, x), y)
    yxx = compose(y, compose(x, x))
    assert nq.quotient_map(xxy) == nq.quotient_map(yxx)
    assert nq.quotient_map(xxy) != {}


def test_adjoin_t(F, D):
    Ft = adjoin_t(F)
    t = Ft.gen("t_pt")
    assert differential(t) == identity(Ft, "pt")
    assert validate_presentation(Ft).passed
    with pytest.raises(NotSemiFree):
        adjoin_t(D)


def test_k_objects(A2):
    K = k_objects(A2)
    assert K.objects.objects == A2.objects.objects
    assert K.generators == ()
    assert [len(K.basis(0, 0, 0, w)) for w in range(3)] == [1, 0, 0]


def test_morelement_arithmetic(Q):
    x = Q.gen("x")
    s = Fraction(3, 2) * x - x
    assert s.terms == {next(iter(x.terms)): Fraction(1, 2)}
    with pytest.raises(PresentationError):
        x + Q.gen("y")
