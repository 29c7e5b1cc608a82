import pytest

from dgcyclic.checkreport import FAIL, INFO, PASS, SKIP
from dgcyclic.complexes import Builders, LinearMap, WindowTooSmall
from dgcyclic.io import parse_input
from dgcyclic.theorems import (Maps, check_chain_map, check_cone_iso, check_feigin_tsygan, check_hodge_theorem,
                               check_homotopy, check_master_diagram, check_periodicity, check_pi_qiso, check_sbi,
                               is_quasi_iso)


def find(rep, name):
    if rep.check == name:
        return rep
    for c in rep.children:
        hit = find(c, name)
        if hit is not None:
            return hit
    return None


def names(rep):
    out = [rep.check]
    for c in rep.children:
        out += names(c)
    return out


@pytest.mark.parametrize("name", ["F", "Q"])
def test_homotopy(name, request):
    rep = check_homotopy(request.getfixturevalue(name), 3, (0, 6), (0, 3))
    assert rep.verdict == PASS, str(rep)
    assert len(rep.children) == 3


@pytest.mark.parametrize("name", ["F", "Q"])
def test_pi_quasi_iso(name, request):
    rep = check_pi_qiso(request.getfixturevalue(name), (2, 3), (-1, 6), (0, 3))
    assert rep.verdict == PASS, str(rep)


@pytest.mark.parametrize("name", ["K", "F", "Q", "A2"])
def test_master_diagram(name, request):
    rep = check_master_diagram(request.getfixturevalue(name), 2, (-1, 5), (0, 2))
    assert rep.verdict == PASS, str(rep)


def test_master_diagram_lemmas_are_reported_individually(Q):
    rep = check_master_diagram(Q, 3, (-1, 5), (0, 2))
    for sub in ("lemma CH_X_B_commute", "left square", "right square", "outer square", "lemma Xn_X_B_commute",
                "square n=3", "pi.B = 4B.pi (n=3)"):
        assert find(rep, sub) is not None and find(rep, sub).verdict == PASS, sub


def test_master_diagram_on_finite_dim_skips_the_X_side(D):
    rep = check_master_diagram(D, 3, (-1, 5), (0, 3))
    assert rep.passed
    assert find(rep, "rows 1-2 (CC, C^lambda, C^H)").verdict == PASS
    assert any(find(rep, n).verdict == SKIP for n in names(rep))


@pytest.mark.parametrize("name", ["K", "F", "Q"])
def test_feigin_tsygan(name, request):
    rep = check_feigin_tsygan(request.getfixturevalue(name), (-1, 6), (0, 4))
    assert rep.verdict == PASS, str(rep)


@pytest.mark.parametrize("name", ["K", "F", "Q"])
def test_cone_isomorphism(name, request):
    rep = check_cone_iso(request.getfixturevalue(name), (0, 6), (0, 3))
    assert rep.verdict == PASS, str(rep)


def test_hodge_on_free_algebra(F):
    rep = check_hodge_theorem(F, None, (0, 1, 2), (-8, 8), (0, 3))
    assert rep.verdict == PASS, str(rep)
    assert find(rep, "part (2) r=0: F^r Xtot vs CN u^r").verdict == INFO


def test_hodge_with_a_genuine_resolution(Q3, D):
    rep = check_hodge_theorem(Q3, D, (1, 2), (-8, 8), (0, 3))
    assert rep.verdict == PASS, str(rep)


def test_hodge_flags_a_non_resolution(Q, D):
    # Q stops after two cells, so H(Q) still carries xy - yx in (1, 3)
    rep = check_hodge_theorem(Q, D, (1,), (-8, 8), (0, 3))
    assert rep.verdict == FAIL
    hyp = find(rep, "hypothesis: H(Q) = H(target)")
    assert hyp.verdict == FAIL and "(1,3)" in hyp.witnesses[0]


def test_sbi(F, Q, Q3):
    for A in (F, Q, Q3):
        rep = check_sbi(A, (-8, 8), (0, 3))
        assert rep.verdict == PASS, str(rep)
        assert find(rep, "ladders coincide").verdict == PASS


def test_periodicity(Q):
    assert check_periodicity(Builders(Q).CP(), (-4, 4), (0, 3)).passed


def test_gates(D):
    assert check_homotopy(D, 2, (0, 4), (0, 2)).verdict == SKIP
    assert check_sbi(D, (0, 4), (0, 2)).verdict == SKIP
    loose = parse_input("objects: pt\ncofibrant: no\nx: pt->pt deg=0 wt=1\n").to_presentation()
    rep = check_feigin_tsygan(loose, (-1, 4), (0, 2))
    assert rep.verdict == SKIP and "cofibran" in rep.reason


def test_quasi_iso_detects_the_zero_map(F):
    b = Builders(F)
    zero = LinearMap(b.CC(), b.clambda(), lambda k: {}, 0, "zero")
    assert check_chain_map(zero, (0, 3), (0, 2)).passed
    assert is_quasi_iso(zero, (-1, 3), (0, 2)).verdict == FAIL
    assert is_quasi_iso(Maps(F).CC_to_Clambda(), (-1, 4), (0, 3)).verdict == PASS


def test_quasi_iso_needs_an_interior(F):
    with pytest.raises(WindowTooSmall):
        is_quasi_iso(Maps(F).CC_to_Clambda(), (0, 1), (0, 2))


def test_report_structure(F):
    rep = check_homotopy(F, 1, (0, 3), (0, 1))
    d = rep.to_dict()
    assert d["check"] == "homotopy" and d["window"]["degrees"] == [0, 3]
    assert "[PASS] homotopy" in str(rep)
