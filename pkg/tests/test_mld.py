import pytest

from mldegree import (MLProblem, RationalFn, classify_curve_mld1, mld_compute, mld_polar_formula,
                      pde_check, s2_family)
from mldegree.mld import gauss_adjoined_plane, product_formula_check

from helpers import load


def _mld(name, seed=5, F=None):
    s, X = load(name)
    return mld_compute(MLProblem(X, F if F is not None else s.get("F", "function")), seed=seed).value


@pytest.mark.parametrize("name, value", [
    ("cubic_S2", 9),
    ("generic_conic_S2", 4),
    ("conic_mld1_S2", 1),
    ("cuspidal_cubic", 1),
])
def test_mld_values(name, value):
    assert _mld(name) == value


def test_mld_depends_on_divisor_only():
    s, X = load("cubic_S2")
    F = s.get("F", "function")
    assert _mld("cubic_S2", F=F * F) == _mld("cubic_S2", F=F)
    assert _mld("cubic_S2", F=RationalFn(F.ring.one(), F.num)) == 9


@pytest.mark.parametrize("name", ["cubic_S2", "generic_conic_S2", "conic_mld1_S2"])
def test_polar_formula_is_an_upper_bound(name):
    s, X = load(name)
    F = s.get("F", "function")
    bound = mld_polar_formula(X, F, seed=2)
    assert _mld(name) <= bound.value
    if bound.f_general["empty"]:
        assert bound.status == "equality-expected"
        assert _mld(name) == bound.value


def test_not_f_general_gives_strict_bound():
    s, X = load("conic_mld1_S2")
    rep = mld_polar_formula(X, s.get("F", "function"), seed=2)
    assert rep.status == "upper-bound" and rep.value == 4


def test_report_metadata():
    s, X = load("cubic_S2")
    rep = mld_compute(MLProblem(X, s.get("F", "function")), seed=9, check_slice=True)
    assert rep.method == "direct" and rep.prime == 32003
    assert len(rep.seeds) == 3 and rep.details["slice_invariant"]
    assert rep == mld_compute(MLProblem(X, s.get("F", "function")), seed=9, check_slice=True)


def test_classification_implies_mld_one_and_pde():
    for name in ("conic_mld1_S2", "cuspidal_cubic"):
        s, X = load(name)
        F = s.get("F", "function")
        c = classify_curve_mld1(X, F)
        assert c.verdict
        assert _mld(name) == 1
        assert pde_check(F, c.phi)


def test_classification_rejects_generic_conic():
    s, X = load("generic_conic_S2")
    c = classify_curve_mld1(X, s.get("F", "function"))
    assert not c.verdict and c.reason


def test_gauss_image_and_product_formula():
    s, X = load("cubic_S2")
    F = s.get("F", "function")
    G = gauss_adjoined_plane(X, F, seed=1)
    assert G.image_degree * G.map_degree == 9
    assert product_formula_check(X, F, seed=1)


def test_s2_family():
    X, phi = s2_family([[1, 0], [0, 0]])
    assert [str(g) for g in X.gens] == ["-k11^2 - k12^2 + k11*k22"]
    assert pde_check(X.space.det(), phi)
    with pytest.raises(ValueError, match="rank"):
        s2_family([[1, 0], [0, 1]])
