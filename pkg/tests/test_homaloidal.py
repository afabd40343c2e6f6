import pytest

from mldegree import HomaloidalSolution, associated_variety, pde_check, phi_from_alpha, phi_join
from mldegree.homaloidal import PDEError, grad_log

from helpers import load


def test_pde_for_twisted_cubic_dual():
    s, _ = load("twisted_cubic_dual")
    F, phi = s.get("F", "function"), s.bindings["Phi"]
    assert pde_check(F, phi)
    assert pde_check(F, phi * 2) is False
    ok, why = pde_check(F, phi, explain=True)
    assert ok and why == "identity holds"


def test_pde_for_determinant():
    s, _ = load("conic_mld1_S2")
    assert pde_check(s.get("F", "function"), s.bindings["Phi"])
    # Phi = 1/det S solves the PDE for det on all of S^2
    assert pde_check(s.space.det(), _inverse(s.space.det(dual=True)))


def _inverse(p):
    from mldegree import RationalFn
    return RationalFn(p.ring.one(), p)


def test_pde_rejects_mismatched_rings():
    s, _ = load("conic_mld1_S2")
    t, _ = load("twisted_cubic_dual")
    with pytest.raises(PDEError):
        pde_check(s.get("F", "function"), t.bindings["Phi"])


def test_grad_log_of_monomial():
    s, _ = load("join_corner")
    (g,) = grad_log(s.bindings["Phi"])
    assert str(g) == "(-1)/(s33)"


def test_phi_from_alpha():
    s, _ = load("cuspidal_cubic")
    sol = phi_from_alpha(s.get("g", "function").num, s.get("alpha", "function").num, s.space)
    assert str(sol.phi) == "(216*v^2)/(4*u^3 - 54*u*v^2 + 27*v^2*w)"
    assert sol.verify() and sol.provenance == "from-alpha"


def test_phi_from_alpha_requires_high_multiplicity():
    s, _ = load("cuspidal_cubic")
    u = s.space.primal.var("x")
    with pytest.raises(PDEError, match="multiplicity"):
        phi_from_alpha(s.get("g", "function").num, u, s.space)


def test_join():
    a, _ = load("join_block")
    b, _ = load("join_corner")
    t, _ = load("join_target")
    sx = HomaloidalSolution(a.bindings["Phi"], a.get("F", "function"), a.space)
    sy = HomaloidalSolution(b.bindings["Phi"], b.get("F", "function"), b.space)
    j = phi_join(sx, sy)
    assert j.space.primal.names == ("k11", "k12", "k22", "k33")
    assert str(j.phi) == str(t.bindings["Phi"])
    with pytest.raises(PDEError):
        phi_join(sx, sx)


def test_degree_mismatch_is_rejected():
    s, _ = load("conic_mld1_S2")
    with pytest.raises(PDEError):
        HomaloidalSolution(s.bindings["Phi"] ** 2, s.get("F", "function"), s.space)


def test_associated_variety_recovers_the_curve():
    s, X = load("conic_mld1_S2")
    A = associated_variety(s.bindings["Phi"], s.space.primal)
    assert A.equals(X.ideal)
