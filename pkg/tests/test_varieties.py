import pytest

from mldegree.groebner import ideal_dimension

from mldegree import GF, VarietySpec, dual_variety, gradient_multidegrees, multiplicity_at_point, polar_degrees
from mldegree.varieties import (conormal, f_general_emptiness, gradient_graph, perturb, singular_locus)

from helpers import load


def test_codimension_and_validation(S2):
    k11, k12, k22 = S2.primal.gens
    X = VarietySpec(S2, [k11 * k22 - k12**2 - k11**2])
    assert X.codim() == 1 and X.dimension() == 1 and X.n == 2
    with pytest.raises(ValueError):
        VarietySpec(S2, [k11 + 1])
    with pytest.raises(ValueError):
        VarietySpec(S2, [S2.primal.one()])


def test_singular_locus(S2):
    k11, k12, k22 = S2.primal.gens
    smooth = VarietySpec(S2, [k11 * k22 - k12**2])
    assert ideal_dimension(singular_locus(smooth)) == 0       # irrelevant ideal
    _, cusp = load("cuspidal_cubic")
    assert ideal_dimension(singular_locus(cusp)) == 1         # one projective point


def test_polar_degrees_of_plane_curves():
    _, X = load("cubic_S2")
    assert polar_degrees(X, seed=3).entries == (6, 3)
    _, C = load("generic_conic_S2")
    assert polar_degrees(C, seed=3).entries == (2, 2)


def test_polar_degrees_do_not_depend_on_seed():
    _, X = load("twisted_cubic")
    assert polar_degrees(X, seed=1) == polar_degrees(X, seed=2)


def test_gradient_multidegrees():
    s, _ = load("det_S3")
    assert gradient_multidegrees(s.get("F", "function"), seed=4).entries == (1, 2, 4, 4, 2, 1)
    s, _ = load("quadric_P2")
    assert list(gradient_multidegrees(s.get("F", "function"), seed=4)) == [1, 1, 1]


def test_dual_of_cuspidal_cubic():
    s, X = load("cuspidal_cubic")
    D = dual_variety(X)
    assert D.equals(type(D)([s.get("g", "function").num], D.ring))


def test_multiplicity():
    s, _ = load("cuspidal_cubic")
    g = s.get("g", "function").num
    assert multiplicity_at_point(g, [0, 0, 1]) == 2
    assert multiplicity_at_point(g, [1, 0, 0]) == 0


def test_witness_pair_in_conormal_and_gradient_graph():
    # X is tangent to V(det) at diag(0, 1) with tangent line V(k11)
    s, X = load("conic_mld1_S2")
    W = conormal(X)
    G = gradient_graph(s.get("F", "function"), s.space)
    point = [0, 0, 1, 1, 0, 0]          # (k11, k12, k22, s11, s12, s22)
    assert all(g.evaluate(point) == 0 for g in W.gens)
    assert all(g.evaluate(point) == 0 for g in G.gens)


def test_f_general():
    s, X = load("conic_mld1_S2")
    F = s.get("F", "function")
    assert f_general_emptiness(X, F) is False
    assert f_general_emptiness(perturb(X, 3), F) is True


def test_perturb_identity_is_noop():
    _, X = load("conic_mld1_S2")
    assert perturb(X, 5, identity=True).ideal.equals(X.ideal)
    Y = perturb(X, 5)
    assert Y.codim() == 1 and Y.gens[0].degree() == 2


def test_modular_reduction():
    _, X = load("cubic_S2")
    Xp = X.with_field(GF(101))
    assert Xp.ring.field == GF(101) and Xp.codim() == 1
