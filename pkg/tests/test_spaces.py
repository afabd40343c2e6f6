from fractions import Fraction

import pytest

from mldegree import plain_space, sym_space


def test_symmetric_coordinates(S2):
    assert S2.primal.names == ("k11", "k12", "k22")
    assert S2.dual.names == ("s11", "s12", "s22")
    assert S2.weights == (1, 2, 1)
    assert S2.dim == 3 and S2.is_symmetric


def test_trace_pairing(S2):
    # tr([[1,2],[2,3]] [[4,5],[5,6]]) = 4 + 10 + 10 + 18
    assert S2.pairing([1, 2, 3], [4, 5, 6]) == 42


def test_dual_point_of_a_form(S2):
    k12 = S2.primal.var("k12")
    assert S2.dual_point(k12) == [0, Fraction(1, 2), 0]
    assert S2.form_of([0, Fraction(1, 2), 0]) == k12


def test_matrices(S2):
    assert str(S2.det()) == "-k12^2 + k11*k22"
    assert [[str(e) for e in row] for row in S2.adj()] == [["k22", "-k12"], ["-k12", "k11"]]
    assert str(S2.det(dual=True)) == "-s12^2 + s11*s22"
    assert S2.trace_form([[1, 0], [0, 0]]) == S2.primal.var("k11")
    assert S2.coordinates_of([[1, 2], [2, 3]]) == [1, 2, 3]


def test_coordinate_subspace():
    V = sym_space(3, positions=[(1, 1), (0, 0), (1, 0)])
    assert V.primal.names == ("k11", "k12", "k22")
    assert V.weights == (1, 2, 1)
    with pytest.raises(ValueError):
        sym_space(2, positions=[(0, 2)])


def test_transfer_between_rings(S2):
    p = S2.primal.var("k11") * S2.primal.var("k22")
    assert str(S2.to_dual(p)) == "s11*s22"
    assert S2.to_primal(S2.to_dual(p)) == p


def test_plain_space():
    P = plain_space(["a", "b"])
    assert P.dual.names == ("u_a", "u_b")
    assert P.weights == (1, 1)
    assert not P.is_symmetric
    with pytest.raises(ValueError):
        plain_space(["a", "b"], dual_names=["b", "c"])
    with pytest.raises(ValueError):
        plain_space(["a"], dual_names=["u", "v"])
