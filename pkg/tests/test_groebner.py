import itertools

import pytest

from mldegree import GF, Budget, Ideal, PositiveDimensional, ResourceExhausted, Ring
from mldegree.groebner import (buchberger, degree_zero_dim, eliminate, ideal_dimension, intersect,
                               localized_degree, radical_membership, saturate, saturate_principal)
from mldegree.polynomial import LEX


def _s_pairs_reduce(G):
    """Buchberger's criterion, checked independently of the engine."""
    gens = G.basis
    for f, g in itertools.combinations(gens, 2):
        (ef, cf), (eg, cg) = f.leading_term(G.order), g.leading_term(G.order)
        lcm = tuple(max(a, b) for a, b in zip(ef, eg))
        R = f.ring
        mf = R.const(R.field.inv(cf)) * _mono(R, tuple(a - b for a, b in zip(lcm, ef)))
        mg = R.const(R.field.inv(cg)) * _mono(R, tuple(a - b for a, b in zip(lcm, eg)))
        if G.normal_form(mf * f - mg * g):
            return False
    return True


def _mono(R, e):
    from mldegree import Polynomial
    return Polynomial(R, {e: 1})


def test_reduced_basis_small(xyz):
    x, y, z = xyz
    G = buchberger([x**2 - y, y**2 - x], LEX)
    assert [str(g) for g in G.basis] == ["y^4 - y", "-y^2 + x"]
    assert _s_pairs_reduce(G)


def test_membership_and_normal_form(xyz):
    x, y, z = xyz
    I = Ideal([x * y - z, y**2 - 1], x.ring)
    assert I.contains(x * y**3 - z * y**2)
    assert not I.contains(x)
    G = I.groebner()
    assert G.normal_form(x * y - z + x) == G.normal_form(x)


def test_unit_ideal(xyz):
    x, y, _ = xyz
    I = Ideal([x, x + 1], x.ring)
    assert I.is_unit()


def test_degree_and_dimension(xyz):
    x, y, z = xyz
    R = x.ring
    assert degree_zero_dim(Ideal([x**2 - y, y**2 - x, z - 1], R)) == 4
    assert ideal_dimension(Ideal([x * y], R)) == 2
    with pytest.raises(PositiveDimensional):
        degree_zero_dim(Ideal([x * y, z], R))


def test_localized_degree(xyz):
    x, y, z = xyz
    R = x.ring
    # four solutions, one of which (x = y = 0) is removed by the localizer
    I = Ideal([x**2 - y, y**2 - x, z - 1], R)
    assert localized_degree(I, x) == 3


def test_elimination_implicitizes_twisted_cubic(xyz):
    x, y, z = xyz
    E = eliminate(Ideal([x - y**2, z - y**3], x.ring), [1])
    assert [str(g) for g in E.gens] == ["x^3 - z^2"]


def test_saturation(xyz):
    x, y, z = xyz
    R = x.ring
    J = saturate_principal(Ideal([x * y, x * z], R), x)
    assert J.equals(Ideal([y, z], R))
    K = saturate(Ideal([x**2 * y, x * z], R), Ideal([x], R))
    assert K.equals(Ideal([y, z], R))
    assert saturate_principal(J, x).equals(J)


def test_intersection(xyz):
    x, y, _ = xyz
    R = x.ring
    assert intersect(Ideal([x], R), Ideal([y], R)).equals(Ideal([x * y], R))


def test_radical_membership(xyz):
    x, y, _ = xyz
    R = x.ring
    assert radical_membership(x, Ideal([x**3, y], R))
    assert not radical_membership(x + y**2, Ideal([x**2], R))


def test_katsura3_oracle():
    R = Ring(["a", "b", "c", "d"], GF(32003))
    a, b, c, d = R.gens
    eqs = [a + 2 * b + 2 * c + 2 * d - 1,
           a**2 + 2 * b**2 + 2 * c**2 + 2 * d**2 - a,
           2 * a * b + 2 * b * c + 2 * c * d - b,
           b**2 + 2 * a * c + 2 * b * d - c]
    G = buchberger(eqs)
    assert _s_pairs_reduce(G)
    assert degree_zero_dim(Ideal(eqs, R)) == 8
    assert degree_zero_dim(Ideal(buchberger(eqs, LEX).basis, R)) == 8


def test_budget_is_enforced():
    R = Ring(["a", "b", "c", "d"], GF(32003))
    a, b, c, d = R.gens
    eqs = [a + 2 * b + 2 * c + 2 * d - 1, a**2 + 2 * b**2 + 2 * c**2 + 2 * d**2 - a,
           2 * a * b + 2 * b * c + 2 * c * d - b, b**2 + 2 * a * c + 2 * b * d - c]
    with pytest.raises(ResourceExhausted):
        buchberger(eqs, budget=Budget(5))


def test_shared_budget_accumulates():
    R = Ring(["a", "b", "c"], GF(32003))
    a, b, c = R.gens
    budget = Budget(None)
    buchberger([a**2 + b * c - 1, b**2 + a * c - 1, c**2 + a * b - 1], budget=budget)
    used = budget.used
    buchberger([a**2 + b * c - 2, b**2 + a * c - 3, c**2 + a * b - 5], budget=budget)
    assert budget.used > used > 0
