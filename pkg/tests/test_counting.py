import random

import pytest

from mldegree import GF, PositiveDimensional, Ring
from mldegree.counting import (TrialDisagreement, agreeing_count, count_points, eliminate_linear,
                               random_form)

R = Ring(["a", "b", "c"], GF(101))
a, b, c = R.gens


def test_linear_equations_are_substituted():
    sub, rest, kept = eliminate_linear([a + b - 1, a**2 - b], [c])
    assert sub.nvars == 2
    assert len(rest) == 1 and rest[0].degree() == 2


def test_inconsistent_linear_part():
    assert eliminate_linear([a - 1, a - 2]) is None
    assert count_points([a - 1, a - 2, b**2]) == 0


def test_counts_with_and_without_localizer():
    eqs = [a**2 - 1, b - a, c - 3]
    assert count_points(eqs) == 2
    assert count_points(eqs, a - 1) == 1
    assert count_points([a**2, b, c]) == 2      # with multiplicity


def test_positive_dimensional():
    with pytest.raises(PositiveDimensional):
        count_points([a * b, c])


def test_agreeing_count_is_deterministic():
    v1, s1 = agreeing_count(lambda rng: 7, seed=11)
    v2, s2 = agreeing_count(lambda rng: 7, seed=11)
    assert v1 == v2 == 7 and s1 == s2 and len(s1) == 3


def test_disagreeing_trials_are_reported():
    with pytest.raises(TrialDisagreement) as info:
        agreeing_count(lambda rng: rng.randrange(2), seed=1, trials=3)
    assert "retry" in str(info.value)


def test_random_form_uses_requested_variables():
    f = random_form(R, [0, 2], random.Random(0))
    assert f.is_homogeneous() and f.degree() == 1
    assert f.support() <= {0, 2}
