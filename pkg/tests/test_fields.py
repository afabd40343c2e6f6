from fractions import Fraction

import pytest

from mldegree import GF, QQ
from mldegree.fields import FieldError, is_prime


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(32003)
    assert is_prime(2**31 - 1)
    assert not is_prime(32001)


def test_rational_coercion():
    assert QQ(3) == Fraction(3)
    assert QQ(Fraction(1, 2)) == Fraction(1, 2)
    assert QQ.is_rational
    with pytest.raises(FieldError):
        QQ(0.5)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(10) == 3
    assert F(-1) == 6
    assert F(Fraction(1, 2)) == 4           # 2 * 4 = 8 = 1 mod 7
    assert F.inv(3) == 5
    assert F.div(1, 3) == 5
    assert F.neg(2) == 5
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_denominator_divisible_by_p():
    with pytest.raises(FieldError):
        GF(5)(Fraction(1, 10))


def test_composite_modulus_rejected():
    with pytest.raises(FieldError):
        GF(15)


def test_equality_and_hash():
    assert GF(32003) == GF(32003)
    assert GF(5) != GF(7)
    assert GF(5) != QQ
    assert len({GF(5), GF(5), QQ}) == 2
    assert repr(QQ) == "QQ" and repr(GF(5)) == "GF(5)"
