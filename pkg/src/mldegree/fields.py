"""Exact coefficient fields: the rationals and prime fields Z/p."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A coefficient field.

    ``p == 0`` means the rationals (elements are :class:`fractions.Fraction`),
    otherwise elements are ints in ``[0, p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x):
        """Coerce an int, Fraction or field element into this field."""
        p = self.p
        if p == 0:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, (int, Rational)):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, int):
            return x % p
        if isinstance(x, (Fraction, Rational)):
            num, den = x.numerator, x.denominator
            if den % p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        raise FieldError(f"cannot coerce {x!r} into GF({p})")

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        return a / b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def format(self, a) -> str:
        return str(a)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
