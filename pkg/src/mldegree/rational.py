"""Homogeneous rational functions f/g and their gradients."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from .polynomial import Polynomial, Ring, RingError, content_normalize


# ---- multivariate gcd over QQ (delegated to sympy) ------------------------

def _to_sympy(p: Polynomial, gens):
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, gens, domain=sympy.QQ)


def _from_sympy(sp, ring: Ring) -> Polynomial:
    terms = {}
    for e, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = Fraction(int(c.p), int(c.q))
    return Polynomial(ring, terms)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor over QQ, normalized to be monic (grevlex)."""
    if a.ring is not b.ring:
        raise RingError("gcd of polynomials from different rings")
    ring = a.ring
    if not ring.field.is_rational:
        raise RingError("gcd is only available over QQ")
    if not a:
        return b.monic() if b else b
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return ring.one()
    gens = sympy.symbols(f"z0:{ring.nvars}")
    g = _from_sympy(sympy.gcd(_to_sympy(a, gens), _to_sympy(b, gens)), ring)
    return g.monic()


def poly_gcd_list(polys: Sequence[Polynomial]) -> Polynomial:
    polys = [p for p in polys if p]
    if not polys:
        raise RingError("gcd of an empty list")
    g = polys[0].monic()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def exact_quotient(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b, required to be exact."""
    ring = a.ring
    if b.is_constant():
        return a.scale(ring.field.inv(b.constant_value()))
    gens = sympy.symbols(f"z0:{ring.nvars}")
    q, r = sympy.div(_to_sympy(a, gens), _to_sympy(b, gens))
    if not r.is_zero:
        raise ValueError("division is not exact")
    return _from_sympy(q, ring)


# ---- rational functions ---------------------------------------------------

class RationalFn:
    """A quotient num/den of polynomials in one ring.

    Over QQ the pair is reduced by the gcd on construction and scaled so that
    the denominator is monic; over a prime field only the scaling is applied.
    Equality is decided by cross-multiplication, so it is correct either way.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduce: bool = True):
        ring = num.ring
        den = ring.one() if den is None else ring(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and ring.field.is_rational and not den.is_constant() and num:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = exact_quotient(num, g), exact_quotient(den, g)
        if not num:
            den = ring.one()
        # canonical scaling: primitive integer denominator with positive
        # leading coefficient over QQ, monic denominator over GF(p)
        lc = den.leading_coefficient()
        if ring.field.is_rational:
            canon = content_normalize(den)
            k = canon.leading_coefficient() / lc
        else:
            k = ring.field.inv(lc)
        if k != 1:
            num, den = num.scale(k), den.scale(k)
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @classmethod
    def coerce(cls, x, ring: Ring | None = None) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, Polynomial):
            return cls(x, reduce=False)
        if ring is None:
            raise TypeError(f"cannot coerce {x!r} without a ring")
        return cls(ring.const(x), reduce=False)

    # ---- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_homogeneous(self) -> bool:
        return self.num.is_homogeneous() and self.den.is_homogeneous()

    def degree(self) -> int:
        """deg(num) - deg(den); meaningful for homogeneous functions."""
        if not self.num:
            raise ValueError("the zero function has no degree")
        return self.num.degree() - self.den.degree()

    # ---- arithmetic -------------------------------------------------------
    def _other(self, other) -> "RationalFn":
        o = RationalFn.coerce(other, self.ring)
        if o.ring is not self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {o.ring}")
        return o

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFn(self.den ** (-k), self.num ** (-k), reduce=False)
        return RationalFn(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, (RationalFn, Polynomial, int, Fraction)):
            return NotImplemented
        o = self._other(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    # ---- calculus and evaluation -----------------------------------------
    def derivative(self, i) -> "RationalFn":
        f, g = self.num, self.den
        if g.is_constant():
            return RationalFn(f.derivative(i), g, reduce=False)
        return RationalFn(g * f.derivative(i) - f * g.derivative(i), g * g)

    def evaluate(self, point: Sequence):
        field = self.ring.field
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return field.div(self.num.evaluate(point), d)

    def substitute(self, images: Sequence) -> "RationalFn":
        """Compose with rational (or polynomial) images of the variables."""
        ims = [RationalFn.coerce(x) for x in images]
        if not ims:
            raise RingError("empty substitution")
        target = ims[0].ring
        exact = target.field.is_rational
        D = target.one()
        for x in ims:
            if not x.den.is_constant():
                D = D * (exact_quotient(x.den, poly_gcd(D, x.den)) if exact else x.den)
        N = [x.num * _cofactor(D, x.den) for x in ims]
        return compose_cleared(self, N, D)

    def to_ring(self, ring: Ring) -> "RationalFn":
        return RationalFn(self.num.to_ring(ring), self.den.to_ring(ring), reduce=False)

    def map_field(self, field) -> "RationalFn":
        return RationalFn(self.num.map_field(field), self.den.map_field(field), reduce=False)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"


def _cofactor(D: Polynomial, d: Polynomial) -> Polynomial:
    """D / d for a divisor d of D."""
    if d.is_constant():
        return D.scale(D.ring.field.inv(d.constant_value()))
    if D.ring.field.is_rational:
        return exact_quotient(D, d)
    raise RingError("substitution with rational images needs QQ coefficients")


def compose_cleared(F: RationalFn, N: Sequence[Polynomial], D: Polynomial) -> RationalFn:
    """F(N/D) where every image shares the denominator D."""
    target = D.ring
    num_p = F.num.substitute(list(N)) if F.num else target.zero()
    den_p = F.den.substitute(list(N))
    if F.is_homogeneous() and F.num:
        k = F.num.degree() - F.den.degree()
        if k >= 0:
            return RationalFn(num_p, den_p * D ** k)
        return RationalFn(num_p * D ** (-k), den_p)
    # general case: homogenize term by term
    def cleared(p: Polynomial):
        d = max(p.degree(), 0)
        out = target.zero()
        for deg, comp in p.homogeneous_components().items():
            out = out + comp.substitute(list(N)) * D ** (d - deg)
        return out, d

    a, da = cleared(F.num)
    b, db = cleared(F.den)
    if da >= db:
        return RationalFn(a, b * D ** (da - db))
    return RationalFn(a * D ** (db - da), b)


def gradient(F, weighted: bool = True) -> list[RationalFn]:
    """Gradient of F.  With ``weighted`` the i-th partial is divided by the
    ring's pairing weight, i.e. the symmetric-matrix convention
    (1/(2 - delta_ij)) dF/dk_ij; for plain rings the weights are 1.
    """
    F = RationalFn.coerce(F)
    ring = F.ring
    f, g = F.num, F.den
    out = []
    gsq = g * g
    for i in range(ring.nvars):
        w = ring.weights[i] if weighted else 1
        if g.is_constant():
            out.append(RationalFn(f.derivative(i).scale(ring.field.inv(ring.field(w))), g, reduce=False))
        else:
            top = g * f.derivative(i) - f * g.derivative(i)
            if w != 1:
                top = top.scale(ring.field.inv(ring.field(w)))
            out.append(RationalFn(top, gsq))
    return out


def cleared_gradient(F: RationalFn) -> list[Polynomial]:
    """The plain partials of F with the denominator g^2 cleared: g*df - f*dg."""
    f, g = F.num, F.den
    return [g * f.derivative(i) - f * g.derivative(i) for i in range(F.ring.nvars)]


def euler_check(F) -> bool:
    """sum_i x_i dF/dx_i == deg(F) * F, as an exact identity.

    Degree-zero functions are rejected: they never arise as likelihood
    functions.
    """
    F = RationalFn.coerce(F)
    if F.is_zero():
        raise ValueError("the zero function has no degree")
    if not F.is_homogeneous():
        return False
    d = F.degree()
    if d == 0:
        raise ValueError("F must have nonzero degree")
    ring = F.ring
    # sum x_i (g f_i - f g_i) == d f g   (cleared by g^2)
    lhs = ring.zero()
    for i, comp in enumerate(cleared_gradient(F)):
        lhs = lhs + ring.var(i) * comp
    return lhs == (F.num * F.den).scale(d)


def require_likelihood(F) -> RationalFn:
    """Validate a likelihood function: homogeneous with nonzero degree."""
    F = RationalFn.coerce(F)
    if F.is_zero():
        raise ValueError("F must be nonzero")
    if not F.is_homogeneous():
        raise ValueError(f"F must be homogeneous: {F}")
    if F.degree() == 0:
        raise ValueError("F must have nonzero degree")
    return F
