"""Sparse multivariate polynomials over QQ or GF(p)."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence
from numbers import Rational

from .fields import QQ, Field


class RingError(ValueError):
    pass


_RINGS: dict = {}


class Ring:
    """Polynomial ring k[x_0, ..., x_{n-1}].

    ``weights`` are the pairing weights of the coordinates: the linear form
    with dual coordinates ``s`` evaluates as ``sum(w_i * s_i * x_i)``.  They are
    all 1 for plain coordinates and 2 on off-diagonal entries of a space of
    symmetric matrices (trace pairing).
    """

    def __new__(cls, names: Sequence[str], field: Field = QQ, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")
        weights = tuple(Fraction(w) for w in weights) if weights is not None else (Fraction(1),) * len(names)
        if len(weights) != len(names):
            raise RingError("one pairing weight per variable expected")
        key = (names, field, weights)
        ring = _RINGS.get(key)
        if ring is None:
            ring = super().__new__(cls)
            ring.names = names
            ring.field = field
            ring.weights = weights
            ring.nvars = len(names)
            ring._index = {name: i for i, name in enumerate(names)}
            ring._zero_exp = (0,) * len(names)
            _RINGS[key] = ring
        return ring

    def __getnewargs__(self):
        return (self.names, self.field, self.weights)

    def __repr__(self):
        return f"Ring({', '.join(self.names)}; {self.field!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)}, _trusted=True)

    @property
    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c else {}, _trusted=True)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring is self:
                return x
            return x.to_ring(self)
        return self.const(x)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.names, field, self.weights)

    def extend(self, names: Sequence[str], weights=None) -> "Ring":
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return Ring(self.names + tuple(names), self.field, self.weights + tuple(Fraction(w) for w in weights))

    def fresh_name(self, base: str) -> str:
        name, k = base, 0
        while name in self._index:
            k += 1
            name = f"{base}{k}"
        return name

    def linear_form(self, coeffs) -> "Polynomial":
        f = self.field
        terms = {}
        for i, c in enumerate(coeffs):
            c = f(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms, _trusted=True)


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order given as a weight matrix.

    kind is one of ``grevlex``, ``lex``, ``block`` (``blocks``: tuple of index
    tuples, each block ordered by grevlex, earlier blocks eliminated first) or
    ``weighted`` (``weights`` refined by grevlex).
    """

    kind: str = "grevlex"
    blocks: tuple = ()
    weights: tuple = ()

    def rows(self, nvars: int) -> list[list[int]]:
        if self.kind == "grevlex":
            return _grevlex_rows(list(range(nvars)), nvars)
        if self.kind == "lex":
            return [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        if self.kind == "weighted":
            if len(self.weights) != nvars or any(w < 0 for w in self.weights):
                raise RingError("weighted order needs one non-negative weight per variable")
            return [list(self.weights)] + _grevlex_rows(list(range(nvars)), nvars)
        if self.kind == "block":
            seen = [i for b in self.blocks for i in b]
            if sorted(seen) != list(range(nvars)):
                raise RingError("blocks must partition the variables")
            rows = []
            for b in self.blocks:
                rows.extend(_grevlex_rows(list(b), nvars))
            return rows
        raise RingError(f"unknown monomial order {self.kind!r}")

    def key(self, nvars: int):
        rows = self.rows(nvars)

        def k(e):
            return tuple(sum(r[i] * e[i] for i in range(nvars)) for r in rows)

        return k


def _grevlex_rows(idx: list[int], nvars: int) -> list[list[int]]:
    rows = []
    for k in range(len(idx), 0, -1):
        r = [0] * nvars
        for i in idx[:k]:
            r[i] = 1
        rows.append(r)
    return rows


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(first: Iterable[int], nvars: int) -> MonomialOrder:
    """Elimination order: variables in ``first`` dominate the rest."""
    first = sorted(set(first))
    rest = [i for i in range(nvars) if i not in first]
    blocks = tuple(b for b in (tuple(first), tuple(rest)) if b)
    return MonomialOrder("block", blocks=blocks)


_add = operator.add


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms=None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        f = ring.field
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise RingError(f"bad exponent vector {e} for {ring}")
            c = f(c)
            if c:
                clean[e] = c
        self.terms = clean

    # ---- basic predicates -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in sorted(out.items())}

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        s = set()
        for e in self.terms:
            s.update(i for i, x in enumerate(e) if x)
        return s

    def variables(self) -> list[str]:
        return [self.ring.names[i] for i in sorted(self.support())]

    # ---- arithmetic -------------------------------------------------------
    @staticmethod
    def _foreign(other) -> bool:
        """Operands of other types (e.g. rational functions) handle the operation."""
        return not isinstance(other, (Polynomial, int, Rational))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        p = self.ring.field.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Polynomial(self.ring, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _trusted=True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, _trusted=True)
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if self._foreign(other):
            return NotImplemented
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        p = self.ring.field.p
        t: dict = {}
        get = t.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(_add, e1, e2))
                t[e] = get(e, 0) + c1 * c2
        if p:
            t = {e: c % p for e, c in t.items() if c % p}
        else:
            t = {e: c for e, c in t.items() if c}
        return Polynomial(self.ring, t, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise RingError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring is other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except Exception:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # ---- calculus and evaluation -----------------------------------------
    def derivative(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.ring.index(i)
        f = self.ring.field
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c2 = f(c * k)
                if c2:
                    e2 = e[:i] + (k - 1,) + e[i + 1:]
                    t[e2] = c2
        return Polynomial(self.ring, t, _trusted=True)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(i) for i in range(self.ring.nvars)]

    def evaluate(self, point: Sequence):
        """Exact value at a point given as a sequence of field elements."""
        ring = self.ring
        if len(point) != ring.nvars:
            raise RingError(f"point has {len(point)} coordinates, ring has {ring.nvars} variables")
        f = ring.field
        pt = [f(x) for x in point]
        p = f.p
        total = f(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * (pow(x, k, p) if p else x ** k)
            total = total + v
        return total % p if p else total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose with polynomial images of the variables (all in one ring)."""
        ring = self.ring
        if len(images) != ring.nvars:
            raise RingError(f"expected {ring.nvars} images, got {len(images)}")
        target = None
        for im in images:
            if isinstance(im, Polynomial):
                target = im.ring
                break
        if target is None:
            raise RingError("substitution needs at least one polynomial image")
        ims = [target(im) for im in images]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = ims[i] ** k if k < 2 else power(i, k - 1) * ims[i]
            return cache[key]

        f = target.field
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(f(c))
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # ---- ring changes -----------------------------------------------------
    def to_ring(self, target: Ring) -> "Polynomial":
        """Re-express in ``target`` by variable names (and coerce coefficients)."""
        if target is self.ring:
            return self
        idx = []
        for i in sorted(self.support()):
            name = self.ring.names[i]
            if name not in target:
                raise RingError(f"variable {name!r} not in {target}")
            idx.append((i, target.index(name)))
        f = target.field
        t = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, j in idx:
                ne[j] = e[i]
            c2 = f(c)
            if c2:
                t[tuple(ne)] = c2
        return Polynomial(target, t, _trusted=True)

    def map_field(self, field: Field) -> "Polynomial":
        return self.to_ring(self.ring.with_field(field))

    # ---- ordering and printing -------------------------------------------
    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        key = order.key(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        key = order.key(self.ring.nvars)
        return max(self.terms.items(), key=lambda t: key(t[0]))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _monomial_str(names, e) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(poly: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text: terms in descending order, explicit ``*`` and ``^``."""
    if not poly.terms:
        return "0"
    names = poly.ring.names
    out = []
    for e, c in poly.sorted_terms(order):
        neg = not poly.ring.field.p and c < 0
        a = -c if neg else c
        mono = _monomial_str(names, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def content_normalize(poly: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Scale a polynomial to a canonical representative of its class up to units.

    Over QQ: integer coefficients with gcd 1 and positive leading coefficient.
    Over GF(p): monic.
    """
    if not poly.terms:
        return poly
    if poly.ring.field.p:
        return poly.monic(order)
    from math import gcd, lcm

    den = 1
    for c in poly.terms.values():
        den = lcm(den, c.denominator)
    g = 0
    for c in poly.terms.values():
        g = gcd(g, int(c * den))
    lc = poly.leading_coefficient(order)
    s = Fraction(den, g) * (1 if lc > 0 else -1)
    return poly.scale(s)
