"""Buchberger engine, normal forms, elimination, saturation, dimension, degree.

Monomials are packed into single Python ints so that multiplication is
integer addition, the monomial order is integer comparison and divisibility
is one subtraction plus a mask test.  The packed fields are the rows of the
order's weight matrix followed by the exponents themselves and the total
degree; each field carries a guard bit.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import gmpy2

from .polynomial import GREVLEX, MonomialOrder, Polynomial, Ring, RingError, block_order

DEFAULT_BUDGET = 10**7
FIELD_BITS = 16
_MASK = (1 << FIELD_BITS) - 1


class ResourceExhausted(RuntimeError):
    """The reduction-step budget ran out."""


class PositiveDimensional(ValueError):
    """A zero-dimensional ideal was required."""


class Budget:
    """Shared reduction-step counter; one instance may span several computations."""

    def __init__(self, limit: int | None = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise ResourceExhausted(f"reduction budget of {self.limit} steps exhausted")


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


class _Encoding:
    def __init__(self, nvars: int, order: MonomialOrder):
        rows = order.rows(nvars)
        rows = rows + [[int(i == j) for j in range(nvars)] for i in range(nvars)] + [[1] * nvars]
        nf = len(rows)
        self.nvars = nvars
        self.cols = [sum(r[i] << (FIELD_BITS * (nf - 1 - k)) for k, r in enumerate(rows)) for i in range(nvars)]
        self.guard = sum(1 << (FIELD_BITS * k + FIELD_BITS - 1) for k in range(nf))
        self.shifts = [FIELD_BITS * (nvars - i) for i in range(nvars)]

    def pack(self, e) -> int:
        m = 0
        for k, c in zip(e, self.cols):
            if k:
                m += k * c
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & _MASK for s in self.shifts)

    def lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def coprime(self, a: int, b: int) -> bool:
        return all(not (x and y) for x, y in zip(self.unpack(a), self.unpack(b)))


class _Engine:
    """Mutable Buchberger state over one ring and order."""

    def __init__(self, ring: Ring, order: MonomialOrder, budget: Budget):
        self.ring = ring
        self.order = order
        self.enc = _Encoding(ring.nvars, order)
        self.p = ring.field.p
        self.budget = budget
        self.polys: list[tuple[list, list]] = []
        self.lms: list[int] = []
        self.sugar: list[int] = []
        self.active: list[bool] = []
        self.cache: dict = {}

    # ---- conversion -------------------------------------------------------
    def to_internal(self, poly: Polynomial):
        pack = self.enc.pack
        if self.p:
            items = [(pack(e), c) for e, c in poly.terms.items()]
        else:
            items = [(pack(e), gmpy2.mpq(c.numerator, c.denominator)) for e, c in poly.terms.items()]
        items.sort(reverse=True)
        return [m for m, _ in items], [c for _, c in items]

    def to_poly(self, monos, coeffs) -> Polynomial:
        unpack = self.enc.unpack
        if self.p:
            terms = {unpack(m): c for m, c in zip(monos, coeffs)}
        else:
            terms = {unpack(m): Fraction(int(c.numerator), int(c.denominator)) for m, c in zip(monos, coeffs)}
        return Polynomial(self.ring, terms, _trusted=True)

    def monic(self, monos, coeffs):
        lc = coeffs[0]
        if self.p:
            if lc != 1:
                inv = pow(lc, -1, self.p)
                coeffs = [c * inv % self.p for c in coeffs]
        elif lc != 1:
            coeffs = [c / lc for c in coeffs]
        return monos, coeffs

    # ---- reduction --------------------------------------------------------
    def find_reducer(self, m: int):
        lms, active, guard = self.lms, self.active, self.guard_val
        hit = self.cache.get(m)
        start = 0
        if hit is not None:
            k, checked = hit
            if k >= 0 and active[k]:
                return k
            start = 0 if k >= 0 else checked
        for k in range(start, len(lms)):
            if active[k] and ((m + guard - lms[k]) & guard) == guard:
                self.cache[m] = (k, k)
                return k
        self.cache[m] = (-1, len(lms))
        return None

    @property
    def guard_val(self):
        return self.enc.guard

    def reduce(self, acc: dict, full: bool = True):
        """Reduce the polynomial held in ``acc`` (mono -> coeff); returns lists."""
        p = self.p
        acc = {m: c for m, c in acc.items() if c}
        heap = [-m for m in acc]
        heapq.heapify(heap)
        rem_m, rem_c = [], []
        polys = self.polys
        push, pop = heapq.heappush, heapq.heappop
        steps = 0
        while heap:
            m = -pop(heap)
            c = acc.pop(m, 0)
            if not c:
                continue
            k = self.find_reducer(m)
            if k is None:
                rem_m.append(m)
                rem_c.append(c)
                if not full:
                    rest = sorted(((mo, co) for mo, co in acc.items() if co), reverse=True)
                    rem_m.extend(mo for mo, _ in rest)
                    rem_c.extend(co for _, co in rest)
                    break
                continue
            gm, gc = polys[k]
            shift = m - gm[0]
            steps += 1
            if p:
                for i in range(1, len(gm)):
                    t = gm[i] + shift
                    v = acc.get(t)
                    if v is None:
                        acc[t] = (-c * gc[i]) % p
                        push(heap, -t)
                    else:
                        acc[t] = (v - c * gc[i]) % p
            else:
                for i in range(1, len(gm)):
                    t = gm[i] + shift
                    v = acc.get(t)
                    if v is None:
                        acc[t] = -c * gc[i]
                        push(heap, -t)
                    else:
                        acc[t] = v - c * gc[i]
            if steps >= 1000:
                self.budget.spend(steps)
                steps = 0
        self.budget.spend(steps)
        return rem_m, rem_c

    def spoly(self, i: int, j: int, lcm: int) -> dict:
        p = self.p
        acc: dict = {}
        gm, gc = self.polys[i]
        s = lcm - gm[0]
        for k in range(1, len(gm)):
            acc[gm[k] + s] = gc[k]
        gm, gc = self.polys[j]
        s = lcm - gm[0]
        get = acc.get
        for k in range(1, len(gm)):
            t = gm[k] + s
            v = get(t)
            if p:
                acc[t] = ((v or 0) - gc[k]) % p
            else:
                acc[t] = (v or 0) - gc[k]
        return acc

    # ---- Buchberger -------------------------------------------------------
    def add(self, monos, coeffs, sugar: int, pairs: list):
        """Insert a new monic element, updating pairs (Gebauer-Moeller)."""
        enc = self.enc
        guard = enc.guard
        h = len(self.polys)
        lm_h = monos[0]

        def divides(a, b):
            return ((b + guard - a) & guard) == guard

        cands = []
        for g in range(h):
            if self.active[g]:
                cands.append((enc.lcm(lm_h, self.lms[g]), g))
        # chain criterion among the new pairs
        keep = []
        for idx, (l1, g1) in enumerate(cands):
            if enc.coprime(lm_h, self.lms[g1]):
                keep.append((l1, g1, True))
                continue
            redundant = False
            for jdx, (l2, g2) in enumerate(cands):
                if jdx == idx:
                    continue
                if divides(l2, l1) and (l2 != l1 or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((l1, g1, False))
        # product criterion: drop coprime pairs, but they still shadow others above
        new_pairs = [(l, g) for l, g, cop in keep if not cop]
        # prune old pairs
        kept_old = []
        for pr in pairs:
            l, s, i, j = pr
            if divides(lm_h, l) and enc.lcm(self.lms[i], lm_h) != l and enc.lcm(self.lms[j], lm_h) != l:
                continue
            kept_old.append(pr)
        pairs[:] = kept_old
        deg = lm_h & _MASK
        for l, g in new_pairs:
            dl = l & _MASK
            s = max(sugar + dl - deg, self.sugar[g] + dl - (self.lms[g] & _MASK))
            pairs.append((l, s, g, h))
        for g in range(h):
            if self.active[g] and divides(lm_h, self.lms[g]):
                self.active[g] = False
        self.polys.append((monos, coeffs))
        self.lms.append(lm_h)
        self.sugar.append(sugar)
        self.active.append(True)

    def run(self, inputs: Sequence[Polynomial]) -> bool:
        """Compute a Groebner basis; returns True if the ideal is the unit ideal."""
        pairs: list = []
        polys = sorted((self.to_internal(f) for f in inputs if f), key=lambda t: (t[0][0] & _MASK, t[0][0]))
        for monos, coeffs in polys:
            deg = max(m & _MASK for m in monos)
            rm, rc = self.reduce(dict(zip(monos, coeffs)))
            if not rm:
                continue
            rm, rc = self.monic(rm, rc)
            if rm[0] == 0:
                self._set_unit()
                return True
            self.add(rm, rc, deg, pairs)
        while pairs:
            best = min(range(len(pairs)), key=lambda k: (pairs[k][1], pairs[k][0]))
            l, s, i, j = pairs[best]
            pairs[best] = pairs[-1]
            pairs.pop()
            rm, rc = self.reduce(self.spoly(i, j, l))
            if not rm:
                continue
            rm, rc = self.monic(rm, rc)
            if rm[0] == 0:
                self._set_unit()
                return True
            self.add(rm, rc, s, pairs)
        return False

    def _set_unit(self):
        one = 1 if self.p else gmpy2.mpq(1)
        self.polys = [([0], [one])]
        self.lms = [0]
        self.sugar = [0]
        self.active = [True]
        self.cache = {}

    def reduced_basis(self):
        idx = [k for k in range(len(self.polys)) if self.active[k]]
        # minimal basis: drop elements whose leading monomial is divisible by another's
        guard = self.enc.guard
        minimal = []
        for k in idx:
            if any(j != k and ((self.lms[k] + guard - self.lms[j]) & guard) == guard and
                   (self.lms[j] != self.lms[k] or j < k) for j in idx):
                continue
            minimal.append(k)
        out = []
        for k in minimal:
            gm, gc = self.polys[k]
            saved = self.active[k]
            self.active[k] = False
            self.cache = {}
            tm, tc = self.reduce(dict(zip(gm[1:], gc[1:])))
            self.active[k] = saved
            out.append(([gm[0]] + tm, [gc[0]] + tc))
        self.cache = {}
        out.sort(key=lambda t: t[0][0])
        self.polys = out
        self.lms = [t[0][0] for t in out]
        self.sugar = [t[0][0] & _MASK for t in out]
        self.active = [True] * len(out)
        return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal under a monomial order."""

    def __init__(self, ring: Ring, order: MonomialOrder, engine: _Engine):
        self.ring = ring
        self.order = order
        self._engine = engine
        self.basis = [engine.to_poly(m, c) for m, c in engine.polys]
        self.reduced = True

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.basis]})"

    @property
    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and bool(self.basis[0])

    def leading_exponents(self) -> list[tuple]:
        unpack = self._engine.enc.unpack
        return [unpack(m) for m in self._engine.lms]

    def normal_form(self, poly: Polynomial) -> Polynomial:
        poly = self.ring(poly)
        if not poly:
            return poly
        eng = self._engine
        monos, coeffs = eng.to_internal(poly)
        rm, rc = eng.reduce(dict(zip(monos, coeffs)))
        return eng.to_poly(rm, rc)

    def contains(self, poly: Polynomial) -> bool:
        return not self.normal_form(poly)


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX, budget=None,
               ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise RingError("ring required for an empty generator list")
        ring = gens[0].ring
    gens = [ring(g) for g in gens]
    eng = _Engine(ring, order, _as_budget(budget))
    if not eng.run(gens):
        eng.reduced_basis()
    return GroebnerBasis(ring, order, eng)


def _max_independent_set(supports: list[frozenset], nvars: int) -> int:
    minimal = [s for s in set(supports) if not any(t < s for t in supports)]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            ss = set(subset)
            if not any(s <= ss for s in minimal):
                return size
    return -1


def _standard_monomials(lead: list[tuple], nvars: int) -> int:
    bounds = [None] * nvars
    for e in lead:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    if any(b is None for b in bounds):
        raise PositiveDimensional("ideal is not zero-dimensional")
    lead = [e for e in lead]
    count = 0
    stack = [(0, ())]
    # enumerate exponent vectors variable by variable, pruning on divisibility
    while stack:
        i, prefix = stack.pop()
        if i == nvars:
            count += 1
            continue
        for k in range(bounds[i]):
            cand = prefix + (k,)
            # a prefix is dead if some leading monomial with zero tail divides it
            dead = False
            for e in lead:
                if all(e[j] <= cand[j] for j in range(i + 1)) and not any(e[i + 1:]):
                    dead = True
                    break
            if dead:
                break
            stack.append((i + 1, cand))
    return count


class Ideal:
    """Ideal of a polynomial ring given by generators; Groebner bases are cached."""

    def __init__(self, gens: Iterable[Polynomial], ring: Ring | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise RingError("ring required for an empty ideal")
            ring = gens[0].ring
        self.ring = ring
        self.gens = [g for g in (ring(x) for x in gens) if g]
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + [self.ring(g) for g in _gens_of(other)], self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * self.ring(b) for a in self.gens for b in _gens_of(other)], self.ring)

    def groebner(self, order: MonomialOrder = GREVLEX, budget=None) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.gens, order, budget, ring=self.ring)
            self._gb[order] = gb
        return gb

    def is_unit(self, budget=None) -> bool:
        return self.groebner(budget=budget).is_unit

    def contains(self, poly: Polynomial, budget=None) -> bool:
        return self.groebner(budget=budget).contains(poly)

    def contains_ideal(self, other: "Ideal", budget=None) -> bool:
        gb = self.groebner(budget=budget)
        return all(gb.contains(g) for g in _gens_of(other))

    def equals(self, other: "Ideal", budget=None) -> bool:
        return self.contains_ideal(other, budget) and other.contains_ideal(self, budget)

    def reduced_generators(self, budget=None) -> list[Polynomial]:
        return list(self.groebner(budget=budget).basis)

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal([g.to_ring(ring) for g in self.gens], ring)

    def map_field(self, field) -> "Ideal":
        ring = self.ring.with_field(field)
        return Ideal([g.map_field(field) for g in self.gens], ring)


def _gens_of(x) -> list[Polynomial]:
    if isinstance(x, Ideal):
        return x.gens
    if isinstance(x, Polynomial):
        return [x]
    return list(x)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(p)


def _var_indices(ring: Ring, variables) -> list[int]:
    out = []
    for v in variables:
        if isinstance(v, int):
            out.append(v)
        elif isinstance(v, Polynomial):
            sup = v.support()
            if len(sup) != 1 or len(v.terms) != 1:
                raise RingError(f"{v} is not a variable")
            out.append(next(iter(sup)))
        else:
            out.append(ring.index(v))
    return sorted(set(out))


def eliminate(I: Ideal, drop_vars, budget=None) -> Ideal:
    """I intersected with the subring without ``drop_vars`` (same ambient ring)."""
    drop = _var_indices(I.ring, drop_vars)
    if not drop:
        return Ideal(list(I.gens), I.ring)
    order = block_order(drop, I.ring.nvars)
    gb = I.groebner(order, budget)
    ds = set(drop)
    return Ideal([g for g in gb.basis if not (g.support() & ds)], I.ring)


def _with_aux(ring: Ring, base: str = "t"):
    name = ring.fresh_name(base)
    big = ring.extend([name])
    return big, big.var(name)


def saturate_principal(I: Ideal, g: Polynomial, budget=None) -> Ideal:
    """I : g^infinity via  (I + <t*g - 1>) eliminating t."""
    ring = I.ring
    g = ring(g)
    if g.is_constant():
        return Ideal(list(I.gens), ring) if g else Ideal([ring.one()], ring)
    big, t = _with_aux(ring)
    J = Ideal([f.to_ring(big) for f in I.gens] + [t * g.to_ring(big) - 1], big)
    elim = eliminate(J, [t], budget)
    return Ideal([f.to_ring(ring) for f in elim.gens], ring)


def intersect(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """I cap J via  t*I + (1-t)*J  eliminating t."""
    ring = I.ring
    big, t = _with_aux(ring)
    gens = [t * f.to_ring(big) for f in I.gens] + [(1 - t) * f.to_ring(big) for f in _gens_of(J)]
    elim = eliminate(Ideal(gens, big), [t], budget)
    return Ideal([f.to_ring(ring) for f in elim.gens], ring)


def saturate(I: Ideal, J, budget=None) -> Ideal:
    """I : J^infinity as the intersection of the saturations by each generator of J."""
    budget = _as_budget(budget)
    gens = [I.ring(g) for g in _gens_of(J) if g]
    if not gens:
        return Ideal([I.ring.one()], I.ring)
    if any(g.is_constant() for g in gens):
        return Ideal(list(I.gens), I.ring)
    result = None
    for g in gens:
        S = saturate_principal(I, g, budget)
        if S.is_unit(budget):
            continue
        result = S if result is None else intersect(result, S, budget)
    if result is None:
        return Ideal([I.ring.one()], I.ring)
    return Ideal(result.reduced_generators(budget), I.ring)


def ideal_dimension(I: Ideal, budget=None) -> int:
    """Krull dimension of the affine quotient ring; -1 for the unit ideal."""
    gb = I.groebner(budget=budget)
    if gb.is_unit:
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in gb.leading_exponents()]
    return _max_independent_set(supports, I.ring.nvars)


def degree_zero_dim(I: Ideal, budget=None) -> int:
    """Number of standard monomials of a zero-dimensional ideal (0 for the unit ideal)."""
    gb = I.groebner(budget=budget)
    if gb.is_unit:
        return 0
    return _standard_monomials(gb.leading_exponents(), I.ring.nvars)


def radical_membership(p: Polynomial, I: Ideal, budget=None) -> bool:
    """p in sqrt(I), via 1 in I + <t*p - 1>."""
    ring = I.ring
    p = ring(p)
    if not p:
        return True
    big, t = _with_aux(ring)
    J = Ideal([f.to_ring(big) for f in I.gens] + [t * p.to_ring(big) - 1], big)
    return J.is_unit(budget)


def localized_degree(I: Ideal, h: Polynomial, budget=None) -> int:
    """Length of (k[x]/I)_h: solutions off V(h) counted with multiplicity.

    Equals degree_zero_dim(I : h^infinity) whenever that saturation is
    zero-dimensional; raises PositiveDimensional otherwise.
    """
    ring = I.ring
    big, t = _with_aux(ring)
    J = Ideal([f.to_ring(big) for f in I.gens] + [t * ring(h).to_ring(big) - 1], big)
    if J.is_unit(budget):
        return 0
    return degree_zero_dim(J, budget)
