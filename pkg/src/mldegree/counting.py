"""Counting points of sliced systems over a prime field.

Every degree computation in the toolkit reduces to the same pattern: a list
of equations, some of them affine-linear (random hyperplanes, affine charts,
linear generators), and a polynomial ``h`` whose zero set must be removed.
Linear equations are solved exactly and substituted away, which keeps the
Gröbner computation in as few variables as possible; the rest is a
localized standard-monomial count.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .fields import Field, FieldError
from .groebner import Ideal, PositiveDimensional, degree_zero_dim, localized_degree
from .linalg import solve_affine
from .polynomial import Polynomial, Ring

DEFAULT_PRIME = 32003


class TrialDisagreement(RuntimeError):
    """Independent random trials gave different counts: the data was not generic."""

    def __init__(self, counts, seeds):
        super().__init__(f"random trials disagree: counts {counts} for seeds {seeds}; retry with a new seed")
        self.counts = counts
        self.seeds = seeds


def random_element(field: Field, rng: random.Random, nonzero: bool = True):
    if field.p:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, field.p)
    while True:
        c = rng.randint(-9, 9)
        if c or not nonzero:
            return field(c)


def random_vector(field: Field, n: int, rng: random.Random) -> list:
    return [random_element(field, rng) for _ in range(n)]


def random_form(ring: Ring, indices: Sequence[int], rng: random.Random) -> Polynomial:
    """A random linear form in the variables at ``indices``."""
    coeffs = [0] * ring.nvars
    for i in indices:
        coeffs[i] = random_element(ring.field, rng)
    return ring.linear_form(coeffs)


def random_combination(polys: Sequence[Polynomial], rng: random.Random) -> Polynomial:
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("no nonzero polynomial to combine")
    ring = polys[0].ring
    out = ring.zero()
    for p in polys:
        out = out + p.scale(random_element(ring.field, rng))
    return out


def eliminate_linear(eqs: Sequence[Polynomial], keep: Sequence[Polynomial] = ()):
    """Solve the affine-linear members of ``eqs`` and substitute them away.

    Returns ``(ring, rest, kept)`` with the remaining equations and the
    ``keep`` polynomials rewritten in a ring of free parameters, or ``None``
    if the linear part is inconsistent.
    """
    ring = eqs[0].ring if eqs else keep[0].ring
    field = ring.field
    n = ring.nvars
    linear = [e for e in eqs if e.degree() <= 1]
    other = [e for e in eqs if e.degree() > 1]
    if any(e.is_constant() and e for e in linear):
        return None
    linear = [e for e in linear if e]
    if not linear:
        return ring, other, list(keep)
    rows, rhs = [], []
    for e in linear:
        row = [field(0)] * n
        for exp, c in e.terms.items():
            if any(exp):
                row[exp.index(1)] = c
        rows.append(row)
        rhs.append(field.neg(e.constant_value()))
    sol = solve_affine(rows, rhs, field)
    if sol is None:
        return None
    x0, basis = sol
    names = [f"z{i}" for i in range(len(basis))]
    sub = Ring(names, field)
    images = []
    for i in range(n):
        im = sub.const(x0[i])
        for b, z in zip(basis, sub.gens):
            if b[i]:
                im = im + z.scale(b[i])
        images.append(im)
    if not names:
        # everything is determined: evaluate
        rest = [sub.const(e.evaluate(x0)) for e in other]
        kept = [sub.const(k.evaluate(x0)) for k in keep]
        return sub, rest, kept
    rest = [e.substitute(images) for e in other]
    kept = [k.substitute(images) for k in keep]
    return sub, rest, kept


def count_points(eqs: Sequence[Polynomial], localizer: Polynomial | None = None, budget=None) -> int:
    """Number of solutions of ``eqs`` off V(localizer), with multiplicity.

    Raises PositiveDimensional if the localized solution set is infinite.
    """
    eqs = [e for e in eqs if e]
    ring = (eqs[0] if eqs else localizer).ring
    h = localizer if localizer is not None else ring.one()
    red = eliminate_linear(eqs, [h])
    if red is None:
        return 0
    sub, rest, (h2,) = red
    if not h2:
        return 0
    rest = [e for e in rest if e]
    if any(e.is_constant() for e in rest):
        return 0
    if sub.nvars == 0:
        return 1
    if not rest:
        raise PositiveDimensional("no equations left after slicing")
    I = Ideal(rest, sub)
    if h2.is_constant():
        return degree_zero_dim(I, budget)
    return localized_degree(I, h2, budget)


def agreeing_count(trial: Callable[[random.Random], int], seed: int, trials: int = 3) -> tuple[int, list[int]]:
    """Run ``trial`` with independent generators derived from ``seed``; all
    counts must agree."""
    if trials < 1:
        raise ValueError("at least one trial is required")
    master = random.Random(seed)
    seeds = [master.randrange(2**31) for _ in range(trials)]
    counts = [trial(random.Random(s)) for s in seeds]
    if len(set(counts)) != 1:
        raise TrialDisagreement(counts, seeds)
    return counts[0], seeds


def reduce_mod(polys: Sequence[Polynomial], field: Field) -> list[Polynomial]:
    """Map polynomials to another coefficient field (e.g. QQ -> GF(p))."""
    try:
        return [p.map_field(field) for p in polys]
    except FieldError as exc:
        raise FieldError(f"{exc}; choose a different prime") from None
