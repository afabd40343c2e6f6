"""Projective varieties: Jacobians, conormal varieties, duals, polar degrees,
gradient multidegrees, point multiplicities and F-generality."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .counting import (DEFAULT_PRIME, agreeing_count, count_points, random_combination,
                       random_form, random_vector, reduce_mod)
from .fields import GF, QQ, Field
from .groebner import (Ideal, eliminate, ideal_dimension, radical_membership,
                       saturate_principal)
from .linalg import determinant, poly_minors
from .polynomial import Polynomial, Ring, content_normalize
from .rational import cleared_gradient, require_likelihood
from .spaces import Space


@dataclass
class MultidegreeVector:
    """Bidegree coefficients: polar degrees (delta_0..delta_{n-1}) or gradient
    multidegrees (mu_0..mu_n)."""

    entries: tuple
    kind: str = "delta"
    seeds: list = field(default_factory=list)
    prime: int = DEFAULT_PRIME
    trials: int = 3

    def __post_init__(self):
        self.entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in self.entries):
            raise ValueError("multidegrees are non-negative")

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, MultidegreeVector):
            return self.entries == other.entries
        return self.entries == tuple(other)


@dataclass
class VarietySpec:
    """X = V(gens) in P(L), where ``space`` supplies L and its dual.

    Irreducibility of X is assumed, never verified.
    """

    space: Space
    gens: list
    _codim: int | None = field(default=None, repr=False)

    def __post_init__(self):
        ring = self.space.primal
        gens = [ring(g) for g in self.gens]
        gens = [g for g in gens if g]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        if any(g.is_constant() for g in gens):
            raise ValueError("X is empty: the ideal contains a nonzero constant")
        self.gens = gens

    @property
    def ring(self) -> Ring:
        return self.space.primal

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space."""
        return self.ring.nvars - 1

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.gens, self.ring)

    def codim(self, prime: int = DEFAULT_PRIME) -> int:
        if self._codim is None:
            if not self.gens:
                self._codim = 0
            else:
                I = Ideal(reduce_mod(self.gens, GF(prime)), self.ring.with_field(GF(prime)))
                d = ideal_dimension(I)
                if d <= 0:
                    raise ValueError("X is empty as a projective variety")
                self._codim = self.ring.nvars - d
        return self._codim

    def dimension(self) -> int:
        return self.n - self.codim()

    def with_field(self, f: Field) -> "VarietySpec":
        sp = self.space.with_field(f)
        return VarietySpec(sp, reduce_mod(self.gens, f), self._codim)


# ---- Jacobians and singular loci --------------------------------------------

def jacobian(X: VarietySpec) -> list[list[Polynomial]]:
    """Rows are the plain gradients of the generators of I(X)."""
    return [g.gradient() for g in X.gens]


def singular_locus(X: VarietySpec) -> Ideal:
    """I(X) + c x c minors of the Jacobian."""
    c = X.codim()
    if c == 0:
        return Ideal([X.ring.one()], X.ring)
    return Ideal(X.gens + poly_minors(jacobian(X), c), X.ring)


def _sing_localizer(X: VarietySpec, rng: random.Random, J=None) -> Polynomial:
    """A random combination of the c-minors of J_X: nonzero on a dense open
    subset of X, so localizing by it removes only the singular locus."""
    c = X.codim()
    if c == 0:
        return X.ring.one()
    minors = poly_minors(J if J is not None else jacobian(X), c)
    return random_combination(minors, rng)


# ---- conormal and dual varieties ---------------------------------------------

def _bi_ring(space: Space) -> Ring:
    return space.primal.extend(space.dual.names, space.dual.weights)


def _dual_row(space: Space, ring: Ring) -> list[Polynomial]:
    """w o y: the tangent-hyperplane coefficients of the dual point y."""
    return [ring.var(name).scale(ring.field(w)) for name, w in zip(space.dual.names, space.weights)]


def conormal_equations(X: VarietySpec, ring: Ring) -> list[Polynomial]:
    """I(X) + (c+1)-minors of [w o y ; J_X] in the bigraded ring."""
    c = X.codim()
    J = [[ring(p) for p in row] for row in jacobian(X)]
    return [ring(g) for g in X.gens] + poly_minors([_dual_row(X.space, ring)] + J, c + 1)


def conormal(X: VarietySpec, seed: int = 0, budget=None) -> Ideal:
    """Bihomogeneous ideal of W(X) in the ring (x; y).

    The saturation by the c-minors of J_X is taken with respect to one
    random combination of those minors; since X is irreducible this removes
    exactly the components over the singular locus.
    """
    if X.codim() == 0:
        raise ValueError("X is the whole space: the conormal variety is empty")
    ring = _bi_ring(X.space)
    rng = random.Random(seed)
    L = ring(_sing_localizer(X, rng))
    I = Ideal(conormal_equations(X, ring), ring)
    return saturate_principal(I, L, budget)


def dual_variety(X: VarietySpec, seed: int = 0, budget=None) -> Ideal:
    """Ideal of the dual variety in the dual ring, over the field of X."""
    if X.codim() == 0:
        raise ValueError("X is the whole space: its dual is empty")
    ring = _bi_ring(X.space)
    name = ring.fresh_name("t")
    big = ring.extend([name])
    t = big.var(name)
    rng = random.Random(seed)
    L = big(_sing_localizer(X, rng))
    gens = [big(g) for g in conormal_equations(X, ring)] + [t * L - 1]
    elim = eliminate(Ideal(gens, big), list(X.ring.names) + [name], budget)
    dual = X.space.dual
    out = [content_normalize(g.to_ring(dual)) for g in elim.gens]
    return Ideal(sorted(out, key=lambda p: (p.degree(), str(p))), dual)


def dual_hypersurface(X: VarietySpec, seed: int = 0, budget=None) -> Polynomial | None:
    """Generator of X^vee when it is a hypersurface, else None."""
    gens = Ideal(dual_variety(X, seed, budget).gens, X.space.dual).reduced_generators(budget)
    if len(gens) != 1 or gens[0].is_constant():
        return None
    return content_normalize(gens[0])


# ---- polar degrees and gradient multidegrees -------------------------------------

def polar_degrees(X: VarietySpec, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 3,
                  budget=None) -> MultidegreeVector:
    """delta_i = #(W(X) cut by i hyperplanes in x and n-1-i hyperplanes in y)."""
    fp = GF(prime)
    Xp = X.with_field(fp)
    c = Xp.codim()
    if c == 0:
        raise ValueError("X is the whole space")
    n = Xp.n
    ring = _bi_ring(Xp.space)
    base = conormal_equations(Xp, ring)
    J = jacobian(Xp)
    xs = list(range(n + 1))
    ys = list(range(n + 1, 2 * n + 2))
    entries, all_seeds = [], []
    for i in range(n):
        def trial(rng, i=i):
            L = ring(_sing_localizer(Xp, rng, J))
            eqs = list(base)
            eqs += [random_form(ring, xs, rng) for _ in range(i)]
            eqs += [random_form(ring, ys, rng) for _ in range(n - 1 - i)]
            eqs.append(random_form(ring, xs, rng) - 1)
            eqs.append(random_form(ring, ys, rng) - 1)
            return count_points(eqs, L, budget)
        val, seeds = agreeing_count(trial, seed * 1000 + i, trials)
        entries.append(val)
        all_seeds.append(seeds)
    return MultidegreeVector(entries, "delta", all_seeds, prime, trials)


def gradient_graph(F, space: Space, seed: int = 0, budget=None) -> Ideal:
    """Bihomogeneous ideal of the closed graph of grad F: 2x2 minors of
    [y ; g grad f - f grad g], saturated by the base locus of the map."""
    F = require_likelihood(F)
    ring = _bi_ring(space)
    G = [ring(p) for p in cleared_gradient(F)]
    ys = _dual_row(space, ring)
    gens = poly_minors([ys, G], 2)
    rng = random.Random(seed)
    L = random_combination(G, rng)
    return saturate_principal(Ideal(gens, ring), L, budget)


def gradient_multidegrees(F, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 3,
                          budget=None) -> MultidegreeVector:
    """mu_j = #(graph of grad F cut by n-j hyperplanes in x and j in y).

    The graph is parametrized by x itself (y = grad F(x)), so a hyperplane in
    y becomes a linear combination of the gradient entries.
    """
    F = require_likelihood(F)
    fp = GF(prime)
    Fp = F.map_field(fp)
    ring = Fp.ring
    n = ring.nvars - 1
    G = cleared_gradient(Fp)
    xs = list(range(n + 1))
    entries, all_seeds = [], []
    for j in range(n + 1):
        def trial(rng, j=j):
            L = random_combination(G, rng) if any(G) else ring.zero()
            eqs = [random_form(ring, xs, rng) for _ in range(n - j)]
            eqs.append(random_form(ring, xs, rng) - 1)
            for _ in range(j):
                coeffs = random_vector(fp, n + 1, rng)
                form = ring.zero()
                for a, g in zip(coeffs, G):
                    form = form + g.scale(a)
                eqs.append(form)
            if any(e.is_constant() and e for e in eqs):
                return 0
            return count_points(eqs, L * (Fp.den if not Fp.den.is_constant() else 1), budget)
        val, seeds = agreeing_count(trial, seed * 1000 + 500 + j, trials)
        entries.append(val)
        all_seeds.append(seeds)
    return MultidegreeVector(entries, "mu", all_seeds, prime, trials)


# ---- multiplicities ---------------------------------------------------------------

def multiplicity_at_point(g: Polynomial, point: Sequence) -> int:
    """mult of [point] on V(g) = deg g - deg_t g(u + t*point), u symbolic."""
    ring = g.ring
    if not g.is_homogeneous():
        raise ValueError("g must be homogeneous")
    f = ring.field
    point = [f(c) for c in point]
    if not any(point):
        raise ValueError("the point must be nonzero")
    tname = ring.fresh_name("t")
    big = ring.extend([tname])
    t = big.var(tname)
    images = [big.var(i) + t.scale(c) if c else big.var(i) for i, c in enumerate(point)]
    shifted = g.substitute(images)
    return g.degree() - shifted.degree_in(big.nvars - 1)


# ---- F-generality ------------------------------------------------------------------

def f_general_emptiness(X: VarietySpec, F, seed: int = 0, prime: int = DEFAULT_PRIME,
                        checks: int = 2, budget=None) -> bool:
    """True iff W(X) and the closed graph of grad F are disjoint.

    Computed over GF(prime): the bigraded ideal W(X) + Graph(F) has empty
    zero set in P x P* iff a product of random linear forms in x and in y
    lies in its radical.  Only the emptiness half of F-generality is decided.
    """
    F = require_likelihood(F)
    fp = GF(prime)
    Xp = X.with_field(fp)
    Fp = F.map_field(fp)
    W = conormal(Xp, seed, budget)
    Gamma = gradient_graph(Fp, Xp.space, seed + 1, budget)
    ring = W.ring
    I = W + Ideal([ring(g) for g in Gamma.gens], ring)
    n1 = Xp.ring.nvars
    rng = random.Random(seed + 2)
    for _ in range(checks):
        lx = random_form(ring, range(n1), rng)
        ly = random_form(ring, range(n1, 2 * n1), rng)
        if not radical_membership(lx * ly, I, budget):
            return False
    return True


# ---- perturbation -------------------------------------------------------------------

def random_invertible_matrix(n: int, rng: random.Random, bound: int = 3, retries: int = 50):
    for _ in range(retries):
        M = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if determinant(M, QQ):
            return M
    raise RuntimeError("could not sample an invertible matrix")


def perturb(X: VarietySpec, seed: int = 0, identity: bool = False) -> VarietySpec:
    """gX for a seeded random g in GL(L) (integer entries, det checked exactly)."""
    if identity:
        return VarietySpec(X.space, list(X.gens))
    n = X.ring.nvars
    M = random_invertible_matrix(n, random.Random(seed))
    xs = X.ring.gens
    images = []
    for i in range(n):
        im = X.ring.zero()
        for j in range(n):
            if M[i][j]:
                im = im + xs[j].scale(M[i][j])
        images.append(im)
    return VarietySpec(X.space, [g.substitute(images) for g in X.gens])
