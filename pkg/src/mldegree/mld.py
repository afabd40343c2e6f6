"""Maximum likelihood degrees: critical ideals, direct counting, the polar
formula, the F-adjoined Gauss map of plane curves, and the classifier of
curves with maximum likelihood degree one."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .counting import (DEFAULT_PRIME, agreeing_count, count_points, random_combination,
                       random_form, random_vector)
from .fields import GF, QQ
from .groebner import (Ideal, PositiveDimensional, eliminate, radical_membership,
                       saturate_principal)
from .linalg import nullspace, poly_minors, rank, solve_affine
from .polynomial import Polynomial, Ring, content_normalize
from .rational import RationalFn, cleared_gradient, exact_quotient, poly_gcd_list, require_likelihood
from .spaces import Space, plain_space, sym_space
from .varieties import (VarietySpec, _sing_localizer, dual_hypersurface,
                        f_general_emptiness, gradient_multidegrees, jacobian,
                        multiplicity_at_point, polar_degrees)


class NotApplicable(ValueError):
    """The input is outside the domain of the requested construction."""


@dataclass
class MLProblem:
    X: VarietySpec
    F: RationalFn

    def __post_init__(self):
        self.F = require_likelihood(RationalFn.coerce(self.F))
        if self.F.ring is not self.X.ring:
            self.F = self.F.to_ring(self.X.ring)

    @property
    def c(self) -> int:
        return self.X.codim()

    @property
    def space(self) -> Space:
        return self.X.space

    def check_not_in_divisor(self, budget=None) -> bool:
        """X is not contained in div(F): f*g does not vanish on X."""
        return not radical_membership(self.F.num * self.F.den, self.X.ideal, budget)

    def with_field(self, f) -> "MLProblem":
        return MLProblem(self.X.with_field(f), self.F.map_field(f))


@dataclass
class MLDReport:
    value: int
    method: str
    seeds: list = field(default_factory=list)
    prime: int = DEFAULT_PRIME
    trials: int = 3
    f_general: dict = field(default_factory=lambda: {"empty": None, "irreducible": "unchecked"})
    status: str = "ok"
    details: dict = field(default_factory=dict)


# ---- ideals of the ML correspondence ------------------------------------------

def _xu_ring(space: Space) -> Ring:
    return space.primal.extend(space.dual.names, space.dual.weights)


def _data_row(space: Space, ring: Ring, u=None) -> list[Polynomial]:
    """w o u, symbolic (dual variables) or numeric."""
    f = ring.field
    if u is None:
        return [ring.var(name).scale(f(w)) for name, w in zip(space.dual.names, space.weights)]
    return [ring.const(f(w) * f(a)) for w, a in zip(space.weights, u)]


def critical_ideal_affine(P: MLProblem, u: Sequence | None = None, seed: int = 0, budget=None) -> Ideal:
    """Closure of the affine ML correspondence.

    I(X) + (c+1)-minors of [ (g grad f - f grad g) - f g (w o u) ; J_X ],
    saturated by f*g and the singular locus.  With ``u`` given the ideal
    lives in the primal ring (data specialized), otherwise in (x, u).
    """
    X, F = P.X, P.F
    ring = X.ring if u is not None else _xu_ring(X.space)
    G = [ring(p) for p in cleared_gradient(F)]
    fg = ring(F.num * F.den)
    data = _data_row(X.space, ring, u)
    row = [a - fg * b for a, b in zip(G, data)]
    J = [[ring(p) for p in r] for r in jacobian(X)]
    gens = [ring(g) for g in X.gens] + poly_minors([row] + J, P.c + 1)
    L = ring(_sing_localizer(X, random.Random(seed)))
    return saturate_principal(Ideal(gens, ring), fg * L, budget)


def ml_correspondence_projective(P: MLProblem, u: Sequence | None = None, seed: int = 0,
                                 budget=None) -> Ideal:
    """I(X) + (c+2)-minors of [w o u ; g grad f - f grad g ; J_X], saturated
    by the (c+1)-minors of [g grad f - f grad g ; J_X] (through one random
    combination of them)."""
    X, F = P.X, P.F
    ring = X.ring if u is not None else _xu_ring(X.space)
    G = [ring(p) for p in cleared_gradient(F)]
    J = [[ring(p) for p in r] for r in jacobian(X)]
    gens = [ring(g) for g in X.gens] + poly_minors([_data_row(X.space, ring, u), G] + J, P.c + 2)
    gamma = poly_minors([G] + J, P.c + 1)
    L = random_combination(gamma, random.Random(seed))
    return saturate_principal(Ideal(gens, ring), L, budget)


def _critical_equations(P: MLProblem, u, slice_: bool = True, affine: bool = False):
    """Specialized critical equations and localizer (both over P's field)."""
    X, F = P.X, P.F
    ring = X.ring
    G = cleared_gradient(F)
    J = jacobian(X)
    fg = F.num * F.den
    data = _data_row(X.space, ring, u)
    if affine:
        row = [a - fg * b for a, b in zip(G, data)]
        eqs = list(X.gens) + poly_minors([row] + J, P.c + 1)
    else:
        eqs = list(X.gens) + poly_minors([data, G] + J, P.c + 2)
    if slice_:
        lin = ring.zero()
        for b, x in zip(data, ring.gens):
            lin = lin + x * b
        eqs.append(lin - F.degree())
    return eqs, fg


def count_critical_points(P: MLProblem, rng: random.Random, slice_: bool = True,
                          affine: bool = False, budget=None) -> int:
    """Critical points for one draw of random data u (P over a prime field)."""
    u = random_vector(P.X.ring.field, P.X.ring.nvars, rng)
    eqs, fg = _critical_equations(P, u, slice_, affine)
    L = _sing_localizer(P.X, rng)
    return count_points(eqs, fg * L, budget)


def mld_compute(P: MLProblem, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 3,
                budget=None, check_slice: bool = False) -> MLDReport:
    """MLD_F(X) by specializing the data to random values over GF(prime).

    With ``check_slice`` each trial is repeated without the normalization
    hyperplane u(x) = deg F (the affine critical equations imply it), and the
    two counts must agree.
    """
    Pp = P.with_field(GF(prime))
    details = {}

    def trial(rng):
        state = rng.getstate()
        n = count_critical_points(Pp, rng, True, False, budget)
        if check_slice:
            rng.setstate(state)
            m = count_critical_points(Pp, rng, False, True, budget)
            if m != n:
                raise AssertionError(f"normalization slice changed the count: {n} vs {m}")
            details["slice_invariant"] = True
        return n

    try:
        value, seeds = agreeing_count(trial, seed, trials)
        status = "ok"
    except PositiveDimensional:
        value, seeds, status = 0, [], "positive-dimensional"
    return MLDReport(value, "direct", seeds, prime, trials, status=status, details=details)


def mld_polar_formula(X: VarietySpec, F, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 3,
                      budget=None, check_f_general: bool = True) -> MLDReport:
    """sum_i delta_i(X) mu_i(F): an upper bound, expected to be an equality
    when X is F-general."""
    F = require_likelihood(F)
    delta = polar_degrees(X, seed, prime, trials, budget)
    mu = gradient_multidegrees(F, seed, prime, trials, budget)
    value = sum(d * m for d, m in zip(delta.entries, mu.entries))
    empty = f_general_emptiness(X, F, seed, prime, budget=budget) if check_f_general else None
    status = "equality-expected" if empty else "upper-bound"
    return MLDReport(value, "polar-formula", [delta.seeds, mu.seeds], prime, trials,
                     {"empty": empty, "irreducible": "unchecked"}, status,
                     {"delta": list(delta.entries), "mu": list(mu.entries)})


# ---- linear spans and plane curves ----------------------------------------------

@dataclass
class PlaneModel:
    """A curve X in P(L) rewritten inside its linear span W = span(B_0, B_1, B_2)."""

    X: VarietySpec           # the original curve
    basis: list              # three vectors of L spanning W
    curve: Polynomial        # generator of X in span coordinates y0, y1, y2
    ring: Ring               # span coordinates
    dual: Ring               # dual span coordinates v0, v1, v2

    def pullback(self, p: Polynomial) -> Polynomial:
        """p restricted to W, in span coordinates."""
        ys = self.ring.gens
        images = []
        for i in range(len(self.basis[0])):
            im = self.ring.zero()
            for b, y in zip(self.basis, ys):
                if b[i]:
                    im = im + y.scale(b[i])
            images.append(im)
        p = p.to_ring(self.X.ring)
        return self.ring(p.substitute(images)) if not p.is_constant() else self.ring.const(p.constant_value())

    def project_dual(self, space: Space) -> list[Polynomial]:
        """pi: L* -> W*, s |-> (<s, B_k>)_k, as linear forms in the dual ring."""
        dual = space.dual
        out = []
        for b in self.basis:
            out.append(dual.linear_form([dual.field(w) * dual.field(c) for w, c in zip(space.weights, b)]))
        return out


def linear_span(X: VarietySpec, budget=None) -> list[list]:
    """Basis of the linear span of X: the common kernel of the linear forms
    in I(X) (read off the degree-one part of a Gröbner basis)."""
    ring = X.ring
    gb = X.ideal.groebner(budget=budget)
    rows = []
    for g in gb.basis:
        if g.degree() == 1:
            rows.append([g.derivative(i).constant_value() for i in range(ring.nvars)])
    return nullspace(rows, ring.field, ring.nvars) if rows else [
        [ring.field(int(i == j)) for j in range(ring.nvars)] for i in range(ring.nvars)]


def plane_model(X: VarietySpec, budget=None) -> PlaneModel:
    basis = linear_span(X, budget)
    if len(basis) != 3:
        raise NotApplicable(f"the linear span of X has dimension {len(basis)}, not 3")
    f = X.ring.field
    ring = Ring(["y0", "y1", "y2"], f)
    dual = Ring(["v0", "v1", "v2"], f)
    model = PlaneModel(X, basis, ring.zero(), ring, dual)
    gens = [model.pullback(g) for g in X.gens if g.degree() > 1]
    red = Ideal(gens, ring).reduced_generators(budget) if gens else []
    if len(red) != 1:
        raise NotApplicable("X is not a plane curve in its span")
    model.curve = content_normalize(red[0])
    return model


def _cross(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> list[Polynomial]:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _plane_data(X: VarietySpec, F: RationalFn, budget=None):
    """(h, Fw, ring): the curve and F in three span coordinates."""
    if X.ring.nvars == 3:
        gens = X.gens if len(X.gens) == 1 else X.ideal.reduced_generators(budget)
        if len(gens) != 1:
            raise NotApplicable("X is not a plane curve")
        return gens[0], F, X.ring
    model = plane_model(X, budget)
    Fw = RationalFn(model.pullback(F.num), model.pullback(F.den))
    return model.curve, Fw, model.ring


@dataclass
class GaussImage:
    point_formula: list       # gamma(x) = grad h(x) x grad F(x), common factors removed over QQ
    image: Ideal              # ideal of the image curve in coordinates a0, a1, a2
    image_degree: int
    map_degree: int


def _primitive_vector(vec: Sequence[Polynomial]) -> list[Polynomial]:
    """Divide a polynomial vector by the gcd of its entries (over QQ) and
    scale it to integer coefficients without common content."""
    from math import gcd, lcm

    if not vec[0].ring.field.is_rational or not any(vec):
        return list(vec)
    common = poly_gcd_list(vec)
    if not common.is_constant():
        vec = [exact_quotient(v, common) if v else v for v in vec]
    coeffs = [c for v in vec for c in v.terms.values()]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    g = 0
    for c in coeffs:
        g = gcd(g, int(c * den))
    first = next(v for v in vec if v)
    k = Fraction(den, g) * (1 if first.leading_coefficient() > 0 else -1)
    return [v.scale(k) for v in vec]


def _find_point(h: Polynomial, rng: random.Random, tries: int = 50) -> list:
    """A point of V(h) in P^2 over a prime field: restrict h to random lines
    and look for a root by exhaustive search."""
    ring = h.ring
    f = ring.field
    p = f.p
    tr = Ring(["t"], f)
    t = tr.var(0)
    for _ in range(tries):
        a = random_vector(f, 3, rng)
        b = random_vector(f, 3, rng)
        hl = h.substitute([tr.const(a[i]) + t.scale(b[i]) for i in range(3)])
        if not hl:
            continue
        coeffs = [0] * (hl.degree() + 1)
        for e, c in hl.terms.items():
            coeffs[e[0]] = c
        # Horner evaluation over all of GF(p); stop at the first root
        start = rng.randrange(p)
        for k in range(p):
            s = (start + k) % p
            v = 0
            for c in reversed(coeffs):
                v = (v * s + c) % p
            if v == 0:
                return [(a[i] + s * b[i]) % p for i in range(3)]
    raise RuntimeError("no rational point found on the curve")


def gauss_adjoined_plane(X: VarietySpec, F, seed: int = 0, prime: int = DEFAULT_PRIME,
                         budget=None) -> GaussImage:
    """gamma_{X,F} for a plane curve: x |-> T_x X cap (grad_x F)^perp, the
    cross product of grad h(x) and grad F(x) in plain coordinates."""
    F = require_likelihood(RationalFn.coerce(F))
    if F.ring is not X.ring:
        F = F.to_ring(X.ring)
    if X.codim() != X.ring.nvars - 2:
        raise NotApplicable("X is not a curve")
    h, Fw, ring = _plane_data(X, F, budget)
    if h.degree() <= 1:
        raise NotApplicable("X is a line: the Gauss map is degenerate")
    gamma = _cross(h.gradient(), cleared_gradient(Fw))
    if not any(gamma):
        raise NotApplicable("grad F is everywhere tangent to X")
    gamma = _primitive_vector(gamma)
    # the image curve: eliminate x and the scale s from a - s*gamma(x), h(x)
    fp = GF(prime)
    hp = h.map_field(fp)
    gp = [g.map_field(fp) for g in gamma]
    rp = hp.ring
    big = rp.extend(["s_", "a0", "a1", "a2"])
    s = big.var("s_")
    gens = [big(hp)] + [big.var(f"a{i}") - s * big(gp[i]) for i in range(3)]
    elim = eliminate(Ideal(gens, big), list(rp.names) + ["s_"], budget)
    aring = Ring(["a0", "a1", "a2"], fp)
    image = Ideal([content_normalize(g.to_ring(aring)) for g in elim.gens], aring)
    red = image.reduced_generators(budget)
    if len(red) != 1:
        raise NotApplicable("the image of the Gauss map is not a curve")
    image_degree = red[0].degree()
    # map degree: fiber over the image of a random point of X
    rng = random.Random(seed)
    pt = _find_point(hp, rng)
    target = [g.evaluate(pt) for g in gp]
    if not any(target):
        pt = _find_point(hp, rng)
        target = [g.evaluate(pt) for g in gp]
    eqs = [hp] + poly_minors([[rp.const(c) for c in target], gp], 2)
    eqs.append(random_form(rp, range(3), rng) - 1)
    loc = random_combination(gp, rng)
    map_degree = count_points(eqs, loc, budget)
    return GaussImage(gamma, Ideal(red, aring), image_degree, map_degree)


def product_formula_check(X: VarietySpec, F, seed: int = 0, prime: int = DEFAULT_PRIME,
                          trials: int = 3, budget=None) -> tuple[bool, dict]:
    """image degree x map degree of gamma_{X,F} == MLD_F(X) (plane curves)."""
    g = gauss_adjoined_plane(X, F, seed, prime, budget)
    rep = mld_compute(MLProblem(X, F), seed, prime, trials, budget)
    info = {"image_degree": g.image_degree, "map_degree": g.map_degree, "mld": rep.value}
    return g.image_degree * g.map_degree == rep.value, info


# ---- curves of maximum likelihood degree one --------------------------------------

@dataclass
class Classification:
    verdict: bool
    reason: str
    alpha: Polynomial | None = None
    scale: Fraction | None = None      # lambda with F = lambda * alpha^d on X
    dual: Polynomial | None = None     # g: X^vee pulled back to L*
    multiplicity: int | None = None
    phi: RationalFn | None = None


def _dual_in_space(model: PlaneModel, gt: Polynomial, space: Space) -> Polynomial:
    """g = g~ o pi: the dual curve of the span, as a cone in L*."""
    pi = model.project_dual(space)
    return content_normalize(gt.substitute(pi))


def _scale_factor(F: RationalFn, alpha: Polynomial, X: VarietySpec, budget=None):
    """lambda with F - lambda*alpha^d in I(X), or None."""
    if not F.is_polynomial():
        return None
    d = F.degree()
    gb = X.ideal.groebner(budget=budget)
    f = F.num.scale(F.ring.field.inv(F.den.constant_value()))
    nf_f = gb.normal_form(f)
    nf_a = gb.normal_form(alpha ** d)
    if not nf_a:
        return None
    # nf_f must be a nonzero scalar multiple of nf_a
    e, c = next(iter(nf_a.terms.items()))
    lam = F.ring.field.div(nf_f.terms.get(e, F.ring.field(0)), c)
    if not lam or nf_f != nf_a.scale(lam):
        return None
    return lam


def _alpha_on_span(model: PlaneModel, v: Sequence, X: VarietySpec) -> Polynomial:
    """A linear form on L whose restriction to W has span coefficients v."""
    ring = X.ring
    f = ring.field
    B = model.basis
    sol = solve_affine([[f(b[i]) for i in range(ring.nvars)] for b in B], [f(c) for c in v], f)
    if sol is None:
        raise NotApplicable("span basis is degenerate")
    return ring.linear_form(sol[0])


def _rational_points_p2(polys: Sequence[Polynomial]) -> list[list[Fraction]]:
    """Rational points of a zero-dimensional homogeneous system in three
    variables (projective plane), solved with sympy chart by chart."""
    syms = sympy.symbols("q0:3")
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[v ** k for v, k in zip(syms, e)])
                 for e, c in p.terms.items()) for p in polys]
    points = []
    for chart in range(3):
        fixed = {syms[j]: 0 for j in range(chart)}
        fixed[syms[chart]] = 1
        eqs = [sympy.expand(ex.subs(fixed)) for ex in exprs]
        eqs = [ex for ex in eqs if ex != 0]
        if any(ex.is_number for ex in eqs):
            continue
        free = list(syms[chart + 1:])
        head = [Fraction(0)] * chart + [Fraction(1)]
        if not eqs:
            if not free:
                points.append(head)
            continue
        try:
            sols = sympy.solve(eqs, free, dict=True)
        except NotImplementedError:
            continue
        for sol in sols:
            vals = [sol.get(v) for v in free]
            if any(v is None or not v.is_rational for v in vals):
                continue
            points.append(head + [Fraction(int(v.p), int(v.q)) for v in vals])
    return points


def _derivatives_of_order(g: Polynomial, k: int) -> list[Polynomial]:
    level = [g]
    for _ in range(k):
        nxt = []
        for p in level:
            nxt.extend(p.gradient())
        level = list({q for q in nxt if q})
    return level


def _candidate_alphas(model: PlaneModel, gt: Polynomial, Fw: RationalFn, budget=None) -> list[list]:
    """Span coefficients of candidate linear forms alpha~ (as points of W*)."""
    dg = gt.degree()
    if dg >= 3:
        partials = _derivatives_of_order(gt, dg - 2)
        return _rational_points_p2([p.to_ring(model.dual) for p in partials]) if partials else []
    # conic dual: the image of the Gauss map must be a line, and it is V(alpha~)
    gamma = _cross(model.curve.gradient(), cleared_gradient(Fw))
    big = model.ring.extend(["s_", "a0", "a1", "a2"])
    s = big.var("s_")
    gens = [big(model.curve)] + [big.var(f"a{i}") - s * big(gamma[i]) for i in range(3)]
    elim = eliminate(Ideal(gens, big), list(model.ring.names) + ["s_"], budget)
    aring = Ring(["a0", "a1", "a2"], model.ring.field)
    red = Ideal([g.to_ring(aring) for g in elim.gens], aring).reduced_generators(budget)
    if len(red) == 1 and red[0].degree() == 1:
        line = red[0]
        return [[line.derivative(i).constant_value() for i in range(3)]]
    return []


def classify_curve_mld1(X: VarietySpec, F, alpha: Polynomial | None = None, budget=None) -> Classification:
    """Decide whether a curve X has MLD_F(X) = 1 via the linear-form criterion.

    Needs: X spans a plane; F = lambda * alpha^d on X; and [alpha] is a point
    of multiplicity deg(X^vee) - 1 on the dual curve.  On success the
    homaloidal solution Phi = lambda * d^d * (alpha(grad log g))^d is emitted.
    """
    F = require_likelihood(RationalFn.coerce(F))
    if F.ring is not X.ring:
        F = F.to_ring(X.ring)
    if not F.is_polynomial() or F.degree() <= 0:
        raise NotApplicable("F must be a polynomial of positive degree")
    space = X.space
    try:
        model = plane_model(X, budget)
    except NotApplicable as exc:
        return Classification(False, str(exc))
    if model.curve.degree() <= 1:
        raise NotApplicable("X is a line")
    Xw = VarietySpec(plain_space(model.ring.names, QQ, model.dual.names), [model.curve])
    gt = dual_hypersurface(Xw, budget=budget)
    if gt is None:
        return Classification(False, "the dual of X is not a hypersurface in the dual of its span")
    g = _dual_in_space(model, gt, space)
    d = F.degree()
    Fw = RationalFn(model.pullback(F.num), model.pullback(F.den))
    if alpha is not None:
        candidates = [space.primal(alpha)]
    else:
        candidates = [_alpha_on_span(model, v, X) for v in _candidate_alphas(model, gt, Fw, budget)]
    if not candidates:
        return Classification(False, "no candidate linear form", dual=g)
    last = None
    for a in candidates:
        if a.degree() != 1 or not a.is_homogeneous():
            raise NotApplicable(f"{a} is not a linear form")
        lam = _scale_factor(F, a, X, budget)
        if lam is None or lam == 0:
            last = Classification(False, f"F is not a multiple of ({a})^{d} on X", a, dual=g)
            continue
        s_alpha = space.dual_point(a)
        mult = multiplicity_at_point(g, s_alpha)
        if mult != g.degree() - 1:
            last = Classification(False, f"[alpha] has multiplicity {mult} on the dual, not {g.degree() - 1}",
                                  a, lam, g, mult)
            continue
        phi = phi_power(g, s_alpha, d, lam)
        return Classification(True, "ok", a, lam, g, mult, phi)
    return last


def directional_log_derivative(g: Polynomial, s: Sequence) -> RationalFn:
    """alpha(grad log g) = (sum_i s_i dg/ds_i) / g for the dual point s of alpha."""
    ring = g.ring
    f = ring.field
    D = ring.zero()
    for i, c in enumerate(s):
        if c:
            D = D + g.derivative(i).scale(f(c))
    return RationalFn(D, g)


def phi_power(g: Polynomial, s_alpha: Sequence, d: int, lam=1) -> RationalFn:
    """lambda * d^d * (alpha(grad log g))^d."""
    base = directional_log_derivative(g, s_alpha)
    ring = g.ring
    return (base ** d) * RationalFn(ring.const(ring.field(lam) * d ** d))


# ---- the 2x2 family ---------------------------------------------------------------------

def s2_family(A: Sequence[Sequence]) -> tuple[VarietySpec, RationalFn]:
    """X = V(det K - trace(AK)^2) in P(S^2) and its homaloidal solution
    4 (t / (det S + t^2))^2 with t = trace(adj(A) S), for rank(A) = 1."""
    A = [[Fraction(a) for a in row] for row in A]
    if len(A) != 2 or any(len(r) != 2 for r in A) or A[0][1] != A[1][0]:
        raise ValueError("A must be a symmetric 2 x 2 matrix")
    r = rank(A, QQ)
    if r != 1:
        raise ValueError(f"A must have rank 1, got rank {r}")
    S = sym_space(2)
    X = VarietySpec(S, [S.det() - S.trace_form(A) ** 2])
    adjA = [[A[1][1], -A[0][1]], [-A[1][0], A[0][0]]]
    t = S.trace_form(adjA, dual=True)
    phi = RationalFn(t * t * 4, (S.det(dual=True) + t * t) ** 2)
    return X, phi
