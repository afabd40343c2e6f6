"""The homaloidal PDE Phi = F(-grad log Phi): verification, constructions
from linear forms and joins, and associated varieties."""

from __future__ import annotations

from dataclasses import dataclass
from .groebner import Ideal, eliminate
from .polynomial import Polynomial, Ring, content_normalize
from .rational import RationalFn, poly_gcd_list, exact_quotient, require_likelihood
from .spaces import Space, sym_space


class PDEError(ValueError):
    pass


def grad_log(phi: RationalFn) -> list[RationalFn]:
    """Component-wise grad(Phi)/Phi, with the ring's pairing weights."""
    phi = RationalFn.coerce(phi)
    if phi.is_zero():
        raise PDEError("log of the zero function")
    p, q = phi.num, phi.den
    ring = phi.ring
    out = []
    for i in range(ring.nvars):
        top = q * p.derivative(i) - p * q.derivative(i)
        w = ring.weights[i]
        if w != 1:
            top = top.scale(ring.field.inv(ring.field(w)))
        out.append(RationalFn(top, p * q))
    return out


def mle_numerators(phi: RationalFn) -> tuple[list[Polynomial], Polynomial]:
    """-grad log Phi = N / D with D = p q: returns (N, D) uncancelled."""
    p, q = phi.num, phi.den
    ring = phi.ring
    N = []
    for i in range(ring.nvars):
        top = p * q.derivative(i) - q * p.derivative(i)
        w = ring.weights[i]
        if w != 1:
            top = top.scale(ring.field.inv(ring.field(w)))
        N.append(top)
    return N, p * q


def _match_rings(F: RationalFn, phi: RationalFn):
    if F.ring.nvars != phi.ring.nvars:
        raise PDEError(f"F has {F.ring.nvars} variables but Phi has {phi.ring.nvars}")
    if F.ring.field != phi.ring.field:
        raise PDEError("F and Phi live over different fields")


def pde_check(F, phi, explain: bool = False):
    """Exact test of Phi == F(-grad log Phi).

    With F = f/g and -grad log Phi = N/D this is the polynomial identity
    f(N) * D^deg g * q == p * g(N) * D^deg f, where Phi = p/q.  Coordinates of
    the MLE are matched with the variables of F by position.
    """
    F = require_likelihood(RationalFn.coerce(F))
    phi = RationalFn.coerce(phi)
    _match_rings(F, phi)
    if phi.is_zero():
        return (False, "Phi is zero") if explain else False
    N, D = mle_numerators(phi)
    target = phi.ring
    f, g = F.num, F.den
    Ns = [target(n) for n in N]
    fN = f.substitute(Ns) if not f.is_constant() else target.const(f.constant_value())
    gN = g.substitute(Ns) if not g.is_constant() else target.const(g.constant_value())
    if not gN:
        msg = "the denominator of F vanishes identically on the MLE"
        return (False, msg) if explain else False
    df, dg = f.degree(), g.degree()
    lhs = fN * D ** dg * phi.den
    rhs = phi.num * gN * D ** df
    ok = lhs == rhs
    if explain:
        return ok, "identity holds" if ok else "F(-grad log Phi) differs from Phi"
    return ok


@dataclass
class HomaloidalSolution:
    """A solution Phi (dual ring) of the homaloidal PDE for F (primal ring)."""

    phi: RationalFn
    F: RationalFn
    space: Space
    provenance: str = "user-supplied"

    def __post_init__(self):
        self.phi = RationalFn.coerce(self.phi)
        self.F = require_likelihood(RationalFn.coerce(self.F))
        if self.phi.degree() != -self.F.degree():
            raise PDEError(f"deg Phi = {self.phi.degree()} but -deg F = {-self.F.degree()}")

    def verify(self) -> bool:
        return pde_check(self.F, self.phi)


def phi_from_alpha(g: Polynomial, alpha: Polynomial, space: Space) -> HomaloidalSolution:
    """Phi = alpha(grad log g) for the dual hypersurface V(g) and a linear
    form alpha whose point has multiplicity deg(g) - 1 on it."""
    from .mld import directional_log_derivative
    from .varieties import multiplicity_at_point

    alpha = space.primal(alpha)
    s = space.dual_point(alpha)
    mult = multiplicity_at_point(g, s)
    if mult != g.degree() - 1:
        raise PDEError(f"[alpha] has multiplicity {mult} on V(g); {g.degree() - 1} is required")
    phi = directional_log_derivative(space.dual(g), s)
    return HomaloidalSolution(phi, RationalFn(alpha), space, "from-alpha")


def join_space(a: Space, b: Space) -> Space:
    """L + W: symmetric subspaces of the same matrix size merge by position,
    anything else is concatenated."""
    if a.m is not None and a.m == b.m:
        if set(a.positions) & set(b.positions):
            raise PDEError("the two spaces share coordinates")
        return sym_space(a.m, a.primal.field, list(a.positions) + list(b.positions))
    names = a.primal.names + b.primal.names
    dnames = a.dual.names + b.dual.names
    if len(set(names)) != len(names) or len(set(dnames)) != len(dnames):
        raise PDEError("variable collision in join")
    f = a.primal.field
    weights = a.weights + b.weights
    return Space(Ring(names, f, weights), Ring(dnames, f, weights))


def phi_join(sx: HomaloidalSolution, sy: HomaloidalSolution, check: bool = True) -> HomaloidalSolution:
    """Phi_X(u_L) * Phi_Y(u_W) solves the PDE for F*G on the join."""
    space = join_space(sx.space, sy.space)
    phi = sx.phi.to_ring(space.dual) * sy.phi.to_ring(space.dual)
    F = sx.F.to_ring(space.primal) * sy.F.to_ring(space.primal)
    sol = HomaloidalSolution(phi, F, space, "join")
    if check and not sol.verify():
        raise PDEError("the joined function does not solve the PDE")
    return sol


def associated_variety(phi: RationalFn, primal: Ring, budget=None) -> Ideal:
    """Ideal of the closure of the image of -grad log Phi, in ``primal``.

    The MLE is the polynomial tuple N (common denominator dropped, common
    factor removed); the ideal is the kernel of x_i -> N_i, obtained by
    eliminating the dual variables from <x_i - N_i(u)>.
    """
    phi = RationalFn.coerce(phi)
    if phi.is_zero():
        raise PDEError("Phi is zero")
    N, _ = mle_numerators(phi)
    if not any(N):
        raise PDEError("the MLE map is not defined (grad log Phi vanishes)")
    dual = phi.ring
    if dual.field.is_rational:
        common = poly_gcd_list(N)
        if not common.is_constant():
            N = [exact_quotient(n, common) if n else n for n in N]
    if primal.nvars != dual.nvars:
        raise PDEError("primal and dual rings differ in size")
    big = dual.extend(primal.names, primal.weights)
    gens = [big.var(x) - big(n) for x, n in zip(primal.names, N)]
    elim = eliminate(Ideal(gens, big), list(dual.names), budget)
    out = [content_normalize(g.to_ring(primal)) for g in elim.gens]
    return Ideal(Ideal(out, primal).reduced_generators(budget), primal)
