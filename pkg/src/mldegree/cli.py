"""Command-line interface.

Every subcommand reads one session file (``join`` reads two), runs one
operation and prints a report.  Exit codes: 0 success, 1 the mathematical
verdict is false, 2 input error, 3 resource budget exhausted (or random
trials that keep disagreeing).
"""

from __future__ import annotations

import secrets
import sys
from dataclasses import dataclass, field

import click

from .counting import DEFAULT_PRIME, TrialDisagreement
from .fields import QQ, FieldError, GF, is_prime
from .groebner import Budget, DEFAULT_BUDGET, Ideal, PositiveDimensional, ResourceExhausted
from .homaloidal import (HomaloidalSolution, PDEError, associated_variety, pde_check,
                         phi_from_alpha, phi_join)
from .mld import MLProblem, NotApplicable, classify_curve_mld1, mld_compute, mld_polar_formula, s2_family
from .polynomial import LEX, GREVLEX, RingError
from .report import emit_report
from .session import Session, SessionError, load_session
from .varieties import (VarietySpec, conormal, dual_variety, f_general_emptiness,
                        gradient_multidegrees, multiplicity_at_point, perturb, polar_degrees)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

INPUT_ERRORS = (SessionError, FieldError, NotApplicable, PDEError, RingError, OSError,
                PositiveDimensional, ValueError)


@dataclass
class Options:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 3
    budget: int | None = None
    params: dict = field(default_factory=dict)

    def make_budget(self) -> Budget:
        return Budget(self.budget if self.budget is not None else DEFAULT_BUDGET)


# ---- session helpers ---------------------------------------------------------

def _variety(s: Session, name: str = "X", required: bool = True) -> VarietySpec:
    if name not in s:
        if required:
            raise SessionError(f"session does not bind {name!r}")
        return VarietySpec(s.space, [])
    I = s.get(name, "ideal")
    if I.ring is not s.space.primal:
        raise SessionError(f"{name} must be an ideal in the primal variables {', '.join(s.space.primal.names)}")
    return VarietySpec(s.space, list(I.gens))


def _function(s: Session, name: str, dual: bool = False):
    f = s.get(name, "function")
    want = s.space.dual if dual else s.space.primal
    if f.num.is_constant() and f.den.is_constant():
        return f.to_ring(want)
    if f.ring is not want:
        side = "dual" if dual else "primal"
        raise SessionError(f"{name} must be a function of the {side} variables {', '.join(want.names)}")
    return f


def _polynomial(s: Session, name: str, dual: bool | None = None):
    f = s.get(name, "function")
    if not f.is_polynomial():
        raise SessionError(f"{name} must be a polynomial")
    p = f.num.scale(f.ring.field.inv(f.den.constant_value()))
    if dual is not None:
        want = s.space.dual if dual else s.space.primal
        p = p.to_ring(want) if p.is_constant() else p
        if p.ring is not want:
            raise SessionError(f"{name} must live in the {'dual' if dual else 'primal'} ring")
    return p


# ---- operations ------------------------------------------------------------------
# each returns (result, verdict) where verdict is None (no verdict), True or False

def op_gb(sessions, o: Options, budget):
    s = sessions[0]
    I = s.get(o.params.get("ideal") or "X", "ideal")
    if o.params.get("modular"):
        I = I.map_field(GF(o.prime))
    order = LEX if o.params.get("order") == "lex" else GREVLEX
    gb = I.groebner(order, budget)
    gens = list(gb.basis)
    return {"ideal": Ideal(gens, I.ring) if gens else Ideal([], I.ring),
            "order": o.params.get("order") or "grevlex",
            "field": "QQ" if I.ring.field.is_rational else f"GF({I.ring.field.p})"}, None


def op_mld(sessions, o: Options, budget):
    s = sessions[0]
    X = _variety(s, required=False)
    F = _function(s, o.params.get("function") or "F")
    method = o.params.get("method") or "direct"
    if method == "polar-formula":
        rep = mld_polar_formula(X, F, o.seed, o.prime, o.trials, budget)
    else:
        P = MLProblem(X, F)
        if X.gens and not P.check_not_in_divisor(budget):
            raise NotApplicable("X is contained in the divisor of F")
        rep = mld_compute(P, o.seed, o.prime, o.trials, budget, check_slice=bool(o.params.get("check_slice")))
    return rep, None


def op_polar(sessions, o, budget):
    return polar_degrees(_variety(sessions[0]), o.seed, o.prime, o.trials, budget), None


def op_grad_mdeg(sessions, o, budget):
    F = _function(sessions[0], o.params.get("function") or "F")
    return gradient_multidegrees(F, o.seed, o.prime, o.trials, budget), None


def op_dual(sessions, o, budget):
    return dual_variety(_variety(sessions[0]), o.seed, budget), None


def op_conormal(sessions, o, budget):
    return conormal(_variety(sessions[0]), o.seed, budget), None


def op_mult(sessions, o, budget):
    s = sessions[0]
    g = _polynomial(s, o.params.get("poly") or "g")
    pt = s.get(o.params.get("point") or "point", "vector")
    if len(pt) != g.ring.nvars:
        raise SessionError(f"the point has {len(pt)} coordinates, the polynomial {g.ring.nvars} variables")
    for c in pt:
        if not isinstance(c, type(QQ(0))):
            raise SessionError("point coordinates must be numbers")
    return {"value": multiplicity_at_point(g, pt)}, None


def op_f_general(sessions, o, budget):
    s = sessions[0]
    X = _variety(s)
    F = _function(s, o.params.get("function") or "F")
    empty = f_general_emptiness(X, F, o.seed, o.prime, budget=budget)
    return {"value": empty, "f_general": {"empty": empty, "irreducible": "unchecked"}}, empty


def op_classify(sessions, o, budget):
    s = sessions[0]
    X = _variety(s)
    F = _function(s, o.params.get("function") or "F")
    alpha = None
    if not o.params.get("search") and "alpha" in s:
        alpha = _polynomial(s, "alpha", dual=False)
    c = classify_curve_mld1(X, F, alpha, budget)
    return c, c.verdict


def op_pde(sessions, o, budget):
    s = sessions[0]
    F = _function(s, o.params.get("function") or "F")
    phi = _function(s, o.params.get("phi") or "Phi", dual=True)
    ok, why = pde_check(F, phi, explain=True)
    return {"value": ok, "reason": why}, ok


def op_assoc(sessions, o, budget):
    s = sessions[0]
    phi = _function(s, o.params.get("phi") or "Phi", dual=True)
    I = associated_variety(phi, s.space.primal, budget)
    out = {"ideal": I}
    verdict = None
    if "X" in s:
        verdict = I.equals(s.get("X", "ideal").to_ring(s.space.primal), budget)
        out["equals_X"] = verdict
    return out, verdict


def op_phi_from_alpha(sessions, o, budget):
    s = sessions[0]
    alpha = _polynomial(s, "alpha", dual=False)
    if "g" in s:
        g = _polynomial(s, "g", dual=True)
    else:
        gens = dual_variety(_variety(s), o.seed, budget).gens
        if len(gens) != 1:
            raise NotApplicable("the dual of X is not a hypersurface")
        g = gens[0]
    sol = phi_from_alpha(g, alpha, s.space)
    ok = sol.verify()
    return {"value": sol.phi, "dual": g, "pde": ok}, ok


def op_join(sessions, o, budget):
    if len(sessions) != 2:
        raise SessionError("join needs exactly two sessions")
    sols = []
    for s in sessions:
        F = _function(s, "F")
        phi = _function(s, "Phi", dual=True)
        sols.append(HomaloidalSolution(phi, F, s.space, "session"))
    sol = phi_join(sols[0], sols[1], check=False)
    ok = sol.verify()
    return {"value": sol.phi, "F": sol.F, "variables": list(sol.space.primal.names), "pde": ok}, ok


def op_s2_family(sessions, o, budget):
    s = sessions[0]
    A = s.get(o.params.get("matrix") or "A", "matrix")
    for row in A:
        for a in row:
            if not isinstance(a, type(QQ(0))):
                raise SessionError("matrix entries must be numbers")
    X, phi = s2_family(A)
    ok = pde_check(X.space.det(), phi)
    return {"ideal": X.ideal, "phi": phi, "pde": ok}, ok


def op_perturb(sessions, o, budget):
    X = _variety(sessions[0])
    Y = perturb(X, o.seed, identity=bool(o.params.get("identity")))
    return {"ideal": Y.ideal}, None


OPERATIONS = {
    "gb": op_gb, "mld": op_mld, "polar": op_polar, "grad-mdeg": op_grad_mdeg, "dual": op_dual,
    "conormal": op_conormal, "mult": op_mult, "f-general": op_f_general,
    "classify-curve": op_classify, "pde-check": op_pde, "assoc-variety": op_assoc,
    "phi-from-alpha": op_phi_from_alpha, "join": op_join, "s2-family": op_s2_family,
    "perturb": op_perturb,
}

# commands that draw random numbers (their reports echo the seed and prime)
RANDOMIZED = {"mld", "polar", "grad-mdeg", "dual", "conormal", "f-general", "perturb", "phi-from-alpha"}


def execute(command: str, paths, opts: Options) -> tuple[dict, int]:
    """Run one subcommand on session files; returns (report dict, exit code)."""
    from .report import payload

    budget = opts.make_budget()
    inputs: dict = {}
    try:
        sessions = [load_session(p) for p in paths]
        inputs = {"session": sessions[0].digest} if len(sessions) == 1 else \
            {"sessions": [s.digest for s in sessions]}
        result, verdict = OPERATIONS[command](sessions, opts, budget)
    except (ResourceExhausted, TrialDisagreement) as exc:
        return _failure(command, inputs, opts, "budget-exhausted", exc), EXIT_BUDGET
    except INPUT_ERRORS as exc:
        return _failure(command, inputs, opts, "input-error", exc), EXIT_INPUT
    data = payload(result, command, inputs)
    if command in RANDOMIZED:
        data["seed"] = opts.seed
        data.setdefault("prime", opts.prime)
    return data, EXIT_FALSE if verdict is False else EXIT_OK


def _failure(command, inputs, opts, status, exc) -> dict:
    return {"command": command, "inputs": inputs, "status": status, "error": str(exc),
            "seed": opts.seed, "prime": opts.prime}


# ---- click wiring ------------------------------------------------------------------

def _check_prime(ctx, param, value):
    if value is None:
        return DEFAULT_PRIME
    if not (3 <= value < 2**31) or not is_prime(value):
        raise click.BadParameter(f"{value} is not a prime in [3, 2^31)")
    return value


def _check_positive(ctx, param, value):
    if value is not None and value < 1:
        raise click.BadParameter("must be at least 1")
    return value


def _check_seed(ctx, param, value):
    if value is None:
        return secrets.randbelow(2**31)
    if value < 0:
        raise click.BadParameter("must be non-negative")
    return value


def common_options(fn):
    opts = [
        click.option("--prime", type=int, default=None, callback=_check_prime,
                     help=f"Prime for randomized computations (default {DEFAULT_PRIME})."),
        click.option("--seed", type=int, default=None, callback=_check_seed,
                     help="Random seed (default: fresh entropy; always echoed)."),
        click.option("--trials", type=int, default=3, callback=_check_positive,
                     help="Independent random trials that must agree."),
        click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json"),
        click.option("--budget", type=int, default=None, callback=_check_positive,
                     help="Maximum number of Gröbner reduction steps."),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                     help="Also write the report to this file."),
    ]
    for o in reversed(opts):
        fn = o(fn)
    return fn


def _finish(command, paths, prime, seed, trials, fmt, budget, out, **params):
    opts = Options(prime, seed, trials, budget, params)
    data, code = execute(command, paths, opts)
    text = emit_report(data, fmt)
    click.echo(text)
    if "error" in data:
        click.echo(f"error: {data['error']}", err=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    sys.exit(code)


SESSION = click.argument("session", type=click.Path(exists=True, dir_okay=False))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Maximum likelihood degrees, dual varieties and homaloidal solutions."""


@main.command("gb")
@SESSION
@click.option("--ideal", default=None, help="Name of the ideal binding (default X).")
@click.option("--order", type=click.Choice(["grevlex", "lex"]), default="grevlex")
@click.option("--modular", is_flag=True, help="Compute over GF(prime) instead of QQ.")
@common_options
def cmd_gb(session, **kw):
    """Reduced Gröbner basis of an ideal."""
    _finish("gb", [session], **kw)


@main.command("mld")
@SESSION
@click.option("--method", type=click.Choice(["direct", "polar-formula"]), default="direct")
@click.option("--check-slice", is_flag=True, help="Recount without the normalization hyperplane.")
@click.option("--function", default=None, help="Name of the F binding (default F).")
@common_options
def cmd_mld(session, **kw):
    """Maximum likelihood degree of X with respect to F."""
    _finish("mld", [session], **kw)


@main.command("polar")
@SESSION
@common_options
def cmd_polar(session, **kw):
    """Polar degrees of X."""
    _finish("polar", [session], **kw)


@main.command("grad-mdeg")
@SESSION
@click.option("--function", default=None, help="Name of the F binding (default F).")
@common_options
def cmd_grad_mdeg(session, **kw):
    """Multidegrees of the graph of the gradient of F."""
    _finish("grad-mdeg", [session], **kw)


@main.command("dual")
@SESSION
@common_options
def cmd_dual(session, **kw):
    """Ideal of the dual variety of X."""
    _finish("dual", [session], **kw)


@main.command("conormal")
@SESSION
@common_options
def cmd_conormal(session, **kw):
    """Bihomogeneous ideal of the conormal variety of X."""
    _finish("conormal", [session], **kw)


@main.command("mult")
@SESSION
@click.option("--poly", default=None, help="Name of the polynomial binding (default g).")
@click.option("--point", default=None, help="Name of the point binding (default point).")
@common_options
def cmd_mult(session, **kw):
    """Multiplicity of a point on a hypersurface."""
    _finish("mult", [session], **kw)


@main.command("f-general")
@SESSION
@click.option("--function", default=None, help="Name of the F binding (default F).")
@common_options
def cmd_f_general(session, **kw):
    """Whether the conormal variety of X misses the gradient graph of F."""
    _finish("f-general", [session], **kw)


@main.command("classify-curve")
@SESSION
@click.option("--search", is_flag=True, help="Ignore a bound alpha and search for one.")
@click.option("--function", default=None, help="Name of the F binding (default F).")
@common_options
def cmd_classify(session, **kw):
    """Decide whether a curve has maximum likelihood degree one."""
    _finish("classify-curve", [session], **kw)


@main.command("pde-check")
@SESSION
@click.option("--phi", default=None, help="Name of the Phi binding (default Phi).")
@click.option("--function", default=None, help="Name of the F binding (default F).")
@common_options
def cmd_pde(session, **kw):
    """Exact check of Phi = F(-grad log Phi)."""
    _finish("pde-check", [session], **kw)


@main.command("assoc-variety")
@SESSION
@click.option("--phi", default=None, help="Name of the Phi binding (default Phi).")
@common_options
def cmd_assoc(session, **kw):
    """Ideal of the closure of the image of -grad log Phi."""
    _finish("assoc-variety", [session], **kw)


@main.command("phi-from-alpha")
@SESSION
@common_options
def cmd_phi_from_alpha(session, **kw):
    """Homaloidal solution alpha(grad log g) for the dual hypersurface g."""
    _finish("phi-from-alpha", [session], **kw)


@main.command("join")
@SESSION
@click.argument("other", type=click.Path(exists=True, dir_okay=False))
@common_options
def cmd_join(session, other, **kw):
    """Product solution for the join of two sessions."""
    _finish("join", [session, other], **kw)


@main.command("s2-family")
@SESSION
@click.option("--matrix", default=None, help="Name of the matrix binding (default A).")
@common_options
def cmd_s2_family(session, **kw):
    """The curve V(det K - trace(AK)^2) and its solution, for rank-one A."""
    _finish("s2-family", [session], **kw)


@main.command("perturb")
@SESSION
@click.option("--identity", is_flag=True, help="Use the identity instead of a random matrix.")
@common_options
def cmd_perturb(session, **kw):
    """Apply a seeded random invertible linear map to X."""
    _finish("perturb", [session], **kw)


@main.command("paper-examples")
@click.option("--budget", type=int, default=None, callback=_check_positive,
              help="Maximum number of Gröbner reduction steps per row.")
@click.option("--expect", multiple=True, metavar="ROW=VALUE",
              help="Override the expected value of a row (for negative controls).")
@click.option("--criterion", type=int, multiple=True, help="Run only these criteria.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def cmd_paper_examples(budget, expect, criterion, fmt):
    """Run the golden suite and print expected vs computed values."""
    from .golden import build_rows, parse_override, run_suite, summary_json, summary_table

    try:
        overrides = dict(parse_override(e) for e in expect)
        known = {r.name for r in build_rows()}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ValueError(f"unknown rows: {', '.join(unknown)}")
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--expect")
    results = run_suite(budget=budget, overrides=overrides, criteria=set(criterion) or None)
    click.echo(summary_json(results) if fmt == "json" else summary_table(results))
    if any(r.status == "budget" for r in results):
        sys.exit(EXIT_BUDGET)
    sys.exit(EXIT_OK if all(r.passed for r in results) else EXIT_FALSE)


if __name__ == "__main__":  # pragma: no cover
    main()
