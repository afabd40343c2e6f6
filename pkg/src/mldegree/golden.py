"""Golden suite: every worked example with a published value, recomputed
end to end from the shipped session corpus.

Rows are grouped into ten acceptance criteria (plus additional reference
rows).  ``run_suite`` drives the CLI operations (``execute``) with a fixed
seed, so the suite exercises exactly the code a user runs.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable

from .cli import EXIT_BUDGET, EXIT_INPUT, Options, execute
from .counting import DEFAULT_PRIME
from .fields import GF
from .groebner import (Budget, DEFAULT_BUDGET, Ideal, ResourceExhausted, degree_zero_dim,
                       saturate_principal)
from .homaloidal import mle_numerators
from .linalg import poly_minors
from .mld import (MLProblem, gauss_adjoined_plane, mld_compute, product_formula_check)
from .polynomial import LEX, GREVLEX, Polynomial, content_normalize
from .rational import gradient
from .session import SessionError, format_value, load_session, parse_session
from .varieties import VarietySpec, dual_variety, gradient_graph, jacobian

SEED = 7

CRITERIA = {
    1: "gradient multidegrees of det on S^3",
    2: "MLD of a generic quadric in P(S^3)",
    3: "MLD and polar degrees of a quintic curve in P(S^3)",
    4: "MLD and product formula for a plane cubic in P(S^2)",
    5: "certificate chain for a conic of MLD one",
    6: "certificate chain for the cuspidal cubic",
    7: "homaloidal solution for x0*x3 and its associated surface",
    8: "join of two homaloidal solutions",
    9: "property suite",
    10: "negative controls",
}


class InputFailure(RuntimeError):
    pass


@dataclass
class Row:
    name: str
    criterion: int | None
    description: str
    expected: Any
    compute: Callable[[int | None], Any]


@dataclass
class RowResult:
    name: str
    criterion: int | None
    description: str
    expected: Any
    computed: Any
    status: str          # pass | fail | error | budget
    seconds: float
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


# ---- helpers ---------------------------------------------------------------------

def session_path(name: str) -> str:
    return str(resources.files("mldegree") / "sessions" / f"{name}.txt")


def session(name: str):
    return load_session(session_path(name))


def cli(command: str, *names: str, key: str | None = "value", **params):
    """A row computation running a CLI operation on shipped sessions."""
    def run(budget):
        opts = Options(DEFAULT_PRIME, SEED, 3, budget, params)
        data, code = execute(command, [session_path(n) for n in names], opts)
        if code == EXIT_BUDGET:
            raise ResourceExhausted(data.get("error", "budget exhausted"))
        if code == EXIT_INPUT:
            raise InputFailure(data.get("error", "input error"))
        return data if key is None else data[key]
    return run


def rejected(command: str, *names: str, **params):
    """True iff the operation rejects its input (exit code 2)."""
    def run(budget):
        opts = Options(DEFAULT_PRIME, SEED, 3, budget, params)
        data, code = execute(command, [session_path(n) for n in names], opts)
        if code == EXIT_BUDGET:
            raise ResourceExhausted(data.get("error", "budget exhausted"))
        return code == EXIT_INPUT
    return run


def canonical(ring_decl: str, expr: str) -> str:
    """Canonical text of an expression transcribed from a reference."""
    s = parse_session(f"{ring_decl}; E = {expr};")
    return format_value(s.bindings["E"])


def canonical_gens(ring_decl: str, *exprs: str) -> list[str]:
    s = parse_session(f"{ring_decl}; I = ideal({', '.join(exprs)});")
    return [str(content_normalize(g)) for g in s.bindings["I"].gens]


def _budget(budget):
    return Budget(budget if budget is not None else DEFAULT_BUDGET)


# ---- property checks (criterion 9) ------------------------------------------------

def slice_invariance(names):
    def run(budget):
        out = {}
        for n in names:
            data = cli("mld", n, key=None, check_slice=True)(budget)
            out[n] = data.get("details", {}).get("slice_invariant", False)
        return all(out.values())
    return run


def alpha_mld_vs_dual_degree(budget):
    s = session("cubic_S2")
    X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
    alpha = s.polynomial("alpha")
    mld = mld_compute(MLProblem(X, alpha), SEED, budget=_budget(budget)).value
    dual = dual_variety(X.with_field(GF(DEFAULT_PRIME)), SEED, _budget(budget))
    gens = Ideal(dual.gens, dual.ring).reduced_generators()
    return [mld, gens[0].degree() if len(gens) == 1 else None]


def biduality(name: str):
    def run(budget):
        s = session(name)
        X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
        D = dual_variety(X, SEED, _budget(budget))
        back = VarietySpec(type(s.space)(s.space.dual, s.space.primal, s.space.m, s.space.positions),
                           list(D.gens))
        DD = dual_variety(back, SEED, _budget(budget))
        return DD.equals(X.ideal.to_ring(DD.ring), _budget(budget))
    return run


def _oracle_systems():
    """Small zero-dimensional systems over GF(p) with known degrees."""
    from .polynomial import Ring
    fp = GF(DEFAULT_PRIME)
    R = Ring(["a", "b", "c", "d"], fp)
    a, b, c, d = R.gens
    katsura3 = [a + 2*b + 2*c + 2*d - 1, a**2 + 2*b**2 + 2*c**2 + 2*d**2 - a,
                2*a*b + 2*b*c + 2*c*d - b, b**2 + 2*a*c + 2*b*d - c]
    T = Ring(["x", "y", "z"], fp)
    x, y, z = T.gens
    katsura2 = [x + 2*y + 2*z - 1, x**2 + 2*y**2 + 2*z**2 - x, 2*x*y + 2*y*z - y]
    rng = random.Random(SEED)
    P = Ring(["p", "q", "r"], fp)
    p, q, r = P.gens
    monomials = (p*p, p*q, p*r, q*q, q*r, r*r, p, q, r, P.one())
    dense = [sum((P.const(rng.randrange(1, 97)) * m for m in monomials), P.zero()) for _ in range(3)]
    return {"katsura3": (katsura3, 8), "katsura2": (katsura2, 4), "dense-quadrics": (dense, 8)}


def gb_oracles(budget):
    """S-polynomials of every Gröbner basis reduce to zero, and zero-dimensional
    degrees agree between grevlex and lex."""
    from .groebner import normal_form
    for name, (eqs, expected_degree) in _oracle_systems().items():
        I = Ideal(eqs)
        for order in (GREVLEX, LEX):
            G = I.groebner(order, _budget(budget))
            basis = list(G)
            for i in range(len(basis)):
                for j in range(i + 1, len(basis)):
                    f, g = basis[i], basis[j]
                    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
                    lcm = tuple(max(u, v) for u, v in zip(ef, eg))
                    R = f.ring
                    mf = Polynomial(R, {tuple(l - e for l, e in zip(lcm, ef)): R.field(1)})
                    mg = Polynomial(R, {tuple(l - e for l, e in zip(lcm, eg)): R.field(1)})
                    sp = f * mf.scale(R.field.inv(cf)) - g * mg.scale(R.field.inv(cg))
                    if normal_form(sp, G):
                        return False
        d1 = degree_zero_dim(Ideal(eqs), _budget(budget))
        d2 = len(_standard_monomials_lex(eqs, budget))
        if d1 != d2 or (expected_degree is not None and d1 != expected_degree):
            return False
    return True


def _standard_monomials_lex(eqs, budget):
    """Standard monomials of a lex basis, enumerated directly."""
    G = Ideal(eqs).groebner(LEX, _budget(budget))
    lead = [g.leading_term(LEX)[0] for g in G]
    n = eqs[0].ring.nvars
    bound = [None] * n
    for e in lead:
        nz = [i for i in range(n) if e[i]]
        if len(nz) == 1:
            bound[nz[0]] = e[nz[0]] if bound[nz[0]] is None else min(bound[nz[0]], e[nz[0]])
    out = []

    def rec(i, cur):
        if i == n:
            if not any(all(c >= l for c, l in zip(cur, e)) for e in lead):
                out.append(tuple(cur))
            return
        for k in range(bound[i]):
            rec(i + 1, cur + [k])
    rec(0, [])
    return out


def saturation_idempotent(budget):
    s = session("cubic_S2")
    X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
    from .mld import critical_ideal_affine
    fp = GF(DEFAULT_PRIME)
    P = MLProblem(X.with_field(fp), s.get("F", "function").map_field(fp))
    u = [3, 5, 7]
    I = critical_ideal_affine(P, u, SEED, _budget(budget))
    h = P.F.num
    J = saturate_principal(I, h, _budget(budget))
    return J.equals(I, _budget(budget)) and saturate_principal(J, h, _budget(budget)).equals(J, _budget(budget))


CORPUS = ["conic_mld1_S2", "cubic_S2", "cubic_S2_power", "cusp_in_S3", "cusp_plane", "cuspidal_cubic",
          "det_S3", "gauss_conic", "generic_conic_S2", "join_block", "join_corner", "join_target",
          "quadric_P2", "quadric_S3", "quintic_S3", "rank1_family", "rank2_family", "twisted_cubic",
          "twisted_cubic_dual"]


def _session_text(s) -> str:
    sp = s.space
    if sp.m is not None:
        head = f"ring sym {sp.m} " + " ".join(sp.primal.names) + ";"
    else:
        head = "ring " + " ".join(sp.primal.names) + " dual " + " ".join(sp.dual.names) + ";"
    body = [f"{k} = {format_value(v)};" for k, v in s.bindings.items() if k not in ("K", "S")]
    return "\n".join([head] + body)


def parser_round_trip(budget):
    """parse(print(session)) reproduces every binding of the corpus."""
    for name in CORPUS:
        s = session(name)
        t = parse_session(_session_text(s))
        for k, v in s.bindings.items():
            w = t.bindings[k]
            if format_value(v) != format_value(w):
                return False
    return True


def parser_fuzz(budget, count: int = 10_000):
    """Random byte strings (and mutated corpus text) only ever raise SessionError."""
    rng = random.Random(SEED)
    texts = [open(session_path(n), encoding="utf-8").read() for n in CORPUS]
    alphabet = "ring sym det adj trace ideal matrix xyzk12s0()[]+-*/^=;,#\n 0123456789"
    for i in range(count):
        if i % 3 == 0:
            raw = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 40)))
            text = raw.decode("utf-8", errors="replace")
        elif i % 3 == 1:
            text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 60)))
        else:
            base = rng.choice(texts)
            k = rng.randrange(len(base))
            text = base[:k] + rng.choice(alphabet) + base[k + rng.randrange(0, 3):]
        try:
            parse_session(text)
        except SessionError:
            pass
    return True


# ---- additional reference checks ---------------------------------------------------

def gradient_strings(ring_decl: str, expr: str):
    def run(budget):
        s = parse_session(f"{ring_decl}; E = {expr};")
        return [str(g.num) for g in gradient(s.get("E", "function"))]
    return run


def jacobian_row(budget):
    s = session("gauss_conic")
    X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
    return [str(p) for p in jacobian(X)[0]]


def substitution_example(budget):
    s = session("cuspidal_cubic")
    g = s.polynomial("g")
    big = g.ring.extend(["t"])
    u, v, w, t = big.gens
    return str(g.substitute([u, v, w + t]))


def gauss_point_formula(name):
    def run(budget):
        s = session(name)
        X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
        g = gauss_adjoined_plane(X, s.get("F", "function"), SEED, budget=_budget(budget))
        return {"point": [str(p) for p in g.point_formula], "image": [str(p) for p in g.image.gens],
                "image_degree": g.image_degree, "map_degree": g.map_degree}
    return run


def product_formula(name):
    def run(budget):
        s = session(name)
        X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
        ok, info = product_formula_check(X, s.get("F", "function"), SEED, budget=_budget(budget))
        return [ok, info["image_degree"] * info["map_degree"], info["mld"]]
    return run


def mle_direction(budget):
    """-grad log Phi up to a common factor."""
    from .mld import _primitive_vector
    s = session("conic_mld1_S2")
    N, _ = mle_numerators(s.get("Phi", "function"))
    return [str(p) for p in _primitive_vector(N)]


def adjugate_graph(budget):
    from .spaces import sym_space
    S = sym_space(2)
    G = gradient_graph(S.det(), S, SEED, _budget(budget))
    R = G.ring
    k11, k12, k22, s11, s12, s22 = R.gens
    return G.equals(Ideal(poly_minors([[s11, s12, s22], [k22, -k12, k11]], 2), R), _budget(budget))


def phi_matches(command: str, names: tuple, key: str, reference: str, ref_binding: str = "Phi"):
    """Computed Phi equals a transcribed reference Phi, compared as canonical text."""
    def run(budget):
        data = cli(command, *names, key=None)(budget)
        ref = format_value(session(reference).bindings[ref_binding])
        return data[key] == ref
    return run


def parse_example(budget):
    s = parse_session("ring sym 2; F = det; X = ideal(det - k11^2);")
    return [format_value(s.bindings["F"]), format_value(s.bindings["X"])]


# ---- the rows -----------------------------------------------------------------------

S2 = "ring sym 2"
PLANE = "ring x y z dual u v w"
P3 = "ring x0 x1 x2 x3 dual u0 u1 u2 u3"
QUARTIC = "x1^2*x2^2 - 4*x0*x2^3 - 4*x1^3*x3 + 18*x0*x1*x2*x3 - 27*x0^2*x3^2"
PHI_CONIC = "4*(s22/(s11*s22 - s12^2 + s22^2))^2"


def build_rows() -> list[Row]:
    R = Row
    rows = [
        # 1
        R("grad-mdeg/det_S3", 1, "mu(det) on S^3", [1, 2, 4, 4, 2, 1], cli("grad-mdeg", "det_S3", key="vector")),
        # 2
        R("mld/quadric_S3", 2, "MLD of a generic quadric, direct count", 26, cli("mld", "quadric_S3")),
        R("mld-polar/quadric_S3", 2, "MLD of a generic quadric, polar formula", 26,
          cli("mld", "quadric_S3", method="polar-formula")),
        R("polar/quadric_S3", 2, "polar degrees of a quadric", [2, 2, 2, 2, 2], cli("polar", "quadric_S3", key="vector")),
        # 3
        R("mld/quintic_S3", 3, "MLD of the quintic curve, direct count", 16, cli("mld", "quintic_S3")),
        R("mld-polar/quintic_S3", 3, "MLD of the quintic curve, polar formula", 16,
          cli("mld", "quintic_S3", method="polar-formula")),
        R("polar/quintic_S3", 3, "polar degrees of the quintic curve", [8, 4, 0, 0, 0],
          cli("polar", "quintic_S3", key="vector")),
        # 4
        R("mld/cubic_S2", 4, "MLD of a smooth plane cubic", 9, cli("mld", "cubic_S2")),
        R("product-formula/cubic_S2", 4, "image degree x map degree = MLD", [True, 9, 9], product_formula("cubic_S2")),
        R("mld-polar/cubic_S2", 4, "deg C + deg C^vee", 9, cli("mld", "cubic_S2", method="polar-formula")),
        R("polar/cubic_S2", 4, "polar degrees of a plane cubic", [6, 3], cli("polar", "cubic_S2", key="vector")),
        # 5
        R("classify/conic_mld1", 5, "classifier verdict with alpha = k11", True, cli("classify-curve", "conic_mld1_S2")),
        R("classify-phi/conic_mld1", 5, "emitted Phi equals the closed form", True,
          phi_matches("classify-curve", ("conic_mld1_S2",), "phi", "conic_mld1_S2")),
        R("pde/conic_mld1", 5, "pde-check(det, Phi)", True, cli("pde-check", "conic_mld1_S2")),
        R("assoc/conic_mld1", 5, "associated variety of Phi", canonical_gens(S2, "k11*k22 - k12^2 - k11^2"),
          cli("assoc-variety", "conic_mld1_S2", key="ideal")),
        R("assoc-equals-X/conic_mld1", 5, "associated variety equals I(X)", True,
          cli("assoc-variety", "conic_mld1_S2", key="equals_X")),
        # 6
        R("dual/cuspidal_cubic", 6, "dual of the cuspidal cubic", canonical_gens(PLANE, "4*u^3 - 54*u*v^2 + 27*v^2*w"),
          cli("dual", "cuspidal_cubic", key="ideal")),
        R("mult/cuspidal_cubic", 6, "multiplicity of (0,0,1) on the dual", 2, cli("mult", "cuspidal_cubic")),
        R("phi-from-alpha/cuspidal_cubic", 6, "Phi for alpha = 8z",
          canonical(PLANE, "8*27*v^2/(4*u^3 - 54*u*v^2 + 27*v^2*w)"), cli("phi-from-alpha", "cuspidal_cubic")),
        R("classify/cuspidal_cubic", 6, "classifier verdict for the cubic F", True,
          cli("classify-curve", "cuspidal_cubic")),
        R("pde/cuspidal_cubic", 6, "pde-check(F, 27 Phi_alpha^3)", True, cli("pde-check", "cuspidal_cubic")),
        # 7
        R("pde/twisted_cubic_dual", 7, "pde-check(x0*x3, Phi)", True, cli("pde-check", "twisted_cubic_dual")),
        R("assoc/twisted_cubic_dual", 7, "associated variety is the quartic surface", canonical_gens(P3, QUARTIC),
          cli("assoc-variety", "twisted_cubic_dual", key="ideal")),
        # 8
        R("join/block+corner", 8, "joined Phi equals Phi * 1/s33", True,
          phi_matches("join", ("join_block", "join_corner"), "value", "join_target")),
        R("join-pde/block+corner", 8, "joined Phi solves the PDE for det restricted", True,
          cli("join", "join_block", "join_corner", key="pde")),
        R("pde/join_target", 8, "pde-check(det|_V, Phi * 1/s33)", True, cli("pde-check", "join_target")),
        # 9
        R("slice-invariance", 9, "normalization slice never changes a count", True,
          slice_invariance(["cubic_S2", "conic_mld1_S2", "generic_conic_S2", "cuspidal_cubic", "quintic_S3",
                            "cusp_in_S3", "quadric_S3"])),
        R("alpha-mld=dual-degree/cubic_S2", 9, "MLD for a generic linear form = degree of the dual", [6, 6],
          alpha_mld_vs_dual_degree),
        R("biduality/generic_conic", 9, "dual of the dual is the conic", True, biduality("generic_conic_S2")),
        R("biduality/cusp", 9, "dual of the dual is the cuspidal cubic", True, biduality("cusp_plane")),
        R("gb-oracles", 9, "S-pairs reduce to zero; grevlex and lex degrees agree", True, gb_oracles),
        R("saturation-idempotence", 9, "saturating twice changes nothing", True, saturation_idempotent),
        R("parser-round-trip", 9, "parse(print(s)) = s on the corpus", True, parser_round_trip),
        R("parser-fuzz", 9, "10^4 fuzz inputs raise only session errors", True, parser_fuzz),
        R("mld-power/cubic_S2", 9, "MLD depends only on the divisor of F (det^2)", 9, cli("mld", "cubic_S2_power")),
        # 10
        R("f-general/conic_mld1", 10, "not F-general", False, cli("f-general", "conic_mld1_S2")),
        R("s2-family/rank2", 10, "rank-two matrix is rejected", True, rejected("s2-family", "rank2_family")),
        R("classify/generic_conic", 10, "generic conic is not of MLD one", False,
          cli("classify-curve", "generic_conic_S2", search=True)),
        R("mld/generic_conic", 10, "deg C + deg C^vee for a conic", 4, cli("mld", "generic_conic_S2")),
        # additional reference values
        R("gradient/conic_mld1", None, "weighted gradient of k11*k22 - k12^2 - k11^2",
          ["-2*k11 + k22", "-k12", "k11"], gradient_strings(S2, "k11*k22 - k12^2 - k11^2")),
        R("gradient/plane-quadric", None, "gradient of x0*x1 - x2^2", ["x1", "x0", "-2*x2"],
          gradient_strings("ring x0 x1 x2", "x0*x1 - x2^2")),
        R("jacobian/gauss_conic", None, "Jacobian row of x0*x1 - x2^2 - x0^2", ["-2*x0 + x1", "x0", "-2*x2"],
          jacobian_row),
        R("substitute/cusp-dual", None, "g(u, v, w + t)",
          "4*u^3 - 54*u*v^2 + 27*v^2*w + 27*v^2*t", substitution_example),
        R("dual/conic_mld1", None, "dual of the conic of MLD one", canonical_gens(S2.replace("k", "s"),
          "s11*s22 - s12^2 + s22^2"), cli("dual", "conic_mld1_S2", key="ideal")),
        R("dual/twisted_cubic", None, "dual of the twisted cubic", canonical_gens(P3, QUARTIC),
          cli("dual", "twisted_cubic", key="ideal")),
        R("gradient-graph/det_S2", None, "graph of grad det is the adjugate graph", True, adjugate_graph),
        R("grad-mdeg/quadric_P2", None, "mu of a nondegenerate quadric", [1, 1, 1],
          cli("grad-mdeg", "quadric_P2", key="vector")),
        R("f-general/perturbed-conic", None, "a random translate is F-general", True,
          _perturbed_f_general),
        R("gauss/gauss_conic", None, "adjoined Gauss map of a conic",
          {"point": ["0", "2*x2", "x0"], "image": ["a0"], "image_degree": 1, "map_degree": 1},
          gauss_point_formula("gauss_conic")),
        R("product-formula/conic_mld1", None, "1 x 1 = 1 for a curve of MLD one", [True, 1, 1],
          product_formula("conic_mld1_S2")),
        R("mle/conic_mld1", None, "direction of the MLE", ["s22^2", "-s12*s22", "s12^2 + s22^2"], mle_direction),
        R("mld/conic_mld1", None, "MLD of the conic", 1, cli("mld", "conic_mld1_S2")),
        R("s2-family/rank1-e11", None, "A = e11 gives the conic and its Phi", [True, True], _s2_e11),
        R("s2-family/rank1-e22", None, "A = e22: Phi solves the PDE", True, cli("s2-family", "rank1_family", key="pde")),
        R("s2-family-phi/rank1-e22", None, "A = e22: closed form of Phi", True,
          phi_matches("s2-family", ("rank1_family",), "phi", "rank1_family")),
        R("classify/cusp_in_S3", None, "classifier (search) on the cusp in S^3", True,
          cli("classify-curve", "cusp_in_S3", search=True)),
        R("classify-phi/cusp_in_S3", None, "emitted Phi equals the closed form", True,
          phi_matches("classify-curve", ("cusp_in_S3",), "phi", "cusp_in_S3")),
        R("pde/cusp_in_S3", None, "pde-check(det, Phi)", True, cli("pde-check", "cusp_in_S3")),
        R("mld/cusp_in_S3", None, "MLD of the cusp in S^3", 1, cli("mld", "cusp_in_S3")),
        R("parse/session", None, "a minimal symmetric session",
          ["-k12^2 + k11*k22", "ideal(-k11^2 - k12^2 + k11*k22)"], parse_example),
    ]
    return rows


def _perturbed_f_general(budget):
    from .varieties import f_general_emptiness, perturb
    s = session("conic_mld1_S2")
    X = VarietySpec(s.space, list(s.get("X", "ideal").gens))
    return f_general_emptiness(perturb(X, 3), s.get("F", "function"), SEED, budget=_budget(budget))


def _s2_e11(budget):
    from .homaloidal import pde_check
    from .mld import s2_family
    X, phi = s2_family([[1, 0], [0, 0]])
    ref = session("conic_mld1_S2")
    same_X = X.ideal.equals(ref.get("X", "ideal"), _budget(budget))
    same_phi = format_value(phi) == format_value(ref.bindings["Phi"])
    return [same_X, same_phi and pde_check(X.space.det(), phi)]


# ---- running -----------------------------------------------------------------------

def parse_override(text: str):
    if "=" not in text:
        raise ValueError(f"expected ROW=VALUE, got {text!r}")
    name, value = text.split("=", 1)
    try:
        return name.strip(), json.loads(value)
    except json.JSONDecodeError:
        return name.strip(), value


def _normalize(x):
    return json.loads(json.dumps(x))


def run_row(row: Row, budget=None, expected=None) -> RowResult:
    exp = row.expected if expected is None else expected
    t0 = time.perf_counter()
    try:
        got = row.compute(budget)
        status = "pass" if _normalize(got) == _normalize(exp) else "fail"
        msg = ""
    except ResourceExhausted as exc:
        got, status, msg = None, "budget", str(exc)
    except Exception as exc:  # a failing row must not stop the suite
        got, status, msg = None, "error", f"{type(exc).__name__}: {exc}"
    return RowResult(row.name, row.criterion, row.description, exp, got, status,
                     time.perf_counter() - t0, msg)


def run_suite(budget=None, overrides=None, criteria=None, rows=None) -> list[RowResult]:
    overrides = dict(overrides or {})
    rows = rows if rows is not None else build_rows()
    unknown = set(overrides) - {r.name for r in rows}
    if unknown:
        raise ValueError(f"unknown rows: {', '.join(sorted(unknown))}")
    out = []
    for row in rows:
        if criteria and row.criterion not in criteria:
            continue
        out.append(run_row(row, budget, overrides.get(row.name)))
    return out


def criterion_verdict(results, k: int) -> bool:
    rows = [r for r in results if r.criterion == k]
    return bool(rows) and all(r.passed for r in rows)


def _short(x, width: int = 48) -> str:
    s = json.dumps(x, separators=(",", ":")) if not isinstance(x, str) else x
    return s if len(s) <= width else s[: width - 3] + "..."


def summary_table(results) -> str:
    lines = [f"{'row':38} {'status':6} {'expected':48} {'computed':48} {'time':>7}"]
    for r in results:
        comp = r.computed if r.status in ("pass", "fail") else r.message
        lines.append(f"{r.name:38} {r.status.upper():6} {_short(r.expected):48} {_short(comp):48} {r.seconds:6.1f}s")
    lines.append("")
    for k, title in CRITERIA.items():
        if any(r.criterion == k for r in results):
            lines.append(f"criterion {k:2}: {'PASS' if criterion_verdict(results, k) else 'FAIL'}  {title}")
    extra = [r for r in results if r.criterion is None]
    if extra:
        ok = sum(r.passed for r in extra)
        lines.append(f"additional reference rows: {ok}/{len(extra)} pass")
    failed = [r.name for r in results if not r.passed]
    lines.append("all rows pass" if not failed else "FAILED rows: " + ", ".join(failed))
    return "\n".join(lines)


def summary_json(results) -> str:
    return json.dumps([{"row": r.name, "criterion": r.criterion, "status": r.status,
                        "expected": r.expected, "computed": r.computed, "message": r.message}
                       for r in results], separators=(",", ":"))
