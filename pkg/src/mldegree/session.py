"""Session files: a ring declaration followed by named bindings.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    ring x0 x1 x2;                 plain coordinates, dual names u_x0 ...
    ring x y z dual u v w;         plain coordinates with explicit dual names
    ring sym 3;                    symmetric 3x3 matrices: k11 k12 ... / s11 ...
    ring sym 3 k11 k12 k22 k33;    a coordinate subspace of them

    F = <expr>;                    any expression
    X = ideal(<expr>, ...);        an ideal
    A = matrix[[1, 0], [0, 0]];    a matrix
    point = [0, 0, 1];             a vector

Expressions use integers, ``+ - * / ^``, parentheses, variables and
previously bound names.  Symmetric sessions also bind ``K`` and ``S`` (the
generic primal and dual matrices) and the builtins ``det``, ``det(M)``,
``adj(M)`` and ``trace(M)``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import QQ
from .groebner import Ideal
from .polynomial import Polynomial, Ring
from .rational import RationalFn
from .spaces import Space, plain_space, sym_space

MAX_EXPONENT = 512
MAX_DEPTH = 200


class SessionError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


# ---- tokens -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),;=\[\]])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SessionError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# ---- values -----------------------------------------------------------------

class Matrix(list):
    """A matrix value (list of rows)."""


class Vector(list):
    """A vector value."""


@dataclass
class Session:
    space: Space
    bindings: dict = field(default_factory=dict)
    source: str = ""

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.source.encode("utf-8")).hexdigest()

    def __contains__(self, name):
        return name in self.bindings

    def get(self, name: str, kind: str | None = None):
        if name not in self.bindings:
            raise SessionError(f"session does not bind {name!r}")
        value = self.bindings[name]
        if kind == "function":
            if isinstance(value, (Matrix, Vector, Ideal)):
                raise SessionError(f"{name} must be a function, not a {type(value).__name__.lower()}")
            return RationalFn.coerce(value, self.space.primal)
        if kind == "ideal" and not isinstance(value, Ideal):
            if isinstance(value, (Matrix, Vector)):
                raise SessionError(f"{name} must be an ideal")
            value = RationalFn.coerce(value, self.space.primal)
            if not value.is_polynomial():
                raise SessionError(f"{name} must be an ideal")
            return Ideal([value.num], value.ring)
        if kind == "matrix" and not isinstance(value, Matrix):
            raise SessionError(f"{name} must be a matrix")
        if kind == "vector" and not isinstance(value, Vector):
            raise SessionError(f"{name} must be a vector")
        return value

    def polynomial(self, name: str) -> Polynomial:
        f = self.get(name, "function")
        if not f.is_polynomial():
            raise SessionError(f"{name} must be a polynomial")
        return f.num.scale(f.ring.field.inv(f.den.constant_value()))


# ---- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.space: Space | None = None
        self.ring: Ring | None = None  # primal + dual names, for evaluation
        self.env: dict = {}
        self.depth = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise SessionError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            self.error(f"expected {text!r}, found {found}")
        return self.advance()

    # -- statements
    def parse(self) -> Session:
        if self.tok.text != "ring":
            self.error("a session must start with a ring declaration")
        self.ring_decl()
        while self.tok.kind != "eof":
            self.binding()
        return Session(self.space, {k: v for k, v in self.env.items() if not k.startswith("$")}, self.text)

    def ring_decl(self):
        self.expect("ring")
        if self.tok.text == "sym":
            self.advance()
            t = self.tok
            if t.kind != "int":
                self.error("expected the matrix size after 'sym'")
            m = int(self.advance().text)
            if not 1 <= m <= 9:
                self.error("matrix size must be between 1 and 9", t)
            names = []
            while self.tok.kind == "name":
                names.append(self.advance())
            positions = None
            if names:
                positions = []
                for nt in names:
                    mm = re.fullmatch(r"k(\d)(\d)", nt.text)
                    if not mm:
                        self.error(f"{nt.text!r} is not a coordinate k_ij", nt)
                    i, j = int(mm.group(1)) - 1, int(mm.group(2)) - 1
                    if not (0 <= i <= j < m):
                        self.error(f"{nt.text!r} is not an upper-triangular position of a {m} x {m} matrix", nt)
                    positions.append((i, j))
            self.expect(";")
            self.space = sym_space(m, QQ, positions)
        else:
            names, dual = [], None
            while self.tok.kind == "name" and self.tok.text != "dual":
                names.append(self.advance())
            if self.tok.text == "dual":
                self.advance()
                dual = []
                while self.tok.kind == "name":
                    dual.append(self.advance())
            if not names:
                self.error("expected variable names")
            self.expect(";")
            texts = [t.text for t in names]
            for t in names + (dual or []):
                if t.text in _RESERVED:
                    self.error(f"{t.text!r} is reserved", t)
            if len(set(texts)) != len(texts):
                self.error("duplicate variable name", names[0])
            if dual is not None and len(dual) != len(names):
                self.error(f"{len(names)} variables but {len(dual)} dual names", dual[0] if dual else None)
            try:
                self.space = plain_space(texts, QQ, [t.text for t in dual] if dual is not None else None)
            except ValueError as exc:
                self.error(str(exc), names[0])
        sp = self.space
        self.ring = sp.primal.extend(sp.dual.names, sp.dual.weights)
        if sp.m is not None:
            self.env["K"] = Matrix([[RationalFn(self.ring(p), reduce=False) for p in row] for row in sp.matrix()])
            self.env["S"] = Matrix([[RationalFn(self.ring(p), reduce=False) for p in row] for row in sp.matrix(dual=True)])

    def binding(self):
        t = self.tok
        if t.kind != "name":
            self.error("expected a binding 'name = ...;'")
        name = self.advance().text
        if name in _RESERVED or (self.ring is not None and name in self.ring.names):
            self.error(f"cannot rebind {name!r}", t)
        self.expect("=")
        if self.tok.text == "ideal":
            value = self.ideal()
        else:
            value = self.expr()
        self.expect(";")
        self.env[name] = self.finalize(name, value, t)

    def ideal(self):
        start = self.advance()
        self.expect("(")
        gens = []
        if self.tok.text != ")":
            gens.append((self.tok, self.expr()))
            while self.tok.text == ",":
                self.advance()
                gens.append((self.tok, self.expr()))
        self.expect(")")
        polys = []
        for tok, g in gens:
            g = self.as_function(g, tok)
            if not g.is_polynomial():
                self.error("ideal generators must be polynomials", tok)
            polys.append((tok, g.num.scale(Fraction(1) / g.den.constant_value())))
        return ("ideal", polys, start)

    def matrix_literal(self):
        self.expect("[")
        rows = [self.row()]
        while self.tok.text == ",":
            self.advance()
            rows.append(self.row())
        self.expect("]")
        if len({len(r) for r in rows}) != 1:
            self.error("matrix rows have different lengths")
        return Matrix(rows)

    def row(self):
        self.expect("[")
        vals = [self.expr()]
        while self.tok.text == ",":
            self.advance()
            vals.append(self.expr())
        self.expect("]")
        return vals

    # -- expressions (precedence climbing)
    def expr(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error("expression nested too deeply")
        try:
            value = self.term()
            while self.tok.text in ("+", "-"):
                op = self.advance()
                rhs = self.term()
                value = self.binop(op, value, rhs)
            return value
        finally:
            self.depth -= 1

    def term(self):
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            value = self.binop(op, value, rhs)
        return value

    def unary(self):
        if self.tok.text in ("-", "+"):
            op = self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                self.error("expression nested too deeply")
            try:
                v = self.unary()
            finally:
                self.depth -= 1
            return self.neg(v, op) if op.text == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            op = self.advance()
            neg = False
            if self.tok.text == "-":
                self.advance()
                neg = True
            t = self.tok
            if t.kind != "int":
                self.error("exponents must be integer literals")
            k = int(self.advance().text)
            if k > MAX_EXPONENT:
                self.error(f"exponent larger than {MAX_EXPONENT}", t)
            if self.tok.text == "^":
                self.error("chained exponents need parentheses")
            return self.pow(base, -k if neg else k, op)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Fraction(int(t.text))
        if t.text == "(":
            self.advance()
            v = self.expr()
            self.expect(")")
            return v
        if t.text == "[":
            self.advance()
            vals = [self.expr()]
            while self.tok.text == ",":
                self.advance()
                vals.append(self.expr())
            self.expect("]")
            for v in vals:
                if isinstance(v, (Matrix, Vector)):
                    self.error("vector entries must be scalars or functions", t)
            return Vector(vals)
        if t.kind == "name":
            self.advance()
            if t.text == "matrix":
                return self.matrix_literal()
            if t.text in _BUILTINS:
                return self.builtin(t)
            if t.text in self.ring.names:
                return RationalFn(self.ring.var(t.text), reduce=False)
            if t.text in self.env:
                value = self.env.get("$" + t.text, self.env[t.text])
                if value is None:
                    self.error(f"{t.text!r} is an ideal and cannot be used in an expression", t)
                return value
            self.error(f"unbound name {t.text!r}", t)
        found = "end of input" if t.kind == "eof" else repr(t.text)
        self.error(f"unexpected {found}")

    def builtin(self, t: Token):
        name = t.text
        if name in ("det", "adj", "trace"):
            if self.space.m is None and name != "trace":
                if self.tok.text != "(":
                    self.error(f"{name!r} needs a symmetric-matrix ring or a matrix argument", t)
            if self.tok.text != "(":
                if name == "det":
                    return RationalFn(self.ring(self.space.det()), reduce=False)
                self.error(f"{name} needs an argument", t)
            self.advance()
            arg = self.expr()
            self.expect(")")
            if not isinstance(arg, Matrix):
                self.error(f"{name} expects a matrix", t)
            if len(arg) != len(arg[0]):
                self.error(f"{name} expects a square matrix", t)
            M = [[self.as_function(x, t) for x in row] for row in arg]
            if name == "trace":
                total = RationalFn(self.ring.zero(), reduce=False)
                for i in range(len(M)):
                    total = total + M[i][i]
                return total
            if name == "det":
                return _rdet(M, self.ring)
            n = len(M)
            out = Matrix([[None] * n for _ in range(n)])
            for i in range(n):
                for j in range(n):
                    minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                    d = _rdet(minor, self.ring) if minor else RationalFn(self.ring.one(), reduce=False)
                    out[i][j] = d if (i + j) % 2 == 0 else -d
            return out
        self.error(f"{name!r} cannot be used here", t)

    # -- arithmetic on values
    def as_function(self, v, tok: Token) -> RationalFn:
        if isinstance(v, Fraction):
            return RationalFn(self.ring.const(v), reduce=False)
        if isinstance(v, RationalFn):
            return v
        self.error(f"expected a scalar or function, got a {type(v).__name__.lower()}", tok)

    def neg(self, v, tok):
        if isinstance(v, Matrix):
            return Matrix([[self.neg(x, tok) for x in r] for r in v])
        if isinstance(v, Vector):
            return Vector([self.neg(x, tok) for x in v])
        return -v

    def pow(self, base, k: int, tok: Token):
        if isinstance(base, (Matrix, Vector)):
            self.error("powers of matrices are not supported", tok)
        if isinstance(base, Fraction):
            if k < 0 and base == 0:
                self.error("division by zero", tok)
            if abs(k) > 64 and abs(base.numerator) + base.denominator > 2:
                self.error("number too large", tok)
            return base ** k
        if k < 0 and base.is_zero():
            self.error("division by zero", tok)
        if len(base.num.terms) + len(base.den.terms) > 2 and abs(k) > 64:
            self.error("power too large", tok)
        return base ** k

    def binop(self, op: Token, a, b):
        o = op.text
        am, bm = isinstance(a, (Matrix, Vector)), isinstance(b, (Matrix, Vector))
        if am or bm:
            return self.matrix_op(op, a, b)
        if o == "/":
            if (isinstance(b, Fraction) and b == 0) or (isinstance(b, RationalFn) and b.is_zero()):
                self.error("division by zero", op)
            if isinstance(a, Fraction) and isinstance(b, Fraction):
                return a / b
            return self.as_function(a, op) / self.as_function(b, op)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return {"+": a + b, "-": a - b, "*": a * b}[o]
        fa, fb = self.as_function(a, op), self.as_function(b, op)
        return {"+": lambda: fa + fb, "-": lambda: fa - fb, "*": lambda: fa * fb}[o]()

    def matrix_op(self, op: Token, a, b):
        o = op.text
        if isinstance(a, Matrix) and isinstance(b, Matrix):
            if o in "+-":
                if len(a) != len(b) or len(a[0]) != len(b[0]):
                    self.error("matrix sizes differ", op)
                return Matrix([[self.binop(op, x, y) for x, y in zip(r, s)] for r, s in zip(a, b)])
            if o == "*":
                if len(a[0]) != len(b):
                    self.error("matrix sizes do not match for a product", op)
                out = []
                for r in a:
                    row = []
                    for j in range(len(b[0])):
                        acc = Fraction(0)
                        for k in range(len(b)):
                            acc = self.binop(_PLUS, acc, self.binop(op, r[k], b[k][j]))
                        row.append(acc)
                    out.append(row)
                return Matrix(out)
        if isinstance(a, Vector) and isinstance(b, Vector) and o in "+-":
            if len(a) != len(b):
                self.error("vector lengths differ", op)
            return Vector([self.binop(op, x, y) for x, y in zip(a, b)])
        scalar_types = (Fraction, RationalFn)
        if o == "*" and isinstance(a, scalar_types):
            return type(b)(self._map(b, lambda x: self.binop(op, a, x)))
        if o in "*/" and isinstance(b, scalar_types):
            return type(a)(self._map(a, lambda x: self.binop(op, x, b)))
        self.error(f"unsupported operation {o!r} between these values", op)

    @staticmethod
    def _map(v, fn):
        if isinstance(v, Matrix):
            return [[fn(x) for x in r] for r in v]
        return [fn(x) for x in v]

    # -- bindings end up in the primal or the dual ring
    def _target(self, polys, tok: Token) -> Ring:
        sp = self.space
        np_ = sp.primal.nvars
        used = set()
        for p in polys:
            used |= p.support()
        primal_used = any(i < np_ for i in used)
        dual_used = any(i >= np_ for i in used)
        if primal_used and dual_used:
            self.error("expression mixes primal and dual variables", tok)
        return sp.dual if dual_used else sp.primal

    def _place(self, f: RationalFn, ring: Ring) -> RationalFn:
        return RationalFn(f.num.to_ring(ring), f.den.to_ring(ring), reduce=False)

    def finalize(self, name: str, value, tok: Token):
        # keep the evaluation-ring value for later expressions
        self.env["$" + name] = value
        if isinstance(value, tuple) and value[0] == "ideal":
            polys = value[1]
            ring = self._target([p for _, p in polys], tok)
            gens = []
            for gt, p in polys:
                q = p.to_ring(ring)
                if not q.is_homogeneous():
                    comps = q.homogeneous_components()
                    degs = ", ".join(f"degree {d}: {c}" for d, c in comps.items())
                    self.error(f"ideal generator is not homogeneous ({degs})", gt)
                gens.append(q)
            self.env["$" + name] = None
            return Ideal(gens, ring)
        if isinstance(value, Fraction):
            return value
        if isinstance(value, RationalFn):
            ring = self._target([value.num, value.den], tok)
            if name.lower().startswith("phi") and not (value.num.support() | value.den.support()):
                ring = self.space.dual  # a constant Phi lives on the dual side
            f = self._place(value, ring)
            if name in _HOMOGENEOUS and not f.is_homogeneous():
                bad = f.num if not f.num.is_homogeneous() else f.den
                comps = bad.homogeneous_components()
                degs = ", ".join(f"degree {d}: {c}" for d, c in comps.items())
                self.error(f"{name} must be homogeneous ({degs})", tok)
            return RationalFn(f.num, f.den) if not f.is_polynomial() else f
        if isinstance(value, (Matrix, Vector)):
            return value
        self.error("unsupported binding", tok)


_PLUS = Token("op", "+", 0, 0)
_BUILTINS = {"det", "adj", "trace"}
_RESERVED = {"ring", "sym", "dual", "ideal", "matrix"} | _BUILTINS
_HOMOGENEOUS = {"F", "G", "Phi", "alpha", "beta", "g"}


def _rdet(M, ring: Ring) -> RationalFn:
    """Determinant of a small matrix of rational functions (Laplace)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = RationalFn(ring.zero(), reduce=False)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = M[0][j] * _rdet(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def parse_session(text: str) -> Session:
    """Parse a session; every failure is reported as a SessionError."""
    if not isinstance(text, str):
        raise SessionError("session text must be a string")
    try:
        return _Parser(text).parse()
    except SessionError:
        raise
    except RecursionError:
        raise SessionError("expression nested too deeply") from None
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        raise SessionError(str(exc)) from None


def load_session(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())


def format_value(value) -> str:
    """Canonical text of a session value (parseable back)."""
    if isinstance(value, Ideal):
        return "ideal(" + ", ".join(str(g) for g in value.gens) + ")"
    if isinstance(value, Matrix):
        return "matrix[" + ", ".join("[" + ", ".join(format_value(x) for x in r) + "]" for r in value) + "]"
    if isinstance(value, Vector):
        return "[" + ", ".join(format_value(x) for x in value) + "]"
    if isinstance(value, RationalFn):
        if value.is_polynomial():
            return str(value.num.scale(Fraction(1) / value.den.constant_value()))
        return f"({value.num})/({value.den})"
    return str(value)
