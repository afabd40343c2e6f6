"""Ambient vector spaces L with their dual coordinates.

A :class:`Space` pairs a primal ring (coordinates on L) with a dual ring
(coordinates on L*).  Both carry the same pairing weights, so that the
linear form attached to a dual point ``s`` is ``sum(w_i * s_i * x_i)``.
For symmetric matrices this is the trace pairing trace(S K).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .fields import QQ, Field
from .linalg import poly_det
from .polynomial import Polynomial, Ring, RingError


@dataclass(frozen=True)
class Space:
    primal: Ring
    dual: Ring
    m: int | None = None  # matrix size for symmetric-matrix spaces
    positions: tuple = field(default=())  # (i, j) for each coordinate when m is set

    @property
    def dim(self) -> int:
        return self.primal.nvars

    @property
    def weights(self) -> tuple:
        return self.primal.weights

    @property
    def is_symmetric(self) -> bool:
        return self.m is not None

    def with_field(self, f: Field) -> "Space":
        return Space(self.primal.with_field(f), self.dual.with_field(f), self.m, self.positions)

    def to_dual(self, p: Polynomial) -> Polynomial:
        """Rename primal variables of p to the corresponding dual ones."""
        return Polynomial(self.dual, p.terms, _trusted=True) if p.ring.names == self.primal.names else p

    def to_primal(self, p: Polynomial) -> Polynomial:
        return Polynomial(self.primal, p.terms, _trusted=True) if p.ring.names == self.dual.names else p

    def dual_point(self, form: Polynomial) -> list:
        """The dual vector s with form(x) = sum w_i s_i x_i."""
        if form.degree() > 1 or not form.is_homogeneous():
            raise ValueError(f"{form} is not a linear form")
        f = self.primal.field
        out = []
        for i in range(self.dim):
            c = form.derivative(i).constant_value() if form else f(0)
            out.append(f.div(c, f(self.weights[i])))
        return out

    def form_of(self, s: Sequence) -> Polynomial:
        """The linear form on L attached to the dual point s."""
        f = self.primal.field
        return self.primal.linear_form([f(w) * f(c) for w, c in zip(self.weights, s)])

    def pairing(self, u: Sequence, x: Sequence):
        """sum w_i u_i x_i for coefficient or polynomial vectors."""
        terms = [a * b * w if isinstance(a, Polynomial) else b * a * w
                 for w, a, b in zip(self.weights, u, x)]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return total

    # ---- symmetric-matrix helpers ---------------------------------------
    def matrix(self, dual: bool = False) -> list[list[Polynomial]]:
        """The generic symmetric matrix on this space (zeros off the subspace)."""
        if self.m is None:
            raise RingError("not a space of symmetric matrices")
        ring = self.dual if dual else self.primal
        M = [[ring.zero() for _ in range(self.m)] for _ in range(self.m)]
        for k, (i, j) in enumerate(self.positions):
            M[i][j] = M[j][i] = ring.var(k)
        return M

    def det(self, dual: bool = False) -> Polynomial:
        return poly_det(self.matrix(dual))

    def adj(self, dual: bool = False) -> list[list[Polynomial]]:
        """Adjugate of the generic symmetric matrix."""
        M = self.matrix(dual)
        m = self.m
        out = [[None] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                minor = [[M[r][c] for c in range(m) if c != i] for r in range(m) if r != j]
                d = poly_det(minor) if minor else M[0][0].ring.one()
                out[i][j] = d if (i + j) % 2 == 0 else -d
        return out

    def coordinates_of(self, A: Sequence[Sequence]) -> list:
        """Coordinates of a symmetric matrix A at this space's positions."""
        f = self.primal.field
        return [f(A[i][j]) for (i, j) in self.positions]

    def trace_form(self, A: Sequence[Sequence], dual: bool = False) -> Polynomial:
        """trace(A K) as a linear form (K the generic matrix of the space)."""
        M = self.matrix(dual)
        ring = self.dual if dual else self.primal
        total = ring.zero()
        for i in range(self.m):
            for j in range(self.m):
                if A[i][j]:
                    total = total + M[j][i].scale(ring.field(A[i][j]))
        return total


def _sym_names(prefix: str, m: int, positions) -> list[str]:
    sep = "" if m < 10 else "_"
    return [f"{prefix}{i + 1}{sep}{j + 1}" for i, j in positions]


def sym_space(m: int, field: Field = QQ, positions: Sequence | None = None,
              primal_prefix: str = "k", dual_prefix: str = "s") -> Space:
    """The space of symmetric m x m matrices (or a coordinate subspace).

    Coordinates are k_ij (i <= j) on the primal side and s_ij on the dual
    side; off-diagonal coordinates carry pairing weight 2.
    """
    if m < 1:
        raise ValueError("matrix size must be positive")
    allpos = [(i, j) for i in range(m) for j in range(i, m)]
    if positions is None:
        positions = allpos
    positions = tuple(sorted({tuple(sorted(p)) for p in positions}, key=allpos.index))
    for p in positions:
        if p not in allpos:
            raise ValueError(f"position {p} outside a {m} x {m} matrix")
    weights = [1 if i == j else 2 for i, j in positions]
    primal = Ring(_sym_names(primal_prefix, m, positions), field, weights)
    dual = Ring(_sym_names(dual_prefix, m, positions), field, weights)
    return Space(primal, dual, m, positions)


def plain_space(names: Sequence[str], field: Field = QQ, dual_names: Sequence[str] | None = None) -> Space:
    """L = k^{n+1} with the standard pairing; dual names default to u_<name>."""
    names = list(names)
    if dual_names is None:
        dual_names = [f"u_{x}" for x in names]
    if len(dual_names) != len(names):
        raise ValueError("one dual name per coordinate expected")
    if set(dual_names) & set(names):
        raise ValueError("primal and dual variable names must differ")
    return Space(Ring(names, field), Ring(list(dual_names), field))
