"""Exact toolkit for Gaussian maximum likelihood degrees of projective
varieties with respect to a homogeneous rational function F."""

from .fields import GF, QQ, Field
from .groebner import Budget, Ideal, PositiveDimensional, ResourceExhausted
from .homaloidal import HomaloidalSolution, associated_variety, pde_check, phi_from_alpha, phi_join
from .mld import MLProblem, classify_curve_mld1, mld_compute, mld_polar_formula, s2_family
from .polynomial import Polynomial, Ring
from .rational import RationalFn
from .session import parse_session
from .spaces import Space, plain_space, sym_space
from .varieties import (VarietySpec, dual_variety, gradient_multidegrees, multiplicity_at_point,
                        polar_degrees)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "Budget", "Ideal", "PositiveDimensional", "ResourceExhausted",
    "HomaloidalSolution", "associated_variety", "pde_check", "phi_from_alpha", "phi_join",
    "MLProblem", "classify_curve_mld1", "mld_compute", "mld_polar_formula", "s2_family",
    "Polynomial", "Ring", "RationalFn", "parse_session", "Space", "plain_space", "sym_space",
    "VarietySpec", "dual_variety", "gradient_multidegrees", "multiplicity_at_point", "polar_degrees",
]
