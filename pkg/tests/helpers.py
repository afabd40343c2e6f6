"""Shared loaders for the shipped session files."""

from mldegree import VarietySpec
from mldegree.golden import session


def load(name):
    s = session(name)
    X = VarietySpec(s.space, list(s.get("X", "ideal").gens)) if "X" in s.bindings else None
    return s, X
