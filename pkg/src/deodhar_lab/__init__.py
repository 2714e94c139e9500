"""Exact Kazhdan-Lusztig polynomials, Deodhar defects and Bott-Samelson
modules for small Coxeter groups."""

from .coxeter import CoxeterError, CoxeterSystem, GroupElement, ResourceLimitError, coxeter_system
from .deodhar import (
    Expression,
    classify,
    enumerate_subexpr,
    gdim_D,
    subset_solutions,
    verify_deodhar_identity,
    verify_lemma_hom,
)
from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .kernels import BACKEND
from .laurent import LaurentPoly

__all__ = [
    "BACKEND",
    "CoxeterError",
    "CoxeterSystem",
    "Expression",
    "GroupElement",
    "HeckeAlgebra",
    "HeckeElt",
    "LaurentPoly",
    "ResourceLimitError",
    "classify",
    "coxeter_system",
    "enumerate_subexpr",
    "gdim_D",
    "hecke_algebra",
    "subset_solutions",
    "verify_deodhar_identity",
    "verify_lemma_hom",
]

__version__ = "0.1.0"
