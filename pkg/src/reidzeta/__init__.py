"""Exact Reidemeister numbers, tameness verdicts and Reidemeister zeta functions
for automorphisms of rational nilpotent Lie algebras."""
from .exact import IntPoly, RatMatrix, RatPoly, char_poly
from .families import Graph, free_nilpotent, graph_algebra, graph_tameness
from .nilpotent import (INFINITE, Automorphism, NilAlgebra, check_automorphism, graded_data,
                        reidemeister_number, reidemeister_sequence, validate_algebra)
from .spectral import SpectralReport, classify
from .zeta import ZetaForm, verify_zeta, zeta_closed_form, zeta_series

__version__ = "0.1.0"

__all__ = [
    "INFINITE", "Automorphism", "Graph", "IntPoly", "NilAlgebra", "RatMatrix", "RatPoly",
    "SpectralReport", "ZetaForm", "char_poly", "check_automorphism", "classify",
    "free_nilpotent", "graded_data", "graph_algebra", "graph_tameness", "reidemeister_number",
    "reidemeister_sequence", "validate_algebra", "verify_zeta", "zeta_closed_form",
    "zeta_series",
]
