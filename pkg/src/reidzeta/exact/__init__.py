"""Exact arithmetic kernels: polynomials, matrices, Sturm counting, Smith form."""
from .matrix import (DimensionError, RatMatrix, char_poly, determinant, exterior_power,
                     row_echelon_basis)
from .poly import (ZERO_DEGREE, IntPoly, RatPoly, UndefinedGcd, ZeroDegree, format_poly,
                   is_squarefree, poly_gcd, rat_from_str, rat_to_str, squarefree_decompose,
                   squarefree_part)
from .snf import SNFResult, lattice_index, smith_normal_form
from .sturm import INF, NotSquarefree, sturm_count, sturm_sequence


def reverse(p: RatPoly) -> RatPoly:
    """Monic reciprocal polynomial; raises ValueError when p(0) == 0."""
    return p.reverse()


__all__ = [
    "DimensionError", "INF", "IntPoly", "NotSquarefree", "RatMatrix", "RatPoly", "SNFResult",
    "UndefinedGcd", "ZERO_DEGREE", "ZeroDegree", "char_poly", "determinant",
    "exterior_power", "format_poly", "is_squarefree", "lattice_index", "poly_gcd",
    "rat_from_str", "rat_to_str", "reverse", "row_echelon_basis", "smith_normal_form",
    "squarefree_decompose", "squarefree_part", "sturm_count", "sturm_sequence",
]
