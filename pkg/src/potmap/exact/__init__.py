from .poly import UniPoly, product, verify_factorization
from .matrix import (Matrix, DimensionError, poly_det, cofactor_det,
                     poly_adjugate, poly_charpoly_adjugate, kron_scalar)
from .smith import (SmithForm, smith_form, smith_form_mod, invariant_valuations,
                    kernel_length, cokernel_length, kernel_gens, solve_mod,
                    matrix_inverse_mod, is_unimodular_mod)

__all__ = [
    "UniPoly", "product", "verify_factorization",
    "Matrix", "DimensionError", "poly_det", "cofactor_det", "poly_adjugate",
    "poly_charpoly_adjugate", "kron_scalar",
    "SmithForm", "smith_form", "smith_form_mod", "invariant_valuations",
    "kernel_length", "cokernel_length", "kernel_gens", "solve_mod",
    "matrix_inverse_mod", "is_unimodular_mod",
]
