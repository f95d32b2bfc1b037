"""
Exact arithmetic: cyclotomic and quadratic integers, resultants, factorization.
"""
from .cyclotomic import (
    CyclotomicInt,
    conjugate,
    cyc_add,
    cyc_from_poly,
    cyc_mul,
    cyc_neg,
    cyc_pow,
    cyc_residue,
    cyc_sub,
    is_rational_integer,
)
from .factor import Factorization, divisors_with_power, factorize, is_probable_prime
from .linalg import bareiss_det, cyclo_resultant, laplace_det
from .quadratic import (
    QuadField,
    QuadInt,
    fundamental_unit,
    gauss_sum,
    legendre,
    quad_add,
    quad_conj,
    quad_embed,
    quad_from_surd,
    quad_mul,
    quad_neg,
    quad_norm,
    quad_residue,
    quad_sub,
    quad_to_cyclotomic,
    quad_trace,
    smallest_nonresidue,
)

__all__ = [
    "CyclotomicInt",
    "conjugate",
    "cyc_add",
    "cyc_from_poly",
    "cyc_mul",
    "cyc_neg",
    "cyc_pow",
    "cyc_residue",
    "cyc_sub",
    "is_rational_integer",
    "Factorization",
    "divisors_with_power",
    "factorize",
    "is_probable_prime",
    "bareiss_det",
    "cyclo_resultant",
    "laplace_det",
    "QuadField",
    "QuadInt",
    "fundamental_unit",
    "gauss_sum",
    "legendre",
    "quad_add",
    "quad_conj",
    "quad_embed",
    "quad_from_surd",
    "quad_mul",
    "quad_neg",
    "quad_norm",
    "quad_residue",
    "quad_sub",
    "quad_to_cyclotomic",
    "quad_trace",
    "smallest_nonresidue",
]
