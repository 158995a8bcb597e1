"""Skew orthogonal polynomials of real and quaternion-real non-Hermitian
random matrix ensembles, derived exactly from Schur and Jack polynomial
averages and cross-checked by Monte Carlo."""

from .algebra import UniPoly, gamma_ratio, poly_add, poly_shift_mul, rising_factorial
from .derive import (
    SkewPolyPair,
    check_equal,
    closed_form,
    derive,
    derive_even,
    derive_odd,
    literature_reduction,
)
from .ensemble import EnsembleSpec
from .errors import ConsistencyError, GuardError, PoleError, UnsupportedShapeError
from .jack import EigenDensity, PochhammerSpec, jack_average, matrix_weight_to_density, pochhammer_general
from .mc import McReport, charpoly_coeffs, mc_estimate
from .symfunc import Partition, is_doubled, is_squared, pieri_e, vertical_strips

__all__ = [
    "ConsistencyError", "EigenDensity", "EnsembleSpec", "GuardError", "McReport", "Partition",
    "PochhammerSpec", "PoleError", "SkewPolyPair", "UniPoly", "UnsupportedShapeError",
    "charpoly_coeffs", "check_equal", "closed_form", "derive", "derive_even", "derive_odd",
    "gamma_ratio", "is_doubled", "is_squared", "jack_average", "literature_reduction",
    "matrix_weight_to_density", "mc_estimate", "pieri_e", "pochhammer_general", "poly_add",
    "poly_shift_mul", "rising_factorial", "vertical_strips",
]

__version__ = "0.1.0"
