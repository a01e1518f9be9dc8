"""Exact Hall-algebra computations on symmetric quivers.

Shuffle-model Hall products over exact rationals, generator counting by
linear algebra and by plethystic series factorization (two independent
routes to the quantum DT invariants Omega(gamma)(q)), the leg construction
for moment-map eigenvalue data, and the positive-root nonvanishing test.
"""

from .coha import CohaElement, basis, shuffle_product, twisted_product
from .dtseries import (DTReport, build_generating_series, dt_report,
                       hilbert_series, omega, plethystic_factor)
from .errors import (DimensionMismatchError, DivisibilityError, DomainError,
                     LimitExceededError, QuiverFormatError, StructuralViolationError)
from .freeness import GenTable, decomposable_dim, generator_dims, prim_dims
from .legs import EigenData, LegData, attach_legs, is_generic, lambda_from_eigenvalues, sample_generic
from .poly import ColoredPoly, exact_divide, parse_colored_poly
from .quiver import (DimVector, Quiver, SignForm, double, enumerate_dim_vectors,
                     euler_form, moduli_dimensions, quiver_from_spec, sign_form)
from .roots import CartanData, RootCertificate, dt_nonvanishing, is_positive_root, tits_form
from .series import HalfSeries, MultiSeries

__all__ = [
    "CartanData", "CohaElement", "ColoredPoly", "DTReport", "DimVector",
    "DimensionMismatchError", "DivisibilityError", "DomainError", "EigenData",
    "GenTable", "HalfSeries", "LegData", "LimitExceededError", "MultiSeries",
    "Quiver", "QuiverFormatError", "RootCertificate", "SignForm",
    "StructuralViolationError", "attach_legs", "basis",
    "build_generating_series", "decomposable_dim", "double", "dt_nonvanishing",
    "dt_report", "enumerate_dim_vectors", "euler_form", "exact_divide",
    "generator_dims", "hilbert_series", "is_generic", "is_positive_root",
    "lambda_from_eigenvalues", "moduli_dimensions", "omega",
    "parse_colored_poly", "plethystic_factor", "prim_dims", "quiver_from_spec",
    "sample_generic", "shuffle_product", "sign_form", "tits_form",
    "twisted_product",
]
