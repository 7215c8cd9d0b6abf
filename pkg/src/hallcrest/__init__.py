"""Exact Hall algebra computations for quivers with relations.

Structure constants are Euler characteristics of filtration varieties,
obtained by counting points over a ladder of finite prime fields,
interpolating the counts by an exact rational polynomial in q, and
evaluating at q = 1.  Every number that leaves this package is an exact
integer or Fraction; no floating point is used anywhere.
"""

from .errors import (
    BudgetError,
    CatalogBoundError,
    CatalogIncompleteError,
    CrossPrimeMismatchError,
    FingerprintCollisionError,
    HallcrestError,
    InputError,
    InstabilityError,
    InternalCheckError,
    QuiverParseError,
)
from .gfarith import FMatrix, PrimeField, QPolynomial, interpolate
from .quiverlab import QuiverPresentation, parse_quiver
from .repcore import IndecTable, IsoClass, Rep, catalog_indecomposables
from .countkit import (
    count_ext_with_middle,
    count_filtrations,
    factorization_exists,
)
from .hallpoly import (
    ChiConfig,
    ChiResult,
    chi_ext_middle,
    chi_filtration,
    rerun_chi,
)
from .hallalg import (
    HallElement,
    Report,
    TensorElement,
    bracket,
    comult,
    green_classical_suite,
    green_degenerate_suite,
    hall_power,
    product,
    structure_constants,
    verify_associativity,
    verify_chi_stability,
    verify_coassociativity,
    verify_comult_agreement,
    verify_comult_hom,
    verify_ext_vanishing,
    verify_green_classical,
    verify_green_degenerate,
    verify_initial_terms,
    verify_lie,
    verify_pbw,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CatalogBoundError",
    "CatalogIncompleteError",
    "ChiConfig",
    "ChiResult",
    "CrossPrimeMismatchError",
    "FMatrix",
    "FingerprintCollisionError",
    "HallElement",
    "HallcrestError",
    "IndecTable",
    "InputError",
    "InstabilityError",
    "InternalCheckError",
    "IsoClass",
    "PrimeField",
    "QPolynomial",
    "QuiverParseError",
    "QuiverPresentation",
    "Rep",
    "Report",
    "TensorElement",
    "bracket",
    "catalog_indecomposables",
    "chi_ext_middle",
    "chi_filtration",
    "comult",
    "count_ext_with_middle",
    "count_filtrations",
    "factorization_exists",
    "green_classical_suite",
    "green_degenerate_suite",
    "hall_power",
    "interpolate",
    "parse_quiver",
    "product",
    "rerun_chi",
    "structure_constants",
    "verify_associativity",
    "verify_chi_stability",
    "verify_coassociativity",
    "verify_comult_agreement",
    "verify_comult_hom",
    "verify_ext_vanishing",
    "verify_green_classical",
    "verify_green_degenerate",
    "verify_initial_terms",
    "verify_lie",
    "verify_pbw",
]
