"""Exact integer and rational linear algebra."""
from .feasibility import (
    CongruenceCertificate,
    ExhaustiveCertificate,
    FarkasCertificate,
    InfeasibleCertified,
    Solution,
    UnknownUpToBound,
    columns_to_matrix,
    solve_nonneg_integer,
)
from .lattice import (
    LatticeBasis,
    coordinates_in_lattice,
    extend_to_unimodular,
    hermite_basis,
    integer_kernel,
    integer_solve,
    smith_form,
)
from .vectors import IntVector, RatVector, dot, primitive_vector, rank

__all__ = [
    "CongruenceCertificate",
    "ExhaustiveCertificate",
    "FarkasCertificate",
    "InfeasibleCertified",
    "IntVector",
    "LatticeBasis",
    "RatVector",
    "Solution",
    "UnknownUpToBound",
    "columns_to_matrix",
    "coordinates_in_lattice",
    "dot",
    "extend_to_unimodular",
    "hermite_basis",
    "integer_kernel",
    "integer_solve",
    "primitive_vector",
    "rank",
    "smith_form",
    "solve_nonneg_integer",
]
