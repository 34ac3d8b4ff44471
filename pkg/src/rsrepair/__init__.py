"""Repair schemes for Reed-Solomon codes built from subspace polynomials."""

from .field import FieldCtx, FieldError, Subspace, create_field, dual_basis, parse_field_spec, rank_over_subfield, trace_to
from .linpoly import LinearizedPoly, check_P1, check_P2, check_P3, check_P4, subspace_poly, tau
from .rscode import CodeSpec, Codeword, encode, naive_repair, random_codeword

__version__ = "0.1.0"

__all__ = [
    "CodeSpec",
    "Codeword",
    "FieldCtx",
    "FieldError",
    "LinearizedPoly",
    "Subspace",
    "check_P1",
    "check_P2",
    "check_P3",
    "check_P4",
    "create_field",
    "dual_basis",
    "encode",
    "naive_repair",
    "parse_field_spec",
    "random_codeword",
    "rank_over_subfield",
    "subspace_poly",
    "tau",
    "trace_to",
]
