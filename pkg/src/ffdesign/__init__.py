"""Minimum-aberration two-level fractional factorial designs of resolution III.

Columns are m-bit integers (A = bit 0); a design is an ordered tuple of
distinct nonzero columns of H_m.
"""

from .construct import Certificate, GeneratorSet, MaResult, generators_of, ma_design, min_rank_search
from .errors import CapabilityError, DesignError, InvariantViolation, OutOfScopeError
from .gf2 import Design, even_set, hamming_set, odd_set, parse_column, rank
from .iso import are_isomorphic, canonical_form, find_isomorphism
from .polynomial import Poly, compose_wlpp, even_chain_poly, saturated_wlpp
from .wlp import compare_aberration, defining_relation, resolution, wlp

__all__ = [
    "CapabilityError", "Certificate", "Design", "DesignError", "GeneratorSet", "InvariantViolation",
    "MaResult", "OutOfScopeError", "Poly", "are_isomorphic", "canonical_form", "compare_aberration",
    "compose_wlpp", "defining_relation", "even_chain_poly", "even_set", "find_isomorphism",
    "generators_of", "hamming_set", "ma_design", "min_rank_search", "odd_set", "parse_column",
    "rank", "resolution", "saturated_wlpp", "wlp",
]
